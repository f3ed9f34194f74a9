"""Tripartite auxiliary graph over targets, maximal rectangles and guards.

Edges are containment/intersection relations; guarding is equivalent to a
length-2 path through a shared rectangle.  Adjacency is assembled from the
precomputed per-pixel incidence lists, never from all-pairs geometry.
"""
from __future__ import annotations

from dataclasses import dataclass

from rguard.guard_model import Guard, TargetPoint
from rguard.max_rectangles import MaxRect
from rguard.pixelation import Pixelation


@dataclass(slots=True)
class AuxGraph:
    targets: list[TargetPoint]
    rects: list[MaxRect]
    guards: list[Guard]
    ur: list[list[int]]    # target  -> rect ids
    ru: list[list[int]]    # rect    -> target ids
    gr: list[list[int]]    # guard   -> rect ids
    rg: list[list[int]]    # rect    -> guard ids

    @property
    def n_vertices(self) -> int:
        return len(self.targets) + len(self.rects) + len(self.guards)

    # H-vertex id spaces: targets, then rects, then guards
    def tid(self, i: int) -> int:
        return i

    def rid(self, i: int) -> int:
        return len(self.targets) + i

    def gid(self, i: int) -> int:
        return len(self.targets) + len(self.rects) + i


def build_aux_graph(px: Pixelation, rects: list[MaxRect],
                    targets: list[TargetPoint], guards: list[Guard]) -> AuxGraph:
    by_pixel_rects: list[list[int]] = [[] for _ in px.pixels]
    for mr in rects:
        for pid in mr.pixel_ids:
            by_pixel_rects[pid].append(mr.id)

    ur: list[set[int]] = [set() for _ in targets]
    for t in targets:
        for pid in t.home_pixels:
            for ri in by_pixel_rects[pid]:
                if rects[ri].rect.contains_point(t.location):
                    ur[t.id].add(ri)

    gr: list[set[int]] = [set() for _ in guards]
    for g in guards:
        if g.kind == "point":
            for pid in g.home_pixels:
                for ri in by_pixel_rects[pid]:
                    if rects[ri].rect.contains_point(g.location):
                        gr[g.id].add(ri)
        else:
            grect = px.pixels[g.pixel]
            for pid in g.home_pixels:
                for ri in by_pixel_rects[pid]:
                    if rects[ri].rect.intersects(grect):
                        gr[g.id].add(ri)

    ru: list[list[int]] = [[] for _ in rects]
    rg: list[list[int]] = [[] for _ in rects]
    for ti, rs in enumerate(ur):
        for ri in rs:
            ru[ri].append(ti)
    for gi, rs in enumerate(gr):
        for ri in rs:
            rg[ri].append(gi)
    return AuxGraph(targets, rects, guards,
                    [sorted(s) for s in ur], [sorted(s) for s in ru],
                    [sorted(s) for s in gr], [sorted(s) for s in rg])


def guards_via_path2(H: AuxGraph, target_id: int, guard_id: int) -> bool:
    """True iff some rectangle is adjacent to both: a u-ρ-γ path exists."""
    a, b = H.ur[target_id], H.gr[guard_id]
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return True
        if a[i] < b[j]:
            i += 1
        else:
            j += 1
    return False


def to_dot(H: AuxGraph) -> str:
    """Graphviz export for debugging."""
    lines = ["graph H {"]
    for t in H.targets:
        lines.append(f'  u{t.id} [shape=circle,label="u{t.id}"];')
    for r in H.rects:
        style = ",style=dashed" if r.degenerate else ""
        lines.append(f'  r{r.id} [shape=box,label="r{r.id}"{style}];')
    for g in H.guards:
        lines.append(f'  g{g.id} [shape=diamond,label="g{g.id}"];')
    for ti, rs in enumerate(H.ur):
        for ri in rs:
            lines.append(f"  u{ti} -- r{ri};")
    for gi, rs in enumerate(H.gr):
        for ri in rs:
            lines.append(f"  g{gi} -- r{ri};")
    lines.append("}")
    return "\n".join(lines) + "\n"
