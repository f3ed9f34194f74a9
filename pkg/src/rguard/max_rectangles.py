"""Enumeration of the maximal axis-aligned rectangles inside the polygon,
including maximal degenerate segments when the degeneracy policy allows them.

For thin polygons every positive-area maximal rectangle is a slab of the
vertical or horizontal decomposition, and every degenerate member is a
maximal chain of collinear pixel sides; both are filtered to exact
maximality with local half-unit expansion tests (coordinates are doubled, so
"+1" is half an input unit and stays within the neighboring cells).  Non-thin
polygons fall back to an occupancy-grid enumeration, cubic in the number of
grid lines; fine for the small non-thin instances exercised here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rguard.pixelation import Pixelation, Side
from rguard.polygon_core import Rect


@dataclass(frozen=True, slots=True)
class MaxRect:
    id: int
    rect: Rect
    degenerate: bool
    pixel_ids: tuple[int, ...]   # all pixels with non-empty closed intersection


def enumerate_max_rects(px: Pixelation, allow_degenerate: bool) -> list[MaxRect]:
    """Every maximal rectangle exactly once, ids in deterministic rect order.
    Results are cached on the pixelation (they are pure functions of it)."""
    cache = getattr(px, "_maxrect_cache", None)
    if cache is None:
        cache = px._maxrect_cache = {}
    if allow_degenerate in cache:
        return cache[allow_degenerate]
    if px.is_thin:
        rects = _thin_positive(px)
    else:
        rects = _grid_positive(px)
    segs = _degenerate_segments(px) if allow_degenerate else []
    out: list[MaxRect] = []
    for r in sorted(set(rects), key=Rect.as_tuple):
        out.append(MaxRect(len(out), r, False, _pixels_touching(px, r)))
    for r in sorted(set(segs), key=Rect.as_tuple):
        out.append(MaxRect(len(out), r, True, _pixels_touching(px, r)))
    cache[allow_degenerate] = out
    return out


def classify_degenerate(px: Pixelation, seg: Rect) -> bool:
    """True iff no positive-area rectangle inside P contains the segment."""
    if not seg.is_degenerate_shape():
        raise ValueError("classify_degenerate expects a zero-area rectangle")
    if not px.cover.rect_inside(seg):
        raise ValueError("segment lies outside the polygon")
    if seg.width == 0 and seg.height == 0:
        return False  # a point always fattens inside one of its pixels
    if seg.width == 0:
        left = Rect(seg.xmin - 1, seg.ymin, seg.xmax, seg.ymax)
        right = Rect(seg.xmin, seg.ymin, seg.xmax + 1, seg.ymax)
        return not (px.cover.rect_inside(left) or px.cover.rect_inside(right))
    down = Rect(seg.xmin, seg.ymin - 1, seg.xmax, seg.ymax)
    up = Rect(seg.xmin, seg.ymin, seg.xmax, seg.ymax + 1)
    return not (px.cover.rect_inside(down) or px.cover.rect_inside(up))


# -- thin-polygon path ---------------------------------------------------------


def _side_lookup(px: Pixelation):
    """pixel id -> {'left'|'right'|'bottom'|'top': Side}."""
    table = []
    for pid, r in enumerate(px.pixels):
        entry = {}
        for sid in px.pixel_sides[pid]:
            s = px.sides[sid]
            if s.axis == "v":
                entry["left" if s.c == r.xmin else "right"] = s
            else:
                entry["bottom" if s.c == r.ymin else "top"] = s
        table.append(entry)
    return table


def _thin_positive(px: Pixelation) -> list[Rect]:
    sides = _side_lookup(px)
    out = []
    for slab, stack in px.v_slabs:
        pids = [_pixel_id(px, p) for p in stack]
        grow_left = all(not sides[p]["left"].on_boundary for p in pids)
        grow_right = all(not sides[p]["right"].on_boundary for p in pids)
        grow_down = not sides[pids[0]]["bottom"].on_boundary
        grow_up = not sides[pids[-1]]["top"].on_boundary
        if not (grow_left or grow_right or grow_down or grow_up):
            out.append(slab)
    for slab, pids in px.h_slabs:
        row = sorted(pids, key=lambda p: px.pixels[p].xmin)
        grow_down = all(not sides[p]["bottom"].on_boundary for p in row)
        grow_up = all(not sides[p]["top"].on_boundary for p in row)
        grow_left = not sides[row[0]]["left"].on_boundary
        grow_right = not sides[row[-1]]["right"].on_boundary
        if not (grow_left or grow_right or grow_down or grow_up):
            out.append(slab)
    return out


def _pixel_id(px: Pixelation, rect: Rect) -> int:
    # v_slab stacks store pixel rects emitted in id order; map back via corners
    for pid in px.corner_pixels[px.corner_ids[(rect.xmin, rect.ymin)]]:
        if px.pixels[pid] == rect:
            return pid
    raise KeyError(rect)


def _degenerate_segments(px: Pixelation) -> list[Rect]:
    """Maximal chains of collinear pixel sides that neither extend into a
    pixel interior nor fatten to positive area."""
    by_line: dict[tuple[str, int], list[Side]] = {}
    for s in px.sides:
        by_line.setdefault((s.axis, s.c), []).append(s)
    out = []
    for (axis, c), group in sorted(by_line.items()):
        group.sort(key=lambda s: s.lo)
        chain: list[Side] = []
        for s in group + [None]:
            if chain and (s is None or s.lo != chain[-1].hi):
                out.extend(_chain_candidate(px, axis, c, chain))
                chain = []
            if s is not None:
                chain.append(s)
    return out


def _chain_candidate(px: Pixelation, axis: str, c: int, chain: list[Side]):
    lo, hi = chain[0].lo, chain[-1].hi
    if axis == "v":
        seg = Rect(c, lo, c, hi)
        ends = [(c, lo, 0, -1), (c, hi, 0, 1)]
    else:
        seg = Rect(lo, c, hi, c)
        ends = [(lo, c, -1, 0), (hi, c, 1, 0)]
    # extension beyond an endpoint into some incident pixel => not maximal
    for ex, ey, dx, dy in ends:
        probe = (ex + dx, ey + dy)
        for pid in px.corner_pixels[px.corner_ids[(ex, ey)]]:
            if px.pixels[pid].contains_point(probe):
                return []
    fatten_lo = all(s.pix_lo is not None for s in chain)
    fatten_hi = all(s.pix_hi is not None for s in chain)
    if fatten_lo or fatten_hi:
        return []
    return [seg]


# -- general (non-thin) path -----------------------------------------------------


def _grid_positive(px: Pixelation) -> list[Rect]:
    cov = px.cover
    xs, ys = cov.xs, cov.ys
    inside = cov.inside  # (nx, ny)
    out = []
    nx = len(xs) - 1
    for i in range(nx):
        ok = inside[i].copy()
        for j in range(i, nx):
            ok &= inside[j]
            # maximal vertical runs of rows fully inside for x-range [i, j+1]
            for a, b in _runs(ok):
                r = Rect(int(xs[i]), int(ys[a]), int(xs[j + 1]), int(ys[b]))
                if not _expandable(cov, r):
                    out.append(r)
    return out


def _runs(mask: np.ndarray):
    idx = np.flatnonzero(np.diff(np.concatenate(([False], mask, [False]))))
    return [(int(s), int(e)) for s, e in zip(idx[::2], idx[1::2])]


def _expandable(cov, r: Rect) -> bool:
    return (cov.rect_inside(Rect(r.xmin - 1, r.ymin, r.xmax, r.ymax))
            or cov.rect_inside(Rect(r.xmin, r.ymin, r.xmax + 1, r.ymax))
            or cov.rect_inside(Rect(r.xmin, r.ymin - 1, r.xmax, r.ymax))
            or cov.rect_inside(Rect(r.xmin, r.ymin, r.xmax, r.ymax + 1)))


# -- shared helpers ---------------------------------------------------------------


def _pixels_touching(px: Pixelation, r: Rect) -> tuple[int, ...]:
    """All pixels whose closed rectangle meets r.

    Candidates are pixels incident to any arrangement corner lying on or in
    r; conforming adjacency guarantees this covers every contact.
    """
    cand: set[int] = set()
    for pid, rect in _seed_pixels(px, r):
        cand.add(pid)
    found = set()
    stack = list(cand)
    while stack:
        pid = stack.pop()
        if pid in found:
            continue
        if not px.pixels[pid].intersects(r):
            continue
        found.add(pid)
        rect = px.pixels[pid]
        for p in ((rect.xmin, rect.ymin), (rect.xmax, rect.ymin),
                  (rect.xmin, rect.ymax), (rect.xmax, rect.ymax)):
            if (r.xmin <= p[0] <= r.xmax and r.ymin <= p[1] <= r.ymax):
                for q in px.corner_pixels[px.corner_ids[p]]:
                    if q not in found:
                        stack.append(q)
    return tuple(sorted(found))


def _seed_pixels(px: Pixelation, r: Rect):
    """A starting pixel inside r (corner of r is always an arrangement corner
    for maximal rectangles; fall back to locate_point otherwise)."""
    p = (r.xmin, r.ymin)
    if p in px.corner_ids:
        for pid in px.corner_pixels[px.corner_ids[p]]:
            yield pid, px.pixels[pid]
        return
    for pid in px.locate_point(p):
        yield pid, px.pixels[pid]
