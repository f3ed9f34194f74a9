"""Exact restricted distance-2 dominating set on the auxiliary graph, by
dynamic programming over a nice form of the lifted tree decomposition.

Per-bag states use two bits per vertex: guards are selected/unselected,
rectangles are dark (never adjacent to a selected guard), promised (will be)
or lit (already are), targets are pending/dominated.  A target may be
forgotten only when dominated; a promised rectangle only once lit.  Keys are
packed integers; each table entry carries its selected-guard set as a shared
cons list, so child tables can be discarded as soon as a parent is done.
"""
from __future__ import annotations

from dataclasses import dataclass

from rguard.aux_graph import AuxGraph, guards_via_path2
from rguard.guard_model import Guard
from rguard.polygon_core import half
from rguard.tree_decomposition import TreeDecomposition, DecompositionError

UNSEL, SEL = 0, 1
DARK, PROMISED, LIT = 0, 1, 2
PENDING, DOMINATED = 0, 1


@dataclass(slots=True)
class Certificate:
    target_id: int
    rect_id: int
    guard_index: int  # index into Solution.guards


@dataclass(slots=True)
class Solution:
    status: str                    # 'optimal' | 'infeasible'
    size: int
    guards: list[Guard]
    certificates: list[Certificate]
    witness_target: int | None = None

    def to_json_obj(self, H: AuxGraph | None = None) -> dict:
        obj = {
            "status": self.status,
            "size": self.size,
            "guards": [g.json_obj() for g in self.guards],
            "certificates": [],
        }
        if H is not None:
            for c in self.certificates:
                t = H.targets[c.target_id]
                obj["certificates"].append({
                    "target": [half(t.location[0]), half(t.location[1])],
                    "rect": c.rect_id,
                    "guard": c.guard_index,
                })
            if self.witness_target is not None:
                t = H.targets[self.witness_target]
                obj["witness"] = [half(t.location[0]), half(t.location[1])]
        return obj


class SolverError(RuntimeError):
    pass


def solve_r2ds(H: AuxGraph, T: TreeDecomposition) -> Solution:
    """Minimum S ⊆ Γ' such that every target has a 2-path to S, or an
    infeasibility witness.  T must be a lifted decomposition of H."""
    if T.universe != "aux":
        raise DecompositionError("solver expects a lifted decomposition")
    nu, nr = len(H.targets), len(H.rects)

    for ti in range(nu):
        if not any(H.rg[ri] for ri in H.ur[ti]):
            return Solution("infeasible", 0, [], [], witness_target=ti)
    if nu == 0:
        return Solution("optimal", 0, [], [])

    nodes = _nice_tree(T)
    adj = _AdjHelper(H)
    retire = _retire_plan(nodes, adj)

    tables: dict[int, dict] = {}
    for idx, node in enumerate(nodes):
        kind = node[0]
        if kind == "leaf":
            tables[idx] = {0: (0, None)}
        elif kind == "intro":
            _, child, bag, v, pos = node
            tables[idx] = _introduce(H, adj, tables.pop(child), bag, v, pos)
        elif kind == "forget":
            _, child, bag, v, pos = node
            tables[idx] = _forget(H, tables.pop(child), v, pos)
        else:  # join
            _, left, right, bag = node
            tables[idx] = _join(H, tables.pop(left), tables.pop(right), bag)
        pos_retire = retire.get(idx)
        if pos_retire:
            tables[idx] = _project(tables[idx], pos_retire)
        if not tables[idx]:
            raise SolverError("dead end in DP despite feasible instance")

    final = tables[len(nodes) - 1]
    if list(final.keys()) != [0]:
        raise SolverError("root table is not a single empty-bag state")
    value, sel = final[0]
    chosen = sorted(_cons_to_set(sel))
    solution_guards = [H.guards[gi] for gi in chosen]
    index_of = {gi: k for k, gi in enumerate(chosen)}
    chosen_set = set(chosen)
    certs = []
    for ti in range(nu):
        got = None
        for ri in H.ur[ti]:
            for gi in H.rg[ri]:
                if gi in chosen_set:
                    got = Certificate(ti, ri, index_of[gi])
                    break
            if got:
                break
        if got is None:
            raise SolverError(f"target {ti} uncovered by the DP solution")
        certs.append(got)
    if value != len(chosen):
        raise SolverError("DP value disagrees with the selected guard set")
    return Solution("optimal", value, solution_guards, certs)


def verify_solution(H: AuxGraph, sol: Solution) -> bool:
    """Certificate check: both edges present, guard actually selected, and
    every target certified.  Infeasible solutions never verify."""
    if sol.status != "optimal":
        return False
    if len(sol.certificates) != len(H.targets):
        return False
    guard_ids = [g.id for g in sol.guards]
    for c in sol.certificates:
        if not 0 <= c.guard_index < len(guard_ids):
            return False
        gi = guard_ids[c.guard_index]
        if c.rect_id not in H.ur[c.target_id]:
            return False
        if c.rect_id not in H.gr[gi]:
            return False
        if not guards_via_path2(H, c.target_id, gi):
            return False
    return True


# -- nice tree -----------------------------------------------------------------


def _nice_tree(T: TreeDecomposition):
    """Flatten the decomposition into leaf/intro/forget/join nodes, ending in
    an empty root bag.  Children always appear before their parents."""
    nb = len(T.bags)
    adj = T.neighbors()
    parent = [-1] * nb
    order = [0]
    seen = [False] * nb
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
                stack.append(v)
    children: list[list[int]] = [[] for _ in range(nb)]
    for v in order[1:]:
        children[parent[v]].append(v)

    nodes = []

    def chain(cur_idx: int | None, cur_bag: tuple, target_bag: tuple) -> tuple:
        """Forget/introduce from cur_bag to target_bag; returns (idx, bag)."""
        idx = cur_idx
        bag = list(cur_bag)
        for v in sorted(set(cur_bag) - set(target_bag)):
            pos = bag.index(v)
            bag.pop(pos)
            nodes.append(("forget", idx, tuple(bag), v, pos))
            idx = len(nodes) - 1
        for v in sorted(set(target_bag) - set(cur_bag)):
            pos = 0
            while pos < len(bag) and bag[pos] < v:
                pos += 1
            bag.insert(pos, v)
            nodes.append(("intro", idx, tuple(bag), v, pos))
            idx = len(nodes) - 1
        return idx, tuple(bag)

    # iterative post-order over the decomposition tree
    done: dict[int, tuple] = {}
    stack = [(0, False)]
    while stack:
        b, processed = stack.pop()
        if not processed:
            stack.append((b, True))
            for c in children[b]:
                stack.append((c, False))
            continue
        kid_tops = []
        for c in children[b]:
            cidx, cbag = done.pop(c)
            cidx, _cbag = chain(cidx, cbag, T.bags[b])
            kid_tops.append(cidx)
        if not kid_tops:
            nodes.append(("leaf",))
            done[b] = chain(len(nodes) - 1, (), T.bags[b])
        else:
            idx = kid_tops[0]
            for other in kid_tops[1:]:
                nodes.append(("join", idx, other, T.bags[b]))
                idx = len(nodes) - 1
            done[b] = (idx, T.bags[b])

    ridx, rbag = chain(*done[0], ())
    if rbag != () or ridx != len(nodes) - 1:
        raise SolverError("root bag not emptied")
    return nodes


def _retire_plan(nodes, adj: "_AdjHelper") -> dict[int, list[int]]:
    """Bag positions of guard bits to project away after each node.

    A guard's selection bit only matters above a node if some adjacent
    rectangle is introduced at an ancestor, or an ancestor join (whose value
    correction and compatibility check read the bit) contains the guard.
    Walking the nice tree top-down accumulates exactly those consumers, so a
    guard retires at the highest node where none remain; retiring zeroes the
    bit, merging states that differ only in spent selections.
    """
    children: dict[int, tuple] = {}
    bags: dict[int, tuple] = {}
    for idx, node in enumerate(nodes):
        kind = node[0]
        if kind == "leaf":
            children[idx] = ()
            bags[idx] = ()
        elif kind in ("intro", "forget"):
            children[idx] = (node[1],)
            bags[idx] = node[2]
        else:
            children[idx] = (node[1], node[2])
            bags[idx] = node[3]

    def contributions(idx) -> list[int]:
        node = nodes[idx]
        if node[0] == "intro" and adj.kind(node[3]) == "rect":
            return adj.guard_neighbors_of_rect(node[3])
        if node[0] == "join":
            return [u for u in bags[idx] if adj.kind(u) == "guard"]
        return []

    live: dict[int, int] = {}
    retired: dict[int, set[int]] = {}
    root = len(nodes) - 1
    stack = [(root, False)]
    while stack:
        idx, leaving = stack.pop()
        if leaving:
            for g in contributions(idx):
                live[g] -= 1
                if not live[g]:
                    del live[g]
            continue
        retired[idx] = {u for u in bags[idx]
                        if adj.kind(u) == "guard" and u not in live}
        stack.append((idx, True))
        add = contributions(idx)
        for g in add:
            live[g] = live.get(g, 0) + 1
        for c in children[idx]:
            stack.append((c, False))

    plan: dict[int, list[int]] = {}
    for idx in retired:
        kids = children[idx]
        fresh = retired[idx] - (retired[kids[0]] if kids else set())
        if fresh:
            bag = bags[idx]
            plan[idx] = sorted(bag.index(u) for u in fresh)
    return plan


def _project(table: dict, positions: list[int]) -> dict:
    mask = -1
    for p in positions:
        mask &= ~(3 << (2 * p))
    out: dict = {}
    for key, ent in table.items():
        nk = key & mask
        cur = out.get(nk)
        if cur is None or ent[0] < cur[0]:
            out[nk] = ent
    return out


class _AdjHelper:
    """Adjacency in the lifted id space, with vertex-kind classification."""

    def __init__(self, H: AuxGraph):
        self.H = H
        self.nu = len(H.targets)
        self.nr = len(H.rects)

    def kind(self, v: int) -> str:
        if v < self.nu:
            return "target"
        if v < self.nu + self.nr:
            return "rect"
        return "guard"

    def rect_neighbors_of_guard(self, v: int) -> list[int]:
        return [self.nu + ri for ri in self.H.gr[v - self.nu - self.nr]]

    def guard_neighbors_of_rect(self, v: int) -> list[int]:
        return [self.nu + self.nr + gi for gi in self.H.rg[v - self.nu]]

    def target_neighbors_of_rect(self, v: int) -> list[int]:
        return list(self.H.ru[v - self.nu])

    def rect_neighbors_of_target(self, v: int) -> list[int]:
        return [self.nu + ri for ri in self.H.ur[v]]


def _insert_slot(key: int, pos: int, s: int) -> int:
    low = key & ((1 << (2 * pos)) - 1)
    high = key >> (2 * pos)
    return low | (s << (2 * pos)) | (high << (2 * pos + 2))


def _remove_slot(key: int, pos: int) -> tuple[int, int]:
    low = key & ((1 << (2 * pos)) - 1)
    s = (key >> (2 * pos)) & 3
    high = key >> (2 * pos + 2)
    return low | (high << (2 * pos)), s


def _slot(key: int, pos: int) -> int:
    return (key >> (2 * pos)) & 3


def _set_slot(key: int, pos: int, s: int) -> int:
    return (key & ~(3 << (2 * pos))) | (s << (2 * pos))


def _put(table: dict, key: int, value: int, sel) -> None:
    cur = table.get(key)
    if cur is None or value < cur[0]:
        table[key] = (value, sel)


def _introduce(H: AuxGraph, adj: _AdjHelper, child: dict, bag: tuple,
               v: int, pos: int) -> dict:
    kind = adj.kind(v)
    posmap = {u: i for i, u in enumerate(bag)}
    out: dict = {}
    shift = 2 * pos
    lowmask = (1 << shift) - 1
    get = out.get
    if kind == "guard":
        rect_shifts = [2 * posmap[r] for r in adj.rect_neighbors_of_guard(v)
                       if r in posmap]
        gi = v - adj.nu - adj.nr
        selbit = 1 << shift
        for key, ent in child.items():
            nk = (key & lowmask) | ((key >> shift) << (shift + 2))
            cur = get(nk)
            if cur is None or ent[0] < cur[0]:
                out[nk] = ent
            nk |= selbit
            ok = True
            for rs in rect_shifts:
                s = (nk >> rs) & 3
                if s == 0:
                    ok = False
                    break
                if s == 1:
                    nk ^= 3 << rs  # promised (01) -> lit (10)
            if ok:
                val = ent[0] + 1
                cur = get(nk)
                if cur is None or val < cur[0]:
                    out[nk] = (val, (1, gi, ent[1]))
    elif kind == "rect":
        guard_shifts = [2 * posmap[g] for g in adj.guard_neighbors_of_rect(v)
                        if g in posmap]
        target_bits = 0
        for t in adj.target_neighbors_of_rect(v):
            if t in posmap:
                target_bits |= 1 << (2 * posmap[t])
        lit = LIT << shift
        promised = PROMISED << shift
        for key, ent in child.items():
            base = (key & lowmask) | ((key >> shift) << (shift + 2))
            forced = False
            for gp in guard_shifts:
                if (base >> gp) & 3 == SEL:
                    forced = True
                    break
            if forced:
                nk = (base | lit) | target_bits
                cur = get(nk)
                if cur is None or ent[0] < cur[0]:
                    out[nk] = ent
            else:
                cur = get(base)
                if cur is None or ent[0] < cur[0]:
                    out[base] = ent
                nk = (base | promised) | target_bits
                cur = get(nk)
                if cur is None or ent[0] < cur[0]:
                    out[nk] = ent
    else:  # target
        rect_shifts = [2 * posmap[r] for r in adj.rect_neighbors_of_target(v)
                       if r in posmap]
        dominated = DOMINATED << shift
        for key, ent in child.items():
            nk = (key & lowmask) | ((key >> shift) << (shift + 2))
            for rs in rect_shifts:
                if (nk >> rs) & 3:
                    nk |= dominated
                    break
            cur = get(nk)
            if cur is None or ent[0] < cur[0]:
                out[nk] = ent
    return out


def _forget(H: AuxGraph, child: dict, v: int, pos: int) -> dict:
    nu, nr = len(H.targets), len(H.rects)
    kind = "target" if v < nu else ("rect" if v < nu + nr else "guard")
    out: dict = {}
    shift = 2 * pos
    lowmask = (1 << shift) - 1
    get = out.get
    drop = PROMISED if kind == "rect" else (PENDING if kind == "target" else -1)
    check = kind != "guard"
    for key, ent in child.items():
        if check and (key >> shift) & 3 == drop:
            continue
        nk = (key & lowmask) | ((key >> (shift + 2)) << shift)
        cur = get(nk)
        if cur is None or ent[0] < cur[0]:
            out[nk] = ent
    return out


def _join(H: AuxGraph, left: dict, right: dict, bag: tuple) -> dict:
    nu, nr = len(H.targets), len(H.rects)
    guard_pos = [i for i, u in enumerate(bag) if u >= nu + nr]
    rect_pos = [i for i, u in enumerate(bag) if nu <= u < nu + nr]
    target_pos = [i for i, u in enumerate(bag) if u < nu]
    gmask = 0
    for p in guard_pos:
        gmask |= 3 << (2 * p)

    by_guard: dict[int, list] = {}
    for key, ent in right.items():
        by_guard.setdefault(key & gmask, []).append((key, ent))

    selmask = _sel_mask(guard_pos)
    out: dict = {}
    for ka, (va, sa) in left.items():
        bucket = by_guard.get(ka & gmask)
        if not bucket:
            continue
        shared = (ka & selmask).bit_count()
        for kb, (vb, sb) in bucket:
            nk = ka & gmask
            ok = True
            for p in rect_pos:
                x, y = _slot(ka, p), _slot(kb, p)
                if x == DARK and y == DARK:
                    s = DARK
                elif x != DARK and y != DARK:
                    s = LIT if LIT in (x, y) else PROMISED
                else:
                    ok = False
                    break
                nk |= s << (2 * p)
            if not ok:
                continue
            for p in target_pos:
                s = DOMINATED if (_slot(ka, p) | _slot(kb, p)) else PENDING
                nk |= s << (2 * p)
            _put(out, nk, va + vb - shared, _merge_sel(sa, sb))
    return out


def _sel_mask(guard_pos: list[int]) -> int:
    m = 0
    for p in guard_pos:
        m |= 1 << (2 * p)
    return m


def _cons_to_set(sel) -> set[int]:
    """Flatten a selection DAG of cons nodes (1, guard, rest) and lazy union
    nodes (2, left, right); shared subtrees are visited once."""
    out: set[int] = set()
    seen: set[int] = set()
    stack = [sel]
    while stack:
        node = stack.pop()
        if node is None:
            continue
        nid = id(node)
        if nid in seen:
            continue
        seen.add(nid)
        if node[0] == 1:
            out.add(node[1])
            stack.append(node[2])
        else:
            stack.append(node[1])
            stack.append(node[2])
    return out


def _merge_sel(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return (2, a, b)
