"""Tree decompositions: canonical width-1 construction for trees, min-fill
elimination otherwise, a validating checker, and the lift from the dual graph
to the auxiliary graph.

Every construction is followed by validate_decomposition in the test suite;
reported widths are upper bounds on the true treewidth by construction.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from rguard.aux_graph import AuxGraph
from rguard.pixelation import DualGraph


class DecompositionError(ValueError):
    pass


@dataclass(slots=True)
class TreeDecomposition:
    bags: list[tuple[int, ...]]
    tree_edges: list[tuple[int, int]]
    universe: str  # 'dual' or 'aux'

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def dump(self) -> str:
        """The common 's td' text exchange format (1-based ids)."""
        nv = max((max(b) for b in self.bags if b), default=-1) + 1
        lines = [f"s td {len(self.bags)} {max(len(b) for b in self.bags)} {nv}"]
        for i, b in enumerate(self.bags):
            lines.append("b " + " ".join([str(i + 1)] + [str(v + 1) for v in b]))
        for a, b in self.tree_edges:
            lines.append(f"{a + 1} {b + 1}")
        return "\n".join(lines) + "\n"


@dataclass(slots=True)
class DecompositionReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def decompose_dual(D: DualGraph) -> TreeDecomposition:
    """Width-1 canonical decomposition when D is a tree, min-fill otherwise.
    Disconnected duals are rejected; solve components independently upstream."""
    n = D.n
    if n == 0:
        raise DecompositionError("empty dual graph")
    if not _connected(n, D.adj):
        raise DecompositionError("dual graph is disconnected")
    if n == 1:
        return TreeDecomposition([(0,)], [], "dual")
    if len(D.edges) == n - 1:
        return _tree_decomposition_of_tree(n, D.adj)
    order = _min_fill_order(n, D.adj)
    return _decomposition_from_order(n, D.adj, order)


def _connected(n: int, adj: list[list[int]]) -> bool:
    seen = [False] * n
    seen[0] = True
    dq = deque([0])
    cnt = 1
    while dq:
        u = dq.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                cnt += 1
                dq.append(v)
    return cnt == n


def _tree_decomposition_of_tree(n: int, adj: list[list[int]]) -> TreeDecomposition:
    parent = [-1] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    dq = deque([0])
    while dq:
        u = dq.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
                dq.append(v)
    bags = []
    bag_of = {}
    for v in order[1:]:
        bag_of[v] = len(bags)
        bags.append(tuple(sorted((v, parent[v]))))
    edges = []
    root_children = sorted(v for v in order[1:] if parent[v] == 0)
    hub = bag_of[root_children[0]]
    for v in order[1:]:
        if parent[v] == 0:
            if bag_of[v] != hub:
                edges.append((hub, bag_of[v]))
        else:
            edges.append((bag_of[parent[v]], bag_of[v]))
    return TreeDecomposition(bags, sorted(edges), "dual")


def _min_fill_order(n: int, adj: list[list[int]]) -> list[int]:
    nb: list[set[int]] = [set(a) for a in adj]
    alive = set(range(n))
    order = []
    while alive:
        best_v, best_cost = -1, None
        for v in sorted(alive):
            ns = nb[v]
            cost = 0
            ns_list = sorted(ns)
            for i, a in enumerate(ns_list):
                for b in ns_list[i + 1:]:
                    if b not in nb[a]:
                        cost += 1
            if best_cost is None or cost < best_cost:
                best_v, best_cost = v, cost
        v = best_v
        ns = sorted(nb[v])
        for i, a in enumerate(ns):
            for b in ns[i + 1:]:
                nb[a].add(b)
                nb[b].add(a)
        for a in ns:
            nb[a].discard(v)
        nb[v] = set()
        alive.discard(v)
        order.append(v)
    return order


def _decomposition_from_order(n: int, adj: list[list[int]],
                              order: list[int]) -> TreeDecomposition:
    pos = {v: i for i, v in enumerate(order)}
    nb: list[set[int]] = [set(a) for a in adj]
    bags = []
    later_nb: list[list[int]] = []
    for v in order:
        ns = sorted(nb[v])
        bags.append(tuple(sorted([v] + ns)))
        later_nb.append(ns)
        for i, a in enumerate(ns):
            for b in ns[i + 1:]:
                nb[a].add(b)
                nb[b].add(a)
        for a in ns:
            nb[a].discard(v)
        nb[v] = set()
    edges = []
    for i, ns in enumerate(later_nb):
        if ns:
            j = min(pos[a] for a in ns)
            edges.append((min(i, j), max(i, j)))
    return TreeDecomposition(bags, sorted(set(edges)), "dual")


def validate_decomposition(n_vertices: int, edges: list[tuple[int, int]],
                           T: TreeDecomposition) -> DecompositionReport:
    """Check vertex coverage, edge coverage and occurrence-subtree
    connectivity; every violation is reported with a witness."""
    rep = DecompositionReport()
    nb = len(T.bags)
    if len(T.tree_edges) != nb - 1:
        rep.problems.append(
            f"decomposition tree has {len(T.tree_edges)} edges for {nb} bags")
    if not _connected(nb, T.neighbors()) and nb > 1:
        rep.problems.append("decomposition tree is disconnected")

    occurrences: dict[int, list[int]] = {}
    for bi, bag in enumerate(T.bags):
        for v in bag:
            occurrences.setdefault(v, []).append(bi)
    for v in range(n_vertices):
        if v not in occurrences:
            rep.problems.append(f"vertex {v} appears in no bag")
    bagsets = [set(b) for b in T.bags]
    for u, v in edges:
        if not any(u in b and v in b for b in bagsets):
            rep.problems.append(f"edge ({u},{v}) covered by no bag")
    adj = T.neighbors()
    for v, occ in occurrences.items():
        if len(occ) <= 1:
            continue
        members = set(occ)
        seen = {occ[0]}
        dq = deque([occ[0]])
        while dq:
            b = dq.popleft()
            for nb2 in adj[b]:
                if nb2 in members and nb2 not in seen:
                    seen.add(nb2)
                    dq.append(nb2)
        if len(seen) != len(members):
            rep.problems.append(f"bags containing vertex {v} are not connected")
    return rep


def lift_to_H(T: TreeDecomposition, H: AuxGraph) -> TreeDecomposition:
    """Replace each pixel of every bag by the targets it contains, the guards
    and rectangles intersecting it; pixels themselves are dropped."""
    if T.universe != "dual":
        raise DecompositionError("lift expects a decomposition of the dual graph")
    n_pix = 1 + max((v for bag in T.bags for v in bag), default=0)
    per_pixel: list[list[int]] = [[] for _ in range(n_pix)]
    for t in H.targets:
        for pid in t.home_pixels:
            per_pixel[pid].append(H.tid(t.id))
    for mr in H.rects:
        for pid in mr.pixel_ids:
            per_pixel[pid].append(H.rid(mr.id))
    for g in H.guards:
        for pid in g.home_pixels:
            per_pixel[pid].append(H.gid(g.id))
    bags = []
    for bag in T.bags:
        content: set[int] = set()
        for pid in bag:
            content.update(per_pixel[pid])
        bags.append(tuple(sorted(content)))
    return TreeDecomposition(bags, list(T.tree_edges), "aux")


def aux_graph_edges(H: AuxGraph) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edge list of H in the lifted id space."""
    edges = []
    for ti, rs in enumerate(H.ur):
        for ri in rs:
            edges.append((H.tid(ti), H.rid(ri)))
    for gi, rs in enumerate(H.gr):
        for ri in rs:
            edges.append((H.rid(ri), H.gid(gi)))
    return H.n_vertices, edges


def exact_treewidth_at_most(n: int, adj: list[list[int]], k: int) -> bool:
    """Exact check tw(G) <= k by memoized elimination search (tiny graphs)."""
    nb0 = tuple(frozenset(a) for a in adj)
    memo: dict[frozenset, bool] = {}

    def rec(alive: frozenset, nb: dict[int, frozenset]) -> bool:
        if len(alive) <= k + 1:
            return True
        key = frozenset((v, nb[v]) for v in alive)
        if key in memo:
            return memo[key]
        ok = False
        for v in sorted(alive):
            if len(nb[v]) <= k:
                nxt = dict(nb)
                ns = nb[v]
                for a in ns:
                    nxt[a] = (nxt[a] | ns) - {a, v}
                del nxt[v]
                if rec(alive - {v}, nxt):
                    ok = True
                    break
        memo[key] = ok
        return ok

    return rec(frozenset(range(n)), {v: nb0[v] for v in range(n)})
