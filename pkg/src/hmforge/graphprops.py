"""Graphs on ordered vertex sets and the structural checks run on them.

``OrdGraph`` stores, for each materialized vertex, the set of its neighbors
that precede it.  Vertices must be mutually comparable with ``<`` (ordinals,
integers, tree nodes).  ``level`` maps a vertex to the ordinal it sits at;
for plain ordinal graphs that is the vertex itself, for tree nodes it is the
node's height.

An optional ``bound`` makes every ordinal below it a vertex: the ones that are
not materialized are isolated, which is how successor ordinals are carried.

Verifiers that only need adjacency accept an ``OrdGraph``, a ``TypeGraph`` or
a plain ``{vertex: set_of_neighbors}`` dict.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass, field

from .ordinal import Ordinal, is_successor
from .specker import is_edge
from .types import DisjointType


class GraphError(ValueError):
    pass


def _identity(v):
    return v


@dataclass(eq=False)
class OrdGraph:
    lower: dict = field(repr=False)
    bound: object = None
    level: object = _identity

    def __post_init__(self):
        self.lower = {v: frozenset(ns) for v, ns in self.lower.items()}
        for v, ns in self.lower.items():
            for u in ns:
                if u not in self.lower:
                    raise GraphError(f"lower neighbor {u} of {v} is not a vertex")
                if not u < v:
                    raise GraphError(f"lower neighbor {u} does not precede {v}")
        self.vertices = tuple(sorted(self.lower))
        adj = {v: set() for v in self.vertices}
        for v, ns in self.lower.items():
            for u in ns:
                adj[v].add(u)
                adj[u].add(v)
        self.adj = {v: frozenset(s) for v, s in adj.items()}

    @classmethod
    def from_edges(cls, vertices, edges, **kw) -> OrdGraph:
        lower = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            lo, hi = (u, v) if u < v else (v, u)
            lower[hi].add(lo)
        return cls(lower, **kw)

    def is_vertex(self, v) -> bool:
        if v in self.lower:
            return True
        if self.bound is None:
            return False
        try:
            return v < self.bound
        except TypeError:
            return False

    def lower_neighbors(self, v) -> frozenset:
        if v in self.lower:
            return self.lower[v]
        if self.is_vertex(v):
            return frozenset()
        raise GraphError(f"{v} is not a vertex")

    def neighbors(self, v) -> frozenset:
        if v in self.adj:
            return self.adj[v]
        if self.is_vertex(v):
            return frozenset()
        raise GraphError(f"{v} is not a vertex")

    def edges(self) -> list[tuple]:
        """``(lower, upper)`` pairs sorted by upper then lower endpoint."""
        return [(u, v) for v in self.vertices for u in sorted(self.lower[v])]

    @property
    def edge_count(self) -> int:
        return sum(len(ns) for ns in self.lower.values())

    def induced(self, keep) -> OrdGraph:
        keep = set(keep)
        return OrdGraph(
            {v: self.lower[v] & keep for v in self.vertices if v in keep},
            bound=None,
            level=self.level,
        )

    def with_edges(self, edges) -> OrdGraph:
        """Same vertex set, only the given edges."""
        lower = {v: set() for v in self.vertices}
        for u, v in edges:
            lo, hi = (u, v) if u < v else (v, u)
            lower[hi].add(lo)
        return OrdGraph(lower, bound=self.bound, level=self.level)


def adjacency(G) -> Mapping:
    if isinstance(G, Mapping):
        return G
    return G.adj


# -- odd cycles ------------------------------------------------------------


def shortest_odd_cycle_upto(G, limit: int):
    """Shortest odd cycle of length at most ``limit``, as ``(length, cycle)``.

    Breadth-first search on the bipartite double cover from ``(s, even)``: the
    first time ``(s, odd)`` is reached gives the shortest odd closed walk
    through ``s``.  The overall shortest odd closed walk is a simple cycle.
    The cycle is returned as a vertex list ``[v0, ..., v_{L-1}, v0]``.
    """
    if limit < 3 or limit % 2 == 0:
        raise ValueError("limit must be an odd number >= 3")
    adj = adjacency(G)
    best = None
    cap = limit
    for s in _ordered(adj):
        if not adj[s]:
            continue
        found = _odd_walk_from(adj, s, cap)
        if found is not None:
            best = found
            cap = len(found) - 1 - 2  # only strictly shorter odd walks matter now
            if cap < 3:
                break
    if best is None:
        return None
    length = len(best) - 1
    _verify_cycle(adj, best)
    return length, best


def _ordered(adj):
    try:
        return sorted(adj)
    except TypeError:
        return list(adj)


def _odd_walk_from(adj, s, cap):
    start = (s, 0)
    goal = (s, 1)
    parent = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        node, d = frontier.popleft()
        if d >= cap:
            continue
        v, p = node
        for w in adj[v]:
            nxt = (w, 1 - p)
            if nxt in parent:
                continue
            parent[nxt] = node
            if nxt == goal:
                walk = [s]
                cur = node
                while cur is not None:
                    walk.append(cur[0])
                    cur = parent[cur]
                return walk[::-1]
            frontier.append((nxt, d + 1))
    return None


def _verify_cycle(adj, cycle):
    body = cycle[:-1]
    if cycle[0] != cycle[-1] or len(set(body)) != len(body) or len(body) < 3:
        raise AssertionError(f"not a simple cycle: {cycle}")
    for u, v in zip(cycle, cycle[1:]):
        if v not in adj[u]:
            raise AssertionError(f"missing edge {u}-{v} in witness cycle")


def is_bipartite(G) -> bool:
    adj = adjacency(G)
    side = {}
    for s in adj:
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in side:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True


# -- special cycles --------------------------------------------------------


def _descending_reach(G: OrdGraph) -> dict:
    reach = {}
    for v in G.vertices:
        r = set()
        for u in G.lower[v]:
            r.add(u)
            r |= reach[u]
        reach[v] = frozenset(r)
    return reach


def find_special_cycle(G: OrdGraph):
    """A cycle made of one decreasing and one increasing path, or None.

    Such a cycle is a peak ``p`` and a bottom ``m`` joined by two internally
    disjoint decreasing paths.  For each pair with ``m`` reachable from ``p``
    this runs a two-unit vertex-capacitated flow on the decreasing edges
    between them.  The cycle is returned as ``[p, ..., m, ..., p]``.
    """
    reach = _descending_reach(G)
    for p in G.vertices:
        below = reach[p]
        if len(G.lower[p]) < 1:
            continue
        for m in sorted(below):
            inner = {w for w in below if m < w and m in reach[w]}
            paths = _two_disjoint_paths(G, p, m, inner)
            if paths is None:
                continue
            first, second = paths
            cycle = first + second[::-1][1:]
            _verify_special(G, cycle)
            return cycle
    return None


def _two_disjoint_paths(G, p, m, inner):
    # split every inner vertex into (v, 0) -> (v, 1) with capacity 1
    cap = {}
    nbrs = {}

    def add(a, b):
        cap[(a, b)] = cap.get((a, b), 0) + 1
        cap.setdefault((b, a), 0)
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)

    source = (p, 1)
    sink = (m, 0)
    for w in inner:
        add((w, 0), (w, 1))
    for w in inner | {p}:
        for u in G.lower[w]:
            if u == m or u in inner:
                add((w, 1), (u, 0))
    flow = 0
    for _ in range(2):
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in nbrs.get(x, ()):
                if y not in parent and cap[(x, y)] > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            return None
        y = sink
        while parent[y] is not None:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    # read the two paths off the saturated forward arcs
    used = {}
    for (a, b), c in cap.items():
        if a[1] == 1 and b[1] == 0 and c == 0 and (b, a) in cap and cap[(b, a)] > 0:
            used.setdefault(a[0], []).append(b[0])
    paths = []
    for _ in range(2):
        path = [p]
        v = p
        while v != m:
            v = used[v].pop()
            path.append(v)
        paths.append(path)
    return paths


def _verify_special(G, cycle):
    _verify_cycle(G.adj, cycle)
    body = cycle[:-1]
    n = len(body)
    r = 0
    while r < n and cycle[r] > cycle[r + 1]:
        r += 1
    if r == 0 or any(not cycle[i] < cycle[i + 1] for i in range(r, n)):
        raise AssertionError(f"cycle is not special: {cycle}")


def is_special(cycle) -> bool:
    """Whether ``[x0, ..., x_{n-1}, x0]`` decreases then increases."""
    n = len(cycle) - 1
    r = 0
    while r < n and cycle[r] > cycle[r + 1]:
        r += 1
    return r > 0 and all(cycle[i] < cycle[i + 1] for i in range(r, n))


# -- covering --------------------------------------------------------------


def is_delta_covered(G: OrdGraph, beta, delta) -> bool:
    """Whether a strictly decreasing path from ``beta`` reaches level ``<= delta``."""
    if not G.is_vertex(beta):
        raise GraphError(f"{beta} is not a vertex")
    if G.level(beta) <= delta:
        return True
    stack = [beta]
    seen = {beta}
    while stack:
        v = stack.pop()
        for u in G.lower_neighbors(v):
            if G.level(u) <= delta:
                return True
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return False


def lowest_reachable(G: OrdGraph) -> dict:
    """For each vertex, the least level reachable by a nonempty decreasing path."""
    out = {}
    for v in G.vertices:
        best = None
        for u in G.lower[v]:
            cand = G.level(u)
            if out[u] is not None and out[u] < cand:
                cand = out[u]
            if best is None or cand < best:
                best = cand
        out[v] = best
    return out


# -- sparseness and homomorphisms -----------------------------------------


def check_hm_sparseness(G: OrdGraph, bounds: Mapping, k_max: int, strict: bool = True) -> list[dict]:
    """Check the finite shadow of "finitely many lower neighbors below each level".

    ``bounds[v]`` lists thresholds ``c_0 < c_1 < ...`` (the ladder of ``v``'s
    level).  Each lower neighbor must be charged to its own step ``k < k_max``
    whose threshold lies below it (``<`` when ``strict``, else ``<=``); this is
    checked as Hall's condition on the sorted neighbors.  Also checked: lower
    neighbors lie strictly below, and successor-level vertices have none.
    """
    out = []
    for v in G.vertices:
        ns = sorted(G.lower[v], key=G.level)
        lv = G.level(v)
        if isinstance(lv, Ordinal) and is_successor(lv) and ns:
            out.append({"kind": "successor-has-lower-neighbors", "vertex": v, "detail": ns})
        for u in ns:
            if not G.level(u) < lv:
                out.append({"kind": "not-below", "vertex": v, "detail": [u]})
        if not ns:
            continue
        if len(ns) > k_max:
            out.append({"kind": "too-many-lower-neighbors", "vertex": v, "detail": ns})
            continue
        thresholds = list(bounds[v])[:k_max]
        for j, u in enumerate(ns, start=1):
            lu = G.level(u)
            room = sum(1 for c in thresholds if (c < lu if strict else c <= lu))
            if room < j:
                out.append({"kind": "step-budget-exceeded", "vertex": v, "detail": ns[:j]})
                break
    return out


def homomorphism_violations(G, image: Mapping, t: DisjointType) -> list[tuple]:
    bad = []
    edges = G.edges() if isinstance(G, OrdGraph) else _dict_edges(adjacency(G))
    for u, v in edges:
        if u not in image or v not in image:
            missing = u if u not in image else v
            raise GraphError(f"no image for vertex {missing}")
        if not is_edge(t, image[u], image[v]):
            bad.append((u, v))
    return bad


def check_homomorphism(G, image: Mapping, t: DisjointType) -> bool:
    return not homomorphism_violations(G, image, t)


def _dict_edges(adj):
    seen = set()
    out = []
    for u in adj:
        for v in adj[u]:
            key = frozenset((u, v))
            if key not in seen:
                seen.add(key)
                out.append((u, v))
    return out
