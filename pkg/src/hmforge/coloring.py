"""Chromatic numbers of finite graphs.

``exact_chromatic`` is a DSATUR branch and bound: vertices are colored in
order of saturation (distinct neighbor colors), ties broken by degree among
uncolored vertices and then by the fixed vertex order; colors are tried
lowest first.  The lower bound is the larger of a greedy clique and 3 for a
non-bipartite component, so triangle-free graphs usually close at the first
DSATUR pass.  Connected components are solved separately.
"""

from __future__ import annotations

import random
import sys
from collections.abc import Mapping
from dataclasses import dataclass, field

from .graphprops import OrdGraph, adjacency, is_bipartite
from .specker import TypeGraph, colex_rank

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    def __init__(self, lower, upper, coloring, nodes):
        super().__init__(f"search budget exhausted after {nodes} nodes; {lower} <= chi <= {upper}")
        self.lower = lower
        self.upper = upper
        self.coloring = coloring
        self.nodes = nodes


@dataclass
class ChromaticResult:
    chi: int
    coloring: dict = field(repr=False)
    nodes: int = 0


def _vertex_order(G):
    adj = adjacency(G)
    if isinstance(G, TypeGraph):
        return sorted(adj, key=colex_rank)
    if isinstance(G, OrdGraph):
        return list(G.vertices)
    try:
        return sorted(adj)
    except TypeError:
        return list(adj)


def is_proper(G, coloring: Mapping) -> bool:
    adj = adjacency(G)
    return all(coloring[u] != coloring[v] for u in adj for v in adj[u])


def greedy_upper(G, order=None) -> tuple[int, dict]:
    """Sequential greedy coloring: each vertex gets the lowest color free of its earlier neighbors."""
    adj = adjacency(G)
    order = list(order) if order is not None else _vertex_order(G)
    coloring: dict = {}
    for v in order:
        taken = {coloring[u] for u in adj[v] if u in coloring}
        c = 0
        while c in taken:
            c += 1
        coloring[v] = c
    return (max(coloring.values()) + 1 if coloring else 0), coloring


def dsatur(adj: Mapping, order) -> dict:
    rank = {v: i for i, v in enumerate(order)}
    coloring: dict = {}
    seen_colors = {v: set() for v in order}
    uncolored = set(order)
    while uncolored:
        v = max(uncolored, key=lambda x: (len(seen_colors[x]), len(adj[x]), -rank[x]))
        c = 0
        while c in seen_colors[v]:
            c += 1
        coloring[v] = c
        uncolored.discard(v)
        for w in adj[v]:
            seen_colors[w].add(c)
    return coloring


def greedy_clique(adj: Mapping, order) -> list:
    """A maximal clique grown from each vertex in turn; the largest found."""
    rank = {v: i for i, v in enumerate(order)}
    best: list = []
    for v in order:
        clique = [v]
        cand = set(adj[v])
        while cand:
            u = min(cand, key=lambda x: (-len(adj[x] & cand), rank[x]))
            clique.append(u)
            cand &= adj[u]
        if len(clique) > len(best):
            best = clique
    return best


def _components(adj: Mapping, order) -> list[list]:
    pos = {v: i for i, v in enumerate(order)}
    seen = set()
    comps = []
    for s in order:
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp, key=pos.__getitem__))
    return comps


class _Search:
    def __init__(self, adj, order, lower, upper, best_coloring, budget):
        self.adj = adj
        self.order = order
        self.rank = {v: i for i, v in enumerate(order)}
        self.lower = lower
        self.best = upper
        self.best_coloring = best_coloring
        self.budget = budget
        self.nodes = 0
        self.color = {}
        # sat[v][c] = number of colored neighbors of v with color c
        self.sat = {v: {} for v in order}
        self.free_degree = {v: len(adj[v]) for v in order}

    def pick(self):
        best_v = None
        best_key = None
        for v in self.order:
            if v in self.color:
                continue
            key = (len(self.sat[v]), self.free_degree[v], -self.rank[v])
            if best_key is None or key > best_key:
                best_key, best_v = key, v
        return best_v

    def assign(self, v, c):
        self.color[v] = c
        for w in self.adj[v]:
            s = self.sat[w]
            s[c] = s.get(c, 0) + 1
            self.free_degree[w] -= 1

    def unassign(self, v, c):
        del self.color[v]
        for w in self.adj[v]:
            s = self.sat[w]
            s[c] -= 1
            if not s[c]:
                del s[c]
            self.free_degree[w] += 1

    def run(self, used: int):
        if self.best == self.lower:
            return
        if len(self.color) == len(self.order):
            self.best = used
            self.best_coloring = dict(self.color)
            return
        v = self.pick()
        for c in range(min(used + 1, self.best - 1)):
            if c in self.sat[v]:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(self.lower, self.best, self.best_coloring, self.nodes)
            self.assign(v, c)
            self.run(max(used, c + 1))
            self.unassign(v, c)
            if self.best == self.lower:
                return


def _solve_component(adj, comp, budget):
    if len(comp) == 1:
        return 1, {comp[0]: 0}, 0
    sub = {v: adj[v] for v in comp}
    if is_bipartite(sub):
        coloring = _two_color(sub, comp)
        return 2, coloring, 0
    heur = dsatur(sub, comp)
    upper = max(heur.values()) + 1
    lower = max(3, len(greedy_clique(sub, comp)))
    if lower >= upper:
        return upper, heur, 0
    search = _Search(sub, comp, lower, upper, heur, budget)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(comp) + 1000))
    try:
        search.run(0)
    finally:
        sys.setrecursionlimit(limit)
    return search.best, search.best_coloring, search.nodes


def _two_color(adj, comp):
    coloring = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in coloring:
                coloring[w] = 1 - coloring[v]
                stack.append(w)
    return coloring


def exact_chromatic(G, budget: int = DEFAULT_BUDGET) -> ChromaticResult:
    """Exact chromatic number with a witness coloring.

    Raises ``BudgetExceeded`` (carrying the best bounds and coloring found)
    when the search visits more than ``budget`` nodes.
    """
    adj = adjacency(G)
    order = _vertex_order(G)
    if not order:
        return ChromaticResult(0, {}, 0)
    chi = 0
    coloring: dict = {}
    nodes = 0
    lower_so_far = 0
    for comp in _components(adj, order):
        try:
            k, col, used = _solve_component(adj, comp, max(budget - nodes, 0))
        except BudgetExceeded as exc:
            partial = dict(coloring)
            partial.update(exc.coloring)
            raise BudgetExceeded(
                max(lower_so_far, exc.lower), max(chi, exc.upper), partial, nodes + exc.nodes
            ) from None
        nodes += used
        chi = max(chi, k)
        lower_so_far = chi
        coloring.update(col)
    if not is_proper(adj, coloring):
        raise AssertionError("solver produced an improper coloring")
    return ChromaticResult(chi, coloring, nodes)


def chromatic_number(G, budget: int = DEFAULT_BUDGET) -> int:
    return exact_chromatic(G, budget).chi


# -- growth checks ---------------------------------------------------------


@dataclass
class GrowthReport:
    k: int
    f_k: int
    bound: int
    samples: int
    max_chi: int = 0
    skipped: int = 0
    over_bound: list = field(default_factory=list)
    decomposition_failures: list = field(default_factory=list)
    layer_cycles: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.over_bound and not self.decomposition_failures and not self.layer_cycles

    def csv_row(self) -> list:
        return [self.k, self.f_k, self.bound, self.max_chi, self.samples]


def _grow_sample(rng, G: OrdGraph, size: int) -> list:
    verts = list(G.vertices)
    touched = [v for v in verts if G.adj[v]]
    start = rng.choice(touched or verts)
    chosen = [start]
    inside = {start}
    while len(chosen) < min(size, len(verts)):
        frontier = sorted({w for v in chosen for w in G.adj[v]} - inside)
        if frontier:
            nxt = rng.choice(frontier)
        else:
            rest = [v for v in verts if v not in inside]
            nxt = rng.choice(rest)
        chosen.append(nxt)
        inside.add(nxt)
    return chosen


def verify_growth_bound(
    G: OrdGraph,
    f,
    k: int,
    samples: int,
    seed: int,
    labels: Mapping | None = None,
    budget: int = DEFAULT_BUDGET,
) -> GrowthReport:
    """Sample induced subgraphs on at most ``f(k)`` vertices and check ``chi <= 2^(k+1)``.

    With edge ``labels`` (minimal witnessing step per edge) each sample is also
    split into layers ``H_j`` (label ``j < k``) and the residue ``H_{>=k}``;
    every layer must be a forest and ``chi(H) <= chi(H_{>=k}) * prod chi(H_j)``.
    """
    f_k = f(k) if callable(f) else f[k]
    report = GrowthReport(k=k, f_k=f_k, bound=2 ** (k + 1), samples=samples)
    if not G.vertices:
        return report
    rng = random.Random(seed)
    for i in range(samples):
        H = G.induced(_grow_sample(rng, G, f_k))
        try:
            chi = exact_chromatic(H, budget).chi
        except BudgetExceeded:
            report.skipped += 1
            continue
        report.max_chi = max(report.max_chi, chi)
        if chi > report.bound:
            report.over_bound.append((i, chi, list(H.vertices)))
        if labels is None:
            continue
        layers, residue = split_by_label(H, labels, k)
        product = 1
        for j, layer in enumerate(layers):
            if has_cycle(layer):
                report.layer_cycles.append((i, j))
            product *= max(1, exact_chromatic(layer, budget).chi)
        product *= max(1, exact_chromatic(residue, budget).chi)
        if chi > product:
            report.decomposition_failures.append((i, chi, product))
    return report


def split_by_label(H: OrdGraph, labels: Mapping, k: int):
    buckets = [[] for _ in range(k)]
    residue = []
    for u, v in H.edges():
        lab = labels[(u, v)] if (u, v) in labels else labels[(v, u)]
        (buckets[lab] if lab < k else residue).append((u, v))
    return [H.with_edges(b) for b in buckets], H.with_edges(residue)


def has_cycle(G) -> bool:
    adj = adjacency(G)
    parent = {}
    for s in adj:
        if s in parent:
            continue
        parent[s] = None
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w == parent[v]:
                    continue
                if w in parent:
                    return True
                parent[w] = v
                stack.append(w)
    return False


# -- f_G -------------------------------------------------------------------


@dataclass
class FEstimate:
    k: int
    value: int | None
    lower_bound: int
    witness: list | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None


def connected_sets(adj: Mapping, order, cap: int):
    """Every connected vertex set of size at most ``cap``, each exactly once."""
    pos = {v: i for i, v in enumerate(order)}

    def extend(sub, ext, root, sub_nbhd):
        yield sub
        if len(sub) == cap:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            fresh = [
                u for u in adj[w]
                if pos[u] > pos[root] and u not in sub and u not in sub_nbhd
            ]
            yield from extend(sub + [w], ext + fresh, root, sub_nbhd | adj[w] | {w})

    for v in order:
        start_ext = [u for u in adj[v] if pos[u] > pos[v]]
        yield from extend([v], start_ext, v, set(adj[v]) | {v})


def estimate_f_G(G, k: int, size_cap: int, budget: int = DEFAULT_BUDGET) -> FEstimate:
    """Least vertex count of a subgraph with chromatic number ``k``.

    Searches connected induced subgraphs by size up to ``size_cap``; a minimum
    one is vertex-critical, so candidates with a vertex of inner degree below
    ``k - 1`` are skipped.  Returns ``value=None`` with ``lower_bound =
    size_cap + 1`` when nothing is found.
    """
    if k < 1:
        raise ValueError("k must be positive")
    adj = adjacency(G)
    order = _vertex_order(G)
    if k == 1:
        return FEstimate(1, 1 if order else None, 1, order[:1] or None)
    by_size: dict[int, list] = {}
    for s in connected_sets(adj, order, size_cap):
        if len(s) >= k:
            by_size.setdefault(len(s), []).append(s)
    for size in sorted(by_size):
        for s in by_size[size]:
            keep = set(s)
            sub = {v: adj[v] & keep for v in s}
            if any(len(sub[v]) < k - 1 for v in s):
                continue
            if k == 3:
                if not is_bipartite(sub):
                    return FEstimate(k, size, size, s)
                continue
            if exact_chromatic(sub, budget).chi >= k:
                return FEstimate(k, size, size, s)
    return FEstimate(k, None, size_cap + 1, None)
