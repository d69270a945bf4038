"""Type graphs ``G(t)`` restricted to the n-subsets of ``{0, ..., N-1}``.

Two n-sets are adjacent when they are disjoint and their type is ``t`` or its
opposite.  Every 2n-subset of the ground set carries exactly one such edge
(split it according to ``t``), so the edge count is ``C(N, 2n)`` and the graph
can be generated edge-first without scanning vertex pairs.

Vertices are sorted tuples of naturals; ``colex_rank`` gives their stable
index.  ``adj`` only lists vertices that have at least one edge.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .types import DisjointType, InvalidType, opposite, specker_type, type_word


def is_edge(t: DisjointType, a, b) -> bool:
    a = sorted(a)
    b = sorted(b)
    n = t.width
    if len(a) != n or len(b) != n:
        raise InvalidType(f"sets must have size {n} (got {len(a)} and {len(b)})")
    w = type_word(a, b)
    return w is not None and (w == t.word or w == opposite(t).word)


def colex_rank(v) -> int:
    return sum(comb(x, i + 1) for i, x in enumerate(sorted(v)))


def colex_unrank(r: int, n: int) -> tuple[int, ...]:
    out = []
    for i in range(n, 0, -1):
        x = i - 1
        while comb(x + 1, i) <= r:
            x += 1
        out.append(x)
        r -= comb(x, i)
    return tuple(sorted(out))


@dataclass
class TypeGraph:
    t: DisjointType
    N: int
    adj: dict = field(repr=False)

    @property
    def n(self) -> int:
        return self.t.width

    @property
    def vertex_count(self) -> int:
        return comb(self.N, self.n)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def vertices(self):
        """All n-subsets, in colexicographic order."""
        for r in range(self.vertex_count):
            yield colex_unrank(r, self.n)

    def neighbors(self, v) -> frozenset:
        return frozenset(self.adj.get(tuple(v), ()))

    def edges(self):
        """Edges as ``(u, v)`` with ``colex_rank(u) < colex_rank(v)``, sorted."""
        out = []
        for u, nbrs in self.adj.items():
            ru = colex_rank(u)
            for v in nbrs:
                rv = colex_rank(v)
                if ru < rv:
                    out.append((ru, rv, u, v))
        out.sort()
        return [(u, v) for _, _, u, v in out]

    def induced(self, vertices) -> dict:
        keep = {tuple(v) for v in vertices}
        return {v: self.adj.get(v, set()) & keep for v in keep}


def materialize(t: DisjointType, N: int) -> TypeGraph:
    n = t.width
    if N < 2 * n:
        raise ValueError(f"N={N} is too small for an edge of width {n} (need N >= {2 * n})")
    zeros = [i for i, c in enumerate(t.word) if c == "0"]
    ones = [i for i, c in enumerate(t.word) if c == "1"]
    adj: dict[tuple, set] = {}
    for U in combinations(range(N), 2 * n):
        a = tuple(U[i] for i in zeros)
        b = tuple(U[i] for i in ones)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    return TypeGraph(t, N, adj)


def specker_graph(n: int, s: int, N: int) -> TypeGraph:
    return materialize(specker_type(n, s), N)


def neighbors_of(t: DisjointType, a, N: int) -> list[tuple[int, ...]]:
    """Neighbors of ``a`` in ``G(t)`` over ``{0..N-1}``, without materializing."""
    a = tuple(sorted(a))
    out = []
    for word in {t.word, opposite(t).word}:
        # ones between consecutive zeros of the word fill the gaps around a
        gaps = []
        count = 0
        for c in word:
            if c == "1":
                count += 1
            else:
                gaps.append(count)
                count = 0
        gaps.append(count)
        bounds = [-1, *a, N]
        choices = []
        for g, need in enumerate(gaps):
            pool = range(bounds[g] + 1, bounds[g + 1])
            if need > len(pool):
                break
            choices.append(list(combinations(pool, need)))
        else:
            for parts in product(*choices):
                out.append(tuple(x for part in parts for x in part))
    return sorted(set(out))


def sampled_subgraphs(t: DisjointType, N: int, count: int, size: int, seed: int):
    """Yield ``count`` induced subgraphs of at most ``size`` vertices.

    Each sample grows breadth-first from a random endpoint of a random edge, so
    that short cycles through the start vertex fall inside the sample.  Used
    when full materialization is too large.
    """
    rng = random.Random(seed)
    n = t.width
    zeros = [i for i, c in enumerate(t.word) if c == "0"]
    memo: dict[tuple, list] = {}

    def nbrs(v):
        if v not in memo:
            memo[v] = neighbors_of(t, v, N)
        return memo[v]

    for _ in range(count):
        U = sorted(rng.sample(range(N), 2 * n))
        start = tuple(U[i] for i in zeros)
        seen = {start: None}
        queue = deque([start])
        while queue and len(seen) < size:
            v = queue.popleft()
            for w in nbrs(v):
                if w not in seen:
                    seen[w] = None
                    queue.append(w)
                    if len(seen) >= size:
                        break
        keep = set(seen)
        yield {v: set(nbrs(v)) & keep for v in keep}
