"""Slow-growth HM graphs: every subgraph on at most ``f(k)`` vertices is ``2^(k+1)``-colorable.

From ``f`` we derive, for each ``k``, the least ``s_k > 0`` with
``f(k) <= 2 s_k + 1``, the width ``n_k = 2 s_k^2 + 1`` and a block ``I_k`` of
``n_k`` consecutive ladder positions (blocks are adjacent, starting at 0).
A limit ``alpha < beta`` becomes a lower neighbor of ``beta`` when some
``k <= k_max`` has

* ``alpha >= C_beta(k)``,
* ``e_beta(r(l_k)) = alpha``,
* ``type(C_alpha[I_j], C_beta[I_j])`` is ``t^{n_j}_{s_j}`` or its opposite for every ``j <= k``.

The least such ``k`` labels the edge.

In the default mode ``f`` is given outright and ``l_k = k``.  In name mode
``f(j)`` is read off the stream at position ``2j+1`` (folded into a small
range so that the blocks fit the ladder prefix), so ``r | l`` decides
``f(0..k)`` exactly when ``l >= 2k+2`` and ``l_k = 2k+2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .csequence import LadderSystem
from .graphprops import OrdGraph, check_homomorphism
from .hmbuild import Stream
from .ordinal import Ordinal, Universe, enum_below, is_limit
from .types import DisjointType, concat, opposite, specker_type, type_word


def least_s(v: int) -> int:
    """Least ``s > 0`` with ``v <= 2s + 1``."""
    return max(1, v // 2)


@dataclass(frozen=True)
class GrowthParams:
    f: tuple
    s: tuple
    n: tuple
    intervals: tuple  # range objects
    ell: tuple
    name_mode: bool = False

    @property
    def k_max(self) -> int:
        return len(self.f) - 1

    @property
    def horizon(self) -> int:
        """Ladder positions needed: one past the last block."""
        return self.intervals[-1].stop

    def type_at(self, k: int) -> DisjointType:
        return specker_type(self.n[k], self.s[k])

    def rows(self) -> list[dict]:
        return [
            {"k": k, "f": self.f[k], "s": self.s[k], "n": self.n[k],
             "interval": [self.intervals[k].start, self.intervals[k].stop - 1], "ell": self.ell[k]}
            for k in range(len(self.f))
        ]


def _blocks(ns) -> tuple:
    out = []
    start = 0
    for n in ns:
        out.append(range(start, start + n))
        start += n
    return tuple(out)


def derive_params(f, k_max: int) -> GrowthParams:
    values = tuple(int(f(k) if callable(f) else f[k]) for k in range(k_max + 1))
    if any(v < 0 for v in values):
        raise ValueError("f takes natural values")
    s = tuple(least_s(v) for v in values)
    n = tuple(2 * x * x + 1 for x in s)
    return GrowthParams(values, s, n, _blocks(n), tuple(range(k_max + 1)))


NAME_BASE = 3


def name_value(raw: int, fold: int) -> int:
    return NAME_BASE + raw % fold


def name_params(r: Stream, k_max: int, fold: int = 3) -> GrowthParams:
    """Parameters when ``f(j)`` comes from stream position ``2j+1``."""
    values = tuple(name_value(r.read(2 * j + 1), fold) for j in range(k_max + 1))
    s = tuple(least_s(v) for v in values)
    n = tuple(2 * x * x + 1 for x in s)
    return GrowthParams(values, s, n, _blocks(n), tuple(2 * k + 2 for k in range(k_max + 1)), True)


@dataclass(frozen=True)
class NameBookkeeping:
    """What a stream prefix ``p`` pins down about ``f`` in name mode."""

    p_len: int
    decided_len: int  # |p'|
    s: tuple
    n: tuple
    n_star: int
    t: DisjointType  # t_p, the same for every m


def bookkeeping(r: Stream, p_len: int, fold: int = 3) -> NameBookkeeping:
    """``s_{p,j}``, ``n_{p,j}``, ``n*_p`` and ``t_p`` for the prefix ``r | p_len``.

    The minimal extension deciding ``f(0..|p|)`` is read off ``r`` itself.
    """
    decided = max(p_len, 2 * p_len + 2)
    values = [name_value(r.read(2 * j + 1), fold) for j in range(p_len + 1)]
    s = tuple(least_s(v) for v in values)
    n = tuple(2 * x * x + 1 for x in s)
    t = concat(*(specker_type(nj, sj) for nj, sj in zip(n, s)))
    return NameBookkeeping(p_len, decided, s, n, sum(n), t)


@dataclass
class GrowthBuild:
    graph: OrdGraph
    labels: dict  # (lower, upper) -> minimal witnessing k
    params: GrowthParams
    universe: Universe
    ladders: LadderSystem


def _block_types(params: GrowthParams):
    out = []
    for k in range(len(params.f)):
        t = params.type_at(k)
        out.append({t.word, opposite(t).word})
    return out


def block_ok(ladders: LadderSystem, params: GrowthParams, words, alpha, beta, k: int) -> bool:
    for j in range(k + 1):
        I = params.intervals[j]
        a = ladders.slice(alpha, I.start, I.stop)
        b = ladders.slice(beta, I.start, I.stop)
        if type_word(a, b) not in words[j]:
            return False
    return True


def build_growth_hm(
    u: Universe,
    ladders: LadderSystem,
    r: Stream,
    f=None,
    k_max: int = 2,
    name_mode: bool = False,
    fold: int = 3,
) -> GrowthBuild:
    if name_mode:
        params = name_params(r, k_max, fold)
    else:
        if f is None:
            raise ValueError("f is required unless name_mode is set")
        params = derive_params(f, k_max)
    if params.horizon > u.width:
        raise ValueError(
            f"blocks need {params.horizon} ladder positions but the prefix width is {u.width}"
        )
    words = _block_types(params)
    lower = {}
    labels = {}
    for beta in u.limits:
        found: dict[Ordinal, int] = {}
        for k in range(k_max + 1):
            alpha = enum_below(beta, r.read(params.ell[k]))
            if alpha in found or not is_limit(alpha) or not alpha < beta:
                continue
            if not alpha >= ladders.at(beta, k):
                continue
            if block_ok(ladders, params, words, alpha, beta, k):
                found[alpha] = k
        lower[beta] = list(found)
        for alpha, k in found.items():
            labels[(alpha, beta)] = k
    return GrowthBuild(OrdGraph(lower, bound=u.bound), labels, params, u, ladders)


def classify_edges(G: OrdGraph, labels, k: int):
    """Split ``G`` into layers ``H_0..H_{k-1}`` (exact label) and the residue ``H_{>=k}``."""
    buckets = [[] for _ in range(k)]
    residue = []
    for e in G.edges():
        lab = labels[e]
        (buckets[lab] if lab < k else residue).append(e)
    return [G.with_edges(b) for b in buckets], G.with_edges(residue)


def layer_functional(G: OrdGraph, labels) -> list[tuple]:
    """``(beta, j)`` pairs where ``beta`` has more than one lower neighbor labelled ``j``."""
    bad = []
    for beta in G.vertices:
        seen = {}
        for alpha in G.lower[beta]:
            j = labels[(alpha, beta)]
            if j in seen:
                bad.append((beta, j))
            seen[j] = alpha
    return bad


def residue_homomorphism(build: GrowthBuild, k: int) -> bool:
    """``alpha -> C_alpha[I_k]`` maps ``H_{>=k}`` into ``S^{n_k}_{s_k}``."""
    _, residue = classify_edges(build.graph, build.labels, k)
    I = build.params.intervals[k]
    image = {v: build.ladders.slice(v, I.start, I.stop) for v in build.graph.vertices}
    return check_homomorphism(residue, image, build.params.type_at(k))
