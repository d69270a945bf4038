"""Sparse graphs on limit ordinals (and on tree nodes) that map into a Specker graph.

``build_cohen_hm`` walks the limits in increasing order.  At limit ``beta``
step ``k`` proposes ``alpha = e_beta(r(k))`` for a stream ``r``; ``alpha``
becomes a lower neighbor of ``beta`` when

* it is a limit below ``beta``,
* ``C_alpha(n)`` exceeds every neighbor accepted so far and ``C_beta(n)``,
* ``alpha`` exceeds every neighbor accepted so far and ``C_beta(k)``,
* ``{C_alpha[n], C_beta[n]}`` is an edge of ``S^n_s``.

Successor ordinals get no lower neighbors.  The trace records a verdict for
every step so that a build can be replayed and audited.

``build_tree_hm`` applies the same four rules to nodes of ``^{<w*M} w``
materialized along explicit branches, except that at step ``k`` it takes the
least limit ``alpha`` with ``f(alpha) = k`` instead of reading a stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .csequence import LadderSystem
from .graphprops import OrdGraph
from .ordinal import Ordinal, Universe, enum_below, enum_inverse, format_ordinal, is_limit, parse_ordinal
from .types import opposite, specker_type, type_word

ACCEPTED = "accepted"
NOT_LIMIT = "not a processed limit"
LADDER_TOO_LOW = "ladder entry n not above earlier neighbors and C_beta(n)"
NOT_ABOVE_STEP = "not above earlier neighbors and C_beta(k)"
WRONG_TYPE = "ladder prefixes not an edge of S^n_s"


class Stream:
    """Deterministic stand-in for a generic real ``r: w -> w``.

    Positions below ``len(prefix)`` read the prefix.  Every other position
    ``i`` reads the ``i``-th draw of ``random.Random(seed)``, uniform on
    ``[0, base + slope*i)``, so extending the prefix never shifts later values.
    """

    def __init__(self, seed: int, prefix=(), base: int = 8, slope: int = 2):
        if base < 1 or slope < 0:
            raise ValueError("stream bound schedule must be positive")
        self.seed = seed
        self.prefix = tuple(int(x) for x in prefix)
        if any(x < 0 for x in self.prefix):
            raise ValueError("stream values are naturals")
        self.base = base
        self.slope = slope
        self._rng = random.Random(seed)
        self._drawn: list[int] = []

    def bound(self, i: int) -> int:
        return self.base + self.slope * i

    def _generated(self, i: int) -> int:
        while len(self._drawn) <= i:
            self._drawn.append(self._rng.randrange(self.bound(len(self._drawn))))
        return self._drawn[i]

    def read(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative stream position")
        if i < len(self.prefix):
            return self.prefix[i]
        return self._generated(i)

    def head(self, m: int) -> tuple[int, ...]:
        return tuple(self.read(i) for i in range(m))

    def with_prefix(self, prefix) -> Stream:
        return Stream(self.seed, prefix, self.base, self.slope)

    def config(self) -> dict:
        return {"seed": self.seed, "prefix": list(self.prefix), "base": self.base, "slope": self.slope}


@dataclass
class Step:
    k: int
    index: int
    candidate: Ordinal
    verdict: str


@dataclass
class BuildTrace:
    n: int
    s: int
    k_max: int
    steps: dict = field(default_factory=dict)

    def accepted(self, beta) -> list[Step]:
        return [st for st in self.steps.get(beta, []) if st.verdict == ACCEPTED]

    def k_set(self, beta) -> list[int]:
        return [st.k for st in self.accepted(beta)]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "k_max": self.k_max,
            "steps": {
                format_ordinal(b): [
                    {"k": st.k, "index": st.index, "candidate": format_ordinal(st.candidate), "verdict": st.verdict}
                    for st in sts
                ]
                for b, sts in sorted(self.steps.items())
            },
        }

    @classmethod
    def from_dict(cls, doc: dict) -> BuildTrace:
        steps = {
            parse_ordinal(b): [
                Step(d["k"], d["index"], parse_ordinal(d["candidate"]), d["verdict"]) for d in sts
            ]
            for b, sts in doc["steps"].items()
        }
        return cls(doc["n"], doc["s"], doc["k_max"], steps)


@dataclass
class HMBuild:
    graph: OrdGraph
    trace: BuildTrace
    universe: Universe
    ladders: LadderSystem


def _check_params(u: Universe, n: int, s: int, k_max: int):
    if s < 1:
        raise ValueError("s must be at least 1")
    if n < 2 * s * s + 1:
        raise ValueError(f"n={n} is below 2s^2+1={2 * s * s + 1}")
    if n > u.width:
        raise ValueError(f"n={n} exceeds the prefix width {u.width}")
    if k_max > u.width:
        raise ValueError(f"K_max={k_max} exceeds the prefix width {u.width}")


class _Rules:
    """The four neighbor rules, shared by the stream and tree constructions."""

    def __init__(self, ladders: LadderSystem, n: int, s: int):
        self.L = ladders
        self.n = n
        t = specker_type(n, s)
        self.words = {t.word, opposite(t).word}

    def verdict(self, beta, alpha, k, accepted: list) -> str:
        L, n = self.L, self.n
        if not is_limit(alpha) or not alpha < beta:
            return NOT_LIMIT
        top = max(accepted) if accepted else None
        floor_n = L.at(beta, n)
        if top is not None and top > floor_n:
            floor_n = top
        if not L.at(alpha, n) > floor_n:
            return LADDER_TOO_LOW
        floor_k = L.at(beta, k)
        if top is not None and top > floor_k:
            floor_k = top
        if not alpha > floor_k:
            return NOT_ABOVE_STEP
        if type_word(L.prefix(alpha, n), L.prefix(beta, n)) not in self.words:
            return WRONG_TYPE
        return ACCEPTED


def build_cohen_hm(u: Universe, ladders: LadderSystem, r: Stream, n: int, s: int, k_max: int | None = None) -> HMBuild:
    k_max = u.width if k_max is None else k_max
    _check_params(u, n, s, k_max)
    rules = _Rules(ladders, n, s)
    trace = BuildTrace(n, s, k_max)
    lower = {}
    for beta in u.limits:
        accepted: list[Ordinal] = []
        steps = []
        for k in range(k_max):
            idx = r.read(k)
            alpha = enum_below(beta, idx)
            verdict = rules.verdict(beta, alpha, k, accepted)
            if verdict == ACCEPTED:
                accepted.append(alpha)
            steps.append(Step(k, idx, alpha, verdict))
        trace.steps[beta] = steps
        lower[beta] = accepted
    return HMBuild(OrdGraph(lower, bound=u.bound), trace, u, ladders)


def replay(trace: BuildTrace, u: Universe) -> OrdGraph:
    """Rebuild the graph from the accepted steps alone."""
    lower = {beta: [st.candidate for st in trace.accepted(beta)] for beta in u.limits}
    return OrdGraph(lower, bound=u.bound)


def ladder_image(ladders: LadderSystem, n: int):
    """``beta -> C_beta[n]`` on the limits."""
    return {a: ladders.prefix(a, n) for a in ladders.universe.limits}


# -- density mirror --------------------------------------------------------


@dataclass
class ForcedEdge:
    prefix: tuple
    beta: Ordinal
    alpha: Ordinal
    color: int


def force_monochromatic_edge(
    u: Universe, ladders: LadderSystem, r_prefix, f, n: int, s: int, k_max: int | None = None
) -> ForcedEdge | None:
    """Extend a stream prefix by one value so that the build joins two same-colored limits.

    With ``m = len(r_prefix)``, looks for a limit ``beta`` and a limit
    ``alpha < beta`` of the same color under ``f`` whose ladder entry ``n``
    clears every candidate the prefix already proposes at ``beta``, as well as
    ``C_beta(n)`` and ``C_beta(m)``, and whose ``n``-prefix forms an edge with
    that of ``beta``.  Appending ``enum_inverse(beta, alpha)`` then makes step
    ``m`` at ``beta`` accept ``alpha`` whatever the rest of the stream says.
    Returns None when the universe has no such pair.
    """
    k_max = u.width if k_max is None else k_max
    _check_params(u, n, s, k_max)
    prefix = tuple(r_prefix)
    m = len(prefix)
    if m >= k_max:
        return None
    color = f if callable(f) else f.__getitem__
    t = specker_type(n, s)
    words = {t.word, opposite(t).word}
    for beta in u.limits:
        decided = [enum_below(beta, i) for i in prefix]
        floor = max([ladders.at(beta, n), ladders.at(beta, m), *decided])
        want = color(beta)
        for alpha in u.limits:
            if not alpha < beta:
                break
            if color(alpha) != want or not ladders.at(alpha, n) > floor:
                continue
            if type_word(ladders.prefix(alpha, n), ladders.prefix(beta, n)) in words:
                return ForcedEdge(prefix + (enum_inverse(beta, alpha),), beta, alpha, want)
    return None


# -- tree construction -----------------------------------------------------


@dataclass(frozen=True, order=True)
class TreeNode:
    """``f`` restricted to ``level``: its values at the limits below ``level``.

    Branches are 0 at every successor ordinal and at 0, so a node is fixed by
    its level and its values at ``w, w*2, ...`` below that level.
    """

    level: Ordinal
    values: tuple

    def __str__(self):
        return f"{format_ordinal(self.level)}|{','.join(map(str, self.values))}"

    @classmethod
    def parse(cls, text: str) -> TreeNode:
        lvl, _, vals = text.partition("|")
        return cls(parse_ordinal(lvl), tuple(int(v) for v in vals.split(",")) if vals else ())

    def value_at(self, alpha: Ordinal) -> int:
        """``f(alpha)`` for a limit ``alpha`` below the level."""
        j = alpha.as_omega_mul()[0]
        return self.values[j - 1]

    def restrict(self, alpha: Ordinal) -> TreeNode:
        j = alpha.as_omega_mul()[0]
        return TreeNode(alpha, self.values[: j - 1])


def node_level(v: TreeNode):
    return v.level


def branch_nodes(u: Universe, values) -> list[TreeNode]:
    """The limit-level nodes along a branch with the given values at ``w, w*2, ...``."""
    values = tuple(values)
    out = []
    for beta in u.limits:
        j = beta.as_omega_mul()[0]
        if j - 1 > len(values):
            break
        out.append(TreeNode(beta, values[: j - 1]))
    return out


def seeded_branches(u: Universe, count: int, seed: int, value_range: int) -> list[tuple]:
    rng = random.Random(seed)
    return [tuple(rng.randrange(value_range) for _ in range(u.m - 2)) for _ in range(count)]


def diagonal_branch(u: Universe, c) -> tuple:
    """Values ``g(beta) = c(g | beta)`` at each limit, by recursion on ``beta``."""
    values: list[int] = []
    for beta in u.limits[:-1]:
        values.append(int(c(TreeNode(beta, tuple(values)))))
    return tuple(values)


@dataclass
class TreeBuild:
    graph: OrdGraph
    chosen: dict
    universe: Universe
    ladders: LadderSystem


def build_tree_hm(u: Universe, ladders: LadderSystem, branches, n: int, s: int, k_max: int | None = None) -> TreeBuild:
    """Tree-node graph: step ``k`` at node ``f`` takes the least fitting limit with ``f(alpha) = k``.

    ``chosen[f]`` maps each step in ``K_f`` to its chosen limit.
    """
    k_max = u.width if k_max is None else k_max
    _check_params(u, n, s, k_max)
    rules = _Rules(ladders, n, s)
    nodes = sorted({v for b in branches for v in branch_nodes(u, b)})
    lower = {}
    chosen = {}
    for f in nodes:
        beta = f.level
        accepted: list[Ordinal] = []
        picks = {}
        for k in range(k_max):
            for alpha in u.limits:
                if not alpha < beta:
                    break
                if f.value_at(alpha) != k:
                    continue
                if rules.verdict(beta, alpha, k, accepted) == ACCEPTED:
                    accepted.append(alpha)
                    picks[k] = alpha
                    break
        chosen[f] = picks
        lower[f] = [f.restrict(a) for a in accepted]
    return TreeBuild(OrdGraph(lower, level=node_level), chosen, u, ladders)


def tree_image(build: TreeBuild, n: int):
    """``f -> C_{level(f)}[n]`` on the materialized nodes."""
    return {v: build.ladders.prefix(v.level, n) for v in build.graph.vertices}


def diagonal_hits(build: TreeBuild, values, c) -> list[tuple]:
    """Edges ``{g|beta_k, g|beta}`` on the diagonal branch whose endpoints ``c`` colors alike."""
    hits = []
    for f in branch_nodes(build.universe, values):
        for k, alpha in build.chosen.get(f, {}).items():
            lo = f.restrict(alpha)
            if c(lo) == c(f):
                hits.append((lo, f, k))
    return hits
