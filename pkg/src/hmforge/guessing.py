"""Type guessing on a finite universe, and the finite-condition poset that defeats it.

A ladder system guesses a type sequence ``t_0, t_1, ...`` against a coloring
``f`` of the limits when two limits ``alpha < beta`` with ``f(alpha) = f(beta)
= k`` have ``type(C_alpha[n_k], C_beta[n_k])`` equal to ``t_k`` or its
opposite (``n_k`` the width of ``t_k``).

Conditions ``p = (x_p, f_p)`` pair a finite set of ordinals with a finite
partial coloring.  They must avoid guessing pairs inside ``f_p`` and, for each
``delta`` in ``x_p`` and each colored ``beta > delta`` with ``f_p(beta) = k``,
either have room in depth (``d_k > |C_beta cap delta| + 1``) or a partner
``alpha <= delta`` of color ``k`` with the same ``n_k``-prefix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .csequence import HorizonError, LadderSystem
from .ordinal import Ordinal, format_ordinal, is_limit, parse_ordinal
from .types import DisjointType, depth, opposite, type_word


class NoAdmissibleType(LookupError):
    def __init__(self, alpha, needed_depth):
        super().__init__(f"no unused k with depth above {needed_depth - 1} is available for {alpha}")
        self.alpha = alpha
        self.needed_depth = needed_depth


class GuessingError(ValueError):
    pass


@dataclass(frozen=True)
class TypeSequence:
    types: tuple

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(self.types))
        words = []
        for t in self.types:
            t = t if isinstance(t, DisjointType) else DisjointType.parse(str(t))
            words.append(t)
        object.__setattr__(self, "types", tuple(words))
        object.__setattr__(self, "_pairs", tuple({t.word, opposite(t).word} for t in self.types))
        object.__setattr__(self, "_depths", tuple(depth(t) for t in self.types))

    def __len__(self):
        return len(self.types)

    def width(self, k: int) -> int:
        return self.types[k].width

    def depth(self, k: int) -> int:
        return self._depths[k]

    def matches(self, k: int, a, b) -> bool:
        return type_word(a, b) in self._pairs[k]

    def check_fits(self, ladders: LadderSystem, ks=None):
        for k in range(len(self)) if ks is None else ks:
            if k >= len(self):
                raise GuessingError(f"color {k} has no type (sequence has {len(self)})")
            if self.width(k) > ladders.width:
                raise GuessingError(f"t_{k} has width {self.width(k)} > prefix width {ladders.width}")


def depth_headroom(ladders: LadderSystem, T: TypeSequence) -> int:
    """Largest depth in ``T`` minus the largest ``|C_beta cap delta| + 1`` a stored prefix can show."""
    return max(T.depth(k) for k in range(len(T))) - (ladders.width + 1)


def _color(f):
    return f if callable(f) else f.__getitem__


def _guess_pair(ladders, T, k, alpha, beta) -> bool:
    n = T.width(k)
    return T.matches(k, ladders.prefix(alpha, n), ladders.prefix(beta, n))


def check_guessing(ladders: LadderSystem, T: TypeSequence, f):
    """Least ``(alpha, beta, k)`` (by ``beta``, then ``alpha``) witnessing guessing, or None."""
    color = _color(f)
    limits = ladders.universe.limits
    seen: dict[int, list] = {}
    for beta in limits:
        k = color(beta)
        T.check_fits(ladders, [k])
        for alpha in seen.get(k, []):
            if _guess_pair(ladders, T, k, alpha, beta):
                return alpha, beta, k
        seen.setdefault(k, []).append(beta)
    return None


def verify_witness(ladders, T, f, witness) -> bool:
    alpha, beta, k = witness
    color = _color(f)
    return alpha < beta and color(alpha) == color(beta) == k and _guess_pair(ladders, T, k, alpha, beta)


def check_strong_guessing(ladders: LadderSystem, T: TypeSequence, f, m: int):
    """A limit ``beta`` carrying a chain of ``m`` guessing partners that climbs through ``beta``.

    Partners ``alpha_1 < ... < alpha_m < beta`` all guess with ``beta`` in color
    ``k = f(beta)``, and each ``C_{alpha_{i+1}}(n_k)`` lies above ``alpha_i``:
    every earlier partner is a threshold the next one's ladder clears.  Returns
    ``(beta, k, [alpha_1, ..., alpha_m])`` for the least such ``beta`` or None.
    """
    color = _color(f)
    limits = ladders.universe.limits
    if m <= 0:
        return (limits[0], color(limits[0]), []) if limits else None
    for beta in limits:
        k = color(beta)
        T.check_fits(ladders, [k])
        n = T.width(k)
        chain: list[Ordinal] = []
        for alpha in limits:
            if not alpha < beta:
                break
            if color(alpha) != k or not _guess_pair(ladders, T, k, alpha, beta):
                continue
            if chain and not ladders.at(alpha, n) > chain[-1]:
                continue
            chain.append(alpha)
            if len(chain) == m:
                return beta, k, chain
    return None


# -- the poset -------------------------------------------------------------


@dataclass(frozen=True)
class PosetCondition:
    x: frozenset = frozenset()
    f: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "x", frozenset(self.x))
        object.__setattr__(self, "f", dict(self.f))

    def __hash__(self):
        return hash((self.x, frozenset(self.f.items())))

    def extends(self, other: PosetCondition) -> bool:
        """``self <= other``."""
        return self.x >= other.x and all(self.f.get(a, None) == k for a, k in other.f.items())

    def to_json(self) -> str:
        doc = {
            "x": [format_ordinal(d) for d in sorted(self.x)],
            "f": {format_ordinal(a): k for a, k in sorted(self.f.items())},
        }
        return json.dumps(doc, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> PosetCondition:
        doc = json.loads(text)
        return cls(
            frozenset(parse_ordinal(d) for d in doc.get("x", [])),
            {parse_ordinal(a): int(k) for a, k in doc.get("f", {}).items()},
        )


def _room(ladders: LadderSystem, T: TypeSequence, beta, k: int, delta) -> bool:
    """``d_k > |C_beta cap delta| + 1``.

    Past the stored prefix the intersection has at least ``W`` points; that
    still decides the inequality as long as ``d_k <= W + 1``.
    """
    d = T.depth(k)
    try:
        return d > ladders.count_below(beta, delta) + 1
    except HorizonError:
        if d > ladders.width + 1:
            raise
        return False


def _clause4_ok(ladders, T, f, delta, beta) -> bool:
    k = f[beta]
    if _room(ladders, T, beta, k, delta):
        return True
    n = T.width(k)
    pre = ladders.prefix(beta, n)
    return any(
        f[a] == k and a <= delta and ladders.prefix(a, n) == pre for a in f
    )


def validate_condition(p: PosetCondition, ladders: LadderSystem, T: TypeSequence) -> list[dict]:
    """Violated clauses of ``p``, as ``{"clause": i, ...}`` records (empty when valid)."""
    u = ladders.universe
    out = []
    for d in sorted(p.x):
        if not isinstance(d, Ordinal) or not d < u.bound:
            out.append({"clause": 1, "delta": d})
    for a, k in sorted(p.f.items()):
        if not (is_limit(a) and u.contains(a)) or not isinstance(k, int) or not 0 <= k < len(T):
            out.append({"clause": 2, "alpha": a, "k": k})
    if out:
        return out
    T.check_fits(ladders, set(p.f.values()))
    by_color: dict[int, list] = {}
    for a in sorted(p.f):
        by_color.setdefault(p.f[a], []).append(a)
    for k, group in sorted(by_color.items()):
        for i, b in enumerate(group):
            for a in group[:i]:
                if _guess_pair(ladders, T, k, a, b):
                    out.append({"clause": 3, "alpha": a, "beta": b, "k": k})
    for d in sorted(p.x):
        for b in sorted(p.f):
            if b > d and not _clause4_ok(ladders, T, p.f, d, b):
                out.append({"clause": 4, "delta": d, "beta": b, "k": p.f[b]})
    return out


def is_valid(p, ladders, T) -> bool:
    return not validate_condition(p, ladders, T)


def extend_into_domain(p: PosetCondition, alpha: Ordinal, ladders: LadderSystem, T: TypeSequence) -> PosetCondition:
    """A ``q <= p`` with ``alpha`` colored, by giving ``alpha`` a fresh color of enough depth."""
    if alpha in p.f:
        return p
    below = [d for d in p.x if d < alpha]
    delta = max(below) if below else Ordinal()
    used = set(p.f.values())
    needed = None
    for k in range(len(T)):
        if k in used or T.width(k) > ladders.width:
            continue
        if _room(ladders, T, alpha, k, delta):
            return PosetCondition(p.x, {**p.f, alpha: k})
    try:
        needed = ladders.count_below(alpha, delta) + 2
    except HorizonError:
        needed = ladders.width + 2
    raise NoAdmissibleType(alpha, needed)


def compatible(p: PosetCondition, q: PosetCondition, ladders: LadderSystem, T: TypeSequence) -> bool:
    """Whether ``(x_p | x_q, f_p | f_q)`` is a condition, given that ``p`` and ``q`` are.

    Only pairs that mix the two sides are checked.
    """
    for a in p.f.keys() & q.f.keys():
        if p.f[a] != q.f[a]:
            return False
    f = {**p.f, **q.f}
    only_p = [a for a in p.f if a not in q.f]
    only_q = [a for a in q.f if a not in p.f]
    for a in only_p:
        for b in only_q:
            if p.f[a] == q.f[b]:
                lo, hi = min(a, b), max(a, b)
                if _guess_pair(ladders, T, p.f[a], lo, hi):
                    return False
    for xs, dom in ((p.x - q.x, q.f), (q.x - p.x, p.f)):
        for d in xs:
            for b in dom:
                if b > d and not _clause4_ok(ladders, T, f, d, b):
                    return False
    return True


def union(p: PosetCondition, q: PosetCondition) -> PosetCondition | None:
    if any(p.f[a] != q.f[a] for a in p.f.keys() & q.f.keys()):
        return None
    return PosetCondition(p.x | q.x, {**p.f, **q.f})


def antibuild(ladders: LadderSystem, T: TypeSequence, start: PosetCondition | None = None, trail=None):
    """Color every limit by chained extensions; returns the final condition.

    ``trail``, when a list, receives each intermediate condition.
    """
    p = start or PosetCondition()
    for alpha in ladders.universe.limits:
        p = extend_into_domain(p, alpha, ladders, T)
        if trail is not None:
            trail.append(p)
    return p
