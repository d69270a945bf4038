"""Ladder systems over a finite universe.

Each limit ``alpha`` of the universe gets a strictly increasing prefix of
``width`` ordinals below ``alpha``.  Reading past the stored prefix raises
``HorizonError``; the constructions treat that as having reached the edge of
what the finite model can say, never as an empty answer.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .ordinal import Ordinal, Universe, as_ordinal, format_ordinal, parse_ordinal


class HorizonError(IndexError):
    """A ladder was read beyond its stored prefix."""

    def __init__(self, alpha, index, width):
        super().__init__(f"C_{alpha}({index}) is past the stored prefix of width {width}")
        self.alpha = alpha
        self.index = index
        self.width = width


class LadderError(ValueError):
    pass


@dataclass(frozen=True)
class LadderSystem:
    universe: Universe
    prefixes: dict = field(repr=False)

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise LadderError("; ".join(problems[:5]))

    def problems(self) -> list[str]:
        out = []
        limits = set(self.universe.limits)
        if set(self.prefixes) != limits:
            missing = sorted(limits - set(self.prefixes))
            extra = sorted(set(self.prefixes) - limits)
            if missing:
                out.append(f"no ladder at {', '.join(map(str, missing[:3]))}")
            if extra:
                out.append(f"ladder at non-universe points {', '.join(map(str, extra[:3]))}")
        w = self.universe.width
        for alpha, pre in self.prefixes.items():
            if len(pre) != w:
                out.append(f"C_{alpha} has {len(pre)} entries, expected {w}")
            if any(x >= alpha for x in pre):
                out.append(f"C_{alpha} has entries not below {alpha}")
            if any(pre[i] >= pre[i + 1] for i in range(len(pre) - 1)):
                out.append(f"C_{alpha} is not strictly increasing")
        return out

    @property
    def width(self) -> int:
        return self.universe.width

    def at(self, alpha: Ordinal, i: int) -> Ordinal:
        pre = self.prefixes[alpha]
        if not 0 <= i < len(pre):
            raise HorizonError(alpha, i, len(pre))
        return pre[i]

    def prefix(self, alpha: Ordinal, n: int) -> tuple[Ordinal, ...]:
        """First ``n`` entries, in increasing order."""
        pre = self.prefixes[alpha]
        if n > len(pre):
            raise HorizonError(alpha, n - 1, len(pre))
        return pre[:n]

    def slice(self, alpha: Ordinal, lo: int, hi: int) -> tuple[Ordinal, ...]:
        """Entries with index in ``range(lo, hi)``."""
        pre = self.prefixes[alpha]
        if hi > len(pre):
            raise HorizonError(alpha, hi - 1, len(pre))
        return pre[lo:hi]

    def count_below(self, alpha: Ordinal, delta: Ordinal) -> int:
        """``|C_alpha cap delta|``, exact only while ``delta`` is within the prefix."""
        pre = self.prefixes[alpha]
        if delta > pre[-1]:
            raise HorizonError(alpha, len(pre), len(pre))
        return sum(1 for x in pre if x < delta)

    def to_json(self) -> str:
        doc = {
            format_ordinal(a): [format_ordinal(x) for x in self.prefixes[a]]
            for a in sorted(self.prefixes)
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str, universe: Universe | None = None) -> LadderSystem:
        doc = json.loads(text)
        prefixes = {
            parse_ordinal(k): tuple(parse_ordinal(x) for x in v) for k, v in doc.items()
        }
        if universe is None:
            top = max(prefixes)
            m = top.as_omega_mul()[0] + 1
            width = len(next(iter(prefixes.values())))
            universe = Universe(m=m, width=width)
        return cls(universe, prefixes)


def c_at(ladders: LadderSystem, alpha: Ordinal, i: int) -> Ordinal:
    return ladders.at(alpha, i)


def c_prefix(ladders: LadderSystem, alpha: Ordinal, n: int) -> tuple[Ordinal, ...]:
    return ladders.prefix(alpha, n)


def canonical_ladders(u: Universe) -> LadderSystem:
    """``C_{w*(k+1)} = (w*k, w*k+1, ..., w*k+W-1)``."""
    prefixes = {}
    for alpha in u.limits:
        k = alpha.as_omega_mul()[0] - 1
        prefixes[alpha] = tuple(Ordinal.omega_mul(k, j) for j in range(u.width))
    return LadderSystem(u, prefixes)


def rich_ladders(u: Universe, family, base: LadderSystem | None = None) -> LadderSystem:
    """Ladders in which every set of ``family`` is an initial segment of some ladder.

    Each set goes, in order, to the least still-unused limit above its maximum;
    the rest of that prefix continues with consecutive ordinals.  Limits not
    claimed keep their ladder from ``base`` (canonical by default).
    """
    base = base or canonical_ladders(u)
    prefixes = dict(base.prefixes)
    used: set[Ordinal] = set()
    for raw in family:
        b = sorted({as_ordinal(x) for x in raw})
        if len(b) > u.width:
            raise LadderError(f"initial segment {b} is longer than the prefix width {u.width}")
        if not b:
            continue
        top = b[-1]
        target = next((a for a in u.limits if a > top and a not in used), None)
        if target is None:
            raise LadderError(
                "cannot place initial segment {" + ", ".join(map(str, b)) + "}: no free limit above it"
            )
        used.add(target)
        tail = [top.plus_nat(j) for j in range(1, u.width - len(b) + 1)]
        prefixes[target] = tuple(b) + tuple(tail)
    return LadderSystem(u, prefixes)


def seeded_ladders(u: Universe, seed: int, span: int | None = None) -> LadderSystem:
    """Pseudo-random ladders scattered across all earlier w-blocks.

    The ladder at ``w*k`` is a sorted sample of ``width`` ordinals from
    ``{w*j + i : j < k, i < span}`` (``span`` defaults to ``2*width``).  Unlike
    the canonical ladders, distinct limits here interleave in many patterns,
    which is what the type-driven constructions need in order to form edges.
    """
    span = span or 2 * u.width
    if span < u.width:
        raise LadderError("span must be at least the prefix width")
    rng = random.Random(seed)
    prefixes = {}
    for alpha in u.limits:
        k = alpha.as_omega_mul()[0]
        picks = rng.sample(range(k * span), u.width)
        prefixes[alpha] = tuple(sorted(Ordinal.omega_mul(p // span, p % span) for p in picks))
    return LadderSystem(u, prefixes)


def is_initial_segment(b, prefix) -> bool:
    """``b`` is an initial segment of the increasing sequence ``prefix``."""
    b = sorted(as_ordinal(x) for x in b)
    return tuple(prefix[: len(b)]) == tuple(b)

