"""Disjoint types: binary words recording how two disjoint n-sets interleave.

A type of width ``n`` is a word of length ``2n`` with ``n`` zeros and ``n``
ones.  Position ``i`` is ``0`` when the ``i``-th element of the sorted union
comes from the first set.  Types serialize as their raw binary string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

_SPECKER_RE = re.compile(r"^t\^(\d+)_(\d+)$")


class InvalidType(ValueError):
    """Invalid disjoint type or invalid pair of sets."""


@dataclass(frozen=True, order=True)
class DisjointType:
    word: str

    def __post_init__(self):
        w = self.word
        if not w or len(w) % 2 or set(w) - {"0", "1"}:
            raise InvalidType(f"not a binary word of even length: {w!r}")
        if w.count("0") != len(w) // 2:
            raise InvalidType(f"unbalanced word: {w!r}")

    @classmethod
    def parse(cls, text: str) -> DisjointType:
        """Accept a raw word or a Specker spelling such as ``t^5_2``."""
        text = text.strip()
        m = _SPECKER_RE.match(text)
        if m:
            return specker_type(int(m.group(1)), int(m.group(2)))
        return cls(text)

    def __str__(self):
        return self.word

    def __len__(self):
        return len(self.word)

    @property
    def width(self) -> int:
        return len(self.word) // 2

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.word)


def width(t: DisjointType) -> int:
    return t.width


def opposite(t: DisjointType) -> DisjointType:
    return DisjointType(t.word.translate(str.maketrans("01", "10")))


def concat(*ts: DisjointType) -> DisjointType:
    if not ts:
        raise InvalidType("concat of no types")
    return DisjointType("".join(t.word for t in ts))


def type_of(a, b) -> DisjointType:
    """The type of the pair ``(a, b)`` of disjoint, equal-size sets."""
    a = sorted(a)
    b = sorted(b)
    if not a or len(a) != len(b):
        raise InvalidType(f"sets must be nonempty and of equal size ({len(a)} vs {len(b)})")
    if len(set(a)) != len(a) or len(set(b)) != len(b):
        raise InvalidType("sets contain repeated elements")
    out = []
    i = j = 0
    n = len(a)
    while i < n and j < n:
        if a[i] < b[j]:
            out.append("0")
            i += 1
        elif b[j] < a[i]:
            out.append("1")
            j += 1
        else:
            raise InvalidType(f"sets are not disjoint (share {a[i]!r})")
    out.extend("0" * (n - i))
    out.extend("1" * (n - j))
    return DisjointType("".join(out))


def type_word(a, b) -> str | None:
    """Raw type word of two sorted, equal-length sequences; None if they meet.

    Skips validation; meant for inner loops of the builders.
    """
    out = []
    i = j = 0
    n = len(a)
    while i < n and j < n:
        x, y = a[i], b[j]
        if x < y:
            out.append("0")
            i += 1
        elif y < x:
            out.append("1")
            j += 1
        else:
            return None
    out.append("0" * (n - i))
    out.append("1" * (n - j))
    return "".join(out)


def realize(t: DisjointType) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical witness: the positions of zeros and of ones."""
    a = tuple(i for i, c in enumerate(t.word) if c == "0")
    b = tuple(i for i, c in enumerate(t.word) if c == "1")
    return a, b


def depth_of_sets(a, b) -> int:
    """Least ``k`` such that all of ``a`` lies below ``b(k)`` or all of ``b`` below ``a(k)``."""
    a = sorted(a)
    b = sorted(b)
    top_a, top_b = a[-1], b[-1]
    for k in range(len(a)):
        if top_a < b[k] or top_b < a[k]:
            return k
    raise AssertionError("unreachable for disjoint sets")


def depth(t: DisjointType) -> int:
    return depth_of_sets(*realize(t))


def specker_type(n: int, s: int) -> DisjointType:
    """``s`` zeros, then ``n - s`` copies of ``01``, then ``s`` ones."""
    if not 1 <= s < n:
        raise InvalidType(f"need 1 <= s < n, got n={n}, s={s}")
    return DisjointType("0" * s + "01" * (n - s) + "1" * s)


def all_types(n: int):
    """Every disjoint type of width ``n``, ordered by the positions of the ones."""
    for ones in combinations(range(2 * n), n):
        w = ["0"] * (2 * n)
        for i in ones:
            w[i] = "1"
        yield DisjointType("".join(w))


def in_pair(t: DisjointType, u: DisjointType) -> bool:
    """Whether ``u`` is ``t`` or its opposite."""
    return u == t or u == opposite(t)
