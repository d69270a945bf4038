"""Ordinals below w^w in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents, so ``w^2+w*3+1`` is ``((2, 1), (1, 3), (0, 1))``
and zero is the empty tuple.  For ordinals of this shape, tuple comparison of
the term sequences coincides with the ordinal order, which is what makes the
class cheap enough to use as a vertex type.

Spelling uses ``w`` for omega::

    expr := '0' | term ('+' term)*
    term := nat | 'w' ('^' nat)? ('*' nat)?

The canonical spelling drops ``^1`` and ``*1`` and writes the finite part as
a bare natural.

Enumerations of ``beta`` (``enum_below``) split ``beta`` into its blocks: one
block of type ``w^e`` for every unit of every coefficient, in increasing
order.  Finite blocks (``e = 0``) are single points and are enumerated first,
in increasing order.  The remaining indices are dealt round-robin over the
infinite blocks; inside a block of type ``w^e`` the ``q``-th index is sent to
``w^(e-1)*c_1 + ... + c_e`` where ``(c_1, ..., c_e)`` is the Cantor unpairing
of ``q`` (identity when ``e = 1``).  For ``beta = w*k`` this is simply
``i -> w*(i mod k) + i div k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, total_ordering
from math import isqrt


class OrdinalSyntaxError(ValueError):
    pass


_TERM_RE = re.compile(r"^(?:(\d+)|w(?:\^(\d+))?(?:\*(\d+))?)$")


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple((int(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if e < 0 or c < 1:
                raise ValueError(f"bad term {(e, c)!r}")
            if i and terms[i - 1][0] <= e:
                raise ValueError("exponents must be strictly decreasing")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", hash(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    @classmethod
    def of(cls, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("negative ordinal")
        return cls(((0, n),) if n else ())

    @classmethod
    def omega_mul(cls, k: int, j: int = 0) -> Ordinal:
        """``w*k + j``."""
        if k < 0 or j < 0:
            raise ValueError("negative component")
        terms = []
        if k:
            terms.append((1, k))
        if j:
            terms.append((0, j))
        return cls(terms)

    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Ordinal):
            return self.terms < other.terms
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)

    def __reduce__(self):
        return (Ordinal, (self.terms,))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    @property
    def degree(self) -> int:
        """Leading exponent (0 for finite ordinals, including 0)."""
        return self.terms[0][0] if self.terms else 0

    def succ(self) -> Ordinal:
        if self.terms and self.terms[-1][0] == 0:
            return Ordinal(self.terms[:-1] + ((0, self.terms[-1][1] + 1),))
        return Ordinal(self.terms + ((0, 1),))

    def plus_nat(self, j: int) -> Ordinal:
        if j < 0:
            raise ValueError("negative increment")
        if j == 0:
            return self
        if self.terms and self.terms[-1][0] == 0:
            return Ordinal(self.terms[:-1] + ((0, self.terms[-1][1] + j),))
        return Ordinal(self.terms + ((0, j),))

    def as_omega_mul(self) -> tuple[int, int]:
        """Return ``(k, j)`` with ``self == w*k + j``; raises above ``w^2``."""
        k = j = 0
        for e, c in self.terms:
            if e == 1:
                k = c
            elif e == 0:
                j = c
            else:
                raise ValueError(f"{self} is not below w^2")
        return k, j


ZERO = Ordinal()
OMEGA = Ordinal(((1, 1),))


def parse_ordinal(text: str) -> Ordinal:
    text = text.strip()
    if not text:
        raise OrdinalSyntaxError("empty ordinal")
    if text == "0":
        return ZERO
    terms: list[tuple[int, int]] = []
    for piece in text.split("+"):
        m = _TERM_RE.match(piece)
        if not m:
            raise OrdinalSyntaxError(f"cannot parse term {piece!r} in {text!r}")
        nat, exp, coef = m.groups()
        if nat is not None:
            e, c = 0, int(nat)
        else:
            e = 1 if exp is None else int(exp)
            c = 1 if coef is None else int(coef)
        if c == 0:
            raise OrdinalSyntaxError(f"zero coefficient in {text!r}")
        if terms and terms[-1][0] <= e:
            raise OrdinalSyntaxError(f"exponents not strictly decreasing in {text!r}")
        terms.append((e, c))
    return Ordinal(terms)


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
            continue
        s = "w" if e == 1 else f"w^{e}"
        if c != 1:
            s += f"*{c}"
        parts.append(s)
    return "+".join(parts)


def as_ordinal(x) -> Ordinal:
    """Coerce an int, spelling or Ordinal."""
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if a.terms == b.terms:
        return 0
    return -1 if a.terms < b.terms else 1


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] > 0


def is_successor(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] == 0


# -- enumerations of beta --------------------------------------------------


def _cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    y = z - t
    return w - y, y


def _cantor_pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def _unpair_tuple(q: int, e: int) -> tuple[int, ...]:
    out = []
    for _ in range(e - 1):
        x, q = _cantor_unpair(q)
        out.append(x)
    out.append(q)
    return tuple(out)


def _pair_tuple(cs: tuple[int, ...]) -> int:
    q = cs[-1]
    for x in reversed(cs[:-1]):
        q = _cantor_pair(x, q)
    return q


def _append_below(prefix: tuple, e: int, coeffs: tuple[int, ...]) -> Ordinal:
    """``prefix + x`` where ``x < w^e`` has digit tuple ``coeffs`` (high to low).

    ``prefix`` ends in exponent >= e, so the sum is a concatenation with the
    coefficient on exponent ``e`` merged.
    """
    terms = list(prefix)
    for offset, c in enumerate(coeffs):
        exp = e - 1 - offset
        if not c:
            continue
        if terms and terms[-1][0] == exp:
            terms[-1] = (exp, terms[-1][1] + c)
        else:
            terms.append((exp, c))
    return Ordinal(terms)


def _blocks(beta: Ordinal):
    """Split beta into (finite points, infinite blocks).

    Each infinite block is ``(start_terms, e)`` covering ``[start, start + w^e)``.
    """
    finite = []
    infinite = []
    acc: list[tuple[int, int]] = []
    for e, c in beta.terms:
        for j in range(c):
            start = tuple(acc) + (((e, j),) if j else ())
            if e == 0:
                finite.append(Ordinal(start))
            else:
                infinite.append((start, e))
        acc.append((e, c))
    return finite, infinite


def enum_below(beta: Ordinal, i: int) -> Ordinal:
    """The fixed bijection from the naturals onto the ordinals below ``beta``."""
    if beta.is_finite:
        raise ValueError(f"enum_below needs an infinite ordinal, got {beta}")
    if i < 0:
        raise ValueError("negative index")
    if len(beta.terms) == 1 and beta.terms[0][0] == 1:
        k = beta.terms[0][1]
        return Ordinal.omega_mul(i % k, i // k)
    finite, infinite = _blocks(beta)
    if i < len(finite):
        return finite[i]
    i -= len(finite)
    start, e = infinite[i % len(infinite)]
    return _append_below(start, e, _unpair_tuple(i // len(infinite), e))


def enum_inverse(beta: Ordinal, alpha: Ordinal) -> int:
    """The unique ``i`` with ``enum_below(beta, i) == alpha``."""
    if beta.is_finite:
        raise ValueError(f"enum_inverse needs an infinite ordinal, got {beta}")
    if not alpha < beta:
        raise ValueError(f"{alpha} is not below {beta}")
    if len(beta.terms) == 1 and beta.terms[0][0] == 1:
        k = beta.terms[0][1]
        r, q = alpha.as_omega_mul()
        return q * k + r
    finite, infinite = _blocks(beta)
    for idx, pt in enumerate(finite):
        if pt == alpha:
            return idx
    # the last block whose start is <= alpha contains it
    for b in range(len(infinite) - 1, -1, -1):
        start, e = infinite[b]
        if Ordinal(start) <= alpha:
            break
    # start has no terms below exponent e, so the low digits are alpha's own
    digits = [0] * e
    for exp, c in alpha.terms:
        if exp < e:
            digits[e - 1 - exp] = c
    q = _pair_tuple(tuple(digits))
    return len(finite) + q * len(infinite) + b


@dataclass(frozen=True)
class Universe:
    """Finite stand-in for the countable ordinals: everything below ``w*M``.

    Only the limits ``w*1, ..., w*(M-1)`` are materialized; ladders store
    ``width`` entries per limit.
    """

    m: int = 64
    width: int = 16

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("universe needs M >= 2")
        if self.width < 1:
            raise ValueError("prefix width must be positive")

    @property
    def bound(self) -> Ordinal:
        return Ordinal.omega_mul(self.m)

    @cached_property
    def limits(self) -> tuple[Ordinal, ...]:
        return tuple(Ordinal.omega_mul(k) for k in range(1, self.m))

    def contains(self, a: Ordinal) -> bool:
        return a < self.bound

    def limits_below(self, beta: Ordinal) -> tuple[Ordinal, ...]:
        return tuple(a for a in self.limits if a < beta)


__all__ = [
    "Universe",
    "OMEGA",
    "ZERO",
    "Ordinal",
    "OrdinalSyntaxError",
    "as_ordinal",
    "compare",
    "enum_below",
    "enum_inverse",
    "format_ordinal",
    "is_limit",
    "is_successor",
    "parse_ordinal",
]
