import random
from math import comb

import pytest

from hmforge.types import (
    DisjointType,
    InvalidType,
    all_types,
    concat,
    depth,
    depth_of_sets,
    opposite,
    realize,
    specker_type,
    type_of,
    width,
)

from .oracles import depth_by_definition, type_by_definition

T = DisjointType


def random_type(rng, n):
    ones = set(rng.sample(range(2 * n), n))
    return T("".join("1" if i in ones else "0" for i in range(2 * n)))


def test_type_of_examples():
    assert type_of({0, 2, 4}, {1, 3, 5}).word == "010101"
    assert type_of({1, 5}, {2, 7}).word == "0101"


def test_type_of_symmetry_random():
    rng = random.Random(1)
    for _ in range(1000):
        n = rng.randint(1, 6)
        pts = rng.sample(range(100), 2 * n)
        a, b = pts[:n], pts[n:]
        assert type_of(b, a) == opposite(type_of(a, b))
        assert type_of(a, b).word == type_by_definition(a, b)


@pytest.mark.parametrize(
    "a,b", [([], []), ([1], [1, 2]), ([1, 2], [2, 3]), ([1, 1], [2, 3])]
)
def test_type_of_errors(a, b):
    with pytest.raises(InvalidType):
        type_of(a, b)


def test_invalid_words():
    for w in ["", "0", "0001", "0120", "000111x"]:
        with pytest.raises(InvalidType):
            T(w)


def test_opposite_concat_width():
    assert opposite(T("0011")).word == "1100"
    assert concat(T("01"), T("0011")).word == "010011"
    rng = random.Random(2)
    for _ in range(200):
        t0, t1, t2 = (random_type(rng, rng.randint(1, 4)) for _ in range(3))
        assert opposite(opposite(t0)) == t0
        assert width(concat(t0, t1)) == width(t0) + width(t1)
        assert concat(concat(t0, t1), t2) == concat(t0, concat(t1, t2))


def test_specker_types():
    assert specker_type(5, 2).word == "0001010111"
    assert specker_type(3, 1).word == "001011"
    for n in range(2, 9):
        for s in range(1, n):
            assert width(specker_type(n, s)) == n
    for bad in [(3, 0), (3, 3), (2, 5)]:
        with pytest.raises(InvalidType):
            specker_type(*bad)
    assert T.parse("t^5_2") == specker_type(5, 2)


def test_depth_values():
    assert depth(specker_type(5, 2)) == 2
    for n in range(2, 9):
        for s in range(1, n):
            assert depth(specker_type(n, s)) == n - s - 1


def test_depth_opposite_and_definition():
    rng = random.Random(3)
    for _ in range(500):
        t = random_type(rng, rng.randint(1, 7))
        assert depth(opposite(t)) == depth(t)
        assert depth(t) == depth_by_definition(*realize(t))


def test_depth_realization_independent():
    rng = random.Random(4)
    for _ in range(1000):
        t = random_type(rng, rng.randint(1, 6))
        a0, b0 = realize(t)
        # an increasing map of the positions keeps the type
        pts = sorted(rng.sample(range(10_000), 2 * t.width))
        a = [pts[i] for i in a0]
        b = [pts[i] for i in b0]
        assert type_of(a, b) == t
        assert depth_of_sets(a, b) == depth(t)


def test_realize():
    assert realize(T("0101")) == ((0, 2), (1, 3))
    assert realize(T("0011")) == ((0, 1), (2, 3))
    for n in range(1, 6):
        for t in all_types(n):
            assert type_of(*realize(t)) == t


def test_exhaustive_counts():
    for n in range(1, 5):
        ts = list(all_types(n))
        assert len(ts) == comb(2 * n, n)
        assert len(set(ts)) == len(ts)
        assert all(t.width == n for t in ts)
