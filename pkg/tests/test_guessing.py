import random

import pytest

from hmforge.csequence import canonical_ladders, rich_ladders, seeded_ladders
from hmforge.guessing import (
    GuessingError,
    NoAdmissibleType,
    PosetCondition,
    TypeSequence,
    antibuild,
    check_guessing,
    check_strong_guessing,
    compatible,
    depth_headroom,
    extend_into_domain,
    is_valid,
    union,
    validate_condition,
    verify_witness,
)
from hmforge.ordinal import Ordinal, Universe
from hmforge.types import specker_type

W = Ordinal.omega_mul
O = Ordinal.of
T31 = TypeSequence([specker_type(3, 1)])


def poset_setup():
    u = Universe(16, 16)
    L = seeded_ladders(u, 0, span=16)
    T = TypeSequence([specker_type(3 + k % 6, 1) for k in range(30)])
    return u, L, T


def random_condition(rng, u, L, T):
    x = {W(rng.randrange(16), rng.randrange(20)) for _ in range(rng.randint(0, 2))}
    p = PosetCondition(x)
    for a in rng.sample(u.limits, rng.randint(0, 8)):
        try:
            p = extend_into_domain(p, a, L, T)
        except NoAdmissibleType:
            pass
    return p


def test_injective_coloring_is_never_guessed():
    u = Universe(16, 16)
    L = seeded_ladders(u, 1)
    assert check_guessing(L, TypeSequence(["01"] * 16), lambda a: a.as_omega_mul()[0] - 1) is None


def test_canonical_width_one():
    for m in (3, 8):
        u = Universe(m, 4)
        w = check_guessing(canonical_ladders(u), TypeSequence(["01"]), lambda a: 0)
        assert w is not None and verify_witness(canonical_ladders(u), TypeSequence(["01"]), lambda a: 0, w)
    assert check_guessing(canonical_ladders(Universe(2, 4)), TypeSequence(["01"]), lambda a: 0) is None


def test_non_witness_is_not_reported():
    u = Universe(4, 4)
    L = rich_ladders(u, [{0, 1, 2}, {3, 4, 5}])
    assert L.prefix(W(1), 3) == (O(0), O(1), O(2))
    assert L.prefix(W(2), 3) == (O(3), O(4), O(5))
    # every other pair also has type 000111 here
    assert check_guessing(L, T31, lambda a: 0) is None


def test_positive_witness():
    u = Universe(8, 4)
    L = rich_ladders(u, [{0, 1, 3}, {2, 4, 5}])
    w = check_guessing(L, T31, lambda a: 0)
    assert w == (W(1), W(2), 0)
    assert verify_witness(L, T31, lambda a: 0, w)


def test_width_beyond_prefix_is_an_error():
    u = Universe(4, 2)
    with pytest.raises(GuessingError):
        check_guessing(canonical_ladders(u), T31, lambda a: 0)


def test_strong_guessing():
    u = Universe(32, 16)
    fam = [{0, 1, 3}, {0, 1, 3, W(1, 5)}, {0, 1, 3, W(2, 5)}, {2, 4, 5}]
    L = rich_ladders(u, fam)
    res = check_strong_guessing(L, T31, lambda a: 0, 3)
    assert res is not None
    beta, k, alphas = res
    assert len(alphas) == 3 and all(a < beta for a in alphas)
    for prev, nxt in zip(alphas, alphas[1:]):
        assert L.at(nxt, 3) > prev
    assert all(verify_witness(L, T31, lambda a: 0, (a, beta, k)) for a in alphas)
    assert check_strong_guessing(L, T31, lambda a: 0, 0) is not None
    one = check_strong_guessing(L, T31, lambda a: 0, 1)
    plain = check_guessing(L, T31, lambda a: 0)
    assert one[0] == plain[1] and one[2][0] == plain[0]
    assert check_strong_guessing(L, T31, lambda a: 0, 4) is None


def test_validate_examples():
    u = Universe(8, 4)
    L = rich_ladders(u, [{0, 1, 3}, {2, 4, 5}])
    assert validate_condition(PosetCondition(), L, T31) == []
    bad = validate_condition(PosetCondition(f={W(1): 0, W(2): 0}), L, T31)
    assert [v["clause"] for v in bad] == [3]
    # t^3_1 has depth 1, so no beta above a delta is ever roomy for it
    d = validate_condition(PosetCondition({O(1)}, {W(2): 0}), L, T31)
    assert [v["clause"] for v in d] == [4]
    # a partner at or below delta with the same prefix rescues clause 4
    L2 = rich_ladders(u, [{0, 1, 2}, {0, 1, 2}])
    ok = PosetCondition({W(1)}, {W(1): 0, W(2): 0})
    assert validate_condition(ok, L2, T31) == []
    assert [v["clause"] for v in validate_condition(PosetCondition({W(1, 1)}, {W(3): 0}), L2, T31)] == [4]


def test_validate_domain_clauses():
    u = Universe(8, 4)
    L = canonical_ladders(u)
    assert validate_condition(PosetCondition(f={W(1, 1): 0}), L, T31)[0]["clause"] == 2
    assert validate_condition(PosetCondition(f={W(1): 5}), L, T31)[0]["clause"] == 2
    assert validate_condition(PosetCondition({W(9)}), L, T31)[0]["clause"] == 1


def test_extend_from_empty():
    u, L, T = poset_setup()
    q = extend_into_domain(PosetCondition(), W(5), L, T)
    k = q.f[W(5)]
    assert T.depth(k) > 1 and is_valid(q, L, T) and q.extends(PosetCondition())


def test_extend_reports_needed_depth():
    u = Universe(8, 4)
    L = canonical_ladders(u)
    with pytest.raises(NoAdmissibleType):
        extend_into_domain(PosetCondition(), W(2), L, T31)


def test_random_conditions_validate():
    u, L, T = poset_setup()
    rng = random.Random(0)
    for _ in range(1000):
        p = random_condition(rng, u, L, T)
        assert validate_condition(p, L, T) == []


def test_chained_extension_defeats_guessing():
    u, L, T = poset_setup()
    trail = []
    p = antibuild(L, T, trail=trail)
    for q in trail:
        assert is_valid(q, L, T)
    assert set(p.f) == set(u.limits)
    assert check_guessing(L, T, p.f) is None


def test_compatibility_against_union_oracle():
    u, L, T = poset_setup()
    rng = random.Random(1)
    pool = [random_condition(rng, u, L, T) for _ in range(300)]
    outcomes = set()
    for _ in range(1000):
        p, q = rng.sample(pool, 2)
        un = union(p, q)
        expect = un is not None and is_valid(un, L, T)
        assert compatible(p, q, L, T) == expect
        outcomes.add(expect)
    assert outcomes == {True, False}


def test_compatibility_examples():
    u, L, T = poset_setup()
    p = extend_into_domain(PosetCondition(), W(3), L, T)
    assert compatible(p, p, L, T)
    q = PosetCondition(f={W(3): p.f[W(3)] + 1})
    assert not compatible(p, q, L, T)
    u8 = Universe(8, 4)
    L8 = rich_ladders(u8, [{0, 1, 3}, {2, 4, 5}])
    a = PosetCondition(f={W(1): 0})
    b = PosetCondition(f={W(2): 0})
    assert is_valid(a, L8, T31) and is_valid(b, L8, T31)
    assert not compatible(a, b, L8, T31)


def test_json_roundtrip():
    p = PosetCondition({W(2, 3), O(0)}, {W(1): 2, W(4): 0})
    assert PosetCondition.from_json(p.to_json()) == p
    assert PosetCondition.from_json(p.to_json()).to_json() == p.to_json()


def test_depth_headroom():
    u, L, T = poset_setup()
    assert depth_headroom(L, T) == max(T.depth(k) for k in range(len(T))) - 17
