import random
from itertools import combinations

import pytest

from hmforge.graphprops import (
    GraphError,
    OrdGraph,
    check_hm_sparseness,
    check_homomorphism,
    find_special_cycle,
    is_bipartite,
    is_delta_covered,
    is_special,
    shortest_odd_cycle_upto,
)
from hmforge.ordinal import Ordinal
from hmforge.specker import materialize
from hmforge.types import specker_type

from .oracles import adj_of, all_orderings_special, has_special_cycle, shortest_odd_closed_walk


def G_of(vertices, edges, **kw):
    return OrdGraph.from_edges(vertices, edges, **kw)


def random_graph(rng, n, p):
    vs = list(range(n))
    es = [(a, b) for a, b in combinations(vs, 2) if rng.random() < p]
    return vs, es


def test_odd_cycle_examples():
    tri = G_of([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    length, cyc = shortest_odd_cycle_upto(tri, 3)
    assert length == 3 and set(cyc) == {0, 1, 2}
    sq = G_of(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert shortest_odd_cycle_upto(sq, 9) is None
    c5 = G_of(range(5), [(i, (i + 1) % 5) for i in range(5)])
    assert shortest_odd_cycle_upto(c5, 3) is None
    length, cyc = shortest_odd_cycle_upto(c5, 5)
    assert length == 5 and cyc[0] == cyc[-1] and len(set(cyc)) == 5
    with pytest.raises(ValueError):
        shortest_odd_cycle_upto(c5, 4)


def test_odd_cycle_matches_walk_counting():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(3, 12)
        vs, es = random_graph(rng, n, rng.choice([0.15, 0.25, 0.4]))
        adj = adj_of(vs, es)
        expect = shortest_odd_closed_walk(adj, 7)
        got = shortest_odd_cycle_upto(adj, 7)
        assert (got and got[0]) == expect
        if got:
            cyc = got[1]
            assert all(cyc[i + 1] in adj[cyc[i]] for i in range(len(cyc) - 1))


def test_bipartite():
    assert is_bipartite(G_of(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert not is_bipartite(G_of(range(3), [(0, 1), (1, 2), (0, 2)]))


def test_special_examples():
    G = G_of([3, 7, 8, 10], [(10, 7), (7, 3), (3, 8), (8, 10)])
    cyc = find_special_cycle(G)
    assert cyc is not None and is_special(cyc)
    assert cyc[0] == 10 and set(cyc) == {3, 7, 8, 10}
    tri = G_of([1, 2, 5], [(1, 2), (2, 5), (1, 5)])
    cyc = find_special_cycle(tri)
    assert cyc is not None and is_special(cyc)
    assert all_orderings_special([1, 2, 5], tri.adj)
    star = G_of(range(6), [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    assert find_special_cycle(star) is None


def test_non_special_cycle_is_ignored():
    # 0-2-1-3-0: peak 3, but 3 -> 0 -> 2 -> 1 -> 3 changes direction twice
    G = G_of(range(4), [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert not has_special_cycle(G.adj)
    assert find_special_cycle(G) is None


def test_special_matches_brute_force():
    rng = random.Random(5)
    hits = 0
    for _ in range(300):
        n = rng.randint(3, 10)
        vs, es = random_graph(rng, n, rng.choice([0.15, 0.2, 0.3]))
        G = G_of(vs, es)
        expect = has_special_cycle(G.adj)
        got = find_special_cycle(G)
        assert (got is not None) == expect
        if got:
            hits += 1
            assert is_special(got)
    assert 20 < hits < 290


def test_delta_covered():
    G = G_of([2, 5, 9], [(9, 5), (5, 2)])
    assert is_delta_covered(G, 9, 2)
    assert not is_delta_covered(G, 9, 1)
    H = G_of([1, 4], [])
    assert not is_delta_covered(H, 4, 3)
    with pytest.raises(GraphError):
        is_delta_covered(H, 7, 0)


def test_delta_covered_random_against_recursion():
    from .oracles import reachable_down

    rng = random.Random(9)
    for _ in range(100):
        vs, es = random_graph(rng, 9, 0.3)
        G = G_of(vs, es)
        lower = {v: list(G.lower[v]) for v in vs}
        for b in vs:
            for d in range(b):
                assert is_delta_covered(G, b, d) == reachable_down(lower, b, d)


def test_implicit_successors():
    W = Ordinal.omega_mul
    G = OrdGraph({W(1): set(), W(2): {W(1)}}, bound=W(3))
    assert G.is_vertex(W(1, 4))
    assert G.lower_neighbors(W(2, 1)) == frozenset()
    assert not is_delta_covered(G, W(1, 3), W(1))
    assert check_hm_sparseness(G, {W(1): [0], W(2): [Ordinal.of(0)]}, 1) == []


def test_sparseness_reports():
    G = G_of([1, 5, 9], [(9, 5), (9, 1)])
    assert check_hm_sparseness(G, {1: [0], 5: [0], 9: [0, 4]}, 2) == []
    bad = check_hm_sparseness(G, {1: [0], 5: [0], 9: [0, 6]}, 2)
    assert bad and bad[0]["kind"] == "step-budget-exceeded"
    bad = check_hm_sparseness(G, {1: [0], 5: [0], 9: [0, 4]}, 1)
    assert bad and bad[0]["kind"] == "too-many-lower-neighbors"


def test_homomorphism():
    t = specker_type(3, 1)
    empty = G_of([0, 1], [])
    assert check_homomorphism(empty, {0: (0, 1, 2), 1: (0, 1, 2)}, t)
    one = G_of([0, 1], [(0, 1)])
    assert not check_homomorphism(one, {0: (0, 1, 3), 1: (0, 4, 5)}, t)
    assert check_homomorphism(one, {0: (0, 1, 3), 1: (2, 4, 5)}, t)
    with pytest.raises(GraphError):
        check_homomorphism(one, {0: (0, 1, 3)}, t)


def test_homomorphism_transfers_odd_girth():
    # any subgraph of S^3_1 on N = 8 maps into it and inherits the lack of odd cycles <= 7
    S = materialize(specker_type(3, 1), 8)
    assert shortest_odd_cycle_upto(S, 7) is None
    rng = random.Random(2)
    verts = sorted(S.adj)
    for _ in range(20):
        pick = rng.sample(verts, 12)
        idx = {v: i for i, v in enumerate(pick)}
        es = [(idx[a], idx[b]) for a, b in combinations(pick, 2) if b in S.adj[a]]
        G = G_of(range(12), es)
        image = {i: v for v, i in idx.items()}
        assert check_homomorphism(G, image, specker_type(3, 1))
        assert shortest_odd_cycle_upto(G, 3) is None
