import random
from itertools import combinations
from math import comb

import pytest

from hmforge.graphprops import shortest_odd_cycle_upto
from hmforge.specker import (
    colex_rank,
    colex_unrank,
    is_edge,
    materialize,
    neighbors_of,
    sampled_subgraphs,
    specker_graph,
)
from hmforge.types import DisjointType, InvalidType, specker_type

from .oracles import type_by_definition

T31 = specker_type(3, 1)


def brute_type_graph(t, N):
    n = t.width
    words = {t.word, "".join("1" if c == "0" else "0" for c in t.word)}
    verts = list(combinations(range(N), n))
    adj = {v: set() for v in verts}
    for a, b in combinations(verts, 2):
        if set(a).isdisjoint(b) and type_by_definition(a, b) in words:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def test_is_edge_examples():
    assert is_edge(T31, {0, 1, 3}, {2, 4, 5})
    assert not is_edge(T31, {0, 1, 3}, {0, 1, 3})
    with pytest.raises(InvalidType):
        is_edge(T31, {0, 1}, {2, 4, 5})
    rng = random.Random(0)
    for _ in range(500):
        a = rng.sample(range(12), 3)
        b = rng.sample(range(12), 3)
        assert is_edge(T31, a, b) == is_edge(T31, b, a)


def test_materialize_examples():
    G = materialize(T31, 6)
    assert (2, 4, 5) in G.neighbors((0, 1, 3))
    G1 = materialize(DisjointType("01"), 4)
    assert G1.edge_count == 6
    for N in range(6, 10):
        assert specker_graph(3, 1, N).vertex_count == comb(N, 3)
    with pytest.raises(ValueError):
        materialize(T31, 5)


@pytest.mark.parametrize("word,N", [("001011", 8), ("0101", 7), ("0011", 6), ("010011", 8), ("00010111", 9)])
def test_materialize_matches_definition(word, N):
    t = DisjointType(word)
    G = materialize(t, N)
    ref = brute_type_graph(t, N)
    for v, nbrs in ref.items():
        assert G.neighbors(v) == frozenset(nbrs)
    assert G.edge_count == comb(N, 2 * t.width)


def test_neighbors_of_matches_materialized():
    t = specker_type(4, 1)
    G = materialize(t, 11)
    for v in list(G.vertices())[::7]:
        assert set(neighbors_of(t, v, 11)) == set(G.neighbors(v))


def test_induced_monotone():
    small = materialize(T31, 8)
    big = materialize(T31, 9)
    for v in small.vertices():
        assert small.neighbors(v) == big.neighbors(v) & frozenset(small.vertices())


def test_colex_roundtrip():
    for n in range(1, 5):
        for r, v in enumerate(sorted(combinations(range(9), n), key=lambda v: tuple(reversed(v)))):
            assert colex_rank(v) == r
            assert colex_unrank(r, n) == v


def test_edges_ordered_and_symmetric():
    G = materialize(T31, 8)
    es = G.edges()
    assert len(es) == G.edge_count
    assert all(colex_rank(a) < colex_rank(b) for a, b in es)
    assert all(a in G.neighbors(b) for a, b in es)


def test_sampled_subgraphs_are_induced():
    t = specker_type(3, 1)
    G = materialize(t, 10)
    for sub in sampled_subgraphs(t, 10, 5, 40, seed=3):
        assert 0 < len(sub) <= 40
        for v, nbrs in sub.items():
            assert nbrs == set(G.neighbors(v)) & set(sub)


def test_no_short_odd_cycles_recorded_range():
    # s = 1 needs n >= 2s^2 + 3s + 2 = 7 for the guaranteed bound; n = 7 over N = 14..15
    for N in (14, 15):
        assert shortest_odd_cycle_upto(specker_graph(7, 1, N), 3) is None
