from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubesep._exact import log_sign
from cubesep.cuts import (BoostError, balance_cap, boost_separator, boundary_edges, coordinate_bound_holds,
                          coordinate_cut, cut_of, edge_expansion_of_set, get_cut_strategy, is_valid_separator,
                          min_edge_expansion, separator_bound_f, separator_pieces, spectral_sweep_cut,
                          split_into_two_sides, tree_vertex_separator)
from cubesep.graph import Graph, average_degree
from cubesep.hypercube import full_cube

from suites import (cycle, path, random_connected, random_cube_subgraph, random_gnp, random_tree, rng_for,
                    star, two_triangles_bridge)


def brute_min_expansion(g):
    best = None
    for size in range(1, g.n // 2 + 1):
        for s in combinations(range(g.n), size):
            b = sum(1 for u, v in g.edge_list() if (u in s) != (v in s))
            phi = Fraction(b, size)
            best = phi if best is None or phi < best else best
    return best


def test_balance_cap():
    assert [balance_cap(n) for n in range(1, 10)] == [1, 1, 2, 2, 3, 4, 4, 5, 6]


def test_expansion_of_set_examples():
    q3 = full_cube(3)
    r = edge_expansion_of_set(q3, [0, 2, 4, 6])
    assert (r.boundary_size, r.expansion) == (4, 1)
    assert edge_expansion_of_set(q3, [5]).expansion == 3
    r = edge_expansion_of_set(star(6), range(1, 7))
    assert (r.boundary_size, r.expansion) == (6, 1)
    with pytest.raises(ValueError):
        edge_expansion_of_set(q3, [])
    with pytest.raises(ValueError):
        edge_expansion_of_set(q3, range(8))


def test_boundary_edges():
    assert boundary_edges(path(4), [1, 2]) == [(0, 1), (2, 3)]


def test_min_edge_expansion_examples():
    # [DERIVED] brute force over all subsets of size at most n/2
    assert min_edge_expansion(full_cube(3)).expansion == 1
    assert min_edge_expansion(cycle(4)).expansion == 1
    r = min_edge_expansion(two_triangles_bridge())
    assert r.expansion == Fraction(1, 3) and r.members in ({0, 1, 2}, {3, 4, 5})


@pytest.mark.parametrize("seed", range(30))
def test_min_edge_expansion_matches_brute_force(seed):
    # [DERIVED] itertools enumeration
    rng = rng_for(seed, 31)
    g = random_gnp(rng, int(rng.integers(2, 11)), float(rng.uniform(0.1, 0.8)))
    r = min_edge_expansion(g)
    assert r.expansion == brute_min_expansion(g)
    assert cut_of(g, r.members).expansion == r.expansion and 2 * len(r.members) <= g.n


def test_min_edge_expansion_budget():
    with pytest.raises(ValueError, match="coordinate_cut"):
        min_edge_expansion(path(25))


def test_coordinate_cut_hamming_path():
    # [DERIVED] hand enumeration: (x, y) = (1, 2) on bits 0 and 1, bit 0 wins, T={001,011} flips to {000}
    h = Graph(3, [(0, 1), (1, 2)], [0b000, 0b001, 0b011], 3)
    r = coordinate_cut(h)
    assert r.details["coordinate"] == 0
    assert r.details["x"][:2] == [1, 1] and r.details["y"] == [2, 2, 0]
    assert r.members == {0} and r.expansion == 1


def test_coordinate_cut_errors():
    with pytest.raises(ValueError):
        coordinate_cut(path(3))
    with pytest.raises(ValueError):
        coordinate_cut(Graph(2, [], [0, 1], 1))
    with pytest.raises(ValueError):
        coordinate_cut(Graph(1, [], [3], 2))


@pytest.mark.parametrize("seed", range(40))
def test_coordinate_cut_is_best_coordinate(seed):
    # [DERIVED] recount x_i, y_i and the chosen ratio directly from labels
    rng = rng_for(seed, 32)
    h = random_cube_subgraph(rng, 6, t_max=40)
    r = coordinate_cut(h)
    lab = [h.label(v) for v in range(h.n)]
    ratios = []
    for i in range(6):
        c = sum((x >> i) & 1 for x in lab)
        x = sum(1 for u, v in h.edge_list() if ((lab[u] ^ lab[v]) >> i) & 1)
        ratios.append(Fraction(x, c * (h.n - c)) if 0 < c < h.n else None)
    best = min(x for x in ratios if x is not None)
    assert ratios[r.details["coordinate"]] == best
    assert 2 * len(r.members) <= h.n
    assert coordinate_bound_holds(r.expansion, average_degree(h), 6, h.n)


def test_coordinate_bound_exact_tie():
    # phi=1, r=1, d=2, t=8: right side 2*1*1/2 = 1
    assert coordinate_bound_holds(1, 1, 2, 8)
    assert not coordinate_bound_holds(Fraction(10 ** 15 + 1, 10 ** 15), 1, 2, 8)
    assert coordinate_bound_holds(0, 1, 1, 5) and not coordinate_bound_holds(1, 1, 1, 5)
    with pytest.raises(ValueError):
        coordinate_bound_holds(1, 1, 2, 2)


def test_log_sign():
    assert log_sign([(4, 1), (2, -2)]) == 0
    assert log_sign([(3, 1), (2, -1)]) == 1
    assert log_sign([(10 ** 6, 10 ** 12), (10, -6 * 10 ** 12 - 1)]) == -1
    assert log_sign([]) == 0


def test_spectral_sweep_finds_bridge():
    r = spectral_sweep_cut(two_triangles_bridge())
    assert r.expansion == Fraction(1, 3)
    r = spectral_sweep_cut(Graph(4, [(0, 1), (2, 3)]))
    assert r.expansion == 0 and r.method == "component"


@pytest.mark.parametrize("seed", range(20))
def test_spectral_sweep_never_beats_exact(seed):
    rng = rng_for(seed, 33)
    g = random_connected(rng, int(rng.integers(3, 14)), int(rng.integers(0, 15)))
    r = spectral_sweep_cut(g)
    assert r.expansion >= min_edge_expansion(g).expansion
    assert r.expansion == cut_of(g, r.members).expansion


def test_cut_strategy_lookup():
    assert get_cut_strategy("exact")(Graph(4, [(0, 1), (2, 3)])).expansion == 0
    with pytest.raises(ValueError):
        get_cut_strategy("nope")


def test_separator_bound_f_examples():
    assert separator_bound_f(256) == Fraction(9, 8)
    assert separator_bound_f(2 ** 16) == 1
    assert separator_bound_f(2 ** 64) == 0.5625
    with pytest.raises(ValueError):
        separator_bound_f(255)


def test_boost_path9_exact():
    # [DERIVED] sep(P_9) = 1 by brute force
    sep = boost_separator(path(9), "exact")
    assert sep.size == 1 and max(sep.side_sizes) <= 6 and sum(sep.side_sizes) == 9
    assert is_valid_separator(path(9), sep)


def test_boost_q3_coordinate():
    q3 = full_cube(3)
    sep = boost_separator(q3, "coordinate")
    assert is_valid_separator(q3, sep) and sep.trace.certified
    side = sep.parts[0]
    assert sep.size == len(boundary_edges(q3, side))


def test_boost_with_f_records_lemma_bound():
    g = path(900)
    sep = boost_separator(g, "spectral", separator_bound_f)
    assert sep.trace.within_f and sep.trace.lemma_bound == pytest.approx(600 * separator_bound_f(300))
    assert sep.size <= sep.trace.lemma_bound


def test_boost_error_carries_steps():
    def bad(h):
        raise RuntimeError("boom")
    with pytest.raises(BoostError) as info:
        boost_separator(path(5), bad)
    assert info.value.steps == ()
    with pytest.raises(ValueError):
        boost_separator(Graph(1))


@pytest.mark.parametrize("seed", range(25))
def test_boost_certificate_recount(seed):
    rng = rng_for(seed, 34)
    g = random_gnp(rng, int(rng.integers(2, 16)), float(rng.uniform(0.1, 0.7)))
    sep = boost_separator(g, "exact")
    assert is_valid_separator(g, sep)
    side = sep.parts[0]
    assert sep.size == len(boundary_edges(g, side))
    assert sum(s.set_size for s in sep.trace.steps) == len(side)
    assert all(s.expansion == Fraction(s.residual_boundary, s.set_size) for s in sep.trace.steps)
    assert sep.size <= sum(s.residual_boundary for s in sep.trace.steps)
    assert sep.size <= len(side) * sep.trace.max_ratio


def test_tree_separator_examples():
    sep = tree_vertex_separator(path(5))
    assert sep.removed == (2,) and sorted(sep.side_sizes) == [2, 2]
    sep = tree_vertex_separator(star(6))
    assert sep.removed == (0,)
    assert sorted(len(p) for p in separator_pieces(star(6), sep)) == [1] * 6
    assert tree_vertex_separator(Graph(1)).removed == ()
    with pytest.raises(ValueError):
        tree_vertex_separator(cycle(4))


@given(st.integers(1, 60), st.integers(0, 2 ** 32))
@settings(max_examples=80, deadline=None)
def test_tree_separator_property(n, seed):
    # [PAPER] every tree has a vertex separator of size at most one
    t = random_tree(rng_for(seed, 35), n)
    sep = tree_vertex_separator(t)
    assert sep.size <= 1 and is_valid_separator(t, sep)


def test_split_into_two_sides():
    a, b = split_into_two_sides([frozenset({0, 1, 2}), frozenset({3}), frozenset({4, 5})], 6)
    assert a | b == set(range(6)) and not a & b
    assert max(len(a), len(b)) <= 4
