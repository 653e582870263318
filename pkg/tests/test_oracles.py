from fractions import Fraction

import networkx as nx
import pytest

from cubesep.cuts import is_valid_separator, min_edge_expansion, tree_vertex_separator
from cubesep.graph import ACYCLIC, Graph, girth
from cubesep import oracles
from cubesep.hypercube import full_cube
from cubesep.oracles import (exact_cycle_count, exact_edge_separator, exact_girth, exact_min_expansion_set,
                             exact_vertex_separator)

from suites import (complete, cycle, path, random_gnp, random_tree, rng_for, star,
                    two_triangles_bridge)


def test_edge_separator_examples():
    # [DERIVED] exhaustive bipartition
    assert exact_edge_separator(star(6)).size == 3
    for n in range(2, 14):
        assert exact_edge_separator(path(n)).size == (0 if n == 1 else 1)
    assert exact_edge_separator(cycle(4)).size == 2
    assert exact_edge_separator(Graph(6, [(0, 1), (2, 3), (4, 5)])).size == 0


def test_edge_separator_tie_break_is_lexicographic():
    sep = exact_edge_separator(cycle(4))
    assert sep.removed == ((0, 1), (2, 3))
    assert exact_edge_separator(cycle(4), route="edges").removed == sep.removed


@pytest.mark.parametrize("seed", range(30))
def test_edge_separator_routes_agree(seed):
    # [DERIVED] the two enumeration routes share no search code
    rng = rng_for(seed, 41)
    g = random_gnp(rng, int(rng.integers(2, 10)), float(rng.uniform(0.15, 0.6)))
    a = exact_edge_separator(g, route="bipartition")
    b = exact_edge_separator(g, route="edges")
    assert a.removed == b.removed
    assert is_valid_separator(g, a)


def test_edge_separator_large_path_uses_candidate_budget(monkeypatch):
    sep = exact_edge_separator(path(27))
    assert sep.size == 1 and is_valid_separator(path(27), sep)
    monkeypatch.setattr(oracles, "CANDIDATE_BUDGET", 5000)
    with pytest.raises(ValueError, match="budget"):
        exact_edge_separator(complete(21))
    with pytest.raises(ValueError):
        exact_edge_separator(path(21), route="bipartition")


def test_vertex_separator_examples():
    # [DERIVED] exhaustive; the 2n/3 cap is rounded down, so K_4 needs two vertices
    assert exact_vertex_separator(complete(4)).size == 2
    assert exact_vertex_separator(cycle(4)).size == 2
    assert exact_vertex_separator(star(6)).removed == (0,)
    assert exact_vertex_separator(Graph(3)).size == 0


def test_vertex_separator_conventions():
    # P_3: removing the middle leaves two singletons either way
    assert exact_vertex_separator(path(3), "remaining").size == 1
    # K_5: the original cap 3 needs 2 removals; measured on what remains, two
    # survivors still exceed cap 1, so only a single survivor works
    assert exact_vertex_separator(complete(5), "original").size == 2
    assert exact_vertex_separator(complete(5), "remaining").size == 4
    with pytest.raises(ValueError):
        exact_vertex_separator(path(3), "other")
    with pytest.raises(ValueError):
        exact_vertex_separator(path(21))


@pytest.mark.parametrize("seed", range(40))
def test_trees_have_vertex_separator_at_most_one(seed):
    # [PAPER] every tree has a vertex separator of size at most one
    rng = rng_for(seed, 43)
    t = random_tree(rng, int(rng.integers(1, 19)))
    sep = exact_vertex_separator(t)
    assert sep.size <= 1
    assert sep.size == tree_vertex_separator(t).size


@pytest.mark.parametrize("seed", range(30))
def test_vertex_separator_at_most_edge_separator(seed):
    rng = rng_for(seed, 44)
    g = random_gnp(rng, int(rng.integers(2, 12)), float(rng.uniform(0.1, 0.7)))
    v = exact_vertex_separator(g)
    e = exact_edge_separator(g)
    assert v.size <= e.size
    assert is_valid_separator(g, v)


@pytest.mark.parametrize("leaves", range(3, 10))
def test_star_edge_separator(leaves):
    # [PAPER] sep(K_{1,D}) >= D/3
    assert exact_edge_separator(star(leaves)).size >= -(-leaves // 3)


def test_min_expansion_examples():
    r = exact_min_expansion_set(cycle(4), (2, 2))
    assert r.expansion == 1 and r.members == {0, 1}
    r = exact_min_expansion_set(star(6), (1, 1))
    assert r.expansion == 1 and r.members == {1}
    r = exact_min_expansion_set(two_triangles_bridge(), (3, 3))
    assert r.expansion == Fraction(1, 3) and r.members == {0, 1, 2}
    with pytest.raises(ValueError):
        exact_min_expansion_set(cycle(4), (3, 2))


@pytest.mark.parametrize("seed", range(40))
def test_min_expansion_two_routes(seed):
    # [DERIVED] itertools enumeration against the vectorised bitmask search
    rng = rng_for(seed, 45)
    g = random_gnp(rng, int(rng.integers(2, 13)), float(rng.uniform(0.1, 0.8)))
    a = exact_min_expansion_set(g, (1, g.n // 2))
    b = min_edge_expansion(g)
    assert a.expansion == b.expansion


def test_cycle_count_examples():
    assert exact_cycle_count(2, 4) == 1
    assert exact_cycle_count(3, 4) == 6
    assert exact_cycle_count(3, 3) == 0
    assert exact_cycle_count(4, 2) == 0
    with pytest.raises(ValueError):
        exact_cycle_count(5, 4)


@pytest.mark.parametrize("d,length", [(3, 6), (3, 8), (4, 4), (4, 6), (4, 8)])
def test_cycle_count_matches_networkx(d, length):
    # [DERIVED] networkx simple_cycles with a length bound
    g = nx.Graph(full_cube(d).edge_list())
    want = sum(1 for c in nx.simple_cycles(g, length_bound=length) if len(c) == length)
    assert exact_cycle_count(d, length) == want


def test_exact_girth():
    assert exact_girth(cycle(7)) == 7
    assert exact_girth(path(5)) is ACYCLIC
    assert exact_girth(full_cube(3)) == 4
    with pytest.raises(ValueError):
        exact_girth(path(13))


@pytest.mark.parametrize("seed", range(20))
def test_exact_girth_matches_bfs_girth(seed):
    rng = rng_for(seed, 46)
    g = random_gnp(rng, int(rng.integers(3, 13)), float(rng.uniform(0.1, 0.5)))
    assert exact_girth(g) == girth(g)

