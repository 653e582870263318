import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubesep.construction import ConstructionParams, build_gnk
from cubesep.decomposition import (CERTIFIED, NO_CUT_FOUND, TRIVIAL, below_threshold, girth_bound,
                                   girth_bound_simplified, girth_expansion_audit, trevisan_decompose,
                                   trevisan_experiment, trevisan_formula)
from cubesep.graph import Graph, components
from cubesep.hypercube import full_cube

from suites import complete, cycle, path, random_connected_nontree, random_tree, rng_for, two_k4_bridge


def test_girth_bound_examples():
    assert girth_bound(1, math.e) == pytest.approx(13)
    assert girth_bound(2, math.e) == pytest.approx(9)
    assert girth_bound(Fraction(1, 2), math.e ** 2) == pytest.approx(31)
    with pytest.raises(ValueError):
        girth_bound(0, 10)


def test_girth_bound_simplified_range():
    assert girth_bound_simplified(2, 100) is None
    assert girth_bound_simplified(1, 3) is None
    assert girth_bound_simplified(1, math.e ** 2) == pytest.approx(24)


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1), st.integers(4, 10 ** 9))
def test_simplified_bound_dominates(alpha, n):
    assert girth_bound_simplified(alpha, n) >= girth_bound(alpha, n)


def test_below_threshold_exact():
    # eps/(12 log2 n) with n = 2^12, eps = 1/2: threshold 1/288
    assert below_threshold(Fraction(1, 289), Fraction(1, 2), 4096)
    assert not below_threshold(Fraction(1, 288), Fraction(1, 2), 4096)
    assert below_threshold(Fraction(0), Fraction(1, 2), 3)


def test_two_k4_bridge_is_certified_without_removal():
    # [DERIVED] bridge side has phi = 1/4, above 1/(24 log2 8) = 1/72, so nothing is cut
    res = trevisan_decompose(two_k4_bridge(), "1/2", "exact")
    assert res.removed == () and len(res.components) == 1
    assert res.components[0].status == CERTIFIED and res.components[0].best_expansion == Fraction(1, 4)


def test_complete_graph_no_removal():
    res = trevisan_decompose(complete(8), "1/2", "exact")
    assert res.removed_count == 0 and res.all_certified


def test_empty_graph():
    res = trevisan_decompose(Graph(5), "1/2", "exact")
    assert res.removed == () and [c.status for c in res.components] == [TRIVIAL] * 5
    assert res.removed_fraction == 0 and res.within_epsilon


def test_long_path_is_cut():
    # [DERIVED] threshold 1/240 at n=1024; a 256-vertex path has min expansion 1/128
    res = trevisan_decompose(path(1024), "1/2", "heuristic")
    assert res.removed_count == 3
    assert sorted(len(c.members) for c in res.components) == [256] * 4
    assert all(c.status == NO_CUT_FOUND for c in res.components)
    assert res.within_epsilon


def test_exact_mode_falls_back_above_budget():
    res = trevisan_decompose(path(1024), "1/2", "exact")
    assert res.removed_count == 3 and not res.all_certified


def test_parameter_checks():
    with pytest.raises(ValueError):
        trevisan_decompose(path(4), "3/4")
    with pytest.raises(ValueError):
        trevisan_decompose(path(4), "1/2", "fast")


@pytest.mark.parametrize("seed", range(10))
def test_decomposition_partition_property(seed):
    rng = rng_for(seed, 71)
    g, _ = build_gnk(ConstructionParams(12, 2, seed=seed, n=int(rng.integers(2049, 2400))))
    res = trevisan_decompose(g, "1/2", "heuristic")
    drop = set(res.removed)
    rest = Graph(g.n, [e for e in g.edge_list() if e not in drop])
    assert sorted(sorted(c.members) for c in components(rest)) == \
        sorted(sorted(c.members) for c in res.components)
    assert res.within_epsilon
    assert all(c.best_expansion is None or not below_threshold(c.best_expansion, res.epsilon, g.n)
               for c in res.components)


def test_girth_audit_examples():
    a = girth_expansion_audit(cycle(4))
    assert (a.alpha, a.girth) == (1, 4) and a.holds
    a = girth_expansion_audit(full_cube(3))
    assert a.alpha == 1 and a.girth == 4 and a.holds
    with pytest.raises(ValueError):
        girth_expansion_audit(random_tree(rng_for(0, 72), 8))
    with pytest.raises(ValueError):
        girth_expansion_audit(Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
    with pytest.raises(ValueError):
        girth_expansion_audit(cycle(25))


@pytest.mark.parametrize("seed", range(20))
def test_girth_audit_random(seed):
    # [PAPER] girth <= 2(2/alpha + 1)(ln n + 1) + 1 for connected non-trees
    a = girth_expansion_audit(random_connected_nontree(rng_for(seed, 73), 14))
    assert a.holds


def test_trevisan_formula():
    # n = 2^16: log n = 16, log log n = 4 -> (15*2*4)^2/16 = 900
    assert trevisan_formula(2 ** 16, 2) == pytest.approx(900)


def test_trevisan_experiment_small():
    g, _ = build_gnk(ConstructionParams(12, 2, seed=1))
    rec = trevisan_experiment(g, 2, seed=1)
    again = trevisan_experiment(g, 2, seed=1)
    assert rec == again
    assert rec.kept_edges == 2 * g.n and rec.below_formula
    assert rec.component_size <= g.n
