import numpy as np
import pytest

from oracles import naive_modularity
from testlab.quality import (DesignMetrics, EmptyGraph, ModuleDependencyGraph,
                             design_metrics_from_classes, extendibility,
                             functionality, modularity, reusability)


def test_all_zero_design_metrics():
    d = DesignMetrics()
    assert reusability(d) == 0.0
    assert functionality(d) == 0.0
    assert extendibility(d) == 0.0


def test_reusability_hand_value():
    d = DesignMetrics(class_coupling=4, cohesion_among_methods=4,
                      n_public_methods=2, design_size_in_classes=2)
    assert reusability(d) == pytest.approx(2.0)


def test_reusability_linear_in_design_size():
    d1 = DesignMetrics(design_size_in_classes=2)
    d2 = DesignMetrics(design_size_in_classes=6)
    assert reusability(d2) - reusability(d1) == pytest.approx(0.5 * 4)


def test_functionality_cohesion_coefficient():
    d = DesignMetrics(cohesion_among_methods=1)
    assert functionality(d) == pytest.approx(0.12)


def test_extendibility_coupling_coefficient():
    d = DesignMetrics(class_coupling=2)
    assert extendibility(d) == pytest.approx(-1.0)


def test_qmood_forms_are_linear():
    rng = np.random.default_rng(0)
    for _ in range(30):
        vals = rng.uniform(0, 10, size=8)
        alpha = float(rng.uniform(0.1, 5))
        d = DesignMetrics(*vals)
        ad = DesignMetrics(*(alpha * vals))
        for form in (reusability, functionality, extendibility):
            assert form(ad) == pytest.approx(alpha * form(d), rel=1e-12)


def test_modularity_two_node_single_module():
    g = ModuleDependencyGraph(["a", "b"], np.array([[0.0, 1.0], [0.0, 0.0]]),
                              ["m", "m"])
    # direct summation: (1/1) * [sum A - (sum kin)(sum kout)/1] = 1 - 1 = 0
    assert modularity(g) == pytest.approx(0.0)
    assert modularity(g) == naive_modularity(g.adjacency, g.modules)


def test_modularity_all_singleton_modules_zero():
    rng = np.random.default_rng(1)
    a = (rng.uniform(size=(6, 6)) > 0.5).astype(float)
    np.fill_diagonal(a, 0)
    g = ModuleDependencyGraph(list("abcdef"), a, list(range(6)))
    assert modularity(g) == 0.0


def test_modularity_matches_bruteforce_on_random_graphs():
    rng = np.random.default_rng(2)
    for _ in range(50):
        n = int(rng.integers(2, 50))
        a = (rng.uniform(size=(n, n)) > 0.7).astype(float)
        np.fill_diagonal(a, 0)
        if rng.uniform() < 0.3:
            a = a * np.round(rng.uniform(0, 3, size=(n, n)), 2)
        modules = [int(m) for m in rng.integers(0, max(1, n // 3) + 1, size=n)]
        g = ModuleDependencyGraph([str(i) for i in range(n)], a, modules)
        assert modularity(g) == naive_modularity(a, modules)


def test_modularity_invariant_under_relabeling():
    rng = np.random.default_rng(3)
    n = 20
    a = (rng.uniform(size=(n, n)) > 0.6).astype(float)
    np.fill_diagonal(a, 0)
    modules = [int(m) for m in rng.integers(0, 4, size=n)]
    g1 = ModuleDependencyGraph([str(i) for i in range(n)], a, modules)
    perm = rng.permutation(n)
    a2 = a[np.ix_(perm, perm)]
    modules2 = [modules[i] for i in perm]
    g2 = ModuleDependencyGraph([str(i) for i in perm], a2, modules2)
    assert modularity(g1) == pytest.approx(modularity(g2), abs=1e-12)


def test_empty_graph_rejected():
    with pytest.raises((EmptyGraph, ValueError)):
        modularity(ModuleDependencyGraph([], np.zeros((0, 0)), []))


def test_design_metrics_aggregation():
    maps = [
        {"CSCBO": 2.0, "CSNOM": 3.0, "CSLOCM": 0.0, "CSNOPLM": 2.0,
         "CSNMO": 1.0, "CSDIT": 0.0, "CSNOC": 1.0, "CSNIM": 0.0},
        {"CSCBO": 4.0, "CSNOM": 1.0, "CSLOCM": 0.0, "CSNOPLM": 1.0,
         "CSNMO": 0.0, "CSDIT": 1.0, "CSNOC": 0.0, "CSNIM": 2.0},
    ]
    d = design_metrics_from_classes(maps)
    assert d.class_coupling == pytest.approx(3.0)
    assert d.design_size_in_classes == 2.0
    assert d.n_hierarchies == 1.0  # first class: root with a child
    assert d.avg_ancestors == pytest.approx(0.5)
    # first class: 3 methods, 3 pairs, 0 disjoint -> cohesion 1; second: <2 methods -> 1
    assert d.cohesion_among_methods == pytest.approx(1.0)
