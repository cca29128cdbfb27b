"""Companion quality attributes.

Reusability, functionality, and extendibility are linear forms over
design-level metrics; modularity Q is computed over the module
dependency graph exactly as published, with m the number of components
(packages) appearing both as the outer normalizer and inside the degree
product term. Q is evaluated in exact rational arithmetic and rounded
once, so an independent double-loop evaluation reproduces it bit for
bit.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class EmptyGraph(ValueError):
    pass


@dataclass
class DesignMetrics:
    class_coupling: float = 0.0
    cohesion_among_methods: float = 0.0
    n_public_methods: float = 0.0
    design_size_in_classes: float = 0.0
    n_polymorphic_methods: float = 0.0
    n_hierarchies: float = 0.0
    avg_ancestors: float = 0.0
    n_inherited_methods: float = 0.0


def reusability(d):
    return (-0.25 * d.class_coupling + 0.25 * d.cohesion_among_methods
            + 0.5 * d.n_public_methods + 0.5 * d.design_size_in_classes)


def functionality(d):
    return (0.12 * d.cohesion_among_methods
            + 0.22 * d.n_polymorphic_methods
            + 0.22 * d.n_public_methods
            + 0.22 * d.design_size_in_classes
            + 0.22 * d.n_hierarchies)


def extendibility(d):
    return (0.5 * d.avg_ancestors - 0.5 * d.class_coupling
            + 0.5 * d.n_inherited_methods + 0.5 * d.n_polymorphic_methods)


@dataclass
class ModuleDependencyGraph:
    nodes: list      # class ids
    adjacency: np.ndarray
    modules: list    # module id per node

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] != len(self.nodes):
            raise ValueError("adjacency must be square and match nodes")
        if (a < 0).any():
            raise ValueError("adjacency weights must be non-negative")
        if len(self.modules) != len(self.nodes):
            raise ValueError("modules must cover all nodes")
        self.adjacency = a

    @property
    def n_components(self):
        return len(set(self.modules))

    def in_degrees(self):
        return self.adjacency.sum(axis=0)

    def out_degrees(self):
        return self.adjacency.sum(axis=1)


def modularity(graph):
    """Q = (1/m) * sum_{i != j} (A_ij - k_i^in * k_j^out / m) * delta(c_i, c_j).

    Self-pairs are excluded: with every node in its own module the sum
    has no surviving terms and Q is exactly 0.
    """
    n = len(graph.nodes)
    if n == 0:
        raise EmptyGraph("module dependency graph has no nodes")
    a = graph.adjacency
    m = graph.n_components
    frac = [[Fraction(a[i, j]) for j in range(n)] for i in range(n)]
    kin = [sum((frac[i][j] for i in range(n)), Fraction(0)) for j in range(n)]
    kout = [sum((frac[i][j] for j in range(n)), Fraction(0)) for i in range(n)]
    # group by module: the delta collapses the double sum per module
    by_module = {}
    for idx, mod in enumerate(graph.modules):
        by_module.setdefault(mod, []).append(idx)
    total = Fraction(0)
    for members in by_module.values():
        a_sum = sum((frac[i][j] for i in members for j in members if i != j),
                    Fraction(0))
        kin_sum = sum((kin[i] for i in members), Fraction(0))
        kout_sum = sum((kout[j] for j in members), Fraction(0))
        diag = sum((kin[i] * kout[i] for i in members), Fraction(0))
        total += a_sum - (kin_sum * kout_sum - diag) / m
    return float(total / m)


def design_metrics_from_classes(metric_maps):
    """Aggregate per-class metric maps into design-level inputs.

    Averages per-class quantities; counts classes for the design size;
    counts inheritance roots that have descendants as hierarchies.
    """
    if not metric_maps:
        raise ValueError("no classes in scope")
    n = len(metric_maps)

    def mean(key):
        return sum(m[key] for m in metric_maps) / n

    cohesion_values = []
    for m in metric_maps:
        nom = m["CSNOM"]
        pairs = nom * (nom - 1) / 2.0
        if pairs > 0:
            cohesion_values.append(1.0 - m["CSLOCM"] / pairs)
        else:
            cohesion_values.append(1.0)
    hierarchies = sum(1 for m in metric_maps if m["CSDIT"] == 0 and m["CSNOC"] > 0)
    return DesignMetrics(
        class_coupling=mean("CSCBO"),
        cohesion_among_methods=sum(cohesion_values) / n,
        n_public_methods=mean("CSNOPLM"),
        design_size_in_classes=float(n),
        n_polymorphic_methods=mean("CSNMO"),
        n_hierarchies=float(hierarchies),
        avg_ancestors=mean("CSDIT"),
        n_inherited_methods=mean("CSNIM"),
    )


def build_mdg(analyses, packages):
    """Dependency graph over project classes; modules are packages."""
    nodes = sorted(analyses)
    if not nodes:
        raise EmptyGraph("project has no classes")
    pos = {q: i for i, q in enumerate(nodes)}
    a = np.zeros((len(nodes), len(nodes)))
    for q, analysis in analyses.items():
        for target in analysis.referenced:
            if target in pos and target != q:
                a[pos[q], pos[target]] = 1.0
    modules = [packages[q] for q in nodes]
    return ModuleDependencyGraph(nodes, a, modules)
