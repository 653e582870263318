"""Recursive sparse-cut decomposition and the girth bound for edge expanders.

``trevisan_decompose`` removes the boundary of any set whose expansion is below
``eps / (12 log2 n)`` until no component has one.  In exact mode components of
at most ``EXACT_CUT_BUDGET`` vertices are certified by brute force; larger ones
fall back to a heuristic cut and are flagged as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cuts import EXACT_CUT_BUDGET, coordinate_cut, get_cut_strategy, min_edge_expansion, spectral_sweep_cut
from .graph import ACYCLIC, Graph, average_degree, components, girth, induced_subgraph, is_connected, is_forest
from .sse import parse_fraction

CERTIFIED = "certified"
NO_CUT_FOUND = "no-cut-found"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class ComponentStatus:
    members: frozenset
    status: str
    best_expansion: Fraction | None


@dataclass(frozen=True)
class DecompositionResult:
    """Final components with removed-edge accounting.

    ``status`` is ``"certified"`` when brute force showed every set has expansion
    at least the threshold, ``"no-cut-found"`` when only a heuristic looked, and
    ``"trivial"`` for single vertices.
    """

    n: int
    m: int
    epsilon: Fraction
    threshold: float
    mode: str
    components: tuple
    removed: tuple

    @property
    def removed_count(self) -> int:
        return len(self.removed)

    @property
    def removed_fraction(self) -> Fraction:
        return Fraction(len(self.removed), self.m) if self.m else Fraction(0)

    @property
    def within_epsilon(self) -> bool:
        return self.removed_fraction <= self.epsilon

    @property
    def all_certified(self) -> bool:
        return all(c.status != NO_CUT_FOUND for c in self.components)


def below_threshold(phi: Fraction, epsilon: Fraction, n: int) -> bool:
    """Exact test of ``phi < eps / (12 log2 n)`` for ``n >= 2``.

    With ``eps/(12 phi) = r/s`` this is ``n^s < 2^r``.
    """
    if phi == 0:
        return True
    ratio = epsilon / (12 * phi)
    return n ** ratio.denominator < 2 ** ratio.numerator


def trevisan_decompose(g: Graph, epsilon, mode: str = "exact", cut_finder=None) -> DecompositionResult:
    """Cut sparse sets out of ``g`` until every component expands.

    Parameters
    ----------
    g : Graph
    epsilon : Fraction or str
        ``0 < eps <= 1/2``; the threshold is ``eps / (12 log2 n)`` with ``n = |V(g)|``.
    mode : {"exact", "heuristic"}
    cut_finder : str or callable, optional
        Heuristic used for components beyond the exact budget (or for all of them
        in heuristic mode).  Defaults to the coordinate cut on labelled graphs and
        the spectral sweep otherwise.
    """
    eps = parse_fraction(epsilon)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError("epsilon must lie in (0, 1/2]")
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    if cut_finder is None:
        cut_finder = "coordinate" if g.labels is not None else "spectral"
    heuristic = get_cut_strategy(cut_finder)
    n = g.n
    threshold = float(eps) / (12 * math.log2(n)) if n >= 2 else math.inf
    alive = np.ones(g.m, dtype=bool)
    work = [c.members for c in components(g)]
    done = []
    while work:
        members = work.pop()
        if len(members) == 1:
            done.append(ComponentStatus(members, TRIVIAL, None))
            continue
        verts = np.array(sorted(members), dtype=np.int64)
        sub = induced_subgraph(g.without_edges(~alive), verts)
        exact = mode == "exact" and sub.n <= EXACT_CUT_BUDGET
        cut = min_edge_expansion(sub) if exact else heuristic(sub)
        if below_threshold(cut.expansion, eps, n):
            side = np.zeros(g.n, dtype=bool)
            side[verts[sorted(cut.members)]] = True
            inside = np.zeros(g.n, dtype=bool)
            inside[verts] = True
            e0, e1 = g.edges[:, 0], g.edges[:, 1]
            alive &= ~(inside[e0] & inside[e1] & (side[e0] != side[e1]))
            pieces = components(induced_subgraph(g.without_edges(~alive), verts))
            work.extend(frozenset(verts[sorted(p.members)].tolist()) for p in pieces)
        else:
            done.append(ComponentStatus(members, CERTIFIED if exact else NO_CUT_FOUND, cut.expansion))
    done.sort(key=lambda c: min(c.members))
    removed = tuple(tuple(e) for e in g.edges[~alive].tolist())
    return DecompositionResult(n, g.m, eps, threshold, mode, tuple(done), removed)


def girth_bound(alpha, n: float) -> float:
    """``2(2/alpha + 1)(ln n + 1) + 1``: girth bound for a connected non-tree graph
    with edge expansion ``alpha``."""
    alpha = float(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if n < 1:
        raise ValueError("n must be at least 1")
    return 2 * (2 / alpha + 1) * (math.log(n) + 1) + 1


def girth_bound_simplified(alpha, n: float) -> float | None:
    """``12 ln n / alpha`` for ``alpha <= 1``; it dominates the general bound once
    ``n >= 4`` and is ``None`` outside that range."""
    alpha = float(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if alpha > 1 or n < 4:
        return None
    return 12 * math.log(n) / alpha


@dataclass(frozen=True)
class GirthAudit:
    n: int
    alpha: Fraction
    girth: int
    bound: float
    simplified: float | None

    @property
    def holds(self) -> bool:
        return self.girth <= self.bound and (self.simplified is None or self.girth <= self.simplified)


def girth_expansion_audit(g: Graph) -> GirthAudit:
    """Exact edge expansion and girth of a small connected non-tree graph against the bound."""
    if g.n > EXACT_CUT_BUDGET:
        raise ValueError(f"audit needs exact expansion, n <= {EXACT_CUT_BUDGET}")
    if not is_connected(g):
        raise ValueError("audit needs a connected graph")
    if is_forest(g):
        raise ValueError("audit needs a graph with a cycle")
    alpha = min_edge_expansion(g).expansion
    gi = girth(g)
    assert gi is not ACYCLIC
    return GirthAudit(g.n, alpha, gi, girth_bound(alpha, g.n), girth_bound_simplified(alpha, g.n))


def trevisan_formula(n: int, k: int) -> float:
    """``(1/log n)(15 k log log n)^2``."""
    ln = math.log2(n)
    return (15 * k * math.log2(ln)) ** 2 / ln


@dataclass(frozen=True)
class TrevisanRecord:
    seed: int
    n: int
    k: int
    kept_edges: int
    component_size: int
    component_avg_degree: Fraction
    expansion: Fraction
    formula: float

    @property
    def below_formula(self) -> bool:
        return self.expansion <= self.formula


def trevisan_experiment(g: Graph, k: int, seed: int, target_degree: int = 4) -> TrevisanRecord:
    """Delete random edges down to average degree ``target_degree`` and cut the largest component.

    The coordinate cut (spectral sweep without labels) of the largest remaining
    component is compared with ``(1/log n)(15 k log log n)^2``.
    """
    from .spectral import remove_random_edges

    keep = min(g.m, target_degree * g.n // 2)
    rest = remove_random_edges(g, g.m - keep, seed)
    comps = components(rest)
    big = max(comps, key=lambda c: (len(c.members), -min(c.members)))
    h = induced_subgraph(rest, sorted(big.members))
    if h.m == 0:
        raise ValueError("no edges left to cut")
    cut = coordinate_cut(h) if h.labels is not None else spectral_sweep_cut(h)
    return TrevisanRecord(seed, g.n, k, rest.m, h.n, average_degree(h), cut.expansion,
                          trevisan_formula(g.n, k))
