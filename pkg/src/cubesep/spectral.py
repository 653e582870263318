"""Adjacency spectra of loop-regularised graphs, threshold rank and Cheeger checks.

A vertex of degree ``deg(v)`` regularised to ``D`` gets ``D - deg(v)`` self-loops,
each adding 1 to the diagonal, so every row of the operator sums to ``D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cuts import cut_of
from .graph import Graph, average_degree, components, induced_subgraph

SPECTRAL_BUDGET = 4096
DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class RegularizedOperator:
    """Dense symmetric operator ``A + diag(loops)`` of a regularised graph."""

    matrix: np.ndarray
    degree_target: int
    loops: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def regularize(h: Graph, degree_target: int | None = None) -> RegularizedOperator:
    """Add ``degree_target - deg(v)`` self-loops at every vertex ``v``.

    ``degree_target`` defaults to the maximum degree of ``h``.
    """
    target = h.max_degree if degree_target is None else int(degree_target)
    if target < h.max_degree:
        raise ValueError(f"degree target {target} is below the maximum degree {h.max_degree}")
    if h.n > SPECTRAL_BUDGET:
        raise ValueError(f"dense operator budget is n <= {SPECTRAL_BUDGET} (got {h.n}); "
                         "analyse components separately")
    mat = np.zeros((h.n, h.n))
    if h.m:
        u, v = h.edges[:, 0], h.edges[:, 1]
        mat[u, v] = 1.0
        mat[v, u] = 1.0
    loops = target - h.degrees
    mat[np.diag_indices(h.n)] = loops
    mat.setflags(write=False)
    loops.setflags(write=False)
    return RegularizedOperator(mat, target, loops)


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues in descending order with the solver's worst residual.

    ``max_residual`` is ``max_i ||A x_i - lambda_i x_i||`` relative to ``||A||_2``
    and is at most ``residual_tolerance``.
    """

    degree_target: int
    eigenvalues: np.ndarray
    residual_tolerance: float
    max_residual: float

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def spectrum(operator, tolerance: float = DEFAULT_TOLERANCE) -> SpectrumReport:
    """All eigenvalues of a regularised operator (a bare ``Graph`` is regularised
    to its own maximum degree).

    Raises
    ------
    ValueError
        Beyond ``SPECTRAL_BUDGET`` vertices.
    ArithmeticError
        When some eigenpair misses the residual tolerance.
    """
    if isinstance(operator, Graph):
        operator = regularize(operator)
    a = operator.matrix
    if a.shape[0] > SPECTRAL_BUDGET:
        raise ValueError(f"dense eigensolver budget is n <= {SPECTRAL_BUDGET}; "
                         "analyse components separately")
    if a.shape[0] == 0:
        return SpectrumReport(operator.degree_target, np.zeros(0), tolerance, 0.0)
    vals, vecs = np.linalg.eigh(a)
    norm = max(float(np.abs(vals).max()), 1.0)
    res = np.linalg.norm(a @ vecs - vecs * vals, axis=0).max() / norm
    if res > tolerance:
        raise ArithmeticError(f"eigen-residual {res:.3e} exceeds tolerance {tolerance:.1e}")
    vals = vals[::-1].copy()
    vals.setflags(write=False)
    return SpectrumReport(operator.degree_target, vals, tolerance, float(res))


@dataclass(frozen=True)
class ThresholdRank:
    """Count of ``|lambda| > tau * D``.

    ``value`` is the plain floating-point count; ``low`` and ``high`` bound it
    when eigenvalues within the tolerance band of the threshold are treated as
    below or above it.
    """

    tau: float
    threshold: float
    value: int
    low: int
    high: int

    @property
    def ambiguous(self) -> bool:
        return self.low != self.high

    def __int__(self) -> int:
        return self.value


def threshold_rank(report: SpectrumReport, tau: float) -> ThresholdRank:
    if not 0 < tau <= 1:
        raise ValueError("tau must lie in (0, 1]")
    thr = tau * report.degree_target
    band = report.residual_tolerance * max(1.0, float(report.degree_target))
    mags = np.abs(report.eigenvalues)
    return ThresholdRank(float(tau), thr, int((mags > thr).sum()),
                         int((mags > thr + band).sum()), int((mags > thr - band).sum()))


@dataclass(frozen=True)
class CheegerReport:
    """Both sides of ``(D - lambda_k)/2 <= max_i phi(S_i)``."""

    k: int
    degree_target: int
    lambda_k: float
    lhs: float
    rhs: Fraction
    tolerance: float

    @property
    def holds(self) -> bool:
        return self.lhs <= float(self.rhs) + self.tolerance


def _check_disjoint(n: int, sets) -> list[frozenset]:
    out = []
    seen = set()
    for s in sets:
        s = frozenset(int(v) for v in s)
        if not s:
            raise ValueError("sets must be nonempty")
        if not all(0 <= v < n for v in s):
            raise ValueError("set member out of range")
        if len(s) == n:
            raise ValueError("a set may not be the whole vertex set")
        if s & seen:
            raise ValueError("sets must be mutually disjoint")
        seen |= s
        out.append(s)
    if not out:
        raise ValueError("need at least one set")
    return out


def cheeger_check(h: Graph, degree_target: int | None, sets, report: SpectrumReport | None = None,
                  tolerance: float = DEFAULT_TOLERANCE) -> CheegerReport:
    """Compare ``(D - lambda_k)/2`` of the regularised ``h`` with ``max_i phi(S_i)``.

    Self-loops never cross a cut, so ``phi`` is computed on ``h`` itself.  The
    inequality is accepted within ``tolerance * D``.
    """
    sets = _check_disjoint(h.n, sets)
    target = h.max_degree if degree_target is None else int(degree_target)
    if report is None:
        report = spectrum(regularize(h, target))
    k = len(sets)
    lam = float(report.eigenvalues[k - 1])
    rhs = max(cut_of(h, s).expansion for s in sets)
    return CheegerReport(k, target, lam, (target - lam) / 2, rhs, tolerance * max(1, target))


@dataclass(frozen=True)
class RankRecord:
    """One sampled run of the threshold-rank experiment.

    ``b`` is the number of extracted sets whose expansion is below
    ``eta * D / 2`` (at least 1, for ``lambda_1 = D``); by the Cheeger inequality it
    is a lower bound on ``rank_{1-eta}(H*)``.
    """

    seed: int
    eta: float
    edge_fraction_removed: float
    removed_edges: int
    component_size: int
    component_avg_degree: Fraction
    degree_target: int
    mu: Fraction | None
    b: int
    sse_sets: int
    rank: ThresholdRank | None
    cheeger: CheegerReport | None
    formula: float | None
    sampled: bool = True

    @property
    def consistent(self) -> bool | None:
        if self.rank is None:
            return None
        return self.b <= self.rank.high and (self.cheeger is None or self.cheeger.holds)


def _removal_rng(seed: int) -> np.random.Generator:
    # construction attempts use keys below 2**32, so this stream is disjoint from them
    return np.random.Generator(np.random.Philox(key=[seed, 1 << 32]))


def remove_random_edges(g: Graph, count: int, seed: int) -> Graph:
    """Delete ``count`` uniformly random edges."""
    count = min(max(int(count), 0), g.m)
    if count == 0:
        return g
    drop = _removal_rng(seed).choice(g.m, size=count, replace=False)
    mask = np.zeros(g.m, dtype=bool)
    mask[drop] = True
    return g.without_edges(mask)


def densest_component(g: Graph) -> frozenset:
    """Component of largest average degree; ties go to the larger one, then the lower id."""
    comps = components(g)
    best = max(comps, key=lambda c: (c.average_degree, len(c.members), -min(c.members)))
    return best.members


def rank_experiment(g: Graph, eta: float, edge_fraction_removed: float, seed: int,
                    mu="1/16", separator="boost") -> RankRecord:
    """Remove random edges, take the densest component ``H`` and bound its threshold rank.

    The sets of ``extract_disjoint_family(H, mu)`` with ``2 phi_H(A) < eta D``
    certify ``rank_{1-eta}(H*) >= b`` through the Cheeger inequality, where ``D``
    is the maximum degree of ``g``.  When ``H`` fits the dense solver the rank is
    measured as well.
    """
    from .sse import SseError, extract_disjoint_family, parse_fraction

    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    if not 0 <= edge_fraction_removed <= 1:
        raise ValueError("edge fraction must lie in [0, 1]")
    removed = math.floor(edge_fraction_removed * g.m)
    rest = remove_random_edges(g, removed, seed)
    members = sorted(densest_component(rest))
    h = induced_subgraph(rest, members)
    target = g.max_degree
    mu_used = None
    selected = []
    if h.n >= 3:
        mu_used = min(max(parse_fraction(mu), Fraction(1, h.n)), Fraction(2, 3))
        try:
            fam = extract_disjoint_family(h, mu_used, separator)
            selected = [s for s, phi in zip(fam.sets, fam.expansions_in_h) if 2 * phi < eta * target]
        except SseError:
            selected = []
    b = max(1, len(selected))
    rank = cheeger = None
    if h.n <= SPECTRAL_BUDGET:
        rep = spectrum(regularize(h, target))
        rank = threshold_rank(rep, 1 - eta)
        if selected:
            cheeger = cheeger_check(h, target, selected, rep)
    n = g.n
    formula = None
    if n >= 16:
        formula = n ** (eta / math.log2(math.log2(n)) ** 3)
    return RankRecord(seed, float(eta), float(edge_fraction_removed), removed, h.n,
                      average_degree(h), target, mu_used, b, len(selected), rank, cheeger, formula)
