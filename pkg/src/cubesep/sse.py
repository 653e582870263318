"""Small non-expanding sets by nested bisection and greedy extraction.

Phase one (``shrink_to_small_set``) repeatedly splits ``H[S]`` with a balanced
edge separator and keeps the side of smaller expansion in ``H``, until
``|S| <= mu*t``.  Phase two (``extract_disjoint_family``) runs phase one on what
is left after removing earlier sets and keeps the ``ceil(1/(4 mu))`` sets of
smallest expansion in ``H``.  Every inequality used along the way is recounted
with exact rationals and stored in the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .cuts import SeparatorResult, boost_separator, separator_bound_f
from .graph import Graph, boundary_count, induced_subgraph
from .oracles import exact_edge_separator

SeparatorStrategy = Callable[[Graph], SeparatorResult]


def _boost_coordinate(h: Graph) -> SeparatorResult:
    return boost_separator(h, "coordinate" if h.labels is not None else "spectral")


def _boost_spectral(h: Graph) -> SeparatorResult:
    return boost_separator(h, "spectral")


SEPARATOR_STRATEGIES: dict[str, SeparatorStrategy] = {
    "boost": _boost_coordinate,
    "boost-spectral": _boost_spectral,
    "exact": exact_edge_separator,
}


def get_separator_strategy(name_or_fn) -> SeparatorStrategy:
    if callable(name_or_fn):
        return name_or_fn
    try:
        return SEPARATOR_STRATEGIES[name_or_fn]
    except KeyError:
        raise ValueError(f"unknown separator strategy {name_or_fn!r}") from None


def parse_fraction(value) -> Fraction:
    """``Fraction`` from an int, a Fraction or a ``"P/Q"`` string (floats refused)."""
    if isinstance(value, float):
        raise TypeError("pass mu as an exact fraction such as '1/8'")
    return Fraction(value)


@dataclass(frozen=True)
class SseParams:
    """Measure ``mu`` of the sets sought in a ``t``-vertex host, ``1/t <= mu <= 2/3``."""

    mu: Fraction
    t: int

    def __post_init__(self):
        object.__setattr__(self, "mu", parse_fraction(self.mu))
        if self.t < 3:
            raise ValueError("the host graph needs at least 3 vertices")
        if not Fraction(1, self.t) <= self.mu <= Fraction(2, 3):
            raise ValueError(f"mu must lie in [1/t, 2/3] = [1/{self.t}, 2/3], got {self.mu}")

    @property
    def max_size(self) -> int:
        return math.floor(self.mu * self.t)

    @property
    def min_size(self) -> int:
        return math.ceil(self.mu * self.t / 3)

    @property
    def rounds(self) -> int:
        return math.ceil(1 / (2 * self.mu))

    @property
    def family_size(self) -> int:
        return math.ceil(1 / (4 * self.mu))

    @property
    def step_limit(self) -> int:
        """Smallest ``s`` with ``(3/2)^s >= 1/mu``, i.e. ``ceil(log_{3/2}(1/mu))``."""
        s = 0
        while Fraction(3, 2) ** s * self.mu < 1:
            s += 1
        return s

    @property
    def below_sqrt_regime(self) -> bool:
        # mu < 1/sqrt(t)
        return self.mu * self.mu * self.t < 1

    def formula_bound(self) -> float | None:
        """``log(1/mu)/log t * (14 log log t)^2``, reported for context only."""
        if self.t < 4:
            return None
        lt = math.log2(self.t)
        return math.log2(1 / self.mu) / lt * (14 * math.log2(lt)) ** 2


@dataclass(frozen=True)
class ShrinkStep:
    """One split of ``S`` into ``S'`` and ``S''``.

    ``cut`` is the number of edges of ``H[S]`` between the sides and ``bound`` is
    ``(|boundary(S)| + 2 cut)/|S| = phi(S) + 2 cut/|S|``, which bounds the
    expansion of the kept side.
    """

    size: int
    side_sizes: tuple
    cut: int
    boundary: int
    side_boundaries: tuple
    bound: Fraction
    kept: int
    kept_expansion: Fraction

    @property
    def identity_holds(self) -> bool:
        return sum(self.side_boundaries) == self.boundary + 2 * self.cut

    @property
    def mediant_holds(self) -> bool:
        a, b = self.side_boundaries
        c, d = self.side_sizes
        return min(Fraction(a, c), Fraction(b, d)) <= self.bound

    @property
    def balanced(self) -> bool:
        return all(0 < s and 3 * s <= 2 * self.size for s in self.side_sizes)


@dataclass(frozen=True)
class ShrinkTrace:
    host_size: int
    threshold: Fraction
    steps: tuple
    final_size: int
    final_expansion: Fraction
    step_limit: int

    @property
    def accounting(self) -> Fraction:
        """``sum_i 2 cut_i/|S_i|``: the certified bound on the final expansion."""
        return sum((Fraction(2 * st.cut, st.size) for st in self.steps), Fraction(0))

    @property
    def f_accounting(self) -> float | None:
        """``sum_i 2 f(|S_i|)`` when every ``|S_i| >= 256``, else ``None``."""
        if not self.steps or any(st.size < 256 for st in self.steps):
            return None
        return sum(2 * separator_bound_f(st.size) for st in self.steps)

    @property
    def per_step_bounds(self) -> tuple:
        return tuple(st.bound for st in self.steps)

    @property
    def certified(self) -> bool:
        steps_ok = all(st.identity_holds and st.mediant_holds and st.balanced
                       and st.kept_expansion <= st.bound for st in self.steps)
        return steps_ok and self.final_expansion <= self.accounting and len(self.steps) <= self.step_limit


class SseError(RuntimeError):
    """Separator failure or too few sets; ``partial`` holds whatever was built."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def _shrink(h: Graph, params: SseParams, threshold: Fraction, separator: SeparatorStrategy) -> tuple[np.ndarray, ShrinkTrace]:
    current = np.ones(h.n, dtype=bool)
    steps = []
    b_cur = 0
    while int(current.sum()) > threshold:
        verts = np.flatnonzero(current)
        size = verts.size
        sub = induced_subgraph(h, verts)
        partial = ShrinkTrace(h.n, threshold, tuple(steps), size, Fraction(b_cur, size), params.step_limit)
        try:
            sep = separator(sub)
        except Exception as exc:
            raise SseError(f"separator failed on a {size}-vertex set: {exc}", partial) from exc
        if len(sep.parts) != 2:
            raise SseError("separator strategy must report its two sides", partial)
        left = np.array(sorted(sep.parts[0]), dtype=np.int64)
        right = np.array(sorted(sep.parts[1]), dtype=np.int64)
        if left.size + right.size != size or np.intersect1d(left, right).size:
            raise SseError("separator sides do not partition the set", partial)
        if not all(0 < s.size and 3 * s.size <= 2 * size for s in (left, right)):
            raise SseError(f"unbalanced separator sides {left.size}, {right.size} of {size}", partial)
        in_left = np.zeros(sub.n, dtype=bool)
        in_left[left] = True
        cut = boundary_count(sub, in_left)
        sides = []
        for local in (left, right):
            mask = np.zeros(h.n, dtype=bool)
            mask[verts[local]] = True
            sides.append((mask, boundary_count(h, mask), int(local.size)))
        # smaller expansion wins; ties keep the smaller side, then the one holding the lower vertex
        order = sorted(range(2), key=lambda j: (Fraction(sides[j][1], sides[j][2]), sides[j][2], j))
        kept = order[0]
        bound = Fraction(b_cur + 2 * cut, size)
        mask, b_new, s_new = sides[kept]
        steps.append(ShrinkStep(size, (sides[0][2], sides[1][2]), cut, b_cur,
                                (sides[0][1], sides[1][1]), bound, s_new, Fraction(b_new, s_new)))
        current, b_cur = mask, b_new
    size = int(current.sum())
    trace = ShrinkTrace(h.n, threshold, tuple(steps), size, Fraction(b_cur, size), params.step_limit)
    return current, trace


def shrink_to_small_set(h: Graph, mu, separator="boost") -> tuple[frozenset, ShrinkTrace]:
    """A set ``A`` with ``mu t/3 <= |A| <= mu t`` and small expansion in ``h``.

    Parameters
    ----------
    h : Graph
        Host graph on ``t >= 3`` vertices.
    mu : Fraction or str
        Target measure, ``1/t <= mu <= 2/3``.
    separator : str or callable
        ``"boost"``, ``"boost-spectral"``, ``"exact"`` or a function returning a
        ``SeparatorResult`` whose ``parts`` are the two sides.

    Returns
    -------
    members : frozenset
    trace : ShrinkTrace
        One record per split; ``trace.certified`` checks every step exactly.
    """
    params = SseParams(mu, h.n)
    mask, trace = _shrink(h, params, params.mu * h.n, get_separator_strategy(separator))
    return frozenset(np.flatnonzero(mask).tolist()), trace


@dataclass(frozen=True)
class ExtractedSet:
    members: frozenset
    residual_size: int
    residual_boundary: int
    residual_expansion: Fraction
    boundary_in_h: int
    expansion_in_h: Fraction
    trace: ShrinkTrace


@dataclass(frozen=True)
class SseResult:
    """Selected sets with the evidence behind them.

    ``family`` lists every extracted set in round order; ``sets`` are the
    ``ceil(1/(4 mu))`` of them with smallest expansion in ``H``.  ``phi_max`` is
    the largest expansion an extracted set had in its residual graph and every
    selected set is checked against ``12 * phi_max``.
    """

    mu: Fraction
    t: int
    sets: tuple
    expansions_in_h: tuple
    family: tuple
    phi_max: Fraction
    rounds_planned: int
    early_stop: bool
    double_count_lhs: int
    double_count_rhs: int
    below_sqrt_regime: bool
    formula_bound: float | None

    @property
    def per_step_bounds(self) -> tuple:
        return tuple(b for a in self.family for b in a.trace.per_step_bounds)

    @property
    def certified_bound(self) -> Fraction:
        return 12 * self.phi_max

    @property
    def averaging_applies(self) -> bool:
        """Enough rounds for the averaging step: ``rounds >= 2 q - 2``."""
        return len(self.family) >= 2 * len(self.sets) - 2

    @property
    def double_count_holds(self) -> bool:
        return self.double_count_lhs <= self.double_count_rhs

    @property
    def certified(self) -> bool:
        return (self.double_count_holds
                and all(x <= self.certified_bound for x in self.expansions_in_h)
                and all(a.trace.certified for a in self.family))


def extract_disjoint_family(h: Graph, mu, separator="boost") -> SseResult:
    """``ceil(1/(4 mu))`` disjoint sets of size in ``[mu t/3, mu t]`` with small expansion.

    Round ``i`` runs the shrinking phase on ``H`` minus the earlier sets, with the
    absolute size threshold ``mu t``.  There are ``ceil(1/(2 mu))`` rounds; the
    run stops early, and says so, if fewer than ``t/2`` vertices remain.

    Raises
    ------
    SseError
        When fewer than ``ceil(1/(4 mu))`` sets could be extracted.
    """
    params = SseParams(mu, h.n)
    strategy = get_separator_strategy(separator)
    t = h.n
    threshold = params.mu * t
    alive = np.ones(t, dtype=bool)
    family = []
    early = False
    for _ in range(params.rounds):
        left = int(alive.sum())
        if 2 * left < t or 3 * left < threshold:
            early = True
            break
        verts = np.flatnonzero(alive)
        residual = induced_subgraph(h, verts)
        try:
            local, trace = _shrink(residual, params, threshold, strategy)
        except SseError as exc:
            raise SseError(f"round {len(family) + 1}: {exc}", tuple(family)) from exc
        mask = np.zeros(t, dtype=bool)
        mask[verts[local]] = True
        size = int(mask.sum())
        rb = boundary_count(residual, local)
        hb = boundary_count(h, mask)
        family.append(ExtractedSet(frozenset(np.flatnonzero(mask).tolist()), residual.n, rb,
                                   Fraction(rb, size), hb, Fraction(hb, size), trace))
        alive &= ~mask
    if len(family) < params.family_size:
        raise SseError(f"extracted {len(family)} sets, need {params.family_size}", tuple(family))
    order = sorted(range(len(family)), key=lambda i: (family[i].expansion_in_h, i))
    chosen = [family[i] for i in order[:params.family_size]]
    return SseResult(
        mu=params.mu, t=t,
        sets=tuple(a.members for a in chosen),
        expansions_in_h=tuple(a.expansion_in_h for a in chosen),
        family=tuple(family),
        phi_max=max(a.residual_expansion for a in family),
        rounds_planned=params.rounds,
        early_stop=early,
        double_count_lhs=sum(a.boundary_in_h for a in family),
        double_count_rhs=2 * sum(a.residual_boundary for a in family),
        below_sqrt_regime=params.below_sqrt_regime,
        formula_bound=params.formula_bound(),
    )
