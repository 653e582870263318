"""Sparse cuts, separator boosting and tree separators.

Balance convention: a separator is valid when each side has at most ``2n/3``
vertices, i.e. ``3 * size <= 2n``.  The one-vertex graph is treated as already
separated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh

from ._exact import log_sign
from .graph import (
    Graph,
    boundary_count,
    component_labels,
    components,
    indicator,
    induced_subgraph,
    is_forest,
)

EXACT_CUT_BUDGET = 24
_CHUNK = 1 << 20


@dataclass(frozen=True)
class CutResult:
    members: frozenset
    boundary_size: int
    expansion: Fraction
    method: str = ""
    details: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class BoostStep:
    residual_size: int
    set_size: int
    residual_boundary: int
    expansion: Fraction
    f_bound: float | None


@dataclass(frozen=True)
class BoostTrace:
    steps: tuple
    max_ratio: Fraction
    certified: bool
    within_f: bool | None
    lemma_bound: float | None


@dataclass(frozen=True)
class SeparatorResult:
    """Edge or vertex separator.

    ``parts`` is a split of the surviving vertices into two sides with no edge
    between them once ``removed`` is deleted; ``side_sizes`` are their sizes.
    """

    kind: str
    removed: tuple
    side_sizes: tuple
    parts: tuple = ()
    trace: BoostTrace | None = None

    @property
    def size(self) -> int:
        return len(self.removed)


CutStrategy = Callable[[Graph], CutResult]


def balance_cap(n: int) -> int:
    """Largest side allowed for an ``n``-vertex graph."""
    return max(1, (2 * n) // 3)


def cut_of(h: Graph, members, method: str = "", **details) -> CutResult:
    mask = indicator(h, members)
    size = int(mask.sum())
    b = boundary_count(h, mask)
    return CutResult(frozenset(np.flatnonzero(mask).tolist()), b, Fraction(b, size), method, details)


def edge_expansion_of_set(h: Graph, a) -> CutResult:
    """Boundary size and expansion ``|boundary(A)| / |A|`` of a proper nonempty set."""
    mask = indicator(h, a)
    size = int(mask.sum())
    if size == 0 or size == h.n:
        raise ValueError("expansion needs a nonempty proper subset")
    return cut_of(h, a, "given")


def boundary_edges(h: Graph, a) -> list[tuple[int, int]]:
    mask = indicator(h, a)
    crossing = mask[h.edges[:, 0]] != mask[h.edges[:, 1]] if h.m else np.zeros(0, bool)
    return [tuple(e) for e in h.edges[crossing].tolist()]


def _bit_reverse(masks: np.ndarray, n: int) -> np.ndarray:
    rev = np.zeros_like(masks)
    for i in range(n):
        rev |= ((masks >> i) & 1) << (n - 1 - i)
    return rev


def min_edge_expansion(h: Graph) -> CutResult:
    """Exact minimum of ``|boundary(S)|/|S|`` over ``1 <= |S| <= n/2``.

    Every subset is enumerated as a bitmask.  Ties go to the smaller set, then to
    the lexicographically smallest sorted member list.
    """
    n = h.n
    if n > EXACT_CUT_BUDGET:
        raise ValueError(
            f"exact enumeration is limited to {EXACT_CUT_BUDGET} vertices (got {n}); "
            "use coordinate_cut, spectral_sweep_cut or boost_separator instead")
    if n < 2:
        raise ValueError("need at least two vertices")
    half = n // 2
    best_b = [None] * (half + 1)
    best_rev = [None] * (half + 1)
    us = h.edges[:, 0].tolist()
    vs = h.edges[:, 1].tolist()
    for start in range(1, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        pop = np.bitwise_count(masks)
        masks = masks[pop <= half]
        pop = pop[pop <= half]
        if masks.size == 0:
            continue
        b = np.zeros(masks.shape, dtype=np.int64)
        for u, v in zip(us, vs):
            b += ((masks >> u) ^ (masks >> v)) & 1
        # lexicographically smallest member list == largest bit-reversed mask
        rev = _bit_reverse(masks, n)
        for s in range(1, half + 1):
            sel = pop == s
            if not sel.any():
                continue
            bs = b[sel]
            low = int(bs.min())
            top = int(rev[sel][bs == low].max())
            if best_b[s] is None or low < best_b[s] or (low == best_b[s] and top > best_rev[s]):
                best_b[s], best_rev[s] = low, top
    size = min(range(1, half + 1), key=lambda s: (Fraction(best_b[s], s), s))
    rev = best_rev[size]
    members = frozenset(n - 1 - i for i in range(n) if (rev >> i) & 1)
    return CutResult(members, best_b[size], Fraction(best_b[size], size), "exact")


def coordinate_cut(h: Graph) -> CutResult:
    """Cut along the cube coordinate minimising ``x_i / y_i``.

    ``x_i`` counts edges whose endpoint labels differ in coordinate ``i`` and
    ``y_i = |T_i| * (t - |T_i|)`` with ``T_i`` the vertices whose bit ``i`` is set.
    The lowest coordinate wins ties; ``T`` is replaced by its complement when it
    holds more than half of the vertices.  For subgraphs of Q_d with ``t >= 3``
    vertices and average degree ``r`` the result has expansion at most
    ``2 r log d / log(t/2)``.
    """
    if h.labels is None:
        raise ValueError("coordinate_cut needs cube labels")
    t = h.n
    if t < 2 or h.m == 0:
        raise ValueError("coordinate_cut needs at least two vertices and one edge")
    lab = h.labels
    diff = lab[h.edges[:, 0]] ^ lab[h.edges[:, 1]]
    xs, ys = [], []
    for i in range(h.dim):
        bit = np.uint64(1 << i)
        xs.append(int(np.count_nonzero(diff & bit)))
        c = int(np.count_nonzero(lab & bit))
        ys.append(c * (t - c))
    best = None
    for i in range(h.dim):
        if ys[i] == 0:
            continue
        # x_i / y_i < x_best / y_best, cross-multiplied
        if best is None or xs[i] * ys[best] < xs[best] * ys[i]:
            best = i
    if best is None:
        raise ValueError("all vertices carry the same label")
    in_t = (lab & np.uint64(1 << best)) != 0
    if 2 * int(in_t.sum()) > t:
        in_t = ~in_t
    members = np.flatnonzero(in_t).tolist()
    return cut_of(h, members, "coordinate", coordinate=best, x=xs, y=ys)


def coordinate_bound_holds(phi, r, d: int, t: int) -> bool:
    """Exact test of ``phi <= 2 r log2(d) / log2(t/2)`` for ``t >= 3``.

    With ``phi = p/q`` and ``r = a/b`` this reads ``t^(p b) <= 2^(p b) d^(2 a q)``,
    decided on logarithms without expanding the powers.
    """
    if t < 3:
        raise ValueError("the bound needs t >= 3")
    phi, r = Fraction(phi), Fraction(r)
    if phi == 0:
        return True
    if d == 1:
        return False
    p, q, a, b = phi.numerator, phi.denominator, r.numerator, r.denominator
    return log_sign([(t, p * b), (2, -p * b), (d, -2 * a * q)]) <= 0


def _fiedler_vector(h: Graph) -> np.ndarray:
    deg = h.degrees.astype(float)
    if h.n <= 1500:
        lap = np.diag(deg) - h.csr.toarray().astype(float)
        _, vecs = np.linalg.eigh(lap)
        return vecs[:, 1]
    lap = sparse.diags(deg) - h.csr.astype(float)
    shift = 2.0 * float(deg.max())
    op = sparse.identity(h.n) * shift - lap
    v0 = np.linspace(1.0, 2.0, h.n)
    _, vecs = eigsh(op, k=2, which="LA", v0=v0)
    return vecs[:, 0]


def spectral_sweep_cut(h: Graph) -> CutResult:
    """Best prefix of the Fiedler ordering (either end) with at most n/2 vertices."""
    if h.n < 2:
        raise ValueError("need at least two vertices")
    shortcut = _component_shortcut(h)
    if shortcut is not None:
        return shortcut
    vec = _fiedler_vector(h)
    best = None
    for order in (np.argsort(vec, kind="stable"), np.argsort(-vec, kind="stable")):
        pos = np.empty(h.n, dtype=np.int64)
        pos[order] = np.arange(h.n)
        lo = np.minimum(pos[h.edges[:, 0]], pos[h.edges[:, 1]])
        hi = np.maximum(pos[h.edges[:, 0]], pos[h.edges[:, 1]])
        # edge crosses prefix of size k iff lo < k <= hi
        delta = np.zeros(h.n + 1, dtype=np.int64)
        np.add.at(delta, lo + 1, 1)
        np.add.at(delta, hi + 1, -1)
        bnd = np.cumsum(delta)
        for k in range(1, h.n // 2 + 1):
            phi = Fraction(int(bnd[k]), k)
            if best is None or phi < best[0]:
                best = (phi, order[:k])
    return cut_of(h, best[1].tolist(), "spectral")


def _component_shortcut(h: Graph) -> CutResult | None:
    count, lab = component_labels(h)
    if count <= 1:
        return None
    sizes = np.bincount(lab)
    smallest = int(np.argmin(sizes))
    return cut_of(h, np.flatnonzero(lab == smallest).tolist(), "component")


def _with_component_shortcut(fn: CutStrategy, name: str) -> CutStrategy:
    def strategy(h: Graph) -> CutResult:
        shortcut = _component_shortcut(h)
        return shortcut if shortcut is not None else fn(h)
    strategy.__name__ = name
    return strategy


CUT_STRATEGIES: dict[str, CutStrategy] = {
    "exact": _with_component_shortcut(min_edge_expansion, "exact"),
    "coordinate": _with_component_shortcut(coordinate_cut, "coordinate"),
    "spectral": spectral_sweep_cut,
}


def get_cut_strategy(name_or_fn) -> CutStrategy:
    if callable(name_or_fn):
        return name_or_fn
    try:
        return CUT_STRATEGIES[name_or_fn]
    except KeyError:
        raise ValueError(f"unknown cut strategy {name_or_fn!r}") from None


def separator_bound_f(x: float) -> float:
    """``(log log x)^2 / log x`` with base-2 logs; decreasing for ``x >= 256``."""
    if x < 256:
        raise ValueError("separator_bound_f is only used on its decreasing range x >= 256")
    lx = math.log2(x)
    return math.log2(lx) ** 2 / lx


class BoostError(RuntimeError):
    def __init__(self, message, steps=()):
        super().__init__(message)
        self.steps = tuple(steps)


def boost_separator(g: Graph, sparse_cut=None, f: Callable[[float], float] | None = None) -> SeparatorResult:
    """Edge separator assembled from repeated sparse cuts.

    Sets ``S_1, S_2, ...`` are cut off the residual graph ``G_i = G - (S_1 + ... +
    S_{i-1})``, each with ``|S_i| <= |V(G_i)|/2``, until their union ``S`` reaches
    ``n/3`` vertices; then ``|S| <= 2n/3`` and ``boundary_G(S)`` is returned.  The
    trace records ``|boundary_G(S)| <= |S| * max_j expansion_{G_j}(S_j)`` and, when
    ``f`` is supplied, whether each step met ``f(|V(G_j)|)``.
    """
    strategy = get_cut_strategy(sparse_cut if sparse_cut is not None else
                                ("coordinate" if g.labels is not None else "spectral"))
    n = g.n
    if n < 2:
        raise ValueError("need at least two vertices to separate")
    alive = np.ones(n, dtype=bool)
    taken = np.zeros(n, dtype=bool)
    steps = []
    while 3 * int(taken.sum()) < n:
        verts = np.flatnonzero(alive)
        sub = induced_subgraph(g, verts)
        try:
            cut = strategy(sub)
        except Exception as exc:
            raise BoostError(f"cut strategy failed on a residual graph of {sub.n} vertices: {exc}",
                             steps) from exc
        local = np.array(sorted(cut.members), dtype=np.int64)
        if local.size == 0 or 2 * local.size > sub.n:
            raise BoostError(f"cut strategy returned a set of size {local.size} "
                             f"for a residual graph of {sub.n} vertices", steps)
        rb = boundary_count(sub, indicator(sub, local))
        fb = None
        if f is not None:
            try:
                fb = float(f(sub.n))
            except ValueError:
                fb = None
        steps.append(BoostStep(sub.n, int(local.size), rb, Fraction(rb, int(local.size)), fb))
        chosen = verts[local]
        taken[chosen] = True
        alive[chosen] = False

    crossing = taken[g.edges[:, 0]] != taken[g.edges[:, 1]] if g.m else np.zeros(0, bool)
    removed = tuple(tuple(e) for e in g.edges[crossing].tolist())
    s_size = int(taken.sum())
    max_ratio = max(st.expansion for st in steps)
    within = None
    lemma = None
    if f is not None:
        within = all(st.f_bound is not None and st.expansion <= st.f_bound for st in steps)
        if within and n / 3 >= 256:
            lemma = (2 / 3) * n * f(n / 3)
    trace = BoostTrace(tuple(steps), max_ratio, len(removed) <= s_size * max_ratio, within, lemma)
    side = frozenset(np.flatnonzero(taken).tolist())
    rest = frozenset(np.flatnonzero(~taken).tolist())
    return SeparatorResult("edge", removed, (s_size, n - s_size), (side, rest), trace)


def split_into_two_sides(groups: list, reference: int) -> tuple[frozenset, frozenset]:
    """Pack vertex groups (each at most ``2*reference/3``) into two sides of that size."""
    groups = sorted(groups, key=lambda grp: (-len(grp), min(grp)))
    if not groups:
        return frozenset(), frozenset()
    if 3 * len(groups[0]) >= reference:
        a = [groups[0]]
        b = groups[1:]
    else:
        a, b, size = [], [], 0
        for grp in groups:
            if 3 * size < reference:
                a.append(grp)
                size += len(grp)
            else:
                b.append(grp)
    return frozenset().union(*a), frozenset().union(*b)


def _centroid(adj, members) -> int:
    root = min(members)
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    size = {v: 1 for v in order}
    heaviest = {v: 0 for v in order}
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            size[p] += size[v]
            heaviest[p] = max(heaviest[p], size[v])
    total = len(order)
    return min(v for v in order if 2 * max(heaviest[v], total - size[v]) <= total)


def tree_vertex_separator(t: Graph) -> SeparatorResult:
    """Remove the centroid of the (unique) tree component larger than ``2n/3``.

    Every piece left over has at most half the vertices of that tree, so a forest
    never needs more than one separator vertex.
    """
    if not is_forest(t):
        raise ValueError("tree_vertex_separator needs an acyclic graph")
    cap = balance_cap(t.n)
    comps = components(t)
    removed = ()
    for comp in comps:
        if len(comp) > cap:
            removed = (_centroid(t.adjacency, comp.members),)
            break
    left = frozenset(range(t.n)) - frozenset(removed)
    if removed:
        groups = [c.members for c in components(induced_subgraph(t, left))] if left else []
        order = sorted(left)
        groups = [frozenset(order[i] for i in grp) for grp in groups]
    else:
        groups = [c.members for c in comps]
    a, b = split_into_two_sides(groups, t.n)
    return SeparatorResult("vertex", removed, (len(a), len(b)), (a, b))


def separator_pieces(g: Graph, sep: SeparatorResult) -> list[frozenset]:
    """Connected pieces left after deleting the separator (recounted from scratch)."""
    if sep.kind == "edge":
        drop = {tuple(sorted(e)) for e in sep.removed}
        keep = [e for e in g.edge_list() if e not in drop]
        rest = Graph(g.n, keep)
        return [c.members for c in components(rest)]
    left = sorted(set(range(g.n)) - set(sep.removed))
    if not left:
        return []
    sub = induced_subgraph(g, left)
    return [frozenset(left[i] for i in c.members) for c in components(sub)]


def is_valid_separator(g: Graph, sep: SeparatorResult, cap: int | None = None) -> bool:
    cap = balance_cap(g.n) if cap is None else cap
    return all(len(p) <= cap for p in separator_pieces(g, sep))
