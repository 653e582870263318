"""Brute-force ground truth for small instances.

Nothing here shares code paths with the heuristics it grades beyond the
``Graph`` container: subsets are enumerated with ``itertools`` or bitmasks and
connectivity is recomputed with plain bit operations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .cuts import CutResult, SeparatorResult, balance_cap, split_into_two_sides
from .graph import ACYCLIC, Acyclic, Graph
from .hypercube import full_cube

SEPARATOR_VERTEX_BUDGET = 20
SEPARATOR_EDGE_BUDGET = 24
# beyond the edge budget the edge-subset search runs until this many candidates
CANDIDATE_BUDGET = 1 << 20


def _neighbor_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edge_list():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _pieces(nbr: list[int], alive: int) -> list[int]:
    """Connected pieces of the subgraph induced by the ``alive`` bitmask."""
    out = []
    while alive:
        low = alive & -alive
        piece = frontier = low
        while frontier:
            grow = 0
            f = frontier
            while f:
                bit = f & -f
                grow |= nbr[bit.bit_length() - 1]
                f ^= bit
            frontier = grow & alive & ~piece
            piece |= frontier
        out.append(piece)
        alive &= ~piece
    return out


def _bits(mask: int) -> frozenset:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return frozenset(out)


def exact_edge_separator(g: Graph, route: str | None = None) -> SeparatorResult:
    """Minimum edge separator; ties go to the lexicographically least edge list.

    ``route`` is ``"bipartition"`` (enumerate the side containing the cut) or
    ``"edges"`` (enumerate edge subsets by size); by default the cheaper one.
    Graphs over both budgets still go through the edge route when a separator is
    found within ``CANDIDATE_BUDGET`` candidate subsets.
    """
    n, m = g.n, g.m
    if route is None:
        if n <= SEPARATOR_VERTEX_BUDGET and (n <= m or m > SEPARATOR_EDGE_BUDGET):
            route = "bipartition"
        else:
            route = "edges"
    if route == "bipartition":
        if n > SEPARATOR_VERTEX_BUDGET:
            raise ValueError(f"bipartition enumeration needs n <= {SEPARATOR_VERTEX_BUDGET}")
        removed = _edge_sep_by_bipartition(g)
    elif route == "edges":
        limit = None if m <= SEPARATOR_EDGE_BUDGET else CANDIDATE_BUDGET
        removed = _edge_sep_by_edge_subsets(g, limit)
    else:
        raise ValueError(f"unknown route {route!r}")
    drop = set(removed)
    nbr = [0] * n
    for u, v in g.edge_list():
        if (u, v) not in drop:
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
    groups = [_bits(p) for p in _pieces(nbr, (1 << n) - 1)]
    a, b = split_into_two_sides(groups, n)
    return SeparatorResult("edge", tuple(removed), (len(a), len(b)), (a, b))


def _edge_sep_by_bipartition(g: Graph) -> list[tuple[int, int]]:
    n = g.n
    cap = balance_cap(n)
    masks = np.arange(1 << n, dtype=np.int64)
    pop = np.bitwise_count(masks)
    ok = (pop <= cap) & (n - pop <= cap)
    masks = masks[ok]
    b = np.zeros(masks.shape, dtype=np.int64)
    edges = g.edge_list()
    for u, v in edges:
        b += ((masks >> u) ^ (masks >> v)) & 1
    low = int(b.min())
    if low == 0:
        return []
    best = None
    for mask in masks[b == low].tolist():
        cut = [(u, v) for u, v in edges if ((mask >> u) ^ (mask >> v)) & 1]
        if best is None or cut < best:
            best = cut
    return best


def _edge_sep_by_edge_subsets(g: Graph, limit: int | None = None) -> list[tuple[int, int]]:
    n = g.n
    cap = balance_cap(n)
    edges = g.edge_list()
    full = (1 << n) - 1
    tried = 0
    for k in range(len(edges) + 1):
        for drop in combinations(range(len(edges)), k):
            tried += 1
            if limit is not None and tried > limit:
                raise ValueError(
                    f"exact separator budget exceeded: n={n} > {SEPARATOR_VERTEX_BUDGET}, "
                    f"m={g.m} > {SEPARATOR_EDGE_BUDGET} and no separator among "
                    f"the first {limit} edge subsets")
            dropped = set(drop)
            nbr = [0] * n
            for j, (u, v) in enumerate(edges):
                if j not in dropped:
                    nbr[u] |= 1 << v
                    nbr[v] |= 1 << u
            if all(p.bit_count() <= cap for p in _pieces(nbr, full)):
                return [edges[j] for j in drop]
    raise AssertionError("deleting every edge always separates")


def exact_vertex_separator(g: Graph, convention: str = "original") -> SeparatorResult:
    """Minimum vertex separator, smallest-lexicographic among optimal ones.

    With ``convention="original"`` the pieces left must have at most ``2n/3``
    vertices for the input size ``n``; with ``"remaining"`` the bound uses the
    number of vertices that survive the removal.
    """
    n = g.n
    if n > SEPARATOR_VERTEX_BUDGET:
        raise ValueError(f"exact vertex separator budget is n <= {SEPARATOR_VERTEX_BUDGET}")
    if convention not in ("original", "remaining"):
        raise ValueError(f"unknown balance convention {convention!r}")
    nbr = _neighbor_masks(g)
    full = (1 << n) - 1
    for k in range(n + 1):
        ref = n if convention == "original" else n - k
        cap = balance_cap(ref)
        for drop in combinations(range(n), k):
            alive = full
            for v in drop:
                alive &= ~(1 << v)
            pieces = _pieces(nbr, alive)
            if all(p.bit_count() <= cap for p in pieces):
                a, b = split_into_two_sides([_bits(p) for p in pieces], ref)
                return SeparatorResult("vertex", tuple(drop), (len(a), len(b)), (a, b))
    raise AssertionError("removing every vertex always separates")


def exact_min_expansion_set(g: Graph, size_window: tuple[int, int]) -> CutResult:
    """Minimum-expansion set with ``lo <= |S| <= hi`` by plain enumeration.

    Ties go to the smaller set and then to the lexicographically first one.
    """
    lo, hi = size_window
    n = g.n
    if n > SEPARATOR_VERTEX_BUDGET:
        raise ValueError(f"exact expansion budget is n <= {SEPARATOR_VERTEX_BUDGET}")
    lo, hi = max(1, lo), min(n, hi)
    if lo > hi:
        raise ValueError(f"empty size window {size_window}")
    nbr = _neighbor_masks(g)
    best = None
    for size in range(lo, hi + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            out = 0
            for v in combo:
                out += (nbr[v] & ~mask).bit_count()
            phi = Fraction(out, size)
            if best is None or phi < best[0]:
                best = (phi, combo, out)
    phi, combo, out = best
    return CutResult(frozenset(combo), out, phi, "oracle")


def exact_cycle_count(d: int, length: int) -> int:
    """Number of distinct cycles of the given length in Q_d (as edge sets)."""
    if not 1 <= d <= 4 or length > 8:
        raise ValueError("exact_cycle_count budget is d <= 4, length <= 8")
    if length < 3:
        return 0
    return _count_cycles(full_cube(d), length)


def _count_cycles(g: Graph, length: int) -> int:
    adj = g.adjacency
    count = 0
    for start in range(g.n):
        # each cycle is walked from its smallest vertex, second vertex < last vertex
        stack = [(start, [start])]
        while stack:
            u, path = stack.pop()
            if len(path) == length:
                if start in adj[u] and path[1] < path[-1]:
                    count += 1
                continue
            for w in adj[u]:
                if w > start and w not in path:
                    stack.append((w, path + [w]))
    return count


def exact_girth(g: Graph) -> int | Acyclic:
    """Shortest cycle by enumerating cycle lengths upwards (small graphs only)."""
    if g.n > 12:
        raise ValueError("exact_girth budget is n <= 12")
    for length in range(3, g.n + 1):
        if _count_cycles(g, length):
            return length
    return ACYCLIC
