"""Random pruned hypercube subgraphs built by the deletion method.

``construct_cube_subgraph`` keeps every edge of Q_d with probability ``3k/d``,
deletes one edge from each cycle of length at most ``d/(9k^2)`` and trims every
degree down to ``3k``.  ``build_gnk`` runs the same pipeline with ``2k`` in place of
``k`` and restricts to a random ``n``-vertex subset, retrying until the average
degree is at least ``k``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass, replace
from fractions import Fraction

import numpy as np

from .graph import ACYCLIC, Acyclic, Graph, average_degree, girth, induced_subgraph
from .hypercube import cube_edge_array

MAX_CONSTRUCTION_DIM = 20
DEFAULT_RETRIES = 64


class ConstructionError(RuntimeError):
    """Retry budget exhausted; ``best_trace`` is the attempt with the largest average degree."""

    def __init__(self, message, best_trace=None):
        super().__init__(message)
        self.best_trace = best_trace


@dataclass(frozen=True)
class ConstructionParams:
    d: int
    k: int
    seed: int = 0
    n: int | None = None

    def __post_init__(self):
        if not 2 <= self.d <= MAX_CONSTRUCTION_DIM:
            raise ValueError(
                f"d={self.d} is outside the construction budget 2 <= d <= {MAX_CONSTRUCTION_DIM}")
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if 3 * self.k > self.d:
            raise ValueError(f"retention probability 3k/d = {3 * self.k}/{self.d} exceeds 1")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.n is not None and not (1 << (self.d - 1)) < self.n <= 1 << self.d:
            raise ValueError(f"n must satisfy 2^(d-1) < n <= 2^d, got n={self.n}")

    @property
    def vertex_count(self) -> int:
        return (1 << self.d) if self.n is None else self.n

    @property
    def p(self) -> Fraction:
        return Fraction(3 * self.k, self.d)

    @property
    def cycle_length_limit(self) -> Fraction:
        return Fraction(self.d, 9 * self.k * self.k)

    @property
    def degree_cap(self) -> int:
        return 3 * self.k


@dataclass(frozen=True)
class ConstructionTrace:
    """Counters of one construction attempt.

    ``edges_sampled`` is X.  ``short_cycles_hit`` counts edges deleted by cycle
    removal (a lower bound on Y).  ``excess_degree_total`` is Z measured on the
    sampled graph; ``excess_edges_trimmed`` is what trimming actually removed.
    """

    d: int
    k: int
    n: int
    seed: int
    attempts: int
    edges_sampled: int
    short_cycles_hit: int
    excess_degree_total: int
    excess_edges_trimmed: int
    final_avg_degree: Fraction
    final_max_degree: int
    final_girth: int | Acyclic
    cycle_length_limit: Fraction
    degree_cap: int

    @property
    def girth_constraint_vacuous(self) -> bool:
        # simple graphs have no cycles shorter than 3
        return self.cycle_length_limit < 3

    def to_dict(self) -> dict:
        out = asdict(self)
        out["final_avg_degree"] = _frac(self.final_avg_degree)
        out["cycle_length_limit"] = _frac(self.cycle_length_limit)
        out["final_girth"] = str(self.final_girth) if self.final_girth is ACYCLIC else self.final_girth
        out["girth_constraint_vacuous"] = self.girth_constraint_vacuous
        return out


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _rng(seed: int, attempt: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, attempt]))


def sample_raw_subgraph(params: ConstructionParams, attempt: int = 0) -> Graph:
    """Keep each edge of Q_d independently with probability ``3k/d``.

    Decision ``j`` is the ``j``-th draw of a Philox stream keyed by
    ``(seed, attempt)`` and belongs to canonical cube edge ``j``, so the result
    depends only on the seed.
    """
    return _sample(params, _rng(params.seed, attempt))


def _sample(params: ConstructionParams, rng: np.random.Generator) -> Graph:
    d = params.d
    edges = cube_edge_array(d)
    # integer draw keeps the probability exactly 3k/d
    keep = rng.integers(0, d, size=edges.shape[0]) < 3 * params.k
    return Graph(1 << d, edges[keep], np.arange(1 << d, dtype=np.uint64), d)


def excess_degree(g: Graph, cap: int) -> int:
    """Sum over vertices of ``max(0, deg(v) - cap)``."""
    return int(np.maximum(g.degrees - cap, 0).sum())


def _short_cycle_from(adj: list[set], root: int, limit: int) -> list[int] | None:
    """A cycle of length <= limit found by BFS from ``root``, as a vertex list."""
    dist = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if 2 * du > limit:
            return None
        for w in sorted(adj[u]):
            if w not in dist:
                dist[w] = du + 1
                parent[w] = u
                queue.append(w)
            elif w != parent[u] and du + dist[w] + 1 <= limit:
                return _close_cycle(parent, dist, u, w)
    return None


def _close_cycle(parent, dist, u, w) -> list[int]:
    left, right = [u], [w]
    a, b = u, w
    while dist[a] > dist[b]:
        a = parent[a]
        left.append(a)
    while dist[b] > dist[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor, right repeats it
    return left + right[-2::-1]


def remove_short_cycles(g: Graph, L) -> tuple[Graph, int]:
    """Delete edges until no cycle of length ``<= L`` remains.

    Roots are scanned in increasing order; from each root a truncated BFS finds a
    short cycle, its lexicographically smallest edge is deleted, and the search
    repeats from the same root until it comes back empty.  A root left clean stays
    clean because deletions never create cycles.
    """
    limit = math.floor(Fraction(L))
    if limit < 3 or g.m == 0:
        return g, 0
    adj = [set(nb) for nb in g.adjacency]
    removed = []
    for r in range(g.n):
        while len(adj[r]) >= 2:
            cyc = _short_cycle_from(adj, r, limit)
            if cyc is None:
                break
            ring = list(zip(cyc, cyc[1:] + cyc[:1]))
            a, b = min((min(x, y), max(x, y)) for x, y in ring)
            adj[a].discard(b)
            adj[b].discard(a)
            removed.append((a, b))
    if not removed:
        return g, 0
    return g.without_edges(_edge_mask(g, removed)), len(removed)


def _edge_mask(g: Graph, pairs) -> np.ndarray:
    keys = np.array([a * g.n + b for a, b in pairs], dtype=np.int64)
    return np.isin(g.edges[:, 0] * g.n + g.edges[:, 1], keys)


def trim_excess_degree(g: Graph, cap: int) -> tuple[Graph, int]:
    """Delete edges until every degree is at most ``cap``.

    Vertices are handled in increasing id.  An over-full vertex drops the edges to
    its currently highest-degree neighbours first, ties going to the higher id.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    deg = g.degrees.tolist()
    over = np.flatnonzero(g.degrees > cap).tolist()
    if not over:
        return g, 0
    n = g.n
    indices, indptr = g.indices, g.indptr
    gone = set()
    for v in over:
        excess = deg[v] - cap
        if excess <= 0:
            continue
        # edge key a*n+b with a<b; degrees only fall, so only initially over-full vertices act
        live = [w for w in indices[indptr[v]:indptr[v + 1]].tolist()
                if (w * n + v if w < v else v * n + w) not in gone]
        live.sort(key=lambda w: (deg[w], w), reverse=True)
        for w in live[:excess]:
            gone.add(w * n + v if w < v else v * n + w)
            deg[v] -= 1
            deg[w] -= 1
    keys = np.fromiter(gone, dtype=np.int64, count=len(gone))
    mask = np.isin(g.edges[:, 0] * n + g.edges[:, 1], keys)
    return g.without_edges(mask), len(gone)


def construct_cube_subgraph(params: ConstructionParams, attempt: int = 0) -> tuple[Graph, ConstructionTrace]:
    """One deletion-method pass at the parameters as given (no doubling of k)."""
    rng = _rng(params.seed, attempt)
    return _pipeline(params, rng, attempt)


def _pipeline(params, rng, attempt):
    raw = _sample(params, rng)
    z = excess_degree(raw, params.degree_cap)
    pruned, hit = remove_short_cycles(raw, params.cycle_length_limit)
    trimmed, cut = trim_excess_degree(pruned, params.degree_cap)
    n = params.vertex_count
    if n < trimmed.n:
        keep = np.sort(rng.choice(trimmed.n, size=n, replace=False))
        trimmed = induced_subgraph(trimmed, keep.tolist())
    trace = ConstructionTrace(
        d=params.d, k=params.k, n=n, seed=params.seed, attempts=attempt + 1,
        edges_sampled=raw.m, short_cycles_hit=hit, excess_degree_total=z,
        excess_edges_trimmed=cut, final_avg_degree=average_degree(trimmed),
        final_max_degree=trimmed.max_degree, final_girth=girth(trimmed),
        cycle_length_limit=params.cycle_length_limit, degree_cap=params.degree_cap,
    )
    return trimmed, trace


def build_gnk(params: ConstructionParams, retries: int = DEFAULT_RETRIES) -> tuple[Graph, ConstructionTrace]:
    """Sample G_{n,k}: maximum degree at most 6k and average degree at least k.

    Internally the cube subgraph is built with ``2k``: retention ``6k/d``, cycle
    limit ``d/(36k^2)``, degree cap ``6k``.  Attempt ``a`` uses the Philox stream
    keyed by ``(seed, a)``.  The returned trace reports the parameter ``k`` of the
    request and the counters of the accepted attempt.
    """
    doubled = replace(params, k=2 * params.k)
    best = None
    for attempt in range(retries):
        graph, trace = _pipeline(doubled, _rng(params.seed, attempt), attempt)
        trace = replace(trace, k=params.k)
        if trace.final_avg_degree >= params.k:
            return graph, trace
        if best is None or trace.final_avg_degree > best.final_avg_degree:
            best = trace
    raise ConstructionError(
        f"no attempt reached average degree {params.k} in {retries} tries", best)


def closed_walk_count(d: int, length: int) -> int:
    """Closed walks of the given even length from a fixed vertex of Q_d.

    Exact dynamic programme over Hamming weight: from weight ``w`` a step goes up
    in ``d - w`` ways and down in ``w`` ways.
    """
    if not 1 <= d <= 10 or not 0 <= length <= 12:
        raise ValueError("closed_walk_count budget is d <= 10, length <= 12")
    if length % 2:
        raise ValueError("closed walks in Q_d have even length")
    ways = [1] + [0] * d
    for _ in range(length):
        nxt = [0] * (d + 1)
        for w, c in enumerate(ways):
            if c:
                if w < d:
                    nxt[w + 1] += c * (d - w)
                if w > 0:
                    nxt[w - 1] += c * w
        ways = nxt
    return ways[0]


def many_vertices_bound(n: int, k: int) -> float:
    """Lower bound ``n ** (1 / (72 k^2))`` on the order of any subgraph of G_{n,k}
    with average degree at least 4."""
    return n ** (1.0 / (72 * k * k))
