"""Immutable sparse undirected graphs and the structural queries used everywhere else.

Vertices are ``0..n-1``.  Edges are stored once as ``(u, v)`` with ``u < v`` in
lexicographic order, plus a CSR adjacency with sorted neighbour lists.  Hypercube
labels (one integer per vertex, coordinate ``i`` is bit ``i``) are optional.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ._exact import log_sign

VertexSet = frozenset
"""A set of vertex ids of some host graph (``frozenset[int]``)."""


class Acyclic(enum.Enum):
    """Girth of a forest."""

    ACYCLIC = "acyclic"

    def __str__(self) -> str:
        return self.value


ACYCLIC = Acyclic.ACYCLIC


class Graph:
    """Simple undirected graph with optional hypercube labels.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of pairs
        Undirected edges.  Orientation and order do not matter; self-loops and
        repeated edges raise ``ValueError``.
    labels : sequence of int, optional
        Cube coordinates of the vertices, each ``< 2**dim``.
    dim : int, optional
        Label width.  Required when ``labels`` is given.
    """

    def __init__(self, n: int, edges=(), labels=None, dim: int | None = None):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise ValueError("edge endpoint out of range")
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            if np.any(lo == hi):
                raise ValueError("self-loops are not allowed")
            key = lo * n + hi
            order = np.argsort(key, kind="stable")
            key = key[order]
            if np.any(key[1:] == key[:-1]):
                raise ValueError("parallel edges are not allowed")
            e = np.stack([lo[order], hi[order]], axis=1)
        self.n = n
        self.edges = e
        self.edges.setflags(write=False)

        self.indptr = np.zeros(n + 1, dtype=np.int64)
        if e.size:
            src = np.concatenate([e[:, 0], e[:, 1]])
            dst = np.concatenate([e[:, 1], e[:, 0]])
            order = np.argsort(src * n + dst)
            np.cumsum(np.bincount(src, minlength=n), out=self.indptr[1:])
            self.indices = dst[order]
        else:
            self.indices = np.zeros(0, dtype=np.int64)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

        if labels is not None:
            if dim is None or not 1 <= dim <= 63:
                raise ValueError("labelled graphs need 1 <= dim <= 63")
            lab = np.asarray(labels, dtype=np.uint64).reshape(-1)
            if lab.shape[0] != n:
                raise ValueError("one label per vertex required")
            if n and int(lab.max()) >= 1 << dim:
                raise ValueError("label does not fit in dim bits")
            lab.setflags(write=False)
            self.labels = lab
            self.dim = int(dim)
        else:
            self.labels = None
            self.dim = None

    def __repr__(self) -> str:
        tag = f", dim={self.dim}" if self.labels is not None else ""
        return f"Graph(n={self.n}, m={self.m}{tag})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        if self.n != other.n or not np.array_equal(self.edges, other.edges):
            return False
        if (self.labels is None) != (other.labels is None):
            return False
        return self.labels is None or (
            self.dim == other.dim and np.array_equal(self.labels, other.labels))

    __hash__ = None

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.diff(self.indptr)
        d.setflags(write=False)
        return d

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """Neighbour lists as plain Python lists (for pure-Python traversals)."""
        flat = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [flat[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.shape[0] and nb[i] == v)

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self.edges.tolist()]

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        data = np.ones(self.indices.shape[0], dtype=np.int8)
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def label(self, v: int) -> int:
        if self.labels is None:
            raise ValueError("graph has no cube labels")
        return int(self.labels[v])

    def without_edges(self, mask: np.ndarray) -> "Graph":
        """Copy keeping only the edges where ``mask`` is False."""
        keep = ~np.asarray(mask, dtype=bool)
        return Graph(self.n, self.edges[keep], self.labels, self.dim)


def _member_array(g: Graph, s: Iterable[int]) -> np.ndarray:
    arr = np.array(sorted(set(int(v) for v in s)), dtype=np.int64)
    if arr.size and (arr[0] < 0 or arr[-1] >= g.n):
        raise ValueError("vertex id out of range")
    return arr


def indicator(g: Graph, s: Iterable[int]) -> np.ndarray:
    mask = np.zeros(g.n, dtype=bool)
    mask[_member_array(g, s)] = True
    return mask


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph induced by ``s``.

    New vertex ``i`` is the ``i``-th smallest member of ``s``; labels are carried
    over.
    """
    members = _member_array(g, s)
    if members.size == 0:
        raise ValueError("cannot induce on an empty vertex set")
    relabel = np.full(g.n, -1, dtype=np.int64)
    relabel[members] = np.arange(members.size)
    e = relabel[g.edges] if g.m else g.edges
    keep = (e[:, 0] >= 0) & (e[:, 1] >= 0) if g.m else np.zeros(0, bool)
    labels = g.labels[members] if g.labels is not None else None
    return Graph(members.size, e[keep], labels, g.dim)


def boundary_count(g: Graph, mask: np.ndarray) -> int:
    """Number of edges with exactly one endpoint in the boolean mask."""
    if not g.m:
        return 0
    return int(np.count_nonzero(mask[g.edges[:, 0]] != mask[g.edges[:, 1]]))


def average_degree(g: Graph) -> Fraction:
    if g.n < 1:
        raise ValueError("average degree of the empty graph is undefined")
    return Fraction(2 * g.m, g.n)


@dataclass(frozen=True)
class Component:
    members: frozenset
    average_degree: Fraction

    def __len__(self) -> int:
        return len(self.members)


def component_labels(g: Graph) -> tuple[int, np.ndarray]:
    if g.n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    return csgraph.connected_components(g.csr, directed=False)


def components(g: Graph) -> list[Component]:
    """Connected components ordered by their smallest vertex."""
    count, lab = component_labels(g)
    if count == 0:
        return []
    sizes = np.bincount(lab, minlength=count)
    edge_counts = np.bincount(lab[g.edges[:, 0]], minlength=count) if g.m else np.zeros(count, np.int64)
    order = np.argsort(lab, kind="stable")
    groups = np.split(order, np.cumsum(sizes)[:-1])
    out = [Component(frozenset(grp.tolist()), Fraction(2 * int(edge_counts[c]), int(sizes[c])))
           for c, grp in enumerate(groups)]
    out.sort(key=lambda comp: min(comp.members))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and component_labels(g)[0] == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - component_labels(g)[0]


def _is_bipartite(g: Graph) -> bool:
    if g.labels is not None and g.m:
        # cube subgraphs are bipartite by label parity
        par = np.bitwise_count(g.labels) & 1
        if np.all(par[g.edges[:, 0]] != par[g.edges[:, 1]]):
            return True
    color = [-1] * g.n
    adj = g.adjacency
    for r in range(g.n):
        if color[r] >= 0:
            continue
        color[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


class _LazyAdjacency(dict):
    """Neighbour lists materialised on first access."""

    def __init__(self, g: Graph):
        super().__init__()
        self._g = g

    def __missing__(self, v):
        nb = self._g.neighbors(v).tolist()
        self[v] = nb
        return nb


def girth(g: Graph) -> int | Acyclic:
    """Length of a shortest cycle, or ``ACYCLIC`` for forests.

    BFS from every vertex; a non-tree edge ``(u, w)`` met from root ``r`` closes a
    walk of length ``dist(u) + dist(w) + 1`` which contains a cycle no longer than
    that, and the minimum over all roots is exact.  The sweep stops early once a
    cycle of the smallest possible length (3, or 4 for bipartite graphs) is seen.
    """
    if is_forest(g):
        return ACYCLIC
    floor = 4 if _is_bipartite(g) else 3
    best = g.n + 1
    adj = _LazyAdjacency(g)
    deg = g.degrees
    for r in range(g.n):
        if deg[r] < 2:
            continue
        dist = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, du + dist[w] + 1)
        if best <= floor:
            break
    return best


def bfs_distances(g: Graph, sources) -> np.ndarray:
    """Hop distances from each source (rows) to every vertex; ``-1`` if unreachable."""
    src = np.asarray(list(sources), dtype=np.int64)
    if g.n == 0 or src.size == 0:
        return np.zeros((src.size, g.n), dtype=np.int64)
    dm = csgraph.shortest_path(g.csr, directed=False, unweighted=True, indices=src)
    dm = np.atleast_2d(dm)
    out = np.where(np.isinf(dm), -1, dm).astype(np.int64)
    return out


def average_pairwise_distance(g: Graph, s: Iterable[int]) -> Fraction:
    """Mean BFS distance in ``g`` over unordered pairs of ``s`` (exact)."""
    members = _member_array(g, s)
    t = members.size
    if t < 2:
        raise ValueError("need at least two vertices")
    total = 0
    for start in range(0, t, 256):
        rows = members[start:start + 256]
        dm = bfs_distances(g, rows)[:, members]
        bad = np.argwhere(dm < 0)
        if bad.size:
            i, j = bad[0]
            raise ValueError(
                f"vertices {int(rows[i])} and {int(members[j])} are in different components")
        total += int(dm.sum())
    # every unordered pair was counted twice
    return Fraction(total, t * (t - 1))


def distance_bound_holds(avg, t: int, max_degree: int) -> bool:
    """Exact test of ``avg >= log2(t/2) / (2 log2 max_degree)`` for ``max_degree > 1``.

    With ``avg = p/q`` this reads ``max_degree^(2p) 2^q >= t^q``, decided on
    logarithms without expanding the powers.
    """
    if max_degree < 2:
        raise ValueError("the bound needs maximum degree at least 2")
    avg = Fraction(avg)
    p, q = avg.numerator, avg.denominator
    return log_sign([(max_degree, 2 * p), (2, q), (t, -q)]) >= 0


# ---------------------------------------------------------------------------
# JSON serialization


def to_dict(g: Graph) -> dict:
    out = {"n": g.n, "edges": g.edges.tolist()}
    if g.labels is not None:
        out["labels"] = _bit_strings(g.labels, g.dim)
    return out


def _bit_strings(labels: np.ndarray, dim: int) -> list[str]:
    """``format(x, f"0{dim}b")`` for every label, most significant bit first."""
    shifts = np.arange(dim - 1, -1, -1, dtype=np.int64)
    chars = ((labels.astype(np.int64)[:, None] >> shifts) & 1).astype(np.uint8) + ord("0")
    return np.ascontiguousarray(chars).view(f"S{dim}").ravel().astype(str).tolist()


def from_dict(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph object: {exc}") from None
    labels = obj.get("labels")
    if labels is None:
        return Graph(n, edges)
    widths = {len(b) for b in labels}
    if len(widths) > 1:
        raise ValueError("labels must share one bit width")
    dim = widths.pop() if widths else 1
    return Graph(n, edges, [int(b, 2) for b in labels], dim)


def dumps(g: Graph) -> str:
    return json.dumps(to_dict(g), separators=(",", ":"))


def loads(text: str) -> Graph:
    return from_dict(json.loads(text))


def save(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(g))
        fh.write("\n")


def load(path) -> Graph:
    with open(path) as fh:
        return loads(fh.read())
