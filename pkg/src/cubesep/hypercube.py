"""The d-cube Q_d: vertices are d-bit integers, coordinate i is bit i."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph

MAX_DIM = 63
# full_cube materialises d * 2**(d-1) edges
MAX_MATERIALIZED_DIM = 20


@dataclass(frozen=True, order=True)
class CubeVertex:
    bits: int
    dim: int

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"cube dimension must be in [1, {MAX_DIM}], got {self.dim}")
        if not 0 <= self.bits < 1 << self.dim:
            raise ValueError(f"{self.bits} is not a vertex of Q_{self.dim}")

    def coordinate(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __str__(self) -> str:
        return format(self.bits, f"0{self.dim}b")


def hamming_distance(u: CubeVertex, v: CubeVertex) -> int:
    """Number of coordinates where ``u`` and ``v`` differ (= distance in Q_d)."""
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} != {v.dim}")
    return (u.bits ^ v.bits).bit_count()


def cube_neighbors(v: CubeVertex) -> list[CubeVertex]:
    return [CubeVertex(v.bits ^ (1 << i), v.dim) for i in range(v.dim)]


def cube_edge_array(d: int) -> np.ndarray:
    """All edges of Q_d in coordinate-major order.

    Row ``i * 2**(d-1) + j`` is the edge along coordinate ``i`` from the ``j``-th
    smallest vertex with bit ``i`` clear.  This order is the canonical edge index
    used for counter-mode sampling.
    """
    _check_materializable(d)
    return _cube_edges(d)


@lru_cache(maxsize=4)
def _cube_edges(d: int) -> np.ndarray:
    verts = np.arange(1 << d, dtype=np.int64)
    rows = []
    for i in range(d):
        low = verts[(verts >> i) & 1 == 0]
        rows.append(np.stack([low, low | (1 << i)], axis=1))
    out = np.concatenate(rows)
    out.setflags(write=False)
    return out


def full_cube(d: int) -> Graph:
    """Q_d with every vertex labelled by its own coordinates."""
    _check_materializable(d)
    return Graph(1 << d, cube_edge_array(d), np.arange(1 << d, dtype=np.uint64), d)


def _check_materializable(d: int) -> None:
    if not 1 <= d <= MAX_MATERIALIZED_DIM:
        raise ValueError(
            f"Q_{d} is outside the materialisation budget 1 <= d <= {MAX_MATERIALIZED_DIM}")
