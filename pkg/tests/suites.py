"""Seeded random instance families shared by the unit and acceptance tests."""

from __future__ import annotations

import numpy as np

from cubesep.graph import Graph


def rng_for(*key: int) -> np.random.Generator:
    # test streams use the high half of the key so they never meet library streams
    key = (list(key) + [0])[:2]
    return np.random.Generator(np.random.Philox(key=[key[0], key[1] + (1 << 40)]))


def random_tree(rng, n: int) -> Graph:
    """Random recursive tree: vertex ``i`` attaches to a uniform earlier vertex."""
    edges = [(i, int(rng.integers(0, i))) for i in range(1, n)]
    return Graph(n, edges)


def random_connected(rng, n: int, extra: int) -> Graph:
    """Random tree plus up to ``extra`` further distinct edges."""
    edges = {tuple(sorted(e)) for e in random_tree(rng, n).edge_list()}
    target = min(len(edges) + extra, n * (n - 1) // 2)
    while len(edges) < target:
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def random_gnp(rng, n: int, p: float) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph(n, np.stack([iu[keep], ju[keep]], axis=1))


def random_connected_nontree(rng, n_max: int = 16) -> Graph:
    n = int(rng.integers(3, n_max + 1))
    extra = int(rng.integers(1, max(2, n * (n - 1) // 2 - (n - 1)) + 1))
    return random_connected(rng, n, min(extra, 3 * n))


def random_cube_subgraph(rng, d: int, t_min: int = 4, t_max: int | None = None) -> Graph:
    """Connected labelled subgraph of Q_d.

    A vertex set is grown from a random start by adding uniform frontier
    vertices; the growth tree is kept and every other cube edge inside the set
    survives with a random probability.
    """
    t_max = (1 << d) if t_max is None else t_max
    t = int(rng.integers(t_min, t_max + 1))
    start = int(rng.integers(0, 1 << d))
    order = [start]
    index = {start: 0}
    frontier = {}
    tree = []

    def push(v):
        for i in range(d):
            w = v ^ (1 << i)
            if w not in index and w not in frontier:
                frontier[w] = v

    push(start)
    while len(order) < t:
        keys = list(frontier)
        w = keys[int(rng.integers(0, len(keys)))]
        parent = frontier.pop(w)
        index[w] = len(order)
        order.append(w)
        tree.append((index[parent], index[w]))
        push(w)
    keep_p = float(rng.uniform(0.0, 1.0))
    edges = {tuple(sorted(e)) for e in tree}
    for v in order:
        for i in range(d):
            w = v ^ (1 << i)
            if w > v and w in index and rng.random() < keep_p:
                edges.add(tuple(sorted((index[v], index[w]))))
    return Graph(t, sorted(edges), order, d)


def disjoint_cliques(c: int, size: int) -> Graph:
    edges = [(b * size + i, b * size + j) for b in range(c) for i in range(size) for j in range(i + 1, size)]
    return Graph(c * size, edges)


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def two_triangles_bridge() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def two_k4_bridge() -> Graph:
    k4 = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    return Graph(8, k4 + [(i + 4, j + 4) for i, j in k4] + [(3, 4)])


def triangles_chain(count: int) -> Graph:
    """``count`` triangles joined in a chain by single edges."""
    edges = []
    for b in range(count):
        a = 3 * b
        edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
        if b:
            edges.append((a - 1, a))
    return Graph(3 * count, edges)
