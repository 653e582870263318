"""Sparse cuts and separators in a random pruned hypercube subgraph.

Builds G_{n,k} at d = 14, then walks the chain from a coordinate cut to a
balanced edge separator, comparing each number with its bound.

Run: python demos/sparse_cuts_in_cube_subgraphs.py
"""

from cubesep import (ConstructionParams, average_degree, boost_separator, build_gnk, coordinate_cut,
                     is_valid_separator)
from cubesep.cuts import coordinate_bound_holds


def main():
    g, trace = build_gnk(ConstructionParams(d=14, k=2, seed=11))
    r = average_degree(g)
    print(f"G_(n,k): n={g.n} m={g.m} max degree {g.max_degree} (cap {6 * 2}), average degree {float(r):.3f}")
    print(f"  sampled X={trace.edges_sampled}, cycle edges Y={trace.short_cycles_hit}, "
          f"excess Z={trace.excess_degree_total}, attempts {trace.attempts}")

    # a disconnected graph gives a component with phi = 0, which meets any bound
    cut = coordinate_cut(g)
    print(f"coordinate cut: |S|={len(cut)} boundary={cut.boundary_size} phi={float(cut.expansion):.4f}")
    print(f"  within 2r log d/log(t/2): {coordinate_bound_holds(cut.expansion, r, g.dim, g.n)}")

    sep = boost_separator(g)
    print(f"boosted separator: {sep.size} edges, sides {sep.side_sizes}, valid {is_valid_separator(g, sep)}")
    print(f"  {len(sep.trace.steps)} cut steps, max ratio {float(sep.trace.max_ratio):.4f}, "
          f"certificate {sep.size} <= {sep.side_sizes[0]} * max ratio: {sep.trace.certified}")


if __name__ == "__main__":
    main()
