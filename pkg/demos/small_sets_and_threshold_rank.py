"""Disjoint small sets with small expansion, and what they say about the spectrum.

Extracts a family of small non-expanding sets from the full 8-cube, checks the
double-counting inequality, then uses the sets as Cheeger witnesses for a lower
bound on the threshold rank of a pruned cube subgraph.

Run: python demos/small_sets_and_threshold_rank.py
"""

import math

from cubesep import ConstructionParams, build_gnk, extract_disjoint_family, full_cube, rank_experiment


def main():
    h = full_cube(8)
    for mu in ("1/4", "1/8", "1/16"):
        res = extract_disjoint_family(h, mu)
        lo, hi = math.ceil(res.mu * res.t / 3), math.floor(res.mu * res.t)
        sizes = [len(s) for s in res.sets]
        print(f"mu={mu}: {len(res.sets)} sets of sizes {sizes} (window [{lo}, {hi}]), "
              f"phi_H = {[str(x) for x in res.expansions_in_h]}")
        print(f"  double count {res.double_count_lhs} <= {res.double_count_rhs}, "
              f"each phi <= 12 phi_max = {res.certified_bound}: {res.certified}")

    g, _ = build_gnk(ConstructionParams(d=12, k=2, seed=5, n=2100))
    for eta, frac in ((0.5, 0.0), (0.5, 0.3)):
        rec = rank_experiment(g, eta, frac, seed=1)
        print(f"eta={eta}, {rec.removed_edges} edges removed: component of {rec.component_size}, "
              f"certified b={rec.b}, measured rank={rec.rank.value}, b <= rank: {rec.consistent}")


if __name__ == "__main__":
    main()
