"""``cubesep`` command line.

Every command reads graphs in the JSON format of ``cubesep.graph.dumps`` and
writes JSON (default) or CSV to ``--out`` or standard output.  Fractions are
written as ``"P/Q"`` strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import experiments as ex
from .graph import load


def _emit(args, obj, rows=None) -> None:
    if args.format == "csv":
        rows = rows if rows is not None else [obj]
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        text = buf.getvalue()
    else:
        text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    from .construction import ConstructionParams, build_gnk
    from .graph import save

    g, trace = build_gnk(ConstructionParams(args.d, args.k, args.seed, args.n))
    if not args.out:
        raise SystemExit("generate needs --out FILE.json")
    save(g, args.out)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(trace.to_dict(), fh, indent=1, sort_keys=True)
    sys.stderr.write(f"wrote {args.out}: n={g.n} m={g.m} max degree {g.max_degree}\n")
    return 0


def cmd_cut(args) -> int:
    from .cuts import boost_separator, get_cut_strategy

    g = load(args.input)
    if args.method == "boost":
        sep = boost_separator(g, args.strategy)
        obj = ex.separator_to_dict(sep)
        obj["max_ratio"] = ex.frac(sep.trace.max_ratio)
        obj["certified"] = sep.trace.certified
    else:
        obj = ex.cut_to_dict(g, get_cut_strategy(args.method)(g))
    _emit(args, obj)
    return 0


def cmd_sse(args) -> int:
    from .sse import extract_disjoint_family

    res = extract_disjoint_family(load(args.input), args.mu, args.separator)
    obj = ex.sse_to_dict(res)
    rows = [{"index": i, "size": len(s), "expansion": e}
            for i, (s, e) in enumerate(zip(obj["sets"], obj["expansions_in_h"]))]
    _emit(args, obj, rows)
    return 0


def cmd_decompose(args) -> int:
    from .decomposition import trevisan_decompose

    res = trevisan_decompose(load(args.input), args.epsilon, args.mode)
    obj = ex.decomposition_to_dict(res)
    rows = [{"component": i, "size": len(c["members"]), "status": c["status"],
             "best_expansion": c["best_expansion"]} for i, c in enumerate(obj["components"])]
    _emit(args, obj, rows)
    return 0


def cmd_spectrum(args) -> int:
    from .spectral import regularize, spectrum, threshold_rank

    g = load(args.input)
    rep = spectrum(regularize(g, args.regularize))
    tr = threshold_rank(rep, args.tau)
    vals = [float(f"{x:.17g}") for x in rep.eigenvalues.tolist()]
    obj = {"degree_target": rep.degree_target, "eigenvalues": vals, "tau": args.tau,
           "threshold_rank": tr.value, "threshold_rank_low": tr.low, "threshold_rank_high": tr.high,
           "max_residual": rep.max_residual}
    _emit(args, obj, [{"index": i, "eigenvalue": v} for i, v in enumerate(vals)])
    return 0


def cmd_rank_experiment(args) -> int:
    from .spectral import rank_experiment

    rec = rank_experiment(load(args.input), args.eta, args.remove, args.seed, args.mu, args.separator)
    obj = {
        "seed": rec.seed, "eta": rec.eta, "edge_fraction_removed": rec.edge_fraction_removed,
        "removed_edges": rec.removed_edges, "component_size": rec.component_size,
        "component_avg_degree": ex.frac(rec.component_avg_degree), "degree_target": rec.degree_target,
        "mu": None if rec.mu is None else ex.frac(rec.mu), "b": rec.b, "sse_sets": rec.sse_sets,
        "rank": None if rec.rank is None else [rec.rank.low, rec.rank.value, rec.rank.high],
        "cheeger": None if rec.cheeger is None else {
            "k": rec.cheeger.k, "lhs": rec.cheeger.lhs, "rhs": ex.frac(rec.cheeger.rhs),
            "holds": rec.cheeger.holds},
        "consistent": rec.consistent, "formula": rec.formula, "sampled": rec.sampled,
    }
    _emit(args, obj)
    return 0 if rec.consistent is not False else 1


def cmd_oracle(args) -> int:
    from . import oracles

    g = load(args.input)
    if args.what == "edge-sep":
        obj = ex.separator_to_dict(oracles.exact_edge_separator(g))
    elif args.what == "vertex-sep":
        obj = ex.separator_to_dict(oracles.exact_vertex_separator(g, args.convention), args.convention)
    elif args.what == "min-expansion":
        obj = ex.cut_to_dict(g, oracles.exact_min_expansion_set(g, (1, g.n // 2)))
    else:
        gi = oracles.exact_girth(g)
        obj = {"girth": gi if isinstance(gi, int) else str(gi)}
    _emit(args, obj)
    return 0


def cmd_run(args) -> int:
    if not args.out:
        raise SystemExit("run needs --out DIR")
    try:
        report = ex.run_experiment(args.spec, args.out)
    except ex.SchemaError as exc:
        sys.stderr.write(f"invalid experiment spec: {exc}\n")
        return 2
    for line in report.failures:
        sys.stderr.write(line + "\n")
    sys.stderr.write(f"{len(report.records)} runs written to {args.out}\n")
    return report.exit_code


def cmd_verify(args) -> int:
    report = ex.verify_bundle(args.bundle)
    for name, status, problems in report.results:
        extra = f" ({'; '.join(problems)})" if problems and status != "pass" else ""
        sys.stdout.write(f"{status:8s} {name}{extra}\n")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="cubesep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", parents=[common], help="sample G_{n,k}")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--trace")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("cut", parents=[common], help="sparse cut or boosted separator")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--method", choices=("coordinate", "exact", "spectral", "boost"), default="coordinate")
    s.add_argument("--strategy", choices=("coordinate", "exact", "spectral"),
                   help="cut finder used by --method boost")
    s.set_defaults(func=cmd_cut)

    s = sub.add_parser("sse", parents=[common], help="disjoint small non-expanding sets")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--mu", required=True, help="fraction P/Q")
    s.add_argument("--separator", choices=("boost", "boost-spectral", "exact"), default="boost")
    s.set_defaults(func=cmd_sse)

    s = sub.add_parser("decompose", parents=[common], help="recursive sparse-cut decomposition")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--epsilon", default="1/2", help="fraction P/Q")
    s.add_argument("--mode", choices=("exact", "heuristic"), default="heuristic")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("spectrum", parents=[common], help="regularised adjacency spectrum")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--regularize", type=int, help="degree target (default: maximum degree)")
    s.add_argument("--tau", type=float, default=0.5)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("rank-experiment", parents=[common], help="threshold rank after edge removal")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--eta", type=float, required=True)
    s.add_argument("--remove", type=float, required=True, help="fraction of edges removed")
    s.add_argument("--mu", default="1/16")
    s.add_argument("--separator", choices=("boost", "boost-spectral", "exact"), default="boost")
    s.set_defaults(func=cmd_rank_experiment)

    s = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--what", choices=ex.ORACLE_TARGETS, required=True)
    s.add_argument("--convention", choices=("original", "remaining"), default="original")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("run", parents=[common], help="run an experiment spec into a bundle")
    s.add_argument("spec")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("verify", parents=[common], help="recount a bundle")
    s.add_argument("bundle")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        sys.stderr.write(f"cubesep {args.command}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
