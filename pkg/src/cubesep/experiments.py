"""Seed sweeps written to a self-contained bundle, and an independent verifier.

A bundle directory holds ``manifest.json``, one graph file per seed under
``graphs/``, one record per seed under ``runs/`` and ``summary.csv``.  Every check
in a record carries a ``ref`` naming the result it tests, using the labels of
the construction's source (``"lemma:cubeExp"``, ``"theo:SSE"``, ...).

``verify_bundle`` re-derives every recounted quantity from the serialized
graphs with plain Python containers; it imports nothing from the rest of the
package.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

SCHEMA_VERSION = 1
STAGES = ("generate", "cut", "sse", "decompose", "spectrum", "oracle")
CUT_METHODS = ("coordinate", "exact", "spectral", "boost")
ORACLE_TARGETS = ("edge-sep", "vertex-sep", "min-expansion", "girth")
SUMMARY_COLUMNS = ("seed", "n", "m", "max_degree", "avg_degree", "girth", "cut_expansion",
                   "sse_sets", "removed_edges", "threshold_rank", "checks_passed",
                   "checks_failed", "error")

CHECK_REFS = {
    "max_degree": "theo:main",
    "short_cycles": "lemma:construction",
    "avg_degree": "theo:main",
    "cut_recount": "eq:expansion",
    "cut_small_side": "lemma:cubeExp",
    "cube_exp_bound": "lemma:cubeExp",
    "separator_valid": "lemma:boost",
    "boost_certificate": "lemma:boost",
    "sse_family": "theo:SSE",
    "sse_steps": "eq:SSEclaim",
    "sse_double_count": "eq:final-1",
    "decompose_partition": "theo:Trevisan",
    "decompose_threshold": "theo:Trevisan",
    "spectrum_moments": "lemma:Cheeger",
    "spectrum_top": "lemma:Cheeger",
    "oracle_valid": "fact:treeSep",
}


class SchemaError(ValueError):
    pass


def frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


# --- spec validation ---------------------------------------------------------

_PARAM_TYPES = {
    "d": int, "k": int, "n": (int, type(None)), "retries": int, "cube": int, "graph": str,
    "cut_method": str, "mu": str, "separator": str, "epsilon": str, "mode": str,
    "regularize": (int, type(None)), "tau": (int, float), "oracle": str,
}


def validate_spec(spec) -> dict:
    """Check an experiment spec; errors name the offending JSON path."""
    if not isinstance(spec, dict):
        raise SchemaError("$: expected an object")
    for key in ("schema", "pipeline", "params", "seeds"):
        if key not in spec:
            raise SchemaError(f"$.{key}: missing")
    if spec["schema"] != SCHEMA_VERSION:
        raise SchemaError(f"$.schema: expected {SCHEMA_VERSION}, got {spec['schema']!r}")
    pipe = spec["pipeline"]
    if not isinstance(pipe, list) or not pipe or pipe[0] != "generate":
        raise SchemaError("$.pipeline: expected a list starting with 'generate'")
    for i, stage in enumerate(pipe):
        if stage not in STAGES:
            raise SchemaError(f"$.pipeline[{i}]: unknown stage {stage!r}")
    params = spec["params"]
    if not isinstance(params, dict):
        raise SchemaError("$.params: expected an object")
    for key, val in params.items():
        if key not in _PARAM_TYPES:
            raise SchemaError(f"$.params.{key}: unknown parameter")
        if isinstance(val, bool) or not isinstance(val, _PARAM_TYPES[key]):
            raise SchemaError(f"$.params.{key}: wrong type {type(val).__name__}")
    sources = [k for k in ("d", "cube", "graph") if k in params]
    if len(sources) != 1:
        raise SchemaError("$.params: give exactly one of 'd' (with 'k'), 'cube' or 'graph'")
    if "d" in params and "k" not in params:
        raise SchemaError("$.params.k: missing")
    if params.get("cut_method", "coordinate") not in CUT_METHODS:
        raise SchemaError(f"$.params.cut_method: expected one of {CUT_METHODS}")
    if params.get("oracle", "edge-sep") not in ORACLE_TARGETS:
        raise SchemaError(f"$.params.oracle: expected one of {ORACLE_TARGETS}")
    if params.get("mode", "heuristic") not in ("exact", "heuristic"):
        raise SchemaError("$.params.mode: expected 'exact' or 'heuristic'")
    for key in ("mu", "epsilon"):
        if key in params:
            try:
                Fraction(params[key])
            except (ValueError, ZeroDivisionError):
                raise SchemaError(f"$.params.{key}: expected a fraction 'P/Q'") from None
    seeds = spec["seeds"]
    if not isinstance(seeds, list):
        raise SchemaError("$.seeds: expected a list")
    for i, s in enumerate(seeds):
        if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < 1 << 64:
            raise SchemaError(f"$.seeds[{i}]: expected a 64-bit unsigned integer")
    if len(set(seeds)) != len(seeds):
        raise SchemaError("$.seeds: duplicate seed")
    asserts = spec.get("assertions", list(CHECK_REFS))
    if not isinstance(asserts, list):
        raise SchemaError("$.assertions: expected a list of check names")
    for i, name in enumerate(asserts):
        if name not in CHECK_REFS:
            raise SchemaError(f"$.assertions[{i}]: unknown check {name!r}")
    return spec


# --- running -------------------------------------------------------------------

def _check(record, hard, name, passed, detail=None):
    record["checks"].append({"name": name, "ref": CHECK_REFS[name], "passed": bool(passed),
                             "hard": name in hard, "detail": detail})


def cut_to_dict(h, cut):
    from .cuts import boundary_edges
    return {"members": sorted(cut.members), "boundary_edges": [list(e) for e in boundary_edges(h, cut.members)],
            "boundary_size": cut.boundary_size, "expansion": frac(cut.expansion), "method": cut.method}


def separator_to_dict(sep, convention=None):
    rec = {"kind": sep.kind, "removed": [list(e) if isinstance(e, tuple) else e for e in sep.removed],
           "side_sizes": list(sep.side_sizes), "sides": [sorted(p) for p in sep.parts]}
    if convention:
        rec["convention"] = convention
    return rec


def _stage_generate(params, seed, record, hard):
    from .construction import ConstructionParams, build_gnk
    from .graph import load
    from .hypercube import full_cube

    if "graph" in params:
        return load(params["graph"])
    if "cube" in params:
        return full_cube(params["cube"])
    k = params["k"]
    cp = ConstructionParams(params["d"], k, seed, params.get("n"))
    g, trace = build_gnk(cp, params.get("retries", 64))
    record["trace"] = trace.to_dict()
    _check(record, hard, "max_degree", trace.final_max_degree <= 6 * k,
           f"{trace.final_max_degree} <= {6 * k}")
    limit = Fraction(params["d"], 36 * k * k)
    fg = trace.final_girth
    ok = not isinstance(fg, int) or fg > limit
    _check(record, hard, "short_cycles", ok,
           f"girth {fg} > {frac(limit)}" + (" (vacuous)" if limit < 3 else ""))
    _check(record, hard, "avg_degree", trace.final_avg_degree >= k,
           f"{frac(trace.final_avg_degree)} >= {k}")
    return g


def _stage_cut(g, params, record, hard):
    from .cuts import boost_separator, coordinate_bound_holds, cut_of, get_cut_strategy, is_valid_separator
    from .graph import average_degree, is_connected

    method = params.get("cut_method", "coordinate" if g.labels is not None else "spectral")
    if method == "boost":
        sep = boost_separator(g, "exact" if g.n <= 20 else None)
        record["cut"] = separator_to_dict(sep)
        record["cut"]["max_ratio"] = frac(sep.trace.max_ratio)
        _check(record, hard, "separator_valid", is_valid_separator(g, sep))
        _check(record, hard, "boost_certificate", sep.trace.certified,
               f"{sep.size} <= {sep.side_sizes[0]} * {frac(sep.trace.max_ratio)}")
        return
    cut = get_cut_strategy(method)(g)
    record["cut"] = cut_to_dict(g, cut)
    again = cut_of(g, cut.members)
    _check(record, hard, "cut_recount", again.boundary_size == cut.boundary_size
           and again.expansion == cut.expansion)
    _check(record, hard, "cut_small_side", 0 < 2 * len(cut.members) <= g.n)
    if method == "coordinate" and g.n >= 3 and is_connected(g):
        r = average_degree(g)
        ok = coordinate_bound_holds(cut.expansion, r, g.dim, g.n)
        _check(record, hard, "cube_exp_bound", ok,
               f"phi={frac(cut.expansion)} vs 2*{frac(r)}*log d/log(t/2), d={g.dim}, t={g.n}")


def sse_to_dict(res) -> dict:
    return {
        "mu": frac(res.mu), "t": res.t,
        "sets": [sorted(s) for s in res.sets],
        "expansions_in_h": [frac(x) for x in res.expansions_in_h],
        "family": [sorted(a.members) for a in res.family],
        "family_boundaries_in_h": [a.boundary_in_h for a in res.family],
        "residual_boundaries": [a.residual_boundary for a in res.family],
        "residual_expansions": [frac(a.residual_expansion) for a in res.family],
        "steps": [[{"size": st.size, "side_sizes": list(st.side_sizes), "cut": st.cut,
                    "boundary": st.boundary, "bound": frac(st.bound),
                    "kept_expansion": frac(st.kept_expansion)} for st in a.trace.steps]
                  for a in res.family],
        "per_step_bounds": [frac(x) for x in res.per_step_bounds],
        "phi_max": frac(res.phi_max),
        "certified_bound": frac(res.certified_bound),
        "certified": res.certified,
        "double_count": [res.double_count_lhs, res.double_count_rhs],
        "early_stop": res.early_stop,
        "below_sqrt_regime": res.below_sqrt_regime,
        "formula_bound": res.formula_bound,
    }


def _stage_sse(g, params, record, hard):
    from .sse import extract_disjoint_family

    res = extract_disjoint_family(g, params.get("mu", "1/8"), params.get("separator", "boost"))
    record["sse"] = sse_to_dict(res)
    lo, hi = math.ceil(res.mu * res.t / 3), math.floor(res.mu * res.t)
    sizes_ok = all(lo <= len(s) <= hi for s in res.sets)
    disjoint = len(set().union(*res.sets)) == sum(len(s) for s in res.sets)
    _check(record, hard, "sse_family", sizes_ok and disjoint and len(res.sets) >= math.ceil(1 / (4 * res.mu)),
           f"{len(res.sets)} sets, sizes in [{lo}, {hi}]")
    _check(record, hard, "sse_steps", all(a.trace.certified for a in res.family)
           and all(x <= res.certified_bound for x in res.expansions_in_h))
    _check(record, hard, "sse_double_count", res.double_count_holds,
           f"{res.double_count_lhs} <= {res.double_count_rhs}")


def decomposition_to_dict(res) -> dict:
    return {
        "epsilon": frac(res.epsilon), "mode": res.mode, "threshold": res.threshold,
        "components": [{"members": sorted(c.members), "status": c.status,
                        "best_expansion": None if c.best_expansion is None else frac(c.best_expansion)}
                       for c in res.components],
        "removed": [list(e) for e in res.removed],
        "removed_fraction": frac(res.removed_fraction),
        "within_epsilon": res.within_epsilon,
    }


def _stage_decompose(g, params, record, hard):
    from .decomposition import below_threshold, trevisan_decompose
    from .graph import Graph, components

    res = trevisan_decompose(g, params.get("epsilon", "1/2"), params.get("mode", "heuristic"))
    record["decompose"] = decomposition_to_dict(res)
    drop = set(res.removed)
    rest = Graph(g.n, [e for e in g.edge_list() if e not in drop])
    got = sorted(sorted(c.members) for c in components(rest))
    want = sorted(sorted(c.members) for c in res.components)
    _check(record, hard, "decompose_partition", got == want)
    ok = all(c.best_expansion is None or not below_threshold(c.best_expansion, res.epsilon, g.n)
             for c in res.components)
    _check(record, hard, "decompose_threshold", ok, f"threshold {res.threshold:.6g}")


def _stage_spectrum(g, params, record, hard):
    import numpy as np

    from .spectral import regularize, spectrum, threshold_rank

    target = params.get("regularize") or g.max_degree
    rep = spectrum(regularize(g, target))
    tau = float(params.get("tau", 0.5))
    tr = threshold_rank(rep, tau)
    vals = [float(f"{x:.17g}") for x in rep.eigenvalues.tolist()]
    record["spectrum"] = {"degree_target": target, "eigenvalues": vals, "tau": tau,
                          "threshold_rank": [tr.low, tr.value, tr.high],
                          "max_residual": rep.max_residual}
    loops = target - g.degrees.astype(float)
    tr_ok = abs(sum(vals) - loops.sum()) <= 1e-7 * max(1.0, g.n * target)
    fro = 2 * g.m + float((loops ** 2).sum())
    fro_ok = abs(float(np.square(vals).sum()) - fro) <= 1e-7 * max(1.0, fro)
    _check(record, hard, "spectrum_moments", tr_ok and fro_ok)
    _check(record, hard, "spectrum_top", vals[0] <= target + 1e-9 * max(1, target))


def _stage_oracle(g, params, record, hard):
    from . import oracles
    from .cuts import is_valid_separator

    what = params.get("oracle", "edge-sep")
    if what == "edge-sep":
        sep = oracles.exact_edge_separator(g)
        record["oracle"] = separator_to_dict(sep)
        _check(record, hard, "oracle_valid", is_valid_separator(g, sep))
    elif what == "vertex-sep":
        sep = oracles.exact_vertex_separator(g)
        record["oracle"] = separator_to_dict(sep, "original")
        _check(record, hard, "oracle_valid", is_valid_separator(g, sep))
    elif what == "min-expansion":
        cut = oracles.exact_min_expansion_set(g, (1, g.n // 2))
        record["oracle"] = cut_to_dict(g, cut)
        _check(record, hard, "oracle_valid", 0 < 2 * len(cut.members) <= g.n)
    else:
        gi = oracles.exact_girth(g)
        record["oracle"] = {"girth": gi if isinstance(gi, int) else str(gi)}


_STAGE_FUNCS = {"cut": _stage_cut, "sse": _stage_sse, "decompose": _stage_decompose,
                "spectrum": _stage_spectrum, "oracle": _stage_oracle}


def _graph_stats(g) -> dict:
    from .graph import average_degree, girth

    gi = girth(g) if g.n <= 1 << 16 else None
    return {"n": g.n, "m": g.m, "max_degree": g.max_degree, "avg_degree": frac(average_degree(g)),
            "girth": gi if isinstance(gi, int) or gi is None else str(gi)}


def _run_one(spec: dict, seed: int, out: str) -> dict:
    from .graph import dumps

    out = Path(out)
    hard = set(spec.get("assertions", list(CHECK_REFS)))
    record = {"seed": seed, "schema": SCHEMA_VERSION, "graph": None, "stats": None,
              "checks": [], "error": None}
    try:
        g = _stage_generate(spec["params"], seed, record, hard)
        gpath = f"graphs/seed-{seed}.json"
        _write_atomic(out / gpath, dumps(g))
        record["graph"] = gpath
        record["stats"] = _graph_stats(g)
        for stage in spec["pipeline"][1:]:
            _STAGE_FUNCS[stage](g, spec["params"], record, hard)
    except Exception as exc:  # recorded per run; the sweep carries on
        record["error"] = f"{type(exc).__name__}: {exc}"
    _write_atomic(out / f"runs/run-{seed}.json", json.dumps(record, indent=1, sort_keys=True))
    return record


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CUBESEP_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class ExperimentReport:
    out: Path
    records: list
    failures: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if not self.failures else 1


def run_experiment(spec_or_path, out) -> ExperimentReport:
    """Run every seed of an experiment spec and write the bundle to ``out``.

    The exit code is 0 iff no run raised and every hard check passed.
    """
    if isinstance(spec_or_path, (str, Path)):
        with open(spec_or_path) as fh:
            spec = json.load(fh)
    else:
        spec = spec_or_path
    validate_spec(spec)
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    seeds = spec["seeds"]
    workers = min(_threads(), max(1, len(seeds)))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_run_one, [spec] * len(seeds), seeds, [str(out)] * len(seeds)))
    else:
        records = [_run_one(spec, s, str(out)) for s in seeds]
    failures = []
    for rec in records:
        if rec["error"]:
            failures.append(f"seed {rec['seed']}: {rec['error']}")
        failures.extend(f"seed {rec['seed']}: check {c['name']} failed"
                        for c in rec["checks"] if c["hard"] and not c["passed"])
    manifest = {"schema": SCHEMA_VERSION, "spec": spec,
                "runs": [f"runs/run-{s}.json" for s in seeds], "failures": failures}
    _write_atomic(out / "manifest.json", json.dumps(manifest, indent=1, sort_keys=True))
    _write_atomic(out / "summary.csv", summary_csv(records))
    return ExperimentReport(out, records, failures)


def summary_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for rec in records:
        st = rec.get("stats") or {}
        checks = rec["checks"]
        w.writerow([
            rec["seed"], st.get("n", ""), st.get("m", ""), st.get("max_degree", ""),
            st.get("avg_degree", ""), st.get("girth", ""),
            rec.get("cut", {}).get("expansion", ""),
            len(rec["sse"]["sets"]) if "sse" in rec else "",
            len(rec["decompose"]["removed"]) if "decompose" in rec else "",
            rec["spectrum"]["threshold_rank"][1] if "spectrum" in rec else "",
            sum(c["passed"] for c in checks), sum(not c["passed"] for c in checks),
            rec["error"] or "",
        ])
    return buf.getvalue()


# --- independent verification ------------------------------------------------

class _Corrupt(Exception):
    pass


def _plain_graph(path: Path):
    try:
        obj = json.loads(path.read_text())
        n = obj["n"]
        edges = [tuple(e) for e in obj["edges"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise _Corrupt(f"graph file {path.name}: {exc}") from None
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return n, {(min(u, v), max(u, v)) for u, v in edges}, adj


def _plain_boundary(adj, members) -> int:
    s = set(members)
    return sum(1 for u in s for w in adj[u] if w not in s)


def _plain_pieces(n, adj, skip_vertices=(), skip_edges=()):
    dead = set(skip_vertices)
    cut = {tuple(sorted(e)) for e in skip_edges}
    seen = set(dead)
    out = []
    for s in range(n):
        if s in seen:
            continue
        seen.add(s)
        piece, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen and (min(u, w), max(u, w)) not in cut:
                    seen.add(w)
                    piece.append(w)
                    queue.append(w)
        out.append(sorted(piece))
    return out


def _verify_record(root: Path, rec: dict) -> list[str]:
    problems = []
    if not rec.get("graph"):
        raise _Corrupt("record names no graph file")
    n, edges, adj = _plain_graph(root / rec["graph"])
    m = len(edges)
    st = rec["stats"]
    maxdeg = max((len(a) for a in adj), default=0)
    if (st["n"], st["m"], st["max_degree"]) != (n, m, maxdeg):
        problems.append("graph stats")
    if Fraction(st["avg_degree"]) != (Fraction(2 * m, n) if n else 0):
        problems.append("average degree")

    def cap(ref):
        return max(1, 2 * ref // 3)

    def check_cut(tag, cut):
        b = _plain_boundary(adj, cut["members"])
        if b != cut["boundary_size"] or Fraction(cut["expansion"]) != Fraction(b, len(cut["members"])):
            problems.append(f"{tag}: boundary/expansion")
        s = set(cut["members"])
        bnd = sorted([u, v] for u, v in edges if (u in s) != (v in s))
        if bnd != sorted(cut["boundary_edges"]):
            problems.append(f"{tag}: boundary edges")

    def check_sep(tag, sep):
        if sep["kind"] == "edge":
            if not all(tuple(e) in edges for e in sep["removed"]):
                problems.append(f"{tag}: removed edge not in graph")
            pieces = _plain_pieces(n, adj, skip_edges=[tuple(e) for e in sep["removed"]])
            ref = n
        else:
            pieces = _plain_pieces(n, adj, skip_vertices=sep["removed"])
            ref = n if sep.get("convention", "original") == "original" else n - len(sep["removed"])
        if any(len(p) > cap(ref) for p in pieces):
            problems.append(f"{tag}: unbalanced")
        sides = [set(x) for x in sep["sides"]]
        if [len(x) for x in sides] != sep["side_sizes"]:
            problems.append(f"{tag}: side sizes")

    if "cut" in rec:
        if "kind" in rec["cut"]:
            check_sep("cut", rec["cut"])
        else:
            check_cut("cut", rec["cut"])
    if "oracle" in rec:
        o = rec["oracle"]
        if "kind" in o:
            check_sep("oracle", o)
        elif "members" in o:
            check_cut("oracle", o)
    if "sse" in rec:
        s = rec["sse"]
        mu, t = Fraction(s["mu"]), s["t"]
        lo, hi = math.ceil(mu * t / 3), math.floor(mu * t)
        seen = set()
        for members, phi in zip(s["sets"], s["expansions_in_h"]):
            if not lo <= len(members) <= hi or seen & set(members):
                problems.append("sse: size window or overlap")
            seen |= set(members)
            if Fraction(phi) != Fraction(_plain_boundary(adj, members), len(members)):
                problems.append("sse: expansion")
        lhs = sum(_plain_boundary(adj, a) for a in s["family"])
        if lhs != s["double_count"][0] or lhs > s["double_count"][1]:
            problems.append("sse: double count")
        if len(s["sets"]) < math.ceil(1 / (4 * mu)):
            problems.append("sse: too few sets")
    if "decompose" in rec:
        dec = rec["decompose"]
        if not all(tuple(e) in edges for e in dec["removed"]):
            problems.append("decompose: removed edge not in graph")
        pieces = _plain_pieces(n, adj, skip_edges=[tuple(e) for e in dec["removed"]])
        if sorted(pieces) != sorted(sorted(c["members"]) for c in dec["components"]):
            problems.append("decompose: components")
        # every removed edge was cut between two pieces that stay apart
        where = {v: i for i, p in enumerate(pieces) for v in p}
        if any(where[u] == where[v] for u, v in dec["removed"]):
            problems.append("decompose: removed edge inside a component")
        if Fraction(dec["removed_fraction"]) != (Fraction(len(dec["removed"]), m) if m else 0):
            problems.append("decompose: removed fraction")
    if "spectrum" in rec:
        sp = rec["spectrum"]
        target, vals = sp["degree_target"], sp["eigenvalues"]
        loops = [target - len(a) for a in adj]
        if len(vals) != n or any(x < 0 for x in loops):
            problems.append("spectrum: size or target")
        else:
            if abs(sum(vals) - sum(loops)) > 1e-7 * max(1, n * target):
                problems.append("spectrum: trace")
            fro = 2 * m + sum(x * x for x in loops)
            if abs(sum(x * x for x in vals) - fro) > 1e-7 * max(1, fro):
                problems.append("spectrum: frobenius")
            thr = sp["tau"] * target
            if sum(1 for x in vals if abs(x) > thr) != sp["threshold_rank"][1]:
                problems.append("spectrum: threshold rank")
    return problems


@dataclass
class VerifyReport:
    results: list  # (run file, status, problems)

    @property
    def ok(self) -> bool:
        return all(status in ("pass", "skipped") for _, status, _ in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1


def verify_bundle(bundle) -> VerifyReport:
    """Recount every stored quantity of a bundle from its graph files.

    Each run is ``"pass"``, ``"fail"`` (with the mismatches), ``"corrupt"``
    (unreadable record or missing graph) or ``"skipped"`` (the run raised before
    its graph was stored).  A run that raised later is checked on the stages it
    did store.  Verification continues past every kind of failure.
    """
    root = Path(bundle)
    try:
        manifest = json.loads((root / "manifest.json").read_text())
        runs = manifest["runs"]
    except (OSError, ValueError, KeyError) as exc:
        return VerifyReport([("manifest.json", "corrupt", [str(exc)])])
    results = []
    for name in runs:
        try:
            try:
                rec = json.loads((root / name).read_text())
            except (OSError, ValueError) as exc:
                raise _Corrupt(str(exc)) from None
            if rec.get("error") and not rec.get("graph"):
                results.append((name, "skipped", [rec["error"]]))
                continue
            problems = _verify_record(root, rec)
            results.append((name, "fail" if problems else "pass", problems))
        except _Corrupt as exc:
            results.append((name, "corrupt", [str(exc)]))
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            results.append((name, "corrupt", [f"malformed record: {exc!r}"]))
    return VerifyReport(results)
