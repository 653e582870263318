"""A seeded sweep written to a bundle, verified, then tampered with.

Run: python demos/reproducible_bundle.py [OUT_DIR]
"""

import json
import sys
import tempfile
from pathlib import Path

from cubesep import run_experiment, verify_bundle

SPEC = {
    "schema": 1,
    "pipeline": ["generate", "cut", "decompose"],
    "params": {"d": 12, "k": 2, "epsilon": "1/2"},
    "seeds": [1, 2, 3],
}


def main(out):
    rep = run_experiment(SPEC, out)
    print(f"wrote {len(rep.records)} runs to {out}, exit code {rep.exit_code}")
    print((out / "summary.csv").read_text())
    for name, status, problems in verify_bundle(out).results:
        print(f"  {status:7s} {name}")

    # change one stored number and verify again
    run = out / "runs" / "run-2.json"
    rec = json.loads(run.read_text())
    rec["cut"]["expansion"] = "1/1000"
    run.write_text(json.dumps(rec))
    for name, status, problems in verify_bundle(out).results:
        print(f"  {status:7s} {name} {problems}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="cubesep-")))
