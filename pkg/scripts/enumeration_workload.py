#!/usr/bin/env python3
"""Enumerate up to 1000 solutions of a generated instance and time it.

The instance is a conjunction of disjoint binary clauses (x1 | x2), (x3 | x4),
... so the model count is 3^pairs; with the default 8 pairs that is 6561,
comfortably above the 1000-solution cut-off.

Usage:
    python scripts/enumeration_workload.py [--pairs 8] [--limit 1000]
"""

import argparse
import sys
import tempfile
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from satkit.cli import enumerate_models  # noqa: E402
from satkit.formats import dimacs  # noqa: E402
from satkit.solvers import ReferenceSolver  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=8)
    ap.add_argument("--limit", type=int, default=1000)
    args = ap.parse_args()

    lines = [f"p cnf {2 * args.pairs} {args.pairs}"]
    for i in range(args.pairs):
        lines.append(f"{2 * i + 1} {2 * i + 2} 0")
    text = "\n".join(lines) + "\n"
    inst = dimacs.parse_cnf(text)

    t0 = time.time()
    models = []
    exhaustive = False
    for item in enumerate_models(inst, ReferenceSolver(), args.limit):
        if isinstance(item, tuple):
            exhaustive = item[1]
            break
        models.append(tuple(item))
    elapsed = time.time() - t0
    assert len(set(models)) == len(models), "duplicate model"
    print(f"{len(models)} models in {elapsed:.2f}s "
          f"({'exhaustive' if exhaustive else 'limit reached'}; "
          f"{len(models) / elapsed:.0f} models/s)")
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as f:
        f.write(text)
        print(f"instance kept at {f.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
