#!/usr/bin/env python3
"""Clause-count experiments for the bundled constraint encodings.

Produces two CSV tables:
  totalizer_counts.csv  - counting encoding over 300 inputs, one row per
                          enforced bound 1..300 (cumulative ranges [1, k])
  pb_counts.csv         - generalized totalizer vs. binary adder vs. the
                          cardinality-expansion simulator for growing input
                          counts with seeded random weights in [1, 100] and
                          bound 300

Usage:
    python scripts/clause_count_trends.py [--out-dir results] [--quick]
"""

import argparse
import csv
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from satkit.cli import count_clauses  # noqa: E402


def totalizer_table(out_dir: Path, n: int) -> None:
    t0 = time.time()
    rows = count_clauses("totalizer", n, None, 42, (1, n))
    with open(out_dir / "totalizer_counts.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["bound", "clauses", "aux_vars"])
        w.writerows(rows)
    counts = [c for _, c, _ in rows]
    print(f"totalizer n={n}: {counts[0]} clauses at bound 1, "
          f"{counts[-1]} at bound {n} ({time.time() - t0:.1f}s)")


def pb_table(out_dir: Path, sizes, bound: int, seed: int) -> None:
    encs = ["gte", "adder", "card"]
    rows = []
    for n in sizes:
        row = {"n": n}
        for enc in encs:
            t0 = time.time()
            (_, clauses, aux), = count_clauses(enc, n, (1, 100), seed,
                                               (bound, bound))
            row[enc] = clauses
            print(f"{enc:6s} n={n:4d} bound={bound}: {clauses} clauses "
                  f"({time.time() - t0:.1f}s)")
        rows.append(row)
    with open(out_dir / "pb_counts.csv", "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=["n", *encs])
        w.writeheader()
        w.writerows(rows)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--quick", action="store_true",
                    help="smaller sizes for a fast smoke run")
    args = ap.parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.quick:
        totalizer_table(out_dir, 60)
        pb_table(out_dir, [20, 40, 60], bound=60, seed=args.seed)
    else:
        totalizer_table(out_dir, 300)
        pb_table(out_dir, [100, 200, 300, 400, 500, 600], bound=300,
                 seed=args.seed)
    print(f"tables written to {out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
