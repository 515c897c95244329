#!/usr/bin/env python3
"""Full benchmark sweep: every benchmark/mode pair across a worker ladder,
one combined results file plus a mean table on stdout.

Desk-scale sizes by default; --paper-scale switches to the large inputs
(expect hours, and note the serialized baseline stays at 10^5 elements
because its per-element message cost makes larger sizes impractical).

Examples:
    python scripts/run_experiments.py --out results.csv
    python scripts/run_experiments.py --quick --runs 3
    python scripts/run_experiments.py --paper-scale --workers 1,2,4,8,16,32
"""

import argparse
import logging
import sys

from parslice import BenchConfig, run_benchmark, summarize, write_csv
from parslice.config import default_worker_counts

DESK = {"sort_size": 1_000_000, "serialized_size": 100_000,
        "dims": (400, 160, 400)}
QUICK = {"sort_size": 50_000, "serialized_size": 5_000,
         "dims": (64, 32, 64)}
PAPER = {"sort_size": 100_000_000, "serialized_size": 100_000,
         "dims": (2000, 800, 2000)}


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results.csv")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--runs", type=int, default=20)
    parser.add_argument("--workers", type=str, default=None,
                        help="comma-separated ladder, e.g. 1,2,4,8")
    scale = parser.add_mutually_exclusive_group()
    scale.add_argument("--quick", action="store_true",
                       help="small sizes for a fast smoke sweep")
    scale.add_argument("--paper-scale", action="store_true",
                       help="large inputs (long running)")
    parser.add_argument("--skip-serialized", action="store_true",
                        help="leave out the slow message-queue baseline")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s",
                        stream=sys.stderr)
    args = parse_args(argv)
    sizes = QUICK if args.quick else PAPER if args.paper_scale else DESK
    if args.workers:
        ladder = [int(part) for part in args.workers.split(",")]
    else:
        ladder = default_worker_counts()

    sweep = [
        ("quicksort", "slicing", {"size": sizes["sort_size"]}),
        ("quicksort", "threads", {"size": sizes["sort_size"]}),
        ("quicksort", "serialized", {"size": sizes["serialized_size"]}),
        ("matmul", "slicing", {"dims": sizes["dims"]}),
        ("matmul", "threads", {"dims": sizes["dims"]}),
    ]
    if args.skip_serialized:
        sweep = [entry for entry in sweep if entry[1] != "serialized"]

    records = []
    for benchmark, mode, extra in sweep:
        config = BenchConfig(benchmark=benchmark, mode=mode, seed=args.seed,
                             worker_counts=list(ladder), runs=args.runs,
                             out=args.out, **extra)
        records.extend(run_benchmark(config))
    write_csv(records, args.out)

    print(f"{'benchmark':<10} {'mode':<11} {'workers':>7} {'mean s':>12}")
    for (benchmark, mode, workers), mean in summarize(records):
        print(f"{benchmark:<10} {mode:<11} {workers:>7} {mean:>12.6f}")
    print(f"\nwrote {len(records)} runs to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
