"""Command-line entry point.

Exit status: 0 on success, 1 when a run fails verification, 2 on invalid
configuration, 3 when the results file cannot be written.
"""

from __future__ import annotations

import logging
import sys

from .config import parse_config
from .errors import InvalidConfig, IoFailure, VerificationFailure
from .harness import run_benchmark, summarize, write_csv


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s",
                        stream=sys.stderr)
    try:
        config = parse_config(argv)
        records = run_benchmark(config)
        write_csv(records, config.out)
    except InvalidConfig as exc:
        print(f"bench: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"bench: verification failed: {exc}", file=sys.stderr)
        return 1
    except IoFailure as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 3
    for (benchmark, mode, workers), mean in summarize(records):
        print(f"{benchmark} {mode} workers={workers} mean={mean:.6f}s")
    print(f"wrote {len(records)} runs to {config.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
