"""Benchmark configuration: the dataclass, its validation rules, and the
command-line parser.

All rejection paths raise :class:`~parslice.errors.InvalidConfig` with a
message naming the offending flag, so callers can map bad input to a
distinct exit code without parsing argparse's output.
"""

from __future__ import annotations

import argparse
import logging
import os
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidConfig

logger = logging.getLogger(__name__)

MODES = ("slicing", "threads", "serialized")
BENCHMARKS = ("quicksort", "matmul")

DEFAULT_SIZE = 1_000_000
DEFAULT_DIMS = (400, 160, 400)
DEFAULT_SEED = 42
DEFAULT_RUNS = 20
DEFAULT_OUT = "results.csv"
_WORKER_LADDER = (1, 2, 4, 8, 16, 32)


def default_worker_counts() -> list[int]:
    """Doubling ladder 1..32 truncated to this machine's CPU count."""
    cpus = os.cpu_count() or 1
    counts = [w for w in _WORKER_LADDER if w <= cpus]
    if len(counts) < len(_WORKER_LADDER):
        logger.warning(
            "worker sweep truncated to %s (machine has %d CPU(s))", counts, cpus
        )
    return counts or [1]


@dataclass
class BenchConfig:
    """Everything one benchmark invocation needs, validated on construction
    via :meth:`validate`."""

    benchmark: str = "quicksort"
    mode: str = "slicing"
    size: int = DEFAULT_SIZE
    dims: tuple = DEFAULT_DIMS
    seed: int = DEFAULT_SEED
    worker_counts: list = field(default_factory=default_worker_counts)
    runs: int = DEFAULT_RUNS
    out: str = DEFAULT_OUT
    warmup: int = 0
    spawn_cutoff: int = 0

    def validate(self) -> "BenchConfig":
        if self.benchmark not in BENCHMARKS:
            raise InvalidConfig(
                f"--benchmark must be one of {BENCHMARKS}, got {self.benchmark!r}"
            )
        if self.mode not in MODES:
            raise InvalidConfig(f"--mode must be one of {MODES}, got {self.mode!r}")
        if self.benchmark == "matmul" and self.mode == "serialized":
            raise InvalidConfig(
                "--mode serialized is defined for --benchmark quicksort only"
            )
        if self.benchmark == "quicksort":
            if self.size < 1:
                raise InvalidConfig(f"--size must be positive, got {self.size}")
            if self.mode == "serialized" and self.size < 2:
                raise InvalidConfig(
                    f"--mode serialized needs --size of at least 2, got {self.size}"
                )
        else:
            dims = tuple(self.dims)
            if len(dims) != 3 or any(not isinstance(d, int) or d < 1 for d in dims):
                raise InvalidConfig(
                    f"--dims must be three positive integers MxKxN, got {self.dims!r}"
                )
            self.dims = dims
        if not self.worker_counts:
            raise InvalidConfig("--workers must list at least one count")
        bad = [w for w in self.worker_counts if not isinstance(w, int) or w < 1]
        if bad:
            raise InvalidConfig(f"--workers counts must be at least 1, got {bad}")
        if self.runs < 1:
            raise InvalidConfig(f"--runs must be at least 1, got {self.runs}")
        if self.warmup < 0:
            raise InvalidConfig(f"--warmup must be nonnegative, got {self.warmup}")
        if self.spawn_cutoff < 0:
            raise InvalidConfig(
                f"--cutoff must be nonnegative, got {self.spawn_cutoff}"
            )
        if not self.out:
            raise InvalidConfig("--out must not be empty")
        return self

    def to_dict(self) -> dict:
        return {
            "benchmark": self.benchmark,
            "mode": self.mode,
            "size": self.size,
            "dims": list(self.dims),
            "seed": self.seed,
            "worker_counts": list(self.worker_counts),
            "runs": self.runs,
            "out": self.out,
            "warmup": self.warmup,
            "spawn_cutoff": self.spawn_cutoff,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BenchConfig":
        allowed = {
            "benchmark", "mode", "size", "dims", "seed", "worker_counts",
            "runs", "out", "warmup", "spawn_cutoff",
        }
        unknown = set(data) - allowed
        if unknown:
            raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
        config = cls(**{key: data[key] for key in allowed if key in data})
        config.dims = tuple(config.dims)
        config.worker_counts = list(config.worker_counts)
        return config.validate()


class _Parser(argparse.ArgumentParser):
    # argparse exits the process on bad flags; surface them as InvalidConfig
    def error(self, message):
        raise InvalidConfig(message)


def _parse_workers(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise InvalidConfig(f"--workers must be comma-separated integers, got {text!r}")


def _parse_dims(text: str) -> tuple:
    parts = text.lower().split("x")
    try:
        dims = tuple(int(part) for part in parts)
    except ValueError:
        raise InvalidConfig(f"--dims must look like 400x160x400, got {text!r}")
    if len(dims) != 3:
        raise InvalidConfig(f"--dims must have exactly three sizes MxKxN, got {text!r}")
    return dims


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bench",
        description="Time quicksort or matrix multiplication across worker "
        "counts in slicing, raw-threads, or serialized mode.",
    )
    parser.add_argument("--benchmark", choices=BENCHMARKS, default="quicksort")
    parser.add_argument("--mode", choices=MODES, default="slicing")
    parser.add_argument("--size", type=int, default=None,
                        help="element count for quicksort (default 1000000)")
    parser.add_argument("--dims", type=str, default=None,
                        help="matrix shape MxKxN for matmul (default 400x160x400)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--workers", type=str, default=None,
                        help="comma-separated worker counts, e.g. 1,2,4 "
                        "(default: doubling ladder up to the CPU count)")
    parser.add_argument("--runs", type=int, default=DEFAULT_RUNS)
    parser.add_argument("--out", type=str, default=DEFAULT_OUT)
    parser.add_argument("--warmup", type=int, default=0,
                        help="untimed runs discarded before the recorded ones")
    parser.add_argument("--cutoff", type=int, default=0,
                        help="partitions smaller than this do not spawn workers "
                        "(0 disables the cutoff)")
    return parser


def parse_config(argv=None) -> BenchConfig:
    """Parse command-line arguments into a validated :class:`BenchConfig`."""
    namespace = build_parser().parse_args(argv)
    if namespace.benchmark == "quicksort" and namespace.dims is not None:
        raise InvalidConfig("--dims applies to --benchmark matmul only")
    if namespace.benchmark == "matmul" and namespace.size is not None:
        raise InvalidConfig("--size applies to --benchmark quicksort only")
    config = BenchConfig(
        benchmark=namespace.benchmark,
        mode=namespace.mode,
        size=namespace.size if namespace.size is not None else DEFAULT_SIZE,
        dims=_parse_dims(namespace.dims) if namespace.dims is not None else DEFAULT_DIMS,
        seed=namespace.seed,
        worker_counts=(_parse_workers(namespace.workers)
                       if namespace.workers is not None else default_worker_counts()),
        runs=namespace.runs,
        out=namespace.out,
        warmup=namespace.warmup,
        spawn_cutoff=namespace.cutoff,
    )
    return config.validate()
