"""Benchmark harness: seeded input generation, the timing loop, result
verification, and the CSV results format.

Timing protocol, applied identically in every mode:

* inputs are regenerated from the seed before every run, so each run sorts
  or multiplies the same values and no run sees another's output;
* compiled kernels are warmed before any timed region, so JIT compilation
  never lands in a measurement;
* the timed region spans worker creation through the final join; input
  generation and verification happen outside it;
* every run's output is checked against an independent reference before its
  time is recorded, and any mismatch aborts the whole benchmark.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from statistics import fmean
from time import perf_counter

import numpy as np

from . import kernels
from .config import BenchConfig
from .errors import InvalidConfig, IoFailure, VerificationFailure
from .rng import matmul_inputs, quicksort_input
from .slice_core import Slice
from .slice2d import Slice2D
from .workers import (
    parallel_matmul,
    parallel_quicksort,
    serialized_quicksort,
    threaded_matmul,
    threaded_quicksort,
)

logger = logging.getLogger(__name__)

CSV_HEADER = ("benchmark", "mode", "workers", "run", "seconds")


@dataclass
class RunRecord:
    """One timed run."""

    benchmark: str
    mode: str
    workers: int
    run: int
    seconds: float


def _time_quicksort(config: BenchConfig, workers: int) -> float:
    values = quicksort_input(config.seed, config.size)
    expected = np.sort(values)
    if config.mode == "serialized":
        elapsed = serialized_quicksort(config.size, config.seed, workers)
        return elapsed
    if config.mode == "slicing":
        data = Slice.from_buffer(values)
        start = perf_counter()
        result = parallel_quicksort(data, workers, spawn_cutoff=config.spawn_cutoff)
        elapsed = perf_counter() - start
        if (result.lower, result.upper) != (1, config.size):
            raise VerificationFailure(
                f"sorted slice covers [{result.lower}, {result.upper}], "
                f"expected [1, {config.size}]",
            )
        produced = result.mutable_span()
    else:
        start = perf_counter()
        threaded_quicksort(values, workers, spawn_cutoff=config.spawn_cutoff)
        elapsed = perf_counter() - start
        produced = values
    if not np.array_equal(produced, expected):
        raise VerificationFailure(
            "sort output differs from the reference ordering",
            mode=config.mode, workers=workers, size=config.size, seed=config.seed,
        )
    return elapsed


def _time_matmul(config: BenchConfig, workers: int) -> float:
    m, k, n = config.dims
    left, right = matmul_inputs(config.seed, m, k, n)
    expected = left @ right
    if config.mode == "slicing":
        left_slice = Slice2D.from_matrix(left)
        right_slice = Slice2D.from_matrix(right)
        start = perf_counter()
        product = parallel_matmul(left_slice, right_slice, workers)
        elapsed = perf_counter() - start
        if (product.first_row, product.last_row) != (1, m):
            raise VerificationFailure(
                f"product covers rows [{product.first_row}, {product.last_row}], "
                f"expected [1, {m}]",
            )
        if left_slice.readers != 0 or right_slice.readers != 0:
            raise VerificationFailure(
                "operands still frozen after the multiply",
                left_readers=left_slice.readers, right_readers=right_slice.readers,
            )
        produced = product.mutable_rows()
    else:
        start = perf_counter()
        produced = threaded_matmul(left, right, workers)
        elapsed = perf_counter() - start
    if not np.array_equal(produced, expected):
        raise VerificationFailure(
            "product differs from the reference result",
            mode=config.mode, workers=workers, dims=config.dims, seed=config.seed,
        )
    return elapsed


def run_benchmark(config: BenchConfig) -> list:
    """Execute the configured benchmark and return one verified
    :class:`RunRecord` per (worker count, run)."""
    config.validate()
    if config.mode in ("slicing", "threads"):
        kernels.warm()
    timer = _time_quicksort if config.benchmark == "quicksort" else _time_matmul
    records = []
    for workers in config.worker_counts:
        for attempt in range(config.warmup + config.runs):
            seconds = timer(config, workers)
            run = attempt - config.warmup + 1
            if run < 1:
                continue
            records.append(RunRecord(config.benchmark, config.mode, workers,
                                     run, seconds))
        logger.info("%s/%s workers=%d mean=%.6fs", config.benchmark, config.mode,
                    workers, fmean(r.seconds for r in records
                                   if r.workers == workers))
    return records


def summarize(records) -> list:
    """Mean seconds per (benchmark, mode, workers) key, first-seen order."""
    order = []
    grouped = {}
    for record in records:
        key = (record.benchmark, record.mode, record.workers)
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append(record.seconds)
    return [(key, fmean(grouped[key])) for key in order]


def write_csv(records, path) -> None:
    """Write records then per-key mean rows; see :data:`CSV_HEADER`."""
    if not records:
        raise InvalidConfig("refusing to write an empty results file")
    try:
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_HEADER)
            for record in records:
                writer.writerow([record.benchmark, record.mode, record.workers,
                                 record.run, repr(record.seconds)])
            for (benchmark, mode, workers), mean in summarize(records):
                writer.writerow([benchmark, mode, workers, "mean", repr(mean)])
    except OSError as exc:
        raise IoFailure(f"cannot write results to {path!r}: {exc}", path=str(path))


def read_csv(path):
    """Parse a results file back into (records, means).

    ``means`` maps (benchmark, mode, workers) to the stored mean seconds.
    """
    try:
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))
    except OSError as exc:
        raise IoFailure(f"cannot read results from {path!r}: {exc}", path=str(path))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise IoFailure(f"{path!r} is not a results file", path=str(path))
    records = []
    means = {}
    for row in rows[1:]:
        if len(row) != 5:
            raise IoFailure(f"malformed row in {path!r}: {row}", path=str(path))
        benchmark, mode, workers, run, seconds = row
        if run == "mean":
            means[(benchmark, mode, int(workers))] = float(seconds)
        else:
            records.append(RunRecord(benchmark, mode, int(workers), int(run),
                                     float(seconds)))
    return records, means
