"""Data-race-free array slicing for shared-memory parallelism.

A slice is an exclusively-held handle to a contiguous index range of a
shared buffer. Splitting a slice transfers ownership of part of its range
without copying; merging adjacent slices recombines them. Freezing a slice
produces read-only views that block every writer until the last view is
freed. Worker threads holding disjoint slices (or read-only views) can
therefore share one array without locks on the data itself.

The package ships two benchmark workloads built on this model, quicksort
and matrix multiplication, each runnable with slices, with bare threads, or
(for quicksort) against a serialized message-queue baseline.
"""

from .config import BenchConfig, parse_config
from .errors import (
    BoundsViolation,
    DimensionMismatch,
    InvalidConfig,
    IoFailure,
    NotAdjacent,
    NotModifiable,
    ParsliceError,
    ReaderUnderflow,
    UseAfterFree,
    VerificationFailure,
)
from .harness import RunRecord, read_csv, run_benchmark, summarize, write_csv
from .rng import SplitMix64, matmul_inputs, quicksort_input
from .slice2d import Slice2D, View2D
from .slice_core import Slice, Storage, View
from .workers import (
    ArrayClient,
    ArrayServer,
    MatMulWorker,
    SortWorker,
    WorkerBudget,
    band_sizes,
    parallel_matmul,
    parallel_quicksort,
    seq_matmul_oracle,
    seq_sort_oracle,
    serialized_quicksort,
    threaded_matmul,
    threaded_quicksort,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayClient",
    "ArrayServer",
    "BenchConfig",
    "BoundsViolation",
    "DimensionMismatch",
    "InvalidConfig",
    "IoFailure",
    "MatMulWorker",
    "NotAdjacent",
    "NotModifiable",
    "ParsliceError",
    "ReaderUnderflow",
    "RunRecord",
    "Slice",
    "Slice2D",
    "SortWorker",
    "SplitMix64",
    "Storage",
    "UseAfterFree",
    "VerificationFailure",
    "View",
    "View2D",
    "WorkerBudget",
    "band_sizes",
    "matmul_inputs",
    "parallel_matmul",
    "parallel_quicksort",
    "parse_config",
    "quicksort_input",
    "read_csv",
    "run_benchmark",
    "seq_matmul_oracle",
    "seq_sort_oracle",
    "serialized_quicksort",
    "summarize",
    "threaded_matmul",
    "threaded_quicksort",
    "write_csv",
]
