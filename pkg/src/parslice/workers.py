"""Parallel quicksort and matrix multiplication over slices, their
raw-threads twins, the serialized message-queue baseline, and the sequential
reference oracles.

Three execution modes share the same algorithms:

* slicing: disjoint mutable slices are handed to worker threads;
  operand matrices are shared through frozen read-only views.
* threads: identical computation on bare arrays and index bounds, with no
  synchronization beyond the final joins.
* serialized: every element access is a synchronous get/swap message
  round-trip through a single owner thread, reproducing the "parallel
  slowdown" of models that serialize all access to shared data.

Heavy loops run in compiled kernels (see :mod:`parslice.kernels`), so the
slicing and threads modes need ndarray-backed storage to scale;
list-backed slices fall back to a sequential pure-Python path.
"""

from __future__ import annotations

import threading
from queue import SimpleQueue
from time import perf_counter

import numpy as np

from . import kernels
from .errors import BoundsViolation, DimensionMismatch, InvalidConfig, NotModifiable, VerificationFailure
from .rng import quicksort_input
from .slice_core import Slice, Storage
from .slice2d import Slice2D, View2D

# Below this size a sub-range is sorted by one kernel call instead of
# split further; bounds the Python-level bookkeeping per sort.
DEFAULT_LEAF_SIZE = 16384


class WorkerBudget:
    """Caps the number of live workers; the calling thread counts as one."""

    __slots__ = ("_limit", "_live", "_lock")

    def __init__(self, limit: int):
        if limit < 1:
            raise InvalidConfig(f"worker limit must be at least 1, got {limit}")
        self._limit = limit
        self._live = 1
        self._lock = threading.Lock()

    def try_acquire(self) -> bool:
        with self._lock:
            if self._live < self._limit:
                self._live += 1
                return True
            return False

    def release(self) -> None:
        with self._lock:
            self._live -= 1

    @property
    def live(self) -> int:
        return self._live


# ---------------------------------------------------------------------------
# quicksort on slices


class SortWorker:
    """Owns one sub-slice of the data for the duration of its sort."""

    __slots__ = ("data", "error")

    def __init__(self, data: Slice):
        self.data = data
        self.error = None

    @classmethod
    def make(cls, parent: Slice, n: int) -> "SortWorker":
        """Take the first ``n`` (n > 0) or last ``-n`` (n < 0) indexes of ``parent``."""
        if n == 0:
            raise BoundsViolation("worker share must be nonzero", size=0)
        if n > 0:
            return cls(parent.slice_head(n))
        return cls(parent.slice_tail(-n))

    def run(self, budget: WorkerBudget, spawn_cutoff: int, leaf_size: int) -> None:
        self.data = _sort_node(self.data, budget, spawn_cutoff, leaf_size)


def _spawned_sort(worker: SortWorker, budget: WorkerBudget, spawn_cutoff: int, leaf_size: int):
    try:
        worker.run(budget, spawn_cutoff, leaf_size)
    except BaseException as exc:
        worker.error = exc
    finally:
        budget.release()


def _python_sort(s: Slice) -> None:
    # sequential fallback for list-backed storage; same pivot rule
    stack = [(s.lower, s.upper)]
    while stack:
        lo, hi = stack.pop()
        while lo < hi:
            pivot = s.item(hi)
            j = lo
            for i in range(lo, hi):
                left = s.item(i)
                if left < pivot:
                    s.put(s.item(j), i)
                    s.put(left, j)
                    j += 1
            moved = s.item(j)
            s.put(s.item(hi), j)
            s.put(moved, hi)
            if j + 1 < hi:
                stack.append((j + 1, hi))
            hi = j - 1


def _sort_node(s: Slice, budget: WorkerBudget, spawn_cutoff: int, leaf_size: int) -> Slice:
    """Sort ``s`` in place; returns the slice owning its full range afterwards.

    Partitions around the last element, hands the right side to a fresh
    worker thread while the budget allows, sorts the left side itself, and
    merges both sides back around the pivot cell. Sub-ranges at or below
    ``leaf_size`` are sorted by a single kernel call.
    """
    if s.count <= 1:
        return s
    if not isinstance(s.storage.buffer, np.ndarray):
        _python_sort(s)
        return s
    if s.count <= leaf_size:
        span = s.mutable_span()
        kernels.quicksort_range(span, 0, len(span) - 1)
        return s
    span = s.mutable_span()
    split = s.lower + kernels.partition(span, 0, s.count - 1)
    right_n = s.upper - split
    left_n = split - s.lower
    right_worker = SortWorker.make(s, split - s.upper) if right_n > 0 else None
    left_worker = SortWorker.make(s, left_n) if left_n > 0 else None
    # s now owns just the pivot cell [split, split]
    thread = None
    if right_worker is not None and (spawn_cutoff == 0 or right_n >= spawn_cutoff) \
            and budget.try_acquire():
        thread = threading.Thread(
            target=_spawned_sort, args=(right_worker, budget, spawn_cutoff, leaf_size)
        )
        thread.start()
    if left_worker is not None:
        left_worker.run(budget, spawn_cutoff, leaf_size)
    if right_worker is not None and thread is None:
        right_worker.run(budget, spawn_cutoff, leaf_size)
    if thread is not None:
        thread.join()
        if right_worker.error is not None:
            raise right_worker.error
    out = s
    if left_worker is not None:
        out = Slice.merge(left_worker.data, out)
    if right_worker is not None:
        out = Slice.merge(out, right_worker.data)
    return out


def parallel_quicksort(data: Slice, max_workers: int, spawn_cutoff: int = 0,
                       leaf_size: int = DEFAULT_LEAF_SIZE) -> Slice:
    """Sort a slice in place using at most ``max_workers`` concurrent threads.

    Returns the slice owning the data's full index range: the same handle if
    no split happened, otherwise the slice reassembled by merging every
    sub-worker's share back. ``spawn_cutoff`` > 0 keeps partitions smaller
    than that many elements from spawning a worker.
    """
    if not data.is_modifiable:
        raise NotModifiable(f"slice has {data.readers} live view(s)", readers=data.readers)
    budget = WorkerBudget(max_workers)
    if spawn_cutoff < 0:
        raise InvalidConfig(f"spawn cutoff must be nonnegative, got {spawn_cutoff}")
    return _sort_node(data, budget, spawn_cutoff, leaf_size)


# ---------------------------------------------------------------------------
# quicksort on bare arrays (threads baseline)


def _sort_span(a: np.ndarray, lo: int, hi: int, budget: WorkerBudget,
               spawn_cutoff: int, leaf_size: int) -> None:
    if hi - lo + 1 <= leaf_size:
        if lo < hi:
            kernels.quicksort_range(a, lo, hi)
        return
    split = kernels.partition(a, lo, hi)
    right_n = hi - split
    thread = None
    box: list = []
    if right_n > 0 and (spawn_cutoff == 0 or right_n >= spawn_cutoff) and budget.try_acquire():
        thread = threading.Thread(
            target=_spawned_span,
            args=(a, split + 1, hi, budget, spawn_cutoff, leaf_size, box),
        )
        thread.start()
    if lo < split:
        _sort_span(a, lo, split - 1, budget, spawn_cutoff, leaf_size)
    if thread is None and split < hi:
        _sort_span(a, split + 1, hi, budget, spawn_cutoff, leaf_size)
    if thread is not None:
        thread.join()
        if box:
            raise box[0]


def _spawned_span(a, lo, hi, budget, spawn_cutoff, leaf_size, box):
    try:
        _sort_span(a, lo, hi, budget, spawn_cutoff, leaf_size)
    except BaseException as exc:
        box.append(exc)
    finally:
        budget.release()


def threaded_quicksort(values: np.ndarray, max_workers: int, spawn_cutoff: int = 0,
                       leaf_size: int = DEFAULT_LEAF_SIZE) -> None:
    """Raw-threads twin of :func:`parallel_quicksort`: same recursion and
    kernels on a bare array, no slices, no synchronization except joins."""
    budget = WorkerBudget(max_workers)
    if spawn_cutoff < 0:
        raise InvalidConfig(f"spawn cutoff must be nonnegative, got {spawn_cutoff}")
    if len(values) > 1:
        _sort_span(values, 0, len(values) - 1, budget, spawn_cutoff, leaf_size)


# ---------------------------------------------------------------------------
# matrix multiplication


def band_sizes(rows: int, workers: int) -> list[int]:
    """Near-equal contiguous band heights, remainder rows on the first bands."""
    if workers < 1:
        raise InvalidConfig(f"worker count must be at least 1, got {workers}")
    share, extra = divmod(rows, workers)
    sizes = [share + 1] * extra + [share] * (workers - extra)
    return [size for size in sizes if size > 0]


class MatMulWorker:
    """Computes one band of product rows from frozen views of the operands."""

    __slots__ = ("left", "right", "product", "error")

    def __init__(self, left: View2D, right: View2D, product: Slice2D):
        self.left = left
        self.right = right
        self.product = product
        self.error = None

    @classmethod
    def make(cls, left: Slice2D, right: Slice2D, product: Slice2D, n: int) -> "MatMulWorker":
        """Freeze the operands and take the next ``n`` product rows as this
        worker's output band."""
        if left.col_count != right.row_count:
            raise DimensionMismatch(
                f"inner dimensions differ: left is {left.row_count}x{left.col_count}, "
                f"right is {right.row_count}x{right.col_count}",
                left_cols=left.col_count, right_rows=right.row_count,
            )
        if right.col_count != product.col_count:
            raise DimensionMismatch(
                f"product width {product.col_count} does not match right operand "
                f"width {right.col_count}",
                product_cols=product.col_count, right_cols=right.col_count,
            )
        if n < 1 or n > product.row_count:
            raise BoundsViolation(
                f"cannot slice {n} of {product.row_count} rows", size=n,
                count=product.row_count,
            )
        band_first = product.first_row
        band_last = band_first + n - 1
        if band_first < left.first_row or band_last > left.last_row:
            raise DimensionMismatch(
                f"product rows [{band_first}, {band_last}] not covered by left "
                f"operand rows [{left.first_row}, {left.last_row}]",
            )
        band = product.slice_top(n)
        return cls(View2D(left), View2D(right), band)

    def multiply(self) -> None:
        """Fill the band: product[i, j] accumulates left[i, k] * right[k, j]
        over k; releases both operand views afterwards."""
        row_offset = self.product.first_row - self.left.first_row
        if isinstance(self.product.storage.buffer, np.ndarray):
            out = self.product.mutable_rows()
            kernels.matmul_band(self.left.readonly_rows(), self.right.readonly_rows(),
                                out, row_offset)
        else:
            self._python_multiply()
        self.left.free()
        self.right.free()

    def _python_multiply(self) -> None:
        left, right, product = self.left, self.right, self.product
        inner = range(left.first_column, left.last_column + 1)
        for i in range(product.first_row, product.last_row + 1):
            for j in range(product.first_column, product.last_column + 1):
                acc = product.item(i, j)
                for k in inner:
                    acc += left.item(i, k) * right.item(k - left.first_column + right.first_row, j)
                product.put(acc, i, j)


def _spawned_multiply(worker: MatMulWorker):
    try:
        worker.multiply()
    except BaseException as exc:
        worker.error = exc


def parallel_matmul(left: Slice2D, right: Slice2D, workers: int) -> Slice2D:
    """Multiply two matrix slices with ``workers`` threads, one per row band.

    The product's rows are split into near-equal contiguous bands, each
    worker freezes both operands and fills its band, and the bands are merged
    back into the returned slice. Both operands are modifiable again on
    return.
    """
    if workers < 1:
        raise InvalidConfig(f"worker count must be at least 1, got {workers}")
    if left.col_count != right.row_count:
        raise DimensionMismatch(
            f"inner dimensions differ: left is {left.row_count}x{left.col_count}, "
            f"right is {right.row_count}x{right.col_count}",
            left_cols=left.col_count, right_rows=right.row_count,
        )
    rows, width = left.row_count, right.col_count
    left_buffer = left.storage.buffer
    if isinstance(left_buffer, np.ndarray) and isinstance(right.storage.buffer, np.ndarray):
        dtype = np.result_type(left_buffer, right.storage.buffer)
        buffer = np.zeros(rows * width, dtype=dtype)
    else:
        buffer = [0] * (rows * width)
    # product rows are numbered like the left operand's rows and its columns
    # like the right operand's columns, so workers index all three alike
    product = Slice2D(Storage(buffer), left.first_row, left.first_row,
                      left.first_row + rows - 1, right.first_column, right.last_column)

    band_workers = [
        MatMulWorker.make(left, right, product, size)
        for size in band_sizes(rows, workers)
    ]
    threads = [
        threading.Thread(target=_spawned_multiply, args=(worker,))
        for worker in band_workers
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    for worker in band_workers:
        if worker.error is not None:
            raise worker.error
    merged = band_workers[0].product
    for worker in band_workers[1:]:
        merged = Slice2D.merge(merged, worker.product)
    return merged


def threaded_matmul(left: np.ndarray, right: np.ndarray, workers: int) -> np.ndarray:
    """Raw-threads twin of :func:`parallel_matmul` on bare arrays."""
    if workers < 1:
        raise InvalidConfig(f"worker count must be at least 1, got {workers}")
    if left.shape[1] != right.shape[0]:
        raise DimensionMismatch(
            f"inner dimensions differ: left is {left.shape[0]}x{left.shape[1]}, "
            f"right is {right.shape[0]}x{right.shape[1]}",
            left_cols=left.shape[1], right_rows=right.shape[0],
        )
    rows, width = left.shape[0], right.shape[1]
    out = np.zeros((rows, width), dtype=np.result_type(left, right))
    threads = []
    row = 0
    for size in band_sizes(rows, workers):
        threads.append(threading.Thread(
            target=kernels.matmul_band, args=(left, right, out[row:row + size], row)
        ))
        row += size
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    return out


# ---------------------------------------------------------------------------
# serialized baseline


_GET, _SWAP = 0, 1


class ArrayServer:
    """Single owner thread serving get/swap requests over a FIFO queue.

    Stand-in for a request-queue concurrency model: the server thread is the
    only toucher of the array, every element access by any client costs one
    synchronous message round-trip, and requests are handled one at a time.
    """

    def __init__(self, values):
        self._data = list(values)
        self._requests: SimpleQueue = SimpleQueue()
        self._thread = None

    def start(self) -> None:
        self._thread = threading.Thread(target=self._serve)
        self._thread.start()

    def stop(self) -> None:
        self._requests.put(None)
        self._thread.join()
        self._thread = None

    def connect(self) -> "ArrayClient":
        return ArrayClient(self._requests)

    def snapshot(self) -> list:
        """Copy of the owned array; only safe once the server is stopped."""
        if self._thread is not None:
            raise InvalidConfig("snapshot requires a stopped server")
        return list(self._data)

    def _serve(self) -> None:
        data = self._data
        requests = self._requests
        while True:
            message = requests.get()
            if message is None:
                return
            op, i, j, reply = message
            if op == _GET:
                reply.put(data[i])
            else:
                data[i], data[j] = data[j], data[i]
                reply.put(None)


class ArrayClient:
    """Per-thread handle performing synchronous get/swap round-trips."""

    __slots__ = ("_requests", "_reply")

    def __init__(self, requests: SimpleQueue):
        self._requests = requests
        self._reply: SimpleQueue = SimpleQueue()

    def get(self, index: int):
        self._requests.put((_GET, index, 0, self._reply))
        return self._reply.get()

    def swap(self, i: int, j: int) -> None:
        self._requests.put((_SWAP, i, j, self._reply))
        self._reply.get()


def _serialized_sort_range(server: ArrayServer, lo: int, hi: int, budget: WorkerBudget,
                           pending: list, lock: threading.Lock, errors: list) -> None:
    client = server.connect()
    stack = [(lo, hi)]
    while stack:
        lo, hi = stack.pop()
        while lo < hi:
            pivot = client.get(hi)
            j = lo
            for i in range(lo, hi):
                if client.get(i) < pivot:
                    client.swap(i, j)
                    j += 1
            client.swap(hi, j)
            if j + 1 < hi and budget.try_acquire():
                thread = threading.Thread(
                    target=_serialized_task,
                    args=(server, j + 1, hi, budget, pending, lock, errors),
                )
                with lock:
                    pending.append(thread)
                thread.start()
            elif j + 1 < hi:
                stack.append((j + 1, hi))
            hi = j - 1


def _serialized_task(server, lo, hi, budget, pending, lock, errors):
    try:
        _serialized_sort_range(server, lo, hi, budget, pending, lock, errors)
    except BaseException as exc:
        errors.append(exc)
    finally:
        budget.release()


def serialized_quicksort(n: int, seed: int, workers: int) -> float:
    """Sort ``n`` seeded values where every element access is a message
    round-trip through one :class:`ArrayServer`; returns the wall-clock
    seconds of the sort itself (workers created through joined).

    The input matches the other modes' input for the same seed. The sorted
    result is verified before returning.
    """
    if n < 2:
        raise InvalidConfig(f"serialized sort needs at least 2 elements, got {n}")
    if workers < 1:
        raise InvalidConfig(f"worker count must be at least 1, got {workers}")
    values = quicksort_input(seed, n).tolist()
    server = ArrayServer(values)
    server.start()
    budget = WorkerBudget(workers)
    pending: list = []
    lock = threading.Lock()
    errors: list = []
    start = perf_counter()
    _serialized_sort_range(server, 0, n - 1, budget, pending, lock, errors)
    while True:
        with lock:
            thread = pending.pop() if pending else None
        if thread is None:
            break
        thread.join()
    elapsed = perf_counter() - start
    server.stop()
    if errors:
        raise errors[0]
    result = server.snapshot()
    if result != sorted(values):
        raise VerificationFailure("serialized sort produced a wrong ordering",
                                  n=n, seed=seed, workers=workers)
    return elapsed


# ---------------------------------------------------------------------------
# sequential oracles


def seq_sort_oracle(values) -> list:
    """Reference result for every sort in this package: a plain sorted copy."""
    return sorted(values)


def seq_matmul_oracle(left, right) -> list:
    """Reference product by the textbook triple loop over exact Python ints.

    Accepts nested sequences or 2-D arrays; returns a list of row lists.
    """
    rows = len(left)
    inner = len(right)
    if any(len(row) != inner for row in left):
        raise DimensionMismatch(
            f"left operand rows must have {inner} entries", inner=inner
        )
    width = len(right[0])
    if any(len(row) != width for row in right):
        raise DimensionMismatch(
            f"right operand rows must have {width} entries", width=width
        )
    out = []
    for i in range(rows):
        row = []
        for j in range(width):
            acc = 0
            for k in range(inner):
                acc += int(left[i][k]) * int(right[k][j])
            row.append(acc)
        out.append(row)
    return out
