"""Compiled hot loops for the benchmark workers.

The loops release the GIL, so worker threads running them scale across
cores while all coordination (slicing, spawning, joining) stays in plain
Python. Compilation results are cached on disk; ``warm``
must run once before timing so compilation never lands inside a measured
region.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def partition(a, lo, hi):
    """In-place partition of a[lo..hi] around the last element; returns the
    pivot's final position. Scans left to right, swapping smaller elements
    forward."""
    pivot = a[hi]
    j = lo
    for i in range(lo, hi):
        if a[i] < pivot:
            t = a[i]
            a[i] = a[j]
            a[j] = t
            j += 1
    t = a[hi]
    a[hi] = a[j]
    a[j] = t
    return j


@njit(nogil=True, cache=True)
def quicksort_range(a, lo, hi):
    """Sequential in-place quicksort of a[lo..hi]: same last-element pivot
    rule as ``partition``, iterative with the larger side deferred so the
    pending stack stays logarithmic."""
    stack = np.empty((128, 2), dtype=np.int64)
    top = 0
    while True:
        while lo < hi:
            p = partition(a, lo, hi)
            if p - lo < hi - p:
                if p + 1 < hi:
                    stack[top, 0] = p + 1
                    stack[top, 1] = hi
                    top += 1
                hi = p - 1
            else:
                if lo < p - 1:
                    stack[top, 0] = lo
                    stack[top, 1] = p - 1
                    top += 1
                lo = p + 1
        if top == 0:
            return
        top -= 1
        lo = stack[top, 0]
        hi = stack[top, 1]


@njit(nogil=True, cache=True)
def matmul_band(left, right, out, row_offset):
    """Fill ``out`` (a band of the product) with left[row_offset+i, :] . right[:, j].

    ``left`` is (m, k), ``right`` is (k, n), ``out`` is (band_rows, n); the
    accumulation runs over k in ascending order."""
    band_rows, n = out.shape
    k = left.shape[1]
    for i in range(band_rows):
        for j in range(n):
            acc = 0
            for kk in range(k):
                acc += left[row_offset + i, kk] * right[kk, j]
            out[i, j] = acc


def warm(dtype=np.int64) -> None:
    """Compile (or load from cache) every kernel for ``dtype`` buffers.

    Covers both the writable and the read-only operand specializations of
    ``matmul_band``, since frozen views hand the kernel non-writeable arrays
    and each flavor compiles separately.
    """
    a = np.array([3, 1, 2], dtype=dtype)
    partition(a, 0, 2)
    quicksort_range(a, 0, 2)
    left = np.ones((2, 2), dtype=dtype)
    right = np.ones((2, 2), dtype=dtype)
    out = np.zeros((1, 2), dtype=dtype)
    matmul_band(left, right, out, 1)
    frozen_left = np.ones((2, 2), dtype=dtype)
    frozen_left.flags.writeable = False
    frozen_right = np.ones((2, 2), dtype=dtype)
    frozen_right.flags.writeable = False
    matmul_band(frozen_left, frozen_right, out, 1)
