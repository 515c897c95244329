"""Deterministic seeded random numbers and benchmark input generation.

The generator is SplitMix64: tiny, well known, and bit-for-bit reproducible
across platforms and languages. Because its state after ``i`` steps is just
``seed + i * GOLDEN_GAMMA``, whole arrays can be produced with vectorized
uint64 arithmetic that matches the scalar sequence exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK64 = (1 << 64) - 1

# Matrix entries are kept small so int64 dot products stay exact: with
# entries < 2**16 and inner dimensions up to 2**20, sums stay below 2**52.
MATRIX_ENTRY_BITS = 16


@dataclass
class SplitMix64:
    """64-bit PRNG; identical seeds yield identical sequences everywhere."""

    state: int = 0

    def __post_init__(self):
        self.state &= _MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Draw from [0, bound); modulo bias is irrelevant for test traffic."""
        if bound < 1:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_uint64() % bound


def fill_uint64(seed: int, count: int) -> np.ndarray:
    """The first ``count`` outputs of SplitMix64(seed), as a uint64 array.

    Vectorized over the counter form of the generator; matches
    :meth:`SplitMix64.next_uint64` output for output.
    """
    steps = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + steps * np.uint64(GOLDEN_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def quicksort_input(seed: int, n: int) -> np.ndarray:
    """Benchmark sort input: ``n`` full-range int64 values from ``seed``."""
    return fill_uint64(seed, n).view(np.int64)


def matmul_inputs(seed: int, m: int, k: int, n: int):
    """Benchmark matrices: (m x k, k x n) int64 entries in [0, 2**16).

    One generator stream fills the left operand first, then the right, so the
    pair is a pure function of (seed, m, k, n).
    """
    raw = fill_uint64(seed, m * k + k * n) >> np.uint64(64 - MATRIX_ENTRY_BITS)
    flat = raw.astype(np.int64)
    left = flat[:m * k].reshape(m, k)
    right = flat[m * k:].reshape(k, n)
    return left, right
