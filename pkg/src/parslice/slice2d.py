"""Row-major 2-D slices and views, sliced by contiguous row ranges.

The 2-D variants mirror the 1-D ones: a :class:`Slice2D` exclusively owns a
band of rows of a row-major matrix, ``slice_top``/``slice_bottom`` transfer
rows to a new handle by bound adjustment, ``merge`` recombines row-adjacent
bands, and :class:`View2D` grants frozen read-only access. Only whole rows
are sliced; the column range is fixed per matrix, which keeps every band
contiguous in storage.

Element (i, j) lives at buffer position ``(i - row_base) * width + (j -
first_column)``.
"""

from __future__ import annotations

import threading

import numpy as np

from .errors import BoundsViolation, NotAdjacent, NotModifiable, ReaderUnderflow, UseAfterFree
from .slice_core import Storage


class Slice2D:
    """Exclusively-held handle to rows [first_row, last_row] of a matrix."""

    __slots__ = (
        "storage", "row_base", "first_row", "last_row",
        "first_column", "last_column", "_readers", "_lock",
    )

    def __init__(self, storage, row_base, first_row, last_row, first_column, last_column):
        self.storage = storage
        self.row_base = row_base
        self.first_row = first_row
        self.last_row = last_row
        self.first_column = first_column
        self.last_column = last_column
        self._readers = 0
        self._lock = threading.Lock()

    @classmethod
    def make(cls, rows: int, cols: int, fill=0) -> "Slice2D":
        """Fresh rows x cols matrix slice over new storage, indexes 1-based."""
        if rows < 1 or cols < 1:
            raise BoundsViolation(f"matrix dimensions must be positive, got {rows}x{cols}",
                                  rows=rows, cols=cols)
        return cls(Storage([fill] * (rows * cols)), 1, 1, rows, 1, cols)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Slice2D":
        """Slice covering an existing 2-D C-contiguous ndarray (adopted, not copied)."""
        if matrix.ndim != 2:
            raise BoundsViolation(f"expected a 2-D array, got {matrix.ndim}-D", ndim=matrix.ndim)
        if matrix.shape[0] < 1 or matrix.shape[1] < 1:
            raise BoundsViolation(f"matrix dimensions must be positive, got {matrix.shape}",
                                  rows=matrix.shape[0], cols=matrix.shape[1])
        if not matrix.flags.c_contiguous:
            raise BoundsViolation("matrix must be C-contiguous")
        rows, cols = matrix.shape
        return cls(Storage(matrix.reshape(-1)), 1, 1, rows, 1, cols)

    # -- queries ---------------------------------------------------------

    @property
    def row_count(self) -> int:
        return self.last_row - self.first_row + 1

    @property
    def col_count(self) -> int:
        return self.last_column - self.first_column + 1

    @property
    def readers(self) -> int:
        return self._readers

    @property
    def is_modifiable(self) -> bool:
        return self._readers == 0

    def _position(self, i: int, j: int) -> int:
        if i < self.first_row or i > self.last_row or j < self.first_column or j > self.last_column:
            raise BoundsViolation(
                f"element ({i}, {j}) outside rows [{self.first_row}, {self.last_row}] "
                f"x columns [{self.first_column}, {self.last_column}]",
                row=i, column=j,
            )
        return (i - self.row_base) * self.col_count + (j - self.first_column)

    def item(self, i: int, j: int):
        return self.storage.buffer[self._position(i, j)]

    def is_adjacent(self, other: "Slice2D") -> bool:
        """Whether the two row ranges abut (in either order)."""
        return self.last_row + 1 == other.first_row or other.last_row + 1 == self.first_row

    # -- commands --------------------------------------------------------

    def put(self, value, i: int, j: int) -> None:
        position = self._position(i, j)
        with self._lock:
            if self._readers:
                raise NotModifiable(
                    f"slice has {self._readers} live view(s)", readers=self._readers
                )
            self.storage.buffer[position] = value

    def slice_top(self, n: int) -> "Slice2D":
        """Split off the first ``n`` rows into a new slice, shrinking this one."""
        if n < 1 or n > self.row_count:
            raise BoundsViolation(
                f"cannot slice {n} of {self.row_count} rows", size=n, count=self.row_count
            )
        if not self.is_modifiable:
            raise NotModifiable(
                f"slice has {self._readers} live view(s)", readers=self._readers
            )
        top = Slice2D(self.storage, self.row_base, self.first_row, self.first_row + n - 1,
                      self.first_column, self.last_column)
        self.first_row += n
        return top

    def slice_bottom(self, n: int) -> "Slice2D":
        """Split off the last ``n`` rows into a new slice, shrinking this one."""
        if n < 1 or n > self.row_count:
            raise BoundsViolation(
                f"cannot slice {n} of {self.row_count} rows", size=n, count=self.row_count
            )
        if not self.is_modifiable:
            raise NotModifiable(
                f"slice has {self._readers} live view(s)", readers=self._readers
            )
        bottom = Slice2D(self.storage, self.row_base, self.last_row - n + 1, self.last_row,
                         self.first_column, self.last_column)
        self.last_row -= n
        return bottom

    @classmethod
    def merge(cls, a: "Slice2D", b: "Slice2D") -> "Slice2D":
        """Combine two row-adjacent bands into a new slice, emptying both inputs.

        Requires equal column ranges. Aliases the storage when both inputs
        share it with the same row base; copies into fresh storage otherwise.
        """
        if not a.is_modifiable:
            raise NotModifiable(f"slice has {a._readers} live view(s)", readers=a._readers)
        if not b.is_modifiable:
            raise NotModifiable(f"slice has {b._readers} live view(s)", readers=b._readers)
        if (a.first_column, a.last_column) != (b.first_column, b.last_column):
            raise NotAdjacent(
                f"column ranges differ: [{a.first_column}, {a.last_column}] vs "
                f"[{b.first_column}, {b.last_column}]"
            )
        if a.row_count == 0 or b.row_count == 0:
            raise NotAdjacent("empty slices cannot be merged")
        if not a.is_adjacent(b):
            raise NotAdjacent(
                f"row ranges [{a.first_row}, {a.last_row}] and "
                f"[{b.first_row}, {b.last_row}] do not abut",
                a_bounds=(a.first_row, a.last_row), b_bounds=(b.first_row, b.last_row),
            )
        first = min(a.first_row, b.first_row)
        last = max(a.last_row, b.last_row)
        width = a.col_count
        if a.storage is b.storage and a.row_base == b.row_base:
            merged = cls(a.storage, a.row_base, first, last, a.first_column, a.last_column)
        else:
            top, bottom = (a, b) if a.first_row < b.first_row else (b, a)
            if isinstance(top.storage.buffer, np.ndarray):
                buffer = np.empty((last - first + 1) * width, dtype=top.storage.buffer.dtype)
            else:
                buffer = [None] * ((last - first + 1) * width)
            row_base = first
            for part in (top, bottom):
                dst = (part.first_row - row_base) * width
                src = (part.first_row - part.row_base) * width
                length = part.row_count * width
                buffer[dst:dst + length] = part.storage.buffer[src:src + length]
            merged = cls(Storage(buffer), row_base, first, last, a.first_column, a.last_column)
        a._empty()
        b._empty()
        return merged

    def freeze(self) -> None:
        with self._lock:
            self._readers += 1

    def melt(self) -> None:
        with self._lock:
            if self._readers == 0:
                raise ReaderUnderflow("melt on a slice with no readers")
            self._readers -= 1

    def _empty(self) -> None:
        self.first_row = 1
        self.last_row = 0

    # -- unchecked fast path ----------------------------------------------

    def mutable_rows(self) -> np.ndarray:
        """Writable (row_count, col_count) window over the live rows.

        ndarray storage only; the single checked entry point for workers that
        own the band. Refused while views exist.
        """
        if not self.is_modifiable:
            raise NotModifiable(
                f"slice has {self._readers} live view(s)", readers=self._readers
            )
        buffer = self.storage.buffer
        if not isinstance(buffer, np.ndarray):
            raise TypeError("mutable_rows requires ndarray-backed storage")
        width = self.col_count
        start = (self.first_row - self.row_base) * width
        return buffer[start:start + self.row_count * width].reshape(self.row_count, width)

    def __repr__(self):
        return (
            f"Slice2D(rows [{self.first_row}, {self.last_row}], "
            f"columns [{self.first_column}, {self.last_column}], readers={self._readers})"
        )


class View2D:
    """Read-only handle onto a 2-D slice's rows; blocks mutation while it lives."""

    __slots__ = (
        "original", "storage", "row_base", "first_row", "last_row",
        "first_column", "last_column", "freed",
    )

    def __init__(self, original: Slice2D):
        original.freeze()
        self.original = original
        self.storage = original.storage
        self.row_base = original.row_base
        self.first_row = original.first_row
        self.last_row = original.last_row
        self.first_column = original.first_column
        self.last_column = original.last_column
        self.freed = False

    @property
    def row_count(self) -> int:
        return self.last_row - self.first_row + 1

    @property
    def col_count(self) -> int:
        return self.last_column - self.first_column + 1

    def item(self, i: int, j: int):
        if self.freed:
            raise UseAfterFree("view has been freed")
        if i < self.first_row or i > self.last_row or j < self.first_column or j > self.last_column:
            raise BoundsViolation(
                f"element ({i}, {j}) outside rows [{self.first_row}, {self.last_row}] "
                f"x columns [{self.first_column}, {self.last_column}]",
                row=i, column=j,
            )
        return self.storage.buffer[(i - self.row_base) * self.col_count + (j - self.first_column)]

    def free(self) -> None:
        """Release the view: melt the original and drop buffer access."""
        original = self.original
        with original._lock:
            if self.freed:
                raise UseAfterFree("view already freed")
            if original._readers == 0:
                raise ReaderUnderflow("view/readers accounting out of balance")
            original._readers -= 1
            self.freed = True
        self.storage = None
        self.first_row = 1
        self.last_row = 0

    def readonly_rows(self) -> np.ndarray:
        """Read-only (row_count, col_count) window over the viewed rows (ndarray only)."""
        if self.freed:
            raise UseAfterFree("view has been freed")
        buffer = self.storage.buffer
        if not isinstance(buffer, np.ndarray):
            raise TypeError("readonly_rows requires ndarray-backed storage")
        width = self.col_count
        start = (self.first_row - self.row_base) * width
        rows = buffer[start:start + self.row_count * width].reshape(self.row_count, width)
        rows.flags.writeable = False
        return rows

    def __repr__(self):
        state = "freed" if self.freed else f"rows [{self.first_row}, {self.last_row}]"
        return f"View2D({state})"
