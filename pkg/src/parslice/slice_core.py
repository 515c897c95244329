"""One-dimensional array slices with ownership transfer and read-only views.

A :class:`Slice` is an exclusively-held handle onto a contiguous index range
of a shared :class:`Storage` buffer. Splitting (``slice_head``/``slice_tail``)
moves part of the range onto a new handle without copying; merging recombines
adjacent handles, aliasing the buffer when the two handles line up in memory
and copying otherwise. A :class:`View` grants read-only access to a slice's
range and blocks mutation of the slice for as long as it lives, via the
slice's readers counter (``freeze``/``melt``).

Race freedom is structural: live slices never overlap, a writable range has
exactly one holder, and a range with live views rejects all writes. A Slice
handle may be transferred between threads but must have a single holder at a
time; Views may be shared freely for reading.

Indexes are 1-based by default; ``base`` maps index ``i`` to buffer position
``i - base``.
"""

from __future__ import annotations

import threading

import numpy as np

from .errors import BoundsViolation, NotAdjacent, NotModifiable, ReaderUnderflow, UseAfterFree


class Storage:
    """Contiguous element buffer shared by any number of slices and views.

    ``buffer`` is any mutable sequence (list or 1-D ndarray); ``capacity`` is
    fixed at creation.
    """

    __slots__ = ("buffer", "capacity")

    def __init__(self, buffer):
        self.buffer = buffer
        self.capacity = len(buffer)

    def __repr__(self):
        return f"Storage(capacity={self.capacity})"


class Slice:
    """Exclusively-held handle to the index range [lower, upper] of a Storage.

    The handle owns its range for both reads and writes while ``readers`` is
    zero; each live View created on it raises ``readers`` by one and blocks
    ``put`` until released.
    """

    __slots__ = ("storage", "base", "lower", "upper", "_readers", "_lock")

    def __init__(self, storage: Storage, base: int, lower: int, upper: int):
        self.storage = storage
        self.base = base
        self.lower = lower
        self.upper = upper
        self._readers = 0
        self._lock = threading.Lock()

    @classmethod
    def make(cls, n: int, fill=0) -> "Slice":
        """Fresh slice over new storage of capacity ``n``, indexes 1..n.

        Elements start out as ``fill`` (the element type's default value).
        """
        if n < 1:
            raise BoundsViolation(f"slice capacity must be positive, got {n}", size=n)
        return cls(Storage([fill] * n), 1, 1, n)

    @classmethod
    def from_buffer(cls, buffer) -> "Slice":
        """Slice covering an existing buffer (list or 1-D ndarray), indexes 1..len.

        The buffer is adopted, not copied; the caller must hand over ownership.
        """
        if len(buffer) < 1:
            raise BoundsViolation("buffer must hold at least one element", size=len(buffer))
        return cls(Storage(buffer), 1, 1, len(buffer))

    # -- queries ---------------------------------------------------------

    @property
    def count(self) -> int:
        return self.upper - self.lower + 1

    @property
    def indexes(self) -> range:
        return range(self.lower, self.upper + 1)

    @property
    def readers(self) -> int:
        return self._readers

    @property
    def is_modifiable(self) -> bool:
        return self._readers == 0

    def item(self, index: int):
        """Element at ``index``. Reads are allowed even while views exist."""
        if index < self.lower or index > self.upper:
            raise BoundsViolation(
                f"index {index} outside [{self.lower}, {self.upper}]",
                index=index, lower=self.lower, upper=self.upper,
            )
        return self.storage.buffer[index - self.base]

    def is_adjacent(self, other: "Slice") -> bool:
        """Whether the two index ranges abut (in either order)."""
        return self.upper + 1 == other.lower or other.upper + 1 == self.lower

    # -- commands --------------------------------------------------------

    def put(self, value, index: int) -> None:
        """Store ``value`` at ``index``; rejected while any view is live."""
        if index < self.lower or index > self.upper:
            raise BoundsViolation(
                f"index {index} outside [{self.lower}, {self.upper}]",
                index=index, lower=self.lower, upper=self.upper,
            )
        # Check-and-write under the counter lock so a put can never slip
        # past a concurrent freeze.
        with self._lock:
            if self._readers:
                raise NotModifiable(
                    f"slice has {self._readers} live view(s)", readers=self._readers
                )
            self.storage.buffer[index - self.base] = value

    def slice_head(self, n: int) -> "Slice":
        """Split off the first ``n`` indexes into a new slice, shrinking this one.

        The new slice aliases the same storage; no elements move.
        """
        if n < 1 or n > self.count:
            raise BoundsViolation(
                f"cannot slice {n} of {self.count} elements", size=n, count=self.count
            )
        if not self.is_modifiable:
            raise NotModifiable(
                f"slice has {self._readers} live view(s)", readers=self._readers
            )
        head = Slice(self.storage, self.base, self.lower, self.lower + n - 1)
        self.lower += n
        return head

    def slice_tail(self, n: int) -> "Slice":
        """Split off the last ``n`` indexes into a new slice, shrinking this one."""
        if n < 1 or n > self.count:
            raise BoundsViolation(
                f"cannot slice {n} of {self.count} elements", size=n, count=self.count
            )
        if not self.is_modifiable:
            raise NotModifiable(
                f"slice has {self._readers} live view(s)", readers=self._readers
            )
        tail = Slice(self.storage, self.base, self.upper - n + 1, self.upper)
        self.upper -= n
        return tail

    @classmethod
    def merge(cls, a: "Slice", b: "Slice") -> "Slice":
        """Combine two adjacent slices into a new one, emptying both inputs.

        When the inputs share storage and base the result aliases that
        storage; otherwise the elements are copied into fresh storage with
        ``base`` set to the combined lower bound. Empty slices cannot be
        merged (an empty range is adjacent to nothing).
        """
        if not a.is_modifiable:
            raise NotModifiable(f"slice has {a._readers} live view(s)", readers=a._readers)
        if not b.is_modifiable:
            raise NotModifiable(f"slice has {b._readers} live view(s)", readers=b._readers)
        if a.count == 0 or b.count == 0:
            raise NotAdjacent("empty slices cannot be merged")
        if not a.is_adjacent(b):
            raise NotAdjacent(
                f"ranges [{a.lower}, {a.upper}] and [{b.lower}, {b.upper}] do not abut",
                a_bounds=(a.lower, a.upper), b_bounds=(b.lower, b.upper),
            )
        lower = min(a.lower, b.lower)
        upper = max(a.upper, b.upper)
        if a.storage is b.storage and a.base == b.base:
            merged = cls(a.storage, a.base, lower, upper)
        else:
            lo, hi = (a, b) if a.lower < b.lower else (b, a)
            if isinstance(lo.storage.buffer, np.ndarray):
                buffer = np.empty(upper - lower + 1, dtype=lo.storage.buffer.dtype)
            else:
                buffer = [None] * (upper - lower + 1)
            base = lower
            buffer[lo.lower - base:lo.upper + 1 - base] = \
                lo.storage.buffer[lo.lower - lo.base:lo.upper + 1 - lo.base]
            buffer[hi.lower - base:hi.upper + 1 - base] = \
                hi.storage.buffer[hi.lower - hi.base:hi.upper + 1 - hi.base]
            merged = cls(Storage(buffer), base, lower, upper)
        a._empty()
        b._empty()
        return merged

    def freeze(self) -> None:
        """Raise the readers counter by one (a view was created)."""
        with self._lock:
            self._readers += 1

    def melt(self) -> None:
        """Lower the readers counter by one (a view was released)."""
        with self._lock:
            if self._readers == 0:
                raise ReaderUnderflow("melt on a slice with no readers")
            self._readers -= 1

    def _empty(self) -> None:
        # normal form of a merged-away slice: count 0 via lower=1, upper=0
        self.lower = 1
        self.upper = 0

    # -- unchecked fast path ----------------------------------------------

    def mutable_span(self) -> np.ndarray:
        """Writable zero-copy window over the live range (ndarray storage only).

        This is the unprotected fast path for workers that have taken
        exclusive ownership: bounds and the freeze gate are checked once here,
        not per element. Refused while views exist.
        """
        if not self.is_modifiable:
            raise NotModifiable(
                f"slice has {self._readers} live view(s)", readers=self._readers
            )
        buffer = self.storage.buffer
        if not isinstance(buffer, np.ndarray):
            raise TypeError("mutable_span requires ndarray-backed storage")
        return buffer[self.lower - self.base:self.upper + 1 - self.base]

    def __repr__(self):
        return (
            f"Slice([{self.lower}, {self.upper}], base={self.base}, "
            f"readers={self._readers})"
        )


class View:
    """Read-only handle onto a slice's range; blocks mutation while it lives.

    Creating a view freezes the originating slice (readers + 1); ``free``
    melts it again and makes the view permanently inert. Views may be shared
    across threads for reading, but ``free`` must be called exactly once.
    """

    __slots__ = ("original", "storage", "base", "lower", "upper", "freed")

    def __init__(self, original: Slice):
        original.freeze()
        self.original = original
        self.storage = original.storage
        self.base = original.base
        self.lower = original.lower
        self.upper = original.upper
        self.freed = False

    @property
    def count(self) -> int:
        return self.upper - self.lower + 1

    @property
    def indexes(self) -> range:
        return range(self.lower, self.upper + 1)

    def item(self, index: int):
        if self.freed:
            raise UseAfterFree("view has been freed")
        if index < self.lower or index > self.upper:
            raise BoundsViolation(
                f"index {index} outside [{self.lower}, {self.upper}]",
                index=index, lower=self.lower, upper=self.upper,
            )
        return self.storage.buffer[index - self.base]

    def free(self) -> None:
        """Release the view: melt the original and drop buffer access."""
        original = self.original
        # The freed flag flips under the slice's counter lock so a double
        # free can never decrement readers twice.
        with original._lock:
            if self.freed:
                raise UseAfterFree("view already freed")
            if original._readers == 0:
                raise ReaderUnderflow("view/readers accounting out of balance")
            original._readers -= 1
            self.freed = True
        self.storage = None
        self.lower = 1
        self.upper = 0

    def readonly_span(self) -> np.ndarray:
        """Read-only zero-copy window over the viewed range (ndarray storage only)."""
        if self.freed:
            raise UseAfterFree("view has been freed")
        buffer = self.storage.buffer
        if not isinstance(buffer, np.ndarray):
            raise TypeError("readonly_span requires ndarray-backed storage")
        span = buffer[self.lower - self.base:self.upper + 1 - self.base]
        span.flags.writeable = False
        return span

    def __repr__(self):
        state = "freed" if self.freed else f"[{self.lower}, {self.upper}]"
        return f"View({state})"
