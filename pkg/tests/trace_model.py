"""Randomized-trace engine checking slice behavior against a flat-array model.

The model mirrors one root slice's storage as a plain Python list indexed by
the original 1-based indexes. A trace applies random operations (splits,
merges, puts, reads, view churn, and deliberate precondition violations) to
the live slices and verifies after every step:

* PARTITION: live non-empty slices cover each original index exactly once;
* CONTENT PRESERVATION: item(i) through the owning slice equals the model;
* READERS BALANCE: each slice's readers equals its live-view count, and
  is_modifiable holds exactly when that count is zero;
* EMPTY NORMAL FORM: every emptied slice reports lower=1, upper=0, count=0;
* error discipline: every injected violation raises its mapped error type.
"""

from __future__ import annotations

import random

from parslice import (
    BoundsViolation,
    NotAdjacent,
    NotModifiable,
    ReaderUnderflow,
    Slice,
    UseAfterFree,
    View,
)

OPS = (
    "split_head", "split_tail", "merge", "put", "item",
    "view_make", "view_free", "bad_put_bounds", "bad_put_frozen",
    "bad_item_bounds", "bad_merge_gap", "bad_melt", "bad_view_after_free",
    "bad_double_free", "merge_round_trip",
)


class TraceModel:
    def __init__(self, n: int, seed: int):
        self.n = n
        self.rng = random.Random(seed)
        self.root_value = lambda i: 100 + i
        self.reference = [self.root_value(i) for i in range(1, n + 1)]
        root = Slice.make(n)
        for i in range(1, n + 1):
            root.put(self.root_value(i), i)
        self.slices = [root]
        self.views = []          # (view, slice) pairs still live
        self.emptied = []        # slices merge() hollowed out
        self.freed_views = []    # views already freed once

    # -- helpers

    def _value(self, index: int) -> int:
        return self.reference[index - 1]

    def _nonempty(self):
        return [s for s in self.slices if s.count > 0]

    def _modifiable_nonempty(self):
        return [s for s in self._nonempty() if s.is_modifiable]

    def _view_count(self, s) -> int:
        return sum(1 for _, owner in self.views if owner is s)

    # -- operations

    def step(self) -> None:
        op = self.rng.choice(OPS)
        getattr(self, "_op_" + op)()
        self.check_invariants()

    def _op_split_head(self):
        candidates = [s for s in self._modifiable_nonempty() if s.count >= 1]
        if not candidates:
            return
        s = self.rng.choice(candidates)
        n = self.rng.randint(1, s.count)
        old_lower, old_upper = s.lower, s.upper
        head = s.slice_head(n)
        assert (head.lower, head.upper) == (old_lower, old_lower + n - 1)
        assert (s.lower, s.upper) == (old_lower + n, old_upper)
        assert head.storage is s.storage and head.base == s.base
        self.slices.append(head)

    def _op_split_tail(self):
        candidates = [s for s in self._modifiable_nonempty() if s.count >= 1]
        if not candidates:
            return
        s = self.rng.choice(candidates)
        n = self.rng.randint(1, s.count)
        old_lower, old_upper = s.lower, s.upper
        tail = s.slice_tail(n)
        assert (tail.lower, tail.upper) == (old_upper - n + 1, old_upper)
        assert (s.lower, s.upper) == (old_lower, old_upper - n)
        self.slices.append(tail)

    def _adjacent_pairs(self):
        live = self._modifiable_nonempty()
        pairs = []
        for a in live:
            for b in live:
                if a is not b and a.upper + 1 == b.lower:
                    pairs.append((a, b))
        return pairs

    def _op_merge(self):
        pairs = self._adjacent_pairs()
        if not pairs:
            return
        a, b = self.rng.choice(pairs)
        if self.rng.random() < 0.5:
            a, b = b, a     # either argument order is legal
        lower = min(a.lower, b.lower)
        upper = max(a.upper, b.upper)
        merged = Slice.merge(a, b)
        assert (merged.lower, merged.upper) == (lower, upper)
        for s in (a, b):
            self.slices.remove(s)
            self.emptied.append(s)
        self.slices.append(merged)

    def _op_merge_round_trip(self):
        # merge then re-split at the old boundary recovers bounds and contents
        pairs = self._adjacent_pairs()
        if not pairs:
            return
        a, b = self.rng.choice(pairs)
        left_bounds = (a.lower, a.upper)
        right_bounds = (b.lower, b.upper)
        boundary_count = a.count
        merged = Slice.merge(a, b)
        self.slices.remove(a)
        self.slices.remove(b)
        self.emptied.extend((a, b))
        again = merged.slice_head(boundary_count)
        assert (again.lower, again.upper) == left_bounds
        assert (merged.lower, merged.upper) == right_bounds
        for s in (again, merged):
            for i in range(s.lower, s.upper + 1):
                assert s.item(i) == self._value(i)
        self.slices.append(again)
        self.slices.append(merged)

    def _op_put(self):
        candidates = self._modifiable_nonempty()
        if not candidates:
            return
        s = self.rng.choice(candidates)
        index = self.rng.randint(s.lower, s.upper)
        value = self.rng.randint(0, 10_000)
        s.put(value, index)
        self.reference[index - 1] = value

    def _op_item(self):
        candidates = self._nonempty()
        if not candidates:
            return
        s = self.rng.choice(candidates)
        index = self.rng.randint(s.lower, s.upper)
        assert s.item(index) == self._value(index)

    def _op_view_make(self):
        candidates = self._nonempty()
        if not candidates:
            return
        s = self.rng.choice(candidates)
        before = s.readers
        view = View(s)
        assert s.readers == before + 1
        assert not s.is_modifiable
        assert (view.lower, view.upper) == (s.lower, s.upper)
        for i in range(view.lower, view.upper + 1):
            assert view.item(i) == self._value(i)
        self.views.append((view, s))

    def _op_view_free(self):
        if not self.views:
            return
        pair = self.rng.choice(self.views)
        view, owner = pair
        before = owner.readers
        view.free()
        assert owner.readers == before - 1
        assert view.freed and view.lower == 1 and view.upper == 0
        self.views.remove(pair)
        self.freed_views.append(view)

    # -- deliberate violations

    def _op_bad_put_bounds(self):
        candidates = self._modifiable_nonempty()
        if not candidates:
            return
        s = self.rng.choice(candidates)
        bad = s.upper + 1 if self.rng.random() < 0.5 else s.lower - 1
        try:
            s.put(0, bad)
        except BoundsViolation:
            return
        raise AssertionError(f"put at {bad} outside [{s.lower}, {s.upper}] did not raise")

    def _op_bad_put_frozen(self):
        frozen = [s for s in self._nonempty() if not s.is_modifiable]
        if not frozen:
            return
        s = self.rng.choice(frozen)
        index = self.rng.randint(s.lower, s.upper)
        before = self._value(index)
        try:
            s.put(before + 1, index)
        except NotModifiable:
            assert s.item(index) == before
            return
        raise AssertionError("put on a frozen slice did not raise")

    def _op_bad_item_bounds(self):
        candidates = self._nonempty()
        if not candidates:
            return
        s = self.rng.choice(candidates)
        try:
            s.item(s.lower - 1)
        except BoundsViolation:
            return
        raise AssertionError("out-of-range item did not raise")

    def _op_bad_merge_gap(self):
        live = self._modifiable_nonempty()
        gapped = [(a, b) for a in live for b in live
                  if a is not b and not a.is_adjacent(b)]
        if not gapped:
            return
        a, b = self.rng.choice(gapped)
        try:
            Slice.merge(a, b)
        except NotAdjacent:
            return
        raise AssertionError(f"merge of [{a.lower},{a.upper}] and [{b.lower},{b.upper}] did not raise")

    def _op_bad_melt(self):
        idle = [s for s in self.slices if s.readers == 0]
        if not idle:
            return
        s = self.rng.choice(idle)
        try:
            s.melt()
        except ReaderUnderflow:
            return
        raise AssertionError("melt at readers=0 did not raise")

    def _op_bad_view_after_free(self):
        if not self.freed_views:
            return
        view = self.rng.choice(self.freed_views)
        try:
            view.item(1)
        except UseAfterFree:
            return
        raise AssertionError("item on a freed view did not raise")

    def _op_bad_double_free(self):
        if not self.freed_views:
            return
        view = self.rng.choice(self.freed_views)
        try:
            view.free()
        except UseAfterFree:
            return
        raise AssertionError("double free did not raise")

    # -- invariants

    def check_invariants(self) -> None:
        covered = []
        for s in self._nonempty():
            covered.extend(range(s.lower, s.upper + 1))
        assert len(covered) == len(set(covered)), "live slices overlap"
        assert sorted(covered) == list(range(1, self.n + 1)), \
            "live slices do not partition the original range"
        for s in self._nonempty():
            for i in range(s.lower, s.upper + 1):
                assert s.item(i) == self._value(i), f"content drift at {i}"
        for s in self.slices:
            live_views = self._view_count(s)
            assert s.readers == live_views, \
                f"readers={s.readers} but {live_views} live views"
            assert s.is_modifiable == (live_views == 0)
        for view, owner in self.views:
            assert not view.freed
        for s in self.emptied:
            assert (s.lower, s.upper, s.count) == (1, 0, 0), \
                "emptied slice not in normal form"

    def run(self, steps: int) -> None:
        for _ in range(steps):
            self.step()


def run_trace(n: int, seed: int, steps: int) -> None:
    TraceModel(n, seed).run(steps)
