"""Closed error taxonomy shared by the slicing library, workers, and harness.

Every failure raised by this package is one of the exception classes below,
so callers (and property tests) can match on the exact kind. Instances carry
the offending indexes/bounds as attributes for diagnostics.
"""


class ParsliceError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details
        for key, value in details.items():
            setattr(self, key, value)


class BoundsViolation(ParsliceError):
    """An index or size argument falls outside the legal range."""


class NotModifiable(ParsliceError):
    """Mutation attempted while one or more views hold the slice frozen."""


class NotAdjacent(ParsliceError):
    """Merge attempted on slices whose index ranges do not abut."""


class ReaderUnderflow(ParsliceError):
    """More melts than freezes: a view was released twice or melt was misused."""


class UseAfterFree(ParsliceError):
    """Operation on a view that has already been freed."""


class DimensionMismatch(ParsliceError):
    """Matrix operand shapes are incompatible."""


class VerificationFailure(ParsliceError):
    """A benchmark result disagrees with its reference oracle."""


class InvalidConfig(ParsliceError):
    """Benchmark configuration is malformed or inconsistent."""


class IoFailure(ParsliceError):
    """Reading or writing a results file failed."""
