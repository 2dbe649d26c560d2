"""Exception hierarchy shared by every module."""

from __future__ import annotations

import os


class KnitError(Exception):
    """Base class for all errors raised by this package."""


class MalformedTableError(KnitError, ValueError):
    """A table is ragged, non-square, or has out-of-range entries."""


class InvalidOrderError(KnitError, ValueError):
    pass


class NotAGroupError(KnitError, ValueError):
    """A well-formed table fails one of the group axioms."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"not a group: {report.summary()}")


class NotAMatchedPairError(KnitError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"not a matched pair: {report.summary()}")


class PreconditionError(KnitError, ValueError):
    """An operation was called on inputs outside its domain."""


class InvariantError(KnitError, AssertionError):
    """A computed object violates a property that holds by theorem.

    Seeing this means a bug in the package, not bad input.
    """


class SearchTooLargeError(KnitError):
    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(
            f"{what}: search size {size} exceeds cap {cap} "
            f"(pass a larger cap or set KNIT_MAX_SEARCH)"
        )


ENV_CAP = "KNIT_MAX_SEARCH"


def resolve_cap(cap: int | None, default: int) -> int:
    """Explicit cap wins, then the KNIT_MAX_SEARCH environment variable, then `default`."""
    if cap is None:
        env = os.environ.get(ENV_CAP)
        cap = int(env) if env else default
    if cap <= 0:
        raise PreconditionError(f"search cap must be positive, got {cap}")
    return cap
