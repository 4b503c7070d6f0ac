"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CubicError(Exception):
    """Base class for all errors raised by cubicmatch."""


class InputError(CubicError):
    """The caller supplied something that is not a valid input."""


class NotCubic(InputError):
    pass


class NotSimple(InputError):
    pass


class Disconnected(InputError):
    pass


class MalformedGraph6(InputError):
    pass


class BadParams(InputError):
    pass


class TooLarge(InputError):
    pass


class NotHamiltonian(InputError):
    pass


class NotPerfect(InputError):
    pass


class NotSubset(InputError):
    pass


class NotBalanced(InputError):
    pass


class OddCycleInTwoFactor(InputError):
    pass


class ResourceCap(CubicError):
    """An exhaustive search would exceed its configured budget.

    Never confuse this with a negative answer: the search was not completed.
    """

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap {cap}")
        self.what = what
        self.cap = cap


class NoFeasibleMatching(CubicError):
    pass


class BoundViolated(CubicError):
    """A bound that should hold for every graph failed on a concrete input."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


class InvariantViolation(CubicError):
    pass


class ConstructionError(CubicError):
    """A step of the traceable-graph construction failed its postcondition.

    ``trace`` carries enough state to replay the failing step.
    """

    def __init__(self, step: str, message: str, trace: dict | None = None):
        super().__init__(f"[{step}] {message}")
        self.step = step
        self.trace = trace or {}
