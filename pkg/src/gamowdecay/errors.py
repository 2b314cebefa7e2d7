"""Exception hierarchy shared by all gamowdecay modules."""

from __future__ import annotations


class GamowError(Exception):
    """Base class for every error raised by the package."""


class DomainError(GamowError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class PoleProximityError(GamowError):
    """The S-matrix was evaluated (numerically) on top of a pole."""

    def __init__(self, message: str, j2_abs: float):
        super().__init__(message)
        self.j2_abs = j2_abs


class NumericalFailure(GamowError, ArithmeticError):
    """An iterative procedure did not reach its tolerance.

    ``best`` holds the best iterate or partial result available when the
    procedure gave up.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class RootCountError(NumericalFailure):
    """Fewer resonance poles than requested were found in the search region."""

    def __init__(self, message: str, found: int, requested: int):
        super().__init__(message, best=found)
        self.found = found
        self.requested = requested


class DegenerateRootError(NumericalFailure):
    """A root of J2 is (numerically) not simple."""


class QuadratureError(NumericalFailure):
    """Adaptive quadrature exhausted its subdivision budget."""

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(message, best=value)
        self.value = value
        self.error_estimate = error_estimate


class DegenerateChannelError(GamowError, ValueError):
    """All channel weights vanish, so branching fractions are undefined."""
