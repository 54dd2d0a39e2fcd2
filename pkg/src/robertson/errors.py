"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class RobertsonError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RobertsonError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class PreconditionError(RobertsonError, ValueError):
    """Input metadata violates an operation's stated precondition."""


class QuadratureError(RobertsonError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, error_estimate: float):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3g})")
        self.error_estimate = error_estimate


class DivergenceError(RobertsonError, ArithmeticError):
    """An improper integral does not converge."""


class DegenerateError(RobertsonError, ArithmeticError):
    """A quantity that must be nonzero vanished (f' = 0, f = 0, z f_t' = 0, ...)."""

    def __init__(self, message: str, points=()):
        super().__init__(message)
        self.points = list(points)


class GridTooCoarseError(RobertsonError):
    """Argument unwrapping along a circle is ambiguous at the current resolution."""


class NoAdmissibleMuError(RobertsonError, ValueError):
    """No Royster parameter satisfies the required constraints."""

    def __init__(self, message: str, failed: list[str]):
        super().__init__(f"{message}: failed constraints {', '.join(failed)}")
        self.failed = failed
