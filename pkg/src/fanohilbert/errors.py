"""Exception hierarchy shared by every module."""


class FanoHilbertError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FanoHilbertError, ValueError):
    """Input lies outside the domain of an operation (bad polytope, infeasible point)."""


class ValidationError(DomainError):
    """A polytope failed one of the Fano/reflexive/Delzant checks."""


class PoleError(DomainError, ZeroDivisionError):
    """Evaluation hit a vanishing denominator factor."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ConsistencyError(FanoHilbertError, RuntimeError):
    """An internal cross-check failed (pole non-cancellation, direction dependence, ...)."""
