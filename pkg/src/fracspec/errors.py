"""Exception types shared across the package."""


class FracSpecError(Exception):
    """Base class for all package errors."""


class ParameterError(FracSpecError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(FracSpecError, ValueError):
    """A point or function value lies outside the admissible domain."""


class NumericalError(FracSpecError, ArithmeticError):
    """A numerical procedure failed (no convergence, lost definiteness, ...)."""
