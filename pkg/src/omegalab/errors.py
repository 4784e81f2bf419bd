"""Exception hierarchy shared by every module."""

from __future__ import annotations


class OmegaLabError(Exception):
    """Base class for all library errors."""


class DomainError(OmegaLabError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class OnSphereError(DomainError):
    """The evaluation point sits on the sphere, where the kernel is undefined."""


class UnsupportedConfigurationError(DomainError):
    """The configuration is valid but not handled by this construction."""


class QuadratureError(OmegaLabError):
    """Adaptive quadrature ran out of budget before meeting its tolerance.

    The best available estimate is kept on the exception so callers can
    decide whether it is good enough.
    """

    def __init__(self, message: str, value: complex, error_estimate: float, evaluations: int):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.evaluations = evaluations


class BracketError(OmegaLabError):
    """A root bracket does not straddle a sign change."""

    def __init__(self, message: str, left: float, right: float, f_left: float, f_right: float):
        super().__init__(message)
        self.left = left
        self.right = right
        self.f_left = f_left
        self.f_right = f_right


class TraceError(OmegaLabError):
    """Curve continuation failed; the partial curve is attached."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class ResolutionError(DomainError):
    """A sampling grid is too coarse for the feature it is meant to resolve."""
