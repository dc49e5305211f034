"""Typed failures raised across the package."""

from __future__ import annotations


class FjkitError(Exception):
    """Base class for every error raised by fjkit."""


class PoleError(FjkitError):
    pass


class DomainError(FjkitError):
    pass


class ParameterError(FjkitError):
    pass


class BranchError(FjkitError):
    pass


class ConvergenceError(FjkitError):
    pass


class TruncationError(FjkitError):
    pass


class InconsistencyError(FjkitError):
    pass


class TagError(FjkitError):
    pass


class CaseError(FjkitError):
    pass


class DimensionZero(FjkitError):
    """Raised when the requested space of spherical functions is zero.

    ``branch`` names the dimension rule that forces the vanishing.
    """

    def __init__(self, message: str, branch: str = ""):
        super().__init__(message)
        self.branch = branch


class MissingCoefficient(FjkitError):
    pass
