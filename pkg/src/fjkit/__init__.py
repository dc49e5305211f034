"""Whittaker and Fourier-Jacobi type spherical functions on Sp(2, R),
the finite Weil representation, and Jacobi-form assembly."""

from . import errors, fjspherical, heisenberg, jacobi, metaplectic, specfun, whittaker
from .errors import DimensionZero, FjkitError
from .specfun import DEFAULT_CFG, QuadratureConfig

__version__ = "0.1.0"

__all__ = [
    "errors",
    "specfun",
    "metaplectic",
    "heisenberg",
    "whittaker",
    "fjspherical",
    "jacobi",
    "FjkitError",
    "DimensionZero",
    "QuadratureConfig",
    "DEFAULT_CFG",
]
