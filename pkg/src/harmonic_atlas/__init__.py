"""Numerics for convex and starlike harmonic mappings of the unit disk."""

from .errors import (ConvergenceError, DegenerateError, DomainError, HarmonicAtlasError,
                     PoleError, PreconditionError)
from .series import HarmonicMap

__version__ = "0.1.0"

__all__ = ["HarmonicMap", "HarmonicAtlasError", "DomainError", "PoleError",
           "DegenerateError", "ConvergenceError", "PreconditionError", "__version__"]
