"""Exception hierarchy shared by every module."""


class HarmonicAtlasError(Exception):
    """Base class for all library errors."""


class DomainError(HarmonicAtlasError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class DegenerateError(HarmonicAtlasError, ArithmeticError):
    """A normalising quantity vanished numerically."""


class ConvergenceError(HarmonicAtlasError, RuntimeError):
    """A series or quadrature did not converge within its budget."""

    def __init__(self, message, tail=None):
        super().__init__(message)
        self.tail = tail


class PreconditionError(HarmonicAtlasError, ValueError):
    """A mathematical hypothesis of the operation does not hold.

    ``witness`` carries the offending point (or value) when one is known.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
