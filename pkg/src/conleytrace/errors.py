"""Exception types raised across the package."""

from __future__ import annotations


class ConleyError(Exception):
    """Base class for every error raised by conleytrace."""


class NonSquare(ConleyError, ValueError):
    pass


class ZeroPolynomial(ConleyError, ValueError):
    pass


class PolynomialHasZeroRoot(ConleyError, ValueError):
    pass


class InconsistentSystem(ConleyError, ValueError):
    """A linear system has no solution."""


class InvalidModel(ConleyError, ValueError):
    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class InvalidPermutation(ConleyError, ValueError):
    pass


class InconsistentBlocks(ConleyError, ValueError):
    pass


class MissingDegreeData(ConleyError, LookupError):
    pass


class HypothesisViolated(ConleyError):
    """A theorem was asked to run outside its hypotheses.

    ``fallback`` carries the weaker value that remains valid (e.g. a value
    that only holds modulo ``modulus``), when one exists.
    """

    def __init__(self, message: str, fallback=None, modulus: int | None = None):
        super().__init__(message)
        self.fallback = fallback
        self.modulus = modulus


class NonIntegralIndex(ConleyError, ValueError):
    pass


class InconsistentInput(ConleyError, ValueError):
    pass


class NotNilpotent(ConleyError, ValueError):
    pass


class NonUnit(ConleyError, ZeroDivisionError):
    pass


class InsufficientOrder(ConleyError, ValueError):
    pass


class DimensionMismatch(ConleyError, ValueError):
    pass


class UnsupportedDimension(ConleyError, ValueError):
    pass


class ParseError(ConleyError, ValueError):
    """Input could not be parsed; ``location`` points at the offending spot."""

    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.message = message
        self.location = location
