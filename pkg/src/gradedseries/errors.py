"""Exception hierarchy shared by every module of the engine."""

from __future__ import annotations


class GradedSeriesError(Exception):
    """Base class for all errors raised by :mod:`gradedseries`."""


class StructureMismatch(GradedSeriesError, TypeError):
    """Operands live in different algebras (category, ring or truncation)."""


class NotAUnit(GradedSeriesError, ArithmeticError):
    """An element that has no multiplicative inverse was asked to invert."""


class DomainError(GradedSeriesError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class InexactScalar(DomainError):
    """The operation would need a transcendental value in an exact ring."""


class ValuationError(DomainError):
    """A series argument has valuation 0 where valuation >= 1 is required."""


class InfiniteDecomposition(GradedSeriesError):
    """Factorizations of an index cannot be certified finite."""


class ClosureExplosion(GradedSeriesError):
    """The composition closure of a generator family exceeded its budget."""

    def __init__(self, message: str, size: int, budget: int):
        super().__init__(message)
        self.size = size
        self.budget = budget
