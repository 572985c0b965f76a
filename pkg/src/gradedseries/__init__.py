"""Truncated formal series over N-graded index categories.

The core objects are :class:`Algebra` (index category, coefficient ring,
truncation order) and the immutable :class:`Series` living in it.
"""

from .calculus import bch, exp, log, ultrametric_dist
from .errors import (
    ClosureExplosion,
    DomainError,
    GradedSeriesError,
    InexactScalar,
    InfiniteDecomposition,
    NotAUnit,
    StructureMismatch,
    ValuationError,
)
from .index import FreeMonoid, GradedIndexCategory, NaturalNumbers
from .rings import QQ, RR, CoefficientRing, Matrix, MatrixAlgebra, Rationals, Reals
from .series import Algebra, Series, parallelism
from .tensor import tensor_algebra

__all__ = [
    "Algebra",
    "ClosureExplosion",
    "CoefficientRing",
    "DomainError",
    "FreeMonoid",
    "GradedIndexCategory",
    "GradedSeriesError",
    "InexactScalar",
    "InfiniteDecomposition",
    "Matrix",
    "MatrixAlgebra",
    "NaturalNumbers",
    "NotAUnit",
    "QQ",
    "RR",
    "Rationals",
    "Reals",
    "Series",
    "StructureMismatch",
    "ValuationError",
    "bch",
    "exp",
    "log",
    "parallelism",
    "tensor_algebra",
    "ultrametric_dist",
]

__version__ = "0.1.0"
