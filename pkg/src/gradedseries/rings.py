"""Coefficient rings.

Every series in the engine stores its coefficients as plain Python values
(``Fraction``, ``float`` or :class:`Matrix`) and delegates all arithmetic to
a ring object.  Rings are immutable and compare by value, so two series built
with ``Rationals()`` and ``QQ`` live in the same algebra.

Exact rings (:class:`Rationals`, and :class:`MatrixAlgebra` over them) obey
the ring laws exactly.  :class:`Reals` compares with an absolute tolerance.
"""

from __future__ import annotations

import math
import operator
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalNumber
from typing import Any, Sequence

from .errors import DomainError, InexactScalar, NotAUnit, StructureMismatch


class CoefficientRing(ABC):
    """Uniform arithmetic contract for series coefficients.

    Subclasses are frozen dataclasses; equality of ring instances decides
    whether two series may be combined.
    """

    #: Whether ``mul`` is commutative.
    commutative: bool = True
    #: Whether elements carry a sign (needed for connected components).
    ordered: bool = False
    characteristic: int = 0

    @property
    @abstractmethod
    def name(self) -> str:
        """Short identifier used in serialized documents."""

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """Convert ``value`` into an element of this ring or raise ``TypeError``."""

    @abstractmethod
    def scalar(self, value: Any) -> Any:
        """Convert ``value`` into a scalar acting on this ring by :meth:`scale`."""

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def sub(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def neg(self, a: Any) -> Any: ...

    @abstractmethod
    def scale(self, q: Any, a: Any) -> Any:
        """Multiply ``a`` by the scalar ``q`` (already passed through :meth:`scalar`)."""

    @abstractmethod
    def is_zero(self, a: Any) -> bool: ...

    @abstractmethod
    def eq(self, a: Any, b: Any) -> bool: ...

    @abstractmethod
    def try_invert(self, a: Any) -> Any:
        """Return the two-sided inverse of ``a``; raise :class:`NotAUnit` if none exists."""

    def is_unit(self, a: Any) -> bool:
        try:
            self.try_invert(a)
        except NotAUnit:
            return False
        return True

    def is_one(self, a: Any) -> bool:
        return self.eq(a, self.one)

    def sign(self, a: Any) -> int:
        raise DomainError(f"ring {self.name} has no canonical order")

    def exp_scalar(self, a: Any) -> Any:
        """``exp`` of a constant term.  Exact rings only know ``exp(0) = 1``."""
        if self.is_zero(a):
            return self.one
        raise InexactScalar(f"exp of a nonzero constant term is not representable in {self.name}")

    def log_scalar(self, a: Any) -> Any:
        """``log`` of a constant term.  Exact rings only know ``log(1) = 0``."""
        if self.is_one(a):
            return self.zero
        raise InexactScalar(f"log of a constant term other than 1 is not representable in {self.name}")

    @abstractmethod
    def to_json(self, a: Any) -> Any: ...

    @abstractmethod
    def from_json(self, obj: Any) -> Any: ...

    def format(self, a: Any) -> str:
        return str(a)


def _fraction_to_json(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Rationals(CoefficientRing):
    """The field of rational numbers, backed by :class:`fractions.Fraction`."""

    ordered = True

    @property
    def name(self) -> str:
        return "rational"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, bool):
            raise TypeError("bool is not a rational coefficient")
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, _RationalNumber)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        # floats are rejected: an exact ring never takes rounded input silently
        raise TypeError(f"cannot use {value!r} as an exact rational")

    scalar = coerce

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)
    scale = staticmethod(operator.mul)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def eq(self, a: Fraction, b: Fraction) -> bool:
        return a == b

    def try_invert(self, a: Fraction) -> Fraction:
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return 1 / a

    def sign(self, a: Fraction) -> int:
        if a == 0:
            raise NotAUnit("0 has no sign component")
        return 1 if a > 0 else -1

    def to_json(self, a: Fraction) -> str:
        return _fraction_to_json(a)

    def from_json(self, obj: Any) -> Fraction:
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Fraction(obj)
        if not isinstance(obj, str) or not _FRACTION_RE.fullmatch(obj):
            raise ValueError(f"malformed rational {obj!r}")
        return Fraction(obj)

    def format(self, a: Fraction) -> str:
        return _fraction_to_json(a)


_FRACTION_RE = re.compile(r"[+-]?\d+(/\d+)?")


@dataclass(frozen=True)
class Reals(CoefficientRing):
    """64-bit floats with tolerance-based equality.

    ``atol`` is used both for equality and for pruning: a coefficient with
    ``abs(c) <= atol`` counts as zero.
    """

    atol: float = 1e-9
    ordered = True

    @property
    def name(self) -> str:
        return "real64"

    @property
    def zero(self) -> float:
        return 0.0

    @property
    def one(self) -> float:
        return 1.0

    def coerce(self, value: Any) -> float:
        if isinstance(value, bool):
            raise TypeError("bool is not a real coefficient")
        if not isinstance(value, (int, float, _RationalNumber)):
            raise TypeError(f"cannot use {value!r} as a real")
        x = float(value)
        if not math.isfinite(x):
            raise ValueError(f"non-finite coefficient {value!r}")
        return x

    scalar = coerce

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)
    scale = staticmethod(operator.mul)

    def is_zero(self, a: float) -> bool:
        return abs(a) <= self.atol

    def eq(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.atol

    def try_invert(self, a: float) -> float:
        if self.is_zero(a):
            raise NotAUnit(f"{a!r} is not invertible within tolerance {self.atol}")
        return 1.0 / a

    def sign(self, a: float) -> int:
        if self.is_zero(a):
            raise NotAUnit("0 has no sign component")
        return 1 if a > 0 else -1

    def exp_scalar(self, a: float) -> float:
        return math.exp(a)

    def log_scalar(self, a: float) -> float:
        if a <= 0:
            raise DomainError(f"log needs a positive constant term, got {a!r}")
        return math.log(a)

    def to_json(self, a: float) -> float:
        return a

    def from_json(self, obj: Any) -> float:
        return self.coerce(obj)

    def format(self, a: float) -> str:
        return repr(a)


QQ = Rationals()
RR = Reals()


@dataclass(frozen=True)
class Matrix:
    """An immutable square matrix stored row-major."""

    rows: tuple[tuple[Any, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[Any]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class MatrixAlgebra(CoefficientRing):
    """Square ``n x n`` matrices over an exact or floating entry ring."""

    n: int
    base: CoefficientRing = field(default=QQ)
    pivot_tol: float = 1e-12

    commutative = False
    ordered = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix dimension must be positive")
        if isinstance(self.base, MatrixAlgebra):
            raise ValueError("matrix entries must be scalars")

    @property
    def name(self) -> str:
        return f"matrix({self.n},{self.base.name})"

    @property
    def zero(self) -> Matrix:
        z = self.base.zero
        return Matrix(tuple(tuple(z for _ in range(self.n)) for _ in range(self.n)))

    @property
    def one(self) -> Matrix:
        return self.diagonal(self.base.one)

    def diagonal(self, c: Any) -> Matrix:
        z = self.base.zero
        return Matrix(tuple(tuple(c if i == j else z for j in range(self.n)) for i in range(self.n)))

    def coerce(self, value: Any) -> Matrix:
        if isinstance(value, Matrix):
            rows = value.rows
        elif isinstance(value, (list, tuple)):
            rows = value
        else:
            return self.diagonal(self.base.coerce(value))
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise StructureMismatch(f"expected a {self.n}x{self.n} matrix")
        return Matrix(tuple(tuple(self.base.coerce(x) for x in r) for r in rows))

    def scalar(self, value: Any) -> Any:
        return self.base.scalar(value)

    def _check(self, *ms: Matrix) -> None:
        for m in ms:
            if m.size != self.n:
                raise StructureMismatch(f"matrix of size {m.size} in {self.name}")

    def add(self, a: Matrix, b: Matrix) -> Matrix:
        self._check(a, b)
        add = self.base.add
        return Matrix(tuple(tuple(add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)))

    def sub(self, a: Matrix, b: Matrix) -> Matrix:
        self._check(a, b)
        sub = self.base.sub
        return Matrix(tuple(tuple(sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)))

    def neg(self, a: Matrix) -> Matrix:
        neg = self.base.neg
        return Matrix(tuple(tuple(neg(x) for x in r) for r in a.rows))

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        self._check(a, b)
        base = self.base
        cols = list(zip(*b.rows))
        out = []
        for r in a.rows:
            row = []
            for c in cols:
                acc = base.zero
                for x, y in zip(r, c):
                    acc = base.add(acc, base.mul(x, y))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(tuple(out))

    def scale(self, q: Any, a: Matrix) -> Matrix:
        mul = self.base.mul
        return Matrix(tuple(tuple(mul(q, x) for x in r) for r in a.rows))

    def is_zero(self, a: Matrix) -> bool:
        return all(self.base.is_zero(x) for r in a.rows for x in r)

    def eq(self, a: Matrix, b: Matrix) -> bool:
        self._check(a, b)
        return all(self.base.eq(x, y) for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb))

    def _eliminate(self, a: Matrix, rhs: list[list[Any]] | None):
        """Gauss-Jordan elimination with partial pivoting.

        Returns ``(det, solved_rhs)``; ``det`` is the entry-ring zero when the
        matrix is singular (exactly, or below ``pivot_tol`` for floats).
        """
        base = self.base
        n = self.n
        m = [list(r) for r in a.rows]
        det = base.one
        exact = not isinstance(base, Reals)
        for col in range(n):
            if exact:
                piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            else:
                piv = max(range(col, n), key=lambda r: abs(m[r][col]))
                if abs(m[piv][col]) <= self.pivot_tol:
                    piv = None
            if piv is None:
                return base.zero, None
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                if rhs is not None:
                    rhs[col], rhs[piv] = rhs[piv], rhs[col]
                det = base.neg(det)
            p = m[col][col]
            det = base.mul(det, p)
            inv_p = base.try_invert(p)
            m[col] = [base.mul(inv_p, x) for x in m[col]]
            if rhs is not None:
                rhs[col] = [base.mul(inv_p, x) for x in rhs[col]]
            for r in range(n):
                if r == col or base.is_zero(m[r][col]):
                    continue
                f = m[r][col]
                m[r] = [base.sub(x, base.mul(f, y)) for x, y in zip(m[r], m[col])]
                if rhs is not None:
                    rhs[r] = [base.sub(x, base.mul(f, y)) for x, y in zip(rhs[r], rhs[col])]
        return det, rhs

    def det(self, a: Matrix) -> Any:
        self._check(a)
        return self._eliminate(a, None)[0]

    def try_invert(self, a: Matrix) -> Matrix:
        self._check(a)
        det, inv = self._eliminate(a, [list(r) for r in self.one.rows])
        if inv is None:
            raise NotAUnit("singular matrix")
        return Matrix(tuple(tuple(r) for r in inv))

    def to_json(self, a: Matrix) -> list[list[Any]]:
        return [[self.base.to_json(x) for x in r] for r in a.rows]

    def from_json(self, obj: Any) -> Matrix:
        if not isinstance(obj, list):
            raise ValueError("matrix must be a nested array")
        return self.coerce([[self.base.from_json(x) for x in r] for r in obj])

    def format(self, a: Matrix) -> str:
        return "[" + "; ".join(" ".join(self.base.format(x) for x in r) for r in a.rows) + "]"


def rank(rows: Sequence[Sequence[Any]], base: CoefficientRing = QQ) -> int:
    """Rank of a rectangular matrix over an exact field, by row reduction."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if not base.is_zero(m[i][col])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv_p = base.try_invert(m[r][col])
        for i in range(r + 1, len(m)):
            if base.is_zero(m[i][col]):
                continue
            f = base.mul(m[i][col], inv_p)
            m[i] = [base.sub(x, base.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


_MATRIX_RE = re.compile(r"matrix\((\d+),(\w+)\)")


def ring_from_name(name: str) -> CoefficientRing:
    """Inverse of :attr:`CoefficientRing.name`."""
    if name == "rational":
        return QQ
    if name == "real64":
        return RR
    m = _MATRIX_RE.fullmatch(name)
    if m:
        return MatrixAlgebra(int(m.group(1)), ring_from_name(m.group(2)))
    raise ValueError(f"unknown coefficient ring {name!r}")
