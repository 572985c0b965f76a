"""Truncated formal series over a graded index category.

A :class:`Series` is a finite map from indices to nonzero coefficients, all
indices having order at most the truncation ``N`` of its :class:`Algebra`.
Every operation is closed at order ``N``: products drop composites of order
above ``N`` and composites that do not exist.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from numbers import Number
from types import MappingProxyType
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from .errors import DomainError, StructureMismatch
from .index import GradedIndexCategory
from .rings import QQ, CoefficientRing

_parallelism: contextvars.ContextVar[int] = contextvars.ContextVar("gradedseries_threads", default=1)


@contextlib.contextmanager
def parallelism(threads: int):
    """Run series products in this context on ``threads`` worker threads.

    Work is split by output order and every order is summed in the same
    sequence as the serial path, so results are bit-identical.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    token = _parallelism.set(threads)
    try:
        yield
    finally:
        _parallelism.reset(token)


@dataclass(frozen=True)
class Algebra:
    """The ambient space of a series: index category, coefficients, truncation."""

    category: GradedIndexCategory
    ring: CoefficientRing = QQ
    truncation: int = 6

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("truncation must be >= 0")
        limit = self.category.max_order
        if limit is not None and self.truncation > limit:
            raise ValueError(
                f"truncation {self.truncation} exceeds the enumerated order {limit} of {self.category.name}"
            )

    def zero(self) -> Series:
        return Series(self, {})

    def one(self) -> Series:
        return self.constant(self.ring.one)

    def constant(self, c: Any) -> Series:
        return Series(self, {self.category.neutral: c})

    def monomial(self, index: Hashable, coeff: Any = 1) -> Series:
        return Series(self, {index: coeff})

    def gens(self) -> tuple[Series, ...]:
        return tuple(self.monomial(g) for g in self.category.generators())

    def series(self, terms: Mapping[Hashable, Any] | Iterable[tuple[Hashable, Any]]) -> Series:
        return Series(self, terms)

    def with_truncation(self, n: int) -> Algebra:
        return Algebra(self.category, self.ring, n)

    def with_ring(self, ring: CoefficientRing) -> Algebra:
        return Algebra(self.category, ring, self.truncation)


class Series:
    """An immutable truncated series.

    Supports ``+``, ``-``, unary ``-``, ``*`` (series product, or scalar
    multiplication when one side is a number) and ``**`` with integer
    exponents (negative exponents invert).
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms: Mapping[Hashable, Any] | Iterable[tuple[Hashable, Any]] = ()):
        self.algebra = algebra
        cat, ring, n = algebra.category, algebra.ring, algebra.truncation
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Hashable, Any] = {}
        for index, coeff in items:
            if not cat.contains(index):
                raise ValueError(f"{index!r} is not an index of {cat.name}")
            if cat.ord(index) > n:
                continue
            c = ring.coerce(coeff)
            acc[index] = ring.add(acc[index], c) if index in acc else c
        self._terms = _normalize(algebra, acc)

    @classmethod
    def _from_normalized(cls, algebra: Algebra, terms: dict) -> Series:
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        return obj

    # -- structure -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Hashable, Any]:
        """Read-only view of the nonzero terms in canonical index order."""
        return MappingProxyType(self._terms)

    @property
    def ring(self) -> CoefficientRing:
        return self.algebra.ring

    @property
    def category(self) -> GradedIndexCategory:
        return self.algebra.category

    @property
    def truncation(self) -> int:
        return self.algebra.truncation

    def coefficient(self, index: Hashable) -> Any:
        return self._terms.get(index, self.ring.zero)

    def items(self) -> Iterator[tuple[Hashable, Any]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: Series) -> None:
        if not isinstance(other, Series):
            raise TypeError(f"expected a Series, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise StructureMismatch(f"cannot combine series from {self.algebra} and {other.algebra}")

    # -- linear structure ------------------------------------------------

    def __add__(self, other: Series) -> Series:
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        ring = self.ring
        acc = dict(self._terms)
        for i, c in other._terms.items():
            acc[i] = ring.add(acc[i], c) if i in acc else c
        return Series._from_normalized(self.algebra, _normalize(self.algebra, acc))

    def __neg__(self) -> Series:
        neg = self.ring.neg
        return Series._from_normalized(self.algebra, {i: neg(c) for i, c in self._terms.items()})

    def __sub__(self, other: Series) -> Series:
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def scale(self, q: Any) -> Series:
        """Multiply every coefficient by the scalar ``q``."""
        ring = self.ring
        q = ring.scalar(q)
        acc = {i: ring.scale(q, c) for i, c in self._terms.items()}
        return Series._from_normalized(self.algebra, _normalize(self.algebra, acc, sort=False))

    # -- product ---------------------------------------------------------

    def __mul__(self, other: Any) -> Series:
        if isinstance(other, Series):
            self._check(other)
            return _multiply(self, other)
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Any) -> Series:
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> Series:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = self.algebra.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- grading ---------------------------------------------------------

    def component(self, n: int) -> Series:
        """The order-``n`` part ``[a]_n``."""
        cat = self.category
        return Series._from_normalized(
            self.algebra, {i: c for i, c in self._terms.items() if cat.ord(i) == n}
        )

    def components(self) -> dict[int, Series]:
        cat = self.category
        parts: dict[int, dict] = {}
        for i, c in self._terms.items():
            parts.setdefault(cat.ord(i), {})[i] = c
        return {n: Series._from_normalized(self.algebra, t) for n, t in parts.items()}

    def valuation(self) -> float:
        """Least order carrying a nonzero coefficient; ``math.inf`` for zero."""
        if not self._terms:
            return math.inf
        # terms are stored in canonical order, which starts with the order
        return self.category.ord(next(iter(self._terms)))

    def degree(self) -> float:
        """Largest order carrying a nonzero coefficient; ``-math.inf`` for zero."""
        if not self._terms:
            return -math.inf
        return self.category.ord(next(reversed(self._terms)))

    @property
    def constant_term(self) -> Any:
        """The coefficient ``λ`` of the neutral index."""
        cat = self.category
        for i in self._terms:
            if cat.ord(i) > 0:
                break
            if i != cat.neutral:
                raise DomainError(f"order-0 index {i!r} is not neutral; constant term is ambiguous")
        return self.coefficient(cat.neutral)

    def truncate(self, n: int) -> Series:
        """Project onto the coarser algebra of truncation ``n <= N``."""
        if n > self.truncation:
            raise ValueError(f"cannot raise truncation from {self.truncation} to {n}")
        alg = self.algebra.with_truncation(n)
        cat = self.category
        return Series._from_normalized(alg, {i: c for i, c in self._terms.items() if cat.ord(i) <= n})

    def extend(self, n: int) -> Series:
        """The same terms viewed in the finer algebra of truncation ``n >= N``."""
        if n < self.truncation:
            raise ValueError(f"cannot lower truncation with extend; use truncate({n})")
        return Series._from_normalized(self.algebra.with_truncation(n), dict(self._terms))

    def change_ring(self, ring: CoefficientRing, convert: Callable[[Any], Any] | None = None) -> Series:
        convert = convert or ring.coerce
        return Series(self.algebra.with_ring(ring), {i: convert(c) for i, c in self._terms.items()})

    # -- units -----------------------------------------------------------

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.constant_term)

    def invert(self) -> Series:
        """Inverse for the series product.

        Writing ``a = λ + t`` with ``val(t) >= 1``, the inverse is
        ``Σ_k (-λ⁻¹t)^k · λ⁻¹``; the sum stops at ``k = N``.  Raises
        :class:`NotAUnit` when ``λ`` is not invertible.
        """
        alg = self.algebra
        lam = self.constant_term
        lam_inv = alg.constant(self.ring.try_invert(lam))
        q = lam_inv * (self - alg.constant(lam))
        one = alg.one()
        s = one
        for _ in range(self.truncation):
            s = one - q * s
        return s * lam_inv

    # -- comparison and display -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if self.algebra != other.algebra:
            return False
        ring = self.ring
        if self._terms.keys() == other._terms.keys():
            return all(ring.eq(c, other._terms[i]) for i, c in self._terms.items())
        zero = ring.zero
        keys = set(self._terms) | set(other._terms)
        return all(ring.eq(self._terms.get(i, zero), other._terms.get(i, zero)) for i in keys)

    __hash__ = None  # type: ignore[assignment]

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        cat, ring = self.category, self.ring
        out = ""
        for i, c in self._terms.items():
            negative = ring.ordered and ring.sign(c) < 0
            if negative:
                c = ring.neg(c)
            if i == cat.neutral:
                body = ring.format(c)
            elif ring.is_one(c):
                body = cat.format_index(i)
            else:
                body = f"{ring.format(c)}·{cat.format_index(i)}"
            if not out:
                out = f"-{body}" if negative else body
            else:
                out += f" - {body}" if negative else f" + {body}"
        return out

    def __repr__(self) -> str:
        return f"Series({self.pretty()}; N={self.truncation})"

    __str__ = pretty


def _normalize(algebra: Algebra, acc: dict, sort: bool = True) -> dict:
    ring, cat = algebra.ring, algebra.category
    is_zero = ring.is_zero
    keys = sorted(acc, key=cat.sort_key) if sort else acc
    return {i: acc[i] for i in keys if not is_zero(acc[i])}


def _by_order(a: Series) -> dict[int, list[tuple[Hashable, Any]]]:
    ord_ = a.category.ord
    out: dict[int, list] = {}
    for i, c in a._terms.items():
        out.setdefault(ord_(i), []).append((i, c))
    return out


def _multiply(a: Series, b: Series) -> Series:
    alg = a.algebra
    cat, ring = alg.category, alg.ring
    compose, add, mul = cat.compose, ring.add, ring.mul
    A, B = _by_order(a), _by_order(b)
    if not A or not B:
        return alg.zero()
    top = min(alg.truncation, max(A) + max(B))
    orders = [k for k in range(min(A) + min(B), top + 1)]

    def block(k: int) -> dict:
        acc: dict = {}
        for oi, left in A.items():
            right = B.get(k - oi)
            if not right:
                continue
            for i, ca in left:
                for j, cb in right:
                    ij = compose(i, j)
                    if ij is None:
                        continue
                    p = mul(ca, cb)
                    acc[ij] = add(acc[ij], p) if ij in acc else p
        return acc

    threads = _parallelism.get()
    if threads > 1 and len(orders) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(block, orders))
    else:
        blocks = [block(k) for k in orders]
    terms: dict = {}
    for acc in blocks:
        terms.update(_normalize(alg, acc))
    return Series._from_normalized(alg, terms)
