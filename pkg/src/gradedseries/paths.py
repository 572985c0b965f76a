"""Polynomial paths of series and the logarithmic equation ``g⁻¹ dg/dt = v``.

A :class:`PolyPath` is ``t ↦ Σ_j c_j t^j`` with series coefficients ``c_j``.
Time is a formal variable, so differentiation and integration are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from typing import Any, Sequence

from .errors import DomainError, StructureMismatch, ValuationError
from .series import Algebra, Series


class PolyPath:
    """An immutable polynomial in ``t`` with coefficients in one algebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs: Sequence[Series] = ()):
        coeffs = list(coeffs)
        for c in coeffs:
            if c.algebra != algebra:
                raise StructureMismatch("path coefficient from a different algebra")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.algebra = algebra
        self.coeffs: tuple[Series, ...] = tuple(coeffs)

    @classmethod
    def constant(cls, s: Series) -> PolyPath:
        return cls(s.algebra, [s])

    @classmethod
    def monomial(cls, s: Series, power: int) -> PolyPath:
        """``s · t^power``."""
        return cls(s.algebra, [s.algebra.zero()] * power + [s])

    def coefficient(self, j: int) -> Series:
        return self.coeffs[j] if j < len(self.coeffs) else self.algebra.zero()

    @property
    def t_degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> float:
        """Least series order over all time coefficients."""
        return min((c.valuation() for c in self.coeffs), default=math.inf)

    def _check(self, other: PolyPath) -> None:
        if not isinstance(other, PolyPath) or other.algebra != self.algebra:
            raise StructureMismatch("paths over different algebras")

    def __add__(self, other: PolyPath) -> PolyPath:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyPath(self.algebra, [self.coefficient(j) + other.coefficient(j) for j in range(n)])

    def __neg__(self) -> PolyPath:
        return PolyPath(self.algebra, [-c for c in self.coeffs])

    def __sub__(self, other: PolyPath) -> PolyPath:
        return self + (-other)

    def __mul__(self, other: Any) -> PolyPath:
        if isinstance(other, Number):
            return PolyPath(self.algebra, [c.scale(other) for c in self.coeffs])
        if isinstance(other, Series):
            other = PolyPath.constant(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PolyPath(self.algebra)
        out = [self.algebra.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyPath(self.algebra, out)

    def __rmul__(self, other: Any) -> PolyPath:
        if isinstance(other, Number):
            return self * other
        if isinstance(other, Series):
            return PolyPath.constant(other) * self
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyPath):
            return NotImplemented
        if other.algebra != self.algebra:
            return False
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coefficient(j) == other.coefficient(j) for j in range(n))

    __hash__ = None  # type: ignore[assignment]

    def differentiate(self) -> PolyPath:
        return PolyPath(self.algebra, [c.scale(j) for j, c in enumerate(self.coeffs) if j > 0])

    def integrate(self) -> PolyPath:
        """The antiderivative vanishing at ``t = 0``."""
        return PolyPath(
            self.algebra,
            [self.algebra.zero()] + [c.scale(Fraction(1, j + 1)) for j, c in enumerate(self.coeffs)],
        )

    def __call__(self, t: Any) -> Series:
        """Evaluate at a scalar time ``t`` (Horner)."""
        acc = self.algebra.zero()
        for c in reversed(self.coeffs):
            acc = acc.scale(t) + c
        return acc

    def component(self, n: int) -> PolyPath:
        """Apply the series projection ``[.]_n`` to every time coefficient."""
        return PolyPath(self.algebra, [c.component(n) for c in self.coeffs])

    def shift(self, s: Any) -> PolyPath:
        """``t ↦ self(t + s)``."""
        out = [self.algebra.zero()] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            for i in range(j + 1):
                out[i] = out[i] + c.scale(math.comb(j, i) * s ** (j - i))
        return PolyPath(self.algebra, out)

    def invert(self) -> PolyPath:
        """Pointwise inverse, polynomial when the constant term is time-independent."""
        lam = self.component(0)
        if lam.t_degree > 0:
            raise DomainError("pointwise inverse is polynomial only for a time-constant constant term")
        lam0 = lam.coefficient(0)
        lam_inv = lam0.invert()
        q = PolyPath.constant(lam_inv) * (self - PolyPath.constant(lam0))
        one = PolyPath.constant(self.algebra.one())
        s = one
        for _ in range(self.algebra.truncation):
            s = one - q * s
        return s * PolyPath.constant(lam_inv)

    def __repr__(self) -> str:
        body = " + ".join(f"({c.pretty()})·t^{j}" for j, c in enumerate(self.coeffs) if not c.is_zero())
        return f"PolyPath({body or '0'})"


def _check_rhs(v: PolyPath) -> None:
    if v.valuation() < 1:
        raise ValuationError("the logarithmic equation needs val(v) >= 1 at every time coefficient")


def solve_log_ode(v: PolyPath) -> PolyPath:
    """Solve ``dg/dt = g·v``, ``g(0) = 1`` degree by degree in the series grading.

    Since ``val(v) >= 1``, ``[g·v]_k`` only involves ``[g]_i`` for ``i < k``,
    so ``[g]_k = ∫_0^t [g·v]_k`` closes the recursion at ``k = N``.
    """
    _check_rhs(v)
    g = PolyPath.constant(v.algebra.one())
    for k in range(1, v.algebra.truncation + 1):
        g = g + (g * v).component(k).integrate()
    return g


def solve_log_ode_picard(v: PolyPath, max_iter: int | None = None) -> tuple[PolyPath, int]:
    """Picard iteration ``g ← 1 + ∫_0^t g·v`` from ``g = 1`` until it stops changing.

    Returns the fixpoint and the number of iterations that changed ``g``; the
    latter never exceeds the truncation order.
    """
    _check_rhs(v)
    limit = v.algebra.truncation + 1 if max_iter is None else max_iter
    one = PolyPath.constant(v.algebra.one())
    g = one
    for step in range(limit + 1):
        nxt = one + (g * v).integrate()
        if nxt == g:
            return g, step
        g = nxt
    raise RuntimeError(f"Picard iteration did not stabilize in {limit} steps")


def solve_log_ode_variation(v: PolyPath, w: PolyPath) -> tuple[PolyPath, PolyPath]:
    """Solution ``g`` for ``v`` and its derivative in the direction ``w``.

    The derivative ``δg`` solves ``dδg/dt = δg·v + g·w`` with ``δg(0) = 0``,
    again degree by degree.
    """
    _check_rhs(v)
    _check_rhs(w)
    g = solve_log_ode(v)
    dg = PolyPath(v.algebra)
    for k in range(1, v.algebra.truncation + 1):
        dg = dg + (dg * v + g * w).component(k).integrate()
    return g, dg


def log_derivative(g: PolyPath) -> PolyPath:
    """``g⁻¹ · dg/dt``."""
    return g.invert() * g.differentiate()
