"""Unit groups, their sign components, and extension groups ``G ⊕ hA[[h]]``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import DomainError, NotAUnit, StructureMismatch
from .index import NaturalNumbers
from .rings import CoefficientRing
from .series import Algebra, Series


def is_unit(u: Series) -> bool:
    """A series is a unit exactly when its constant term is a unit of the ring."""
    return u.is_unit()


def component_sign(u: Series) -> int:
    """``+1`` or ``-1`` according to the sign of the constant term.

    The two values label the connected components of the unit group over an
    ordered scalar ring; ``sign(uv) = sign(u) sign(v)``.
    """
    ring = u.ring
    if not ring.ordered:
        raise DomainError(f"component_sign needs an ordered scalar ring, not {ring.name}")
    return ring.sign(u.constant_term)


@dataclass(frozen=True, eq=False)
class ExtendedElement:
    """``g0 + Σ_{k>=1} a_k`` with ``g0`` a unit of ``A`` and ``val(tail) >= 1``.

    Over :class:`~gradedseries.index.NaturalNumbers` the tail reads
    ``Σ h^k a_k``; over a cobordism family it is a series in ``𝒜_{Γ-{e}}``.
    """

    g0: Any
    tail: Series

    def __post_init__(self):
        ring = self.tail.ring
        object.__setattr__(self, "g0", ring.coerce(self.g0))
        if self.tail.valuation() < 1:
            raise DomainError("tail of an extended element must have valuation >= 1")
        if not ring.is_unit(self.g0):
            raise NotAUnit("g0 must be invertible in the coefficient algebra")

    @property
    def algebra(self) -> Algebra:
        return self.tail.algebra

    def as_series(self) -> Series:
        return self.algebra.constant(self.g0) + self.tail

    @classmethod
    def from_series(cls, s: Series) -> ExtendedElement:
        g0 = s.constant_term
        return cls(g0, s - s.algebra.constant(g0))

    def __mul__(self, other: ExtendedElement) -> ExtendedElement:
        return ext_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtendedElement):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.tail.ring.eq(self.g0, other.g0)
            and self.tail == other.tail
        )

    __hash__ = None  # type: ignore[assignment]


def ext_mul(p: ExtendedElement, q: ExtendedElement) -> ExtendedElement:
    if p.algebra != q.algebra:
        raise StructureMismatch("extended elements from different algebras")
    return ExtendedElement.from_series(p.as_series() * q.as_series())


def ext_inv(p: ExtendedElement) -> ExtendedElement:
    return ExtendedElement.from_series(p.as_series().invert())


def project(p: ExtendedElement) -> Any:
    """The homomorphism ``π(g0 + tail) = g0`` onto the units of ``A``."""
    return p.g0


class ExtensionGroup:
    """The group of extended elements over a fixed algebra.

    ``ExtensionGroup.deformation(A, N)`` builds the ``h``-deformed case
    ``A^× ⊕ hA[[h]]`` truncated at ``h^N``.
    """

    def __init__(self, algebra: Algebra):
        self.algebra = algebra

    @classmethod
    def deformation(cls, ring: CoefficientRing, truncation: int) -> ExtensionGroup:
        return cls(Algebra(NaturalNumbers(), ring, truncation))

    @property
    def ring(self) -> CoefficientRing:
        return self.algebra.ring

    def identity(self) -> ExtendedElement:
        return ExtendedElement(self.ring.one, self.algebra.zero())

    def element(self, g0: Any, tail: Series | dict | None = None) -> ExtendedElement:
        if tail is None:
            tail = self.algebra.zero()
        elif not isinstance(tail, Series):
            tail = self.algebra.series(tail)
        return ExtendedElement(g0, tail)

    def kernel_element(self, tail: Series | dict) -> ExtendedElement:
        """An element ``1 + tail`` of ``ker π``."""
        return self.element(self.ring.one, tail)

    def in_kernel(self, p: ExtendedElement) -> bool:
        return self.ring.is_one(project(p))

    def mul(self, p: ExtendedElement, q: ExtendedElement) -> ExtendedElement:
        return ext_mul(p, q)

    def inv(self, p: ExtendedElement) -> ExtendedElement:
        return ext_inv(p)
