"""Symbolic pseudo-cobordisms and series indexed by length-graded families.

A :class:`Cobordism` is bookkeeping only: a dimension, an opaque body (the
list of glued pieces) and two multisets of boundary labels.  Gluing
``M * M'`` needs the initial boundary of ``M`` to match the final boundary of
``M'`` and to be nonempty.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from . import calculus, paths
from .errors import ClosureExplosion
from .groups import ExtensionGroup
from .index import GradedIndexCategory
from .rings import CoefficientRing
from .series import Algebra, Series


def _labels(xs: Iterable[Any]) -> tuple[str, ...]:
    return tuple(sorted(str(x) for x in xs))


@dataclass(frozen=True)
class Cobordism:
    """An ``m``-manifold with boundary split into initial ``alpha`` and final ``beta``."""

    dim: int
    alpha: tuple[str, ...] = ()
    beta: tuple[str, ...] = ()
    body: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("cobordism dimension must be >= 1")
        object.__setattr__(self, "alpha", _labels(self.alpha))
        object.__setattr__(self, "beta", _labels(self.beta))
        object.__setattr__(self, "body", tuple(str(b) for b in self.body))

    def to_json(self) -> dict:
        return {"dim": self.dim, "alpha": list(self.alpha), "beta": list(self.beta), "body": list(self.body)}

    @classmethod
    def from_json(cls, obj: dict) -> Cobordism:
        return cls(obj["dim"], tuple(obj["alpha"]), tuple(obj["beta"]), tuple(obj.get("body", ())))


def compose_cobordism(m: Cobordism, m2: Cobordism) -> Cobordism | None:
    """``M * M'`` glued along ``α(M) = β(M')``, or ``None`` if not composable.

    The composite keeps ``α(M')`` as initial and ``β(M)`` as final boundary.
    """
    if m.dim != m2.dim or not m.alpha or Counter(m.alpha) != Counter(m2.beta):
        return None
    return Cobordism(m.dim, m2.alpha, m.beta, m2.body + m.body)


@dataclass(frozen=True)
class CobordismIndex:
    """A pair ``(M, p)`` of a cobordism and a positive length, or the neutral ``(∅, 0)``."""

    manifold: Cobordism | None
    length: int

    def __post_init__(self):
        if (self.manifold is None) != (self.length == 0):
            raise ValueError("only the empty manifold has length 0")
        if self.length < 0:
            raise ValueError("length must be >= 0")

    @property
    def is_neutral(self) -> bool:
        return self.manifold is None

    def sort_key(self) -> tuple:
        m = self.manifold
        if m is None:
            return (0,)
        return (self.length, m.dim, m.alpha, m.beta, m.body)

    def to_json(self) -> dict:
        return {"manifold": None if self.manifold is None else self.manifold.to_json(), "length": self.length}

    @classmethod
    def from_json(cls, obj: dict) -> CobordismIndex:
        m = obj.get("manifold")
        return cls(None if m is None else Cobordism.from_json(m), obj["length"])

    def __str__(self) -> str:
        if self.manifold is None:
            return "e"
        name = "*".join(self.manifold.body) or "M"
        return f"q^{self.length}[{name}]"


NEUTRAL = CobordismIndex(None, 0)


def compose_index(i: CobordismIndex, j: CobordismIndex) -> CobordismIndex | None:
    """``(M, p) * (M', p') = (M * M', p + p')`` with ``(∅, 0)`` neutral."""
    if i.manifold is None:
        return j
    if j.manifold is None:
        return i
    m = compose_cobordism(i.manifold, j.manifold)
    if m is None:
        return None
    return CobordismIndex(m, i.length + j.length)


@dataclass(frozen=True)
class GammaFamily(GradedIndexCategory):
    """A composition-stable family of indices, enumerated up to ``length_bound``.

    Build it with :func:`validate_gamma`; the stored closure is what makes
    every decomposition enumeration finite.
    """

    generator_set: tuple[CobordismIndex, ...]
    length_bound: int
    closure: frozenset = field(compare=False, repr=False, default=frozenset())

    @property
    def max_order(self) -> int:  # type: ignore[override]
        return self.length_bound

    @property
    def name(self) -> str:
        return "gamma"

    @property
    def neutral(self) -> CobordismIndex:
        return NEUTRAL

    def compose(self, i, j):
        return compose_index(i, j)

    def ord(self, i: CobordismIndex) -> int:
        return i.length

    def sort_key(self, i: CobordismIndex) -> tuple:
        return i.sort_key()

    def elements(self, max_ord: int) -> Iterator[CobordismIndex]:
        self._certify(max_ord)
        return iter(sorted((i for i in self.closure if i.length <= max_ord), key=CobordismIndex.sort_key))

    def generators(self) -> tuple[CobordismIndex, ...]:
        return self.generator_set

    def contains(self, i: Any) -> bool:
        return i in self.closure

    def index_to_json(self, i: CobordismIndex) -> dict:
        return i.to_json()

    def index_from_json(self, obj: Any) -> CobordismIndex:
        i = CobordismIndex.from_json(obj)
        if i not in self.closure:
            raise ValueError(f"{i} is not in the family")
        return i

    def format_index(self, i: CobordismIndex) -> str:
        return str(i)

    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.generator_set], "length_bound": self.length_bound}


@dataclass
class GammaReport:
    """Outcome of :func:`validate_gamma`."""

    family: GammaFamily | None
    violations: list[str]
    length_bound: int
    strict: bool
    factorization_counts: dict[CobordismIndex, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            n = len(self.family.closure)
            longest = max(self.factorization_counts.values(), default=0)
            return (
                f"stable, finite decompositions up to L={self.length_bound} "
                f"({n} elements, at most {longest} factorizations per element)"
            )
        return "violations:\n" + "\n".join(f"  - {v}" for v in self.violations)


def closure(generators: Iterable[CobordismIndex], length_bound: int, budget: int = 100_000) -> frozenset:
    """All ``*``-products of the generators of length <= ``length_bound``, plus ``(∅, 0)``."""
    found = {NEUTRAL}
    queue = []
    for g in generators:
        if g.length <= length_bound and g not in found:
            found.add(g)
            queue.append(g)
    while queue:
        x = queue.pop()
        for y in list(found):
            for c in (compose_index(x, y), compose_index(y, x)):
                if c is not None and c.length <= length_bound and c not in found:
                    found.add(c)
                    queue.append(c)
                    if len(found) > budget:
                        raise ClosureExplosion(
                            f"closure exceeds the budget of {budget} elements", len(found), budget
                        )
    return frozenset(found)


def _first_escape(elems, gens, length_bound: int) -> CobordismIndex | None:
    # every product of family elements factors through generators, so the
    # family is finite iff no element times a generator leaves the bound
    for x in sorted(elems, key=CobordismIndex.sort_key):
        for g in gens:
            for c in (compose_index(x, g), compose_index(g, x)):
                if c is not None and c.length > length_bound:
                    return c
    return None


def validate_gamma(
    generators: Iterable[CobordismIndex],
    length_bound: int,
    *,
    strict: bool = False,
    budget: int = 100_000,
    associativity_limit: int = 400,
) -> GammaReport:
    """Close the generators under ``*`` up to ``length_bound`` and check the family.

    The default mode requires finitely many factorizations per index, which
    holds for every closure computed up to a length bound.  ``strict=True``
    also demands that the whole family be finite, i.e. that no product
    escapes past the bound.  Associativity (including agreement on
    definedness) is checked on all triples when the closure has at most
    ``associativity_limit`` elements.
    """
    gens = tuple(sorted(set(generators), key=CobordismIndex.sort_key))
    violations = []
    usable = []
    for g in gens:
        if g.is_neutral:
            continue
        if g.length > length_bound:
            violations.append(f"generator {g} has length {g.length} > bound {length_bound}")
        else:
            usable.append(g)
    elems = closure(usable, length_bound, budget)
    family = GammaFamily(tuple(usable), length_bound, elems)

    if strict:
        escape = _first_escape(elems, usable, length_bound)
        if escape is not None:
            violations.append(
                f"{escape} of length {escape.length} escapes the bound; the family is not certified finite"
            )

    if len(elems) <= associativity_limit:
        for a, b, c in itertools.product(elems, repeat=3):
            ab, bc = compose_index(a, b), compose_index(b, c)
            left = None if ab is None else compose_index(ab, c)
            right = None if bc is None else compose_index(a, bc)
            if left != right:
                violations.append(f"associativity fails on ({a}, {b}, {c}): {left} vs {right}")

    counts = {k: len(family.decompositions(k)) for k in elems}
    return GammaReport(family if not violations else None, violations, length_bound, strict, counts)


class GammaSeriesGroup:
    """The group ``1 + 𝒜_{Γ-{e}}`` of series over a validated family."""

    def __init__(self, family: GammaFamily, ring: CoefficientRing, truncation: int | None = None):
        self.family = family
        self.algebra = Algebra(family, ring, family.length_bound if truncation is None else truncation)

    def one(self) -> Series:
        return self.algebra.one()

    def monomial(self, index: CobordismIndex, coeff: Any = 1) -> Series:
        return self.algebra.monomial(index, coeff)

    def element(self, tail: Series | dict) -> Series:
        """``1 + tail`` for a tail without constant term."""
        if not isinstance(tail, Series):
            tail = self.algebra.series(tail)
        if tail.valuation() < 1:
            raise ValueError("group elements are 1 + (series of valuation >= 1)")
        return self.one() + tail

    def mul(self, a: Series, b: Series) -> Series:
        return a * b

    def invert(self, a: Series) -> Series:
        return a.invert()

    def exp(self, a: Series) -> Series:
        return calculus.exp(a)

    def log(self, a: Series) -> Series:
        return calculus.log(a)

    def solve_log_ode(self, v: paths.PolyPath) -> paths.PolyPath:
        return paths.solve_log_ode(v)

    def extension_group(self) -> ExtensionGroup:
        """``G ⊕ 𝒜_{Γ-{e}}`` with ``G`` the units of the coefficient ring."""
        return ExtensionGroup(self.algebra)


def gamma_series_group(family: GammaFamily, ring: CoefficientRing, truncation: int | None = None) -> GammaSeriesGroup:
    return GammaSeriesGroup(family, ring, truncation)


def gamma_from_json(doc: dict, **kwargs) -> GammaReport:
    gens = [CobordismIndex.from_json(g) for g in doc["generators"]]
    return validate_gamma(gens, doc["length_bound"], **kwargs)
