"""The free tensor series algebra and its symmetric quotient.

Symmetric series are represented inside the tensor algebra as the fixed
points of the symmetrization projection, so the quotient map, its kernel and
the inclusion section all act on ordinary :class:`~gradedseries.series.Series`.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import calculus
from .index import FreeMonoid
from .rings import QQ, CoefficientRing, rank
from .series import Algebra, Series


def tensor_algebra(d: int, truncation: int, ring: CoefficientRing = QQ) -> Algebra:
    """Truncated tensor series over a ``d``-dimensional space with basis letters ``0..d-1``."""
    return Algebra(FreeMonoid(d), ring, truncation)


def commutator(a: Series, b: Series) -> Series:
    return a * b - b * a


def _multiset_permutations(word: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Distinct rearrangements of a sorted word, in lexicographic order."""
    counts: dict[int, int] = {}
    for a in word:
        counts[a] = counts.get(a, 0) + 1
    letters = sorted(counts)
    n = len(word)
    prefix: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for a in letters:
            if counts[a]:
                counts[a] -= 1
                prefix.append(a)
                yield from rec()
                prefix.pop()
                counts[a] += 1

    return rec()


@lru_cache(maxsize=4096)
def _orbit(sorted_word: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    # averaging over all n! permutations hits each distinct rearrangement
    # prod(m_i!) times, so every rearrangement carries weight 1/multinomial
    n = len(sorted_word)
    denom = math.factorial(n)
    for a in set(sorted_word):
        denom //= math.factorial(sorted_word.count(a))
    weight = Fraction(1, denom)
    return tuple((w, weight) for w in _multiset_permutations(sorted_word))


def _require_words(a: Series) -> None:
    if not isinstance(a.category, FreeMonoid):
        raise TypeError("symmetrization needs a series over words")
    if a.ring.characteristic != 0:
        raise ValueError("symmetrization needs 1/n! in the coefficient ring")


def symmetrize(a: Series) -> Series:
    """Apply ``sym_n`` to every homogeneous component.

    ``sym_n(v_1⊗...⊗v_n) = 1/n! Σ_σ v_σ(1)⊗...⊗v_σ(n)``.
    """
    _require_words(a)
    ring = a.ring
    acc: dict = {}
    for w, c in a.items():
        for w2, weight in _orbit(tuple(sorted(w))):
            t = ring.scale(ring.scalar(weight), c)
            acc[w2] = ring.add(acc[w2], t) if w2 in acc else t
    return Series(a.algebra, acc)


def is_symmetric(a: Series) -> bool:
    return symmetrize(a) == a


def odot(a: Series, b: Series) -> Series:
    """Symmetric product ``sym(a ⊗ b)``; commutative and associative."""
    return symmetrize(a * b)


def sym_exp(a: Series) -> Series:
    return calculus.exp(a, product=odot)


def sym_log(a: Series) -> Series:
    return calculus.log(a, product=odot)


def kernel_member(a: Series, unit: bool = False) -> bool:
    """Membership in the kernel of ``sym``.

    With ``unit=False`` tests ``sym(a) = 0`` (the ideal); with ``unit=True``
    tests ``sym(a) = 1`` (the kernel of the unit-group morphism).
    """
    s = symmetrize(a)
    return s == (a.algebra.one() if unit else a.algebra.zero())


def section(a: Series) -> Series:
    """Embed a symmetric series back into the tensor algebra (the identity on terms)."""
    if not is_symmetric(a):
        raise ValueError("section is only defined on symmetric series")
    return a


def symmetric_component_rank(d: int, n: int) -> int:
    """Rank of ``sym_n`` on words of length ``n`` over ``d`` letters, computed exactly."""
    alg = tensor_algebra(d, n)
    words = list(itertools.product(range(d), repeat=n))
    position = {w: k for k, w in enumerate(words)}
    rows = []
    for w in words:
        row = [Fraction(0)] * len(words)
        for w2, c in symmetrize(alg.monomial(w)).items():
            row[position[w2]] = c
        rows.append(row)
    return rank(rows, QQ)
