"""Exponential, logarithm, Baker-Campbell-Hausdorff and the valuation metric."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .errors import DomainError, ValuationError
from .series import Series

Product = Callable[[Series, Series], Series]


def _mul(a: Series, b: Series) -> Series:
    return a * b


def _split(a: Series):
    lam = a.constant_term
    return lam, a - a.algebra.constant(lam)


def exp(a: Series, product: Product = _mul) -> Series:
    """``exp(λ + u) = exp(λ) Σ_{k<=N} u^k / k!``.

    Exact rings accept only ``λ = 0``; :class:`~gradedseries.rings.Reals`
    accepts any constant term.  ``product`` selects the multiplication used
    for the powers of ``u``.
    """
    lam, u = _split(a)
    alg = a.algebra
    e = a.ring.exp_scalar(lam)
    one = alg.one()
    s = one
    # Horner: 1 + u/1 (1 + u/2 (1 + ... (1 + u/N)))
    for k in range(a.truncation, 0, -1):
        s = one + product(u, s).scale(Fraction(1, k))
    if a.ring.is_one(e):
        return s
    return product(alg.constant(e), s)


def log(a: Series, product: Product = _mul) -> Series:
    """``log(λ + u) = log(λ) + Σ_{k=1}^{N} (-1)^{k+1}/k (u/λ)^k``.

    Needs ``λ > 0``; exact rings additionally need ``λ = 1``.
    """
    lam, u = _split(a)
    ring, alg = a.ring, a.algebra
    if ring.ordered and (ring.is_zero(lam) or ring.sign(lam) < 0):
        raise DomainError(f"log needs a positive constant term, got {ring.format(lam)}")
    head = ring.log_scalar(lam)
    w = u if ring.is_one(lam) else product(alg.constant(ring.try_invert(lam)), u)
    s = alg.zero()
    for k in range(a.truncation, 0, -1):
        c = Fraction((-1) ** (k + 1), k)
        s = product(w, alg.one().scale(c) + s)
    if ring.is_zero(head):
        return s
    return alg.constant(head) + s


def bch(u: Series, v: Series) -> Series:
    """``log(exp(u) exp(v))`` truncated at the common order ``N``."""
    u._check(v)
    for name, x in (("u", u), ("v", v)):
        if x.valuation() < 1:
            raise ValuationError(f"bch needs val({name}) >= 1")
    return log(exp(u) * exp(v))


def ultrametric_dist(a: Series, b: Series) -> Fraction:
    """``2^{-val(a - b)}``, with ``d(a, a) = 0``."""
    a._check(b)
    v = (a - b).valuation()
    if v == math.inf:
        return Fraction(0)
    return Fraction(1, 2 ** int(v))
