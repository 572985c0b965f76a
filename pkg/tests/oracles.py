"""Independent reference computations.

Nothing here imports the engine's arithmetic: noncommutative polynomials are
plain ``dict[tuple[int, ...], Fraction]`` and every formula is evaluated by
the most direct route available (explicit convolution, full permutation sums,
Dynkin's commutator formula).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

Poly = dict


def clean(p: Poly) -> Poly:
    return {w: c for w, c in p.items() if c != 0}


def add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for w, c in q.items():
        out[w] = out.get(w, 0) + c
    return clean(out)


def scale(c, p: Poly) -> Poly:
    return clean({w: c * v for w, v in p.items()})


def mul(p: Poly, q: Poly, n: int) -> Poly:
    out: dict = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = w1 + w2
            if len(w) <= n:
                out[w] = out.get(w, 0) + c1 * c2
    return clean(out)


def power(p: Poly, k: int, n: int) -> Poly:
    out = {(): Fraction(1)}
    for _ in range(k):
        out = mul(out, p, n)
    return out


def exp_nilpotent(u: Poly, n: int) -> Poly:
    """``Σ_{k<=n} u^k / k!`` for ``u`` without constant term."""
    out: Poly = {}
    for k in range(n + 1):
        out = add(out, scale(Fraction(1, math.factorial(k)), power(u, k, n)))
    return out


def log_unipotent(a: Poly, n: int) -> Poly:
    """``Σ_{k=1}^n (-1)^{k+1}/k (a-1)^k`` for ``a`` with constant term 1."""
    u = add(a, {(): Fraction(-1)})
    out: Poly = {}
    for k in range(1, n + 1):
        out = add(out, scale(Fraction((-1) ** (k + 1), k), power(u, k, n)))
    return out


def geometric_inverse(lam: Fraction, t: Poly, n: int) -> Poly:
    """``(λ + t)^{-1}`` for scalar ``λ`` as ``Σ_k (-1)^k t^k / λ^{k+1}``."""
    out: Poly = {}
    for k in range(n + 1):
        out = add(out, scale(Fraction((-1) ** k) / lam ** (k + 1), power(t, k, n)))
    return out


def sym_bruteforce(p: Poly) -> Poly:
    """Average every word over all ``n!`` index permutations."""
    out: dict = {}
    for w, c in p.items():
        perms = list(itertools.permutations(range(len(w))))
        share = Fraction(c) / len(perms)
        for s in perms:
            w2 = tuple(w[i] for i in s)
            out[w2] = out.get(w2, 0) + share
    return clean(out)


def bracket(p: Poly, q: Poly, n: int) -> Poly:
    return add(mul(p, q, n), scale(-1, mul(q, p, n)))


def bch_dynkin(n: int) -> Poly:
    """BCH(x, y) with x = letter 0, y = letter 1, from Dynkin's formula.

    Z = Σ_k (-1)^{k-1}/k Σ [x^{r1} y^{s1} ... x^{rk} y^{sk}] / (Σ(r_i+s_i) Π r_i! s_i!)
    where the bracket is the right-nested commutator of the listed letters
    and every pair has r_i + s_i > 0.
    """
    total: Poly = {}
    pairs = [(r, s) for r in range(n + 1) for s in range(n + 1) if 0 < r + s <= n]
    for k in range(1, n + 1):
        for combo in itertools.product(pairs, repeat=k):
            m = sum(r + s for r, s in combo)
            if m > n:
                continue
            letters = []
            denom = m
            for r, s in combo:
                letters += [0] * r + [1] * s
                denom *= math.factorial(r) * math.factorial(s)
            term = {(letters[-1],): Fraction(1)}
            for a in reversed(letters[:-1]):
                term = bracket({(a,): Fraction(1)}, term, n)
            total = add(total, scale(Fraction((-1) ** (k - 1), k * denom), term))
    return total
