import math
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings

import oracles
from conftest import random_series, random_unit, series_in
from gradedseries import (
    QQ,
    RR,
    Algebra,
    DomainError,
    InexactScalar,
    MatrixAlgebra,
    NaturalNumbers,
    NotAUnit,
    StructureMismatch,
    ValuationError,
    bch,
    exp,
    log,
    parallelism,
    tensor_algebra,
    ultrametric_dist,
)

A = tensor_algebra(2, 6)
X, Y = A.gens()
ONE = A.one()


def as_poly(s):
    return dict(s.terms)


# -- linear structure ---------------------------------------------------------


def test_add_examples(rng):
    a = random_series(A, rng)
    assert a + A.zero() == a
    assert (a + (-1) * a).terms == {}
    assert (ONE + X) + (ONE + Y) == 2 * ONE + X + Y


def test_no_stored_zeros_or_high_orders():
    a = A.series({(0,): 1, (1,): 0, (0,) * 7: 5})
    assert dict(a.terms) == {(0,): 1}
    assert (X - X).is_zero()


def test_structure_mismatch():
    B = tensor_algebra(2, 5)
    with pytest.raises(StructureMismatch):
        X + B.gens()[0]
    with pytest.raises(StructureMismatch):
        X * tensor_algebra(3, 6).gens()[0]
    assert X != B.gens()[0]


# -- product ------------------------------------------------------------------


def test_mul_concatenates_words():
    assert dict((X * Y).terms) == {(0, 1): 1}


def test_geometric_series_by_convolution():
    n = A.truncation
    geo = A.series({(0,) * k: (-1) ** k for k in range(n + 1)})
    assert (ONE + X) * geo == ONE
    assert as_poly((ONE + X) * geo) == oracles.mul({(): 1, (0,): 1}, as_poly(geo), n)


def test_mul_matches_reference_convolution(rng):
    for _ in range(50):
        a, b = random_series(A, rng), random_series(A, rng)
        assert as_poly(a * b) == oracles.mul(as_poly(a), as_poly(b), A.truncation)


def test_mul_skips_incomposable_indices():
    from gradedseries.cobordism import Cobordism, CobordismIndex, validate_gamma

    m = CobordismIndex(Cobordism(1, ("a",), ("b",), ("m",)), 1)
    m2 = CobordismIndex(Cobordism(1, ("c",), ("a",), ("n",)), 1)
    fam = validate_gamma([m, m2], 2).family
    G = Algebra(fam, QQ, 2)
    q_m, q_m2 = G.monomial(m, 3), G.monomial(m2, 5)
    glued = fam.compose(m, m2)
    assert dict((q_m * q_m2).terms) == {glued: 15}
    assert (q_m2 * q_m).is_zero()
    assert glued.length == 2


def test_mul_with_matrix_coefficients():
    M = MatrixAlgebra(2)
    H = Algebra(NaturalNumbers(), M, 3)
    a = H.series({0: [[1, 1], [0, 1]], 1: [[0, 1], [1, 0]]})
    b = H.series({1: [[2, 0], [0, 3]]})
    prod = a * b
    assert prod.coefficient(1) == M.coerce([[2, 3], [0, 3]])
    assert prod.coefficient(2) == M.coerce([[0, 3], [2, 0]])


# -- grading ------------------------------------------------------------------


def test_component_examples(rng):
    lam_u = 3 * ONE + X + X * Y
    assert lam_u.component(0) == 3 * ONE
    assert (X * Y + X).component(2) == X * Y
    a = random_series(A, rng)
    parts = [a.component(n) for n in range(A.truncation + 1)]
    assert sum(parts, A.zero()) == a
    assert all(p.component(n) == p for n, p in enumerate(parts))


def test_valuation_and_degree():
    assert (X + X * Y).valuation() == 1
    assert (X + X * Y).degree() == 2
    assert A.zero().valuation() == math.inf
    assert A.zero().degree() == -math.inf


def test_valuation_multiplicative_over_field(rng):
    for _ in range(200):
        a = random_series(A, rng, min_order=rng.randint(0, 3), density=0.3)
        b = random_series(A, rng, min_order=rng.randint(0, 3), density=0.3)
        if a.is_zero() or b.is_zero() or a.valuation() + b.valuation() > A.truncation:
            continue
        assert (a * b).valuation() == a.valuation() + b.valuation()


def test_valuation_subadditive(rng):
    for _ in range(200):
        a = random_series(A, rng, min_order=rng.randint(0, 4), density=0.2)
        b = random_series(A, rng, min_order=rng.randint(0, 4), density=0.2)
        assert (a + b).valuation() >= min(a.valuation(), b.valuation())


# -- ring axioms --------------------------------------------------------------

SMALL = tensor_algebra(2, 4)


@settings(max_examples=60, deadline=None)
@given(series_in(SMALL), series_in(SMALL), series_in(SMALL))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert SMALL.one() * a == a == a * SMALL.one()


# -- units --------------------------------------------------------------------


def test_invert_examples():
    assert ONE.invert() == ONE
    inv = (ONE + X).invert()
    assert dict(inv.terms) == {(0,) * k: (-1) ** k for k in range(A.truncation + 1)}
    assert (ONE + X) * inv == ONE
    half = (2 * ONE + X).invert()
    assert as_poly(half) == oracles.geometric_inverse(Fraction(2), {(0,): Fraction(1)}, A.truncation)
    assert half.coefficient(()) == Fraction(1, 2)
    assert half.coefficient((0,)) == Fraction(-1, 4)
    assert half.coefficient((0, 0)) == Fraction(1, 8)


def test_invert_two_sided(rng):
    for _ in range(50):
        u = random_unit(A, rng)
        inv = u.invert()
        assert u * inv == ONE
        assert inv * u == ONE


def test_invert_rejects_non_units(rng):
    with pytest.raises(NotAUnit):
        (X + Y * X).invert()
    with pytest.raises(NotAUnit):
        A.zero().invert()


def test_invert_matrix_coefficients_noncommutative(rng):
    M = MatrixAlgebra(2)
    H = Algebra(NaturalNumbers(), M, 4)
    a = H.series({0: [[1, 2], [0, 1]], 1: [[0, 1], [1, 0]], 2: [[1, 0], [3, 1]]})
    inv = a.invert()
    assert a * inv == H.one()
    assert inv * a == H.one()


def test_powers():
    assert X ** 3 == X * X * X
    assert (ONE + X) ** -2 == ((ONE + X) * (ONE + X)).invert()
    assert X ** 0 == ONE


# -- exp / log ----------------------------------------------------------------


def test_exp_examples():
    assert exp(A.zero()) == ONE
    expected = {(0,) * k: Fraction(1, math.factorial(k)) for k in range(A.truncation + 1)}
    assert dict(exp(X).terms) == expected


def test_log_exp_example():
    u = X + Y * X
    assert log(exp(u)) == u
    assert as_poly(exp(u)) == oracles.exp_nilpotent(as_poly(u), A.truncation)
    assert as_poly(log(ONE + u)) == oracles.log_unipotent(as_poly(ONE + u), A.truncation)


def test_exp_log_roundtrips(rng):
    B = tensor_algebra(2, 8)
    for _ in range(10):
        u = random_series(B, rng, min_order=1, max_terms=6)
        assert log(exp(u)) == u
        assert exp(log(B.one() + u)) == B.one() + u


def test_exp_log_domain_errors():
    with pytest.raises(InexactScalar):
        exp(ONE + X)
    with pytest.raises(InexactScalar):
        log(2 * ONE + X)
    with pytest.raises(DomainError):
        log(X)
    with pytest.raises(DomainError):
        log(-1 * ONE + X)


def test_exp_log_over_reals():
    R = tensor_algebra(2, 5, RR)
    x, y = R.gens()
    a = 0.5 * R.one() + x + 0.25 * (x * y)
    assert exp(a).coefficient(()) == pytest.approx(math.exp(0.5))
    assert log(exp(a)) == a
    b = 3.0 * R.one() + y
    assert exp(log(b)) == b
    with pytest.raises(DomainError):
        log(-2.0 * R.one() + x)


def test_exp_is_a_homomorphism_through_bch(rng):
    B = tensor_algebra(2, 5)
    for _ in range(10):
        u = random_series(B, rng, min_order=1, max_terms=5)
        v = random_series(B, rng, min_order=1, max_terms=5)
        assert exp(bch(u, v)) == exp(u) * exp(v)


# -- BCH ----------------------------------------------------------------------


def test_bch_examples(rng):
    B = tensor_algebra(2, 5)
    x, y = B.gens()
    u = random_series(B, rng, min_order=1, max_terms=6)
    assert bch(u, B.zero()) == u
    assert bch(u, -u).is_zero()
    C = tensor_algebra(2, 2)
    cx, cy = C.gens()
    assert bch(cx, cy) == cx + cy + (cx * cy - cy * cx).scale(Fraction(1, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bch_matches_dynkin_formula(n):
    B = tensor_algebra(2, n)
    x, y = B.gens()
    assert as_poly(bch(x, y)) == oracles.bch_dynkin(n)


def test_bch_associative(rng):
    B = tensor_algebra(2, 5)
    for _ in range(5):
        u, v, w = (random_series(B, rng, min_order=1, max_terms=4) for _ in range(3))
        assert bch(u, bch(v, w)) == bch(bch(u, v), w)


def test_bch_needs_positive_valuation():
    with pytest.raises(ValuationError):
        bch(ONE + X, Y)
    with pytest.raises(DomainError):
        bch(X, ONE)


# -- truncation tower ---------------------------------------------------------


def test_truncation_refines_compatibly(rng):
    B = tensor_algebra(2, 7)
    u = random_series(B, rng, min_order=1, max_terms=6)
    v = random_series(B, rng, min_order=1, max_terms=6)
    for n in (3, 5):
        assert exp(u).truncate(n) == exp(u.truncate(n))
        assert bch(u, v).truncate(n) == bch(u.truncate(n), v.truncate(n))
        assert (u * v).truncate(n) == u.truncate(n) * v.truncate(n)
    with pytest.raises(ValueError):
        u.truncate(8)
    assert u.extend(9).truncate(7) == u


# -- ultrametric --------------------------------------------------------------


def test_ultrametric_examples(rng):
    a = random_series(A, rng)
    assert ultrametric_dist(a, a) == 0
    assert ultrametric_dist(ONE, ONE + X) == Fraction(1, 2)
    assert ultrametric_dist(ONE, ONE + X * Y) == Fraction(1, 4)


def test_strong_triangle_inequality(rng):
    for _ in range(200):
        a, b, c = (random_series(A, rng, min_order=rng.randint(0, 5), density=0.2) for _ in range(3))
        assert ultrametric_dist(a, c) <= max(ultrametric_dist(a, b), ultrametric_dist(b, c))
        assert ultrametric_dist(a, b) == ultrametric_dist(b, a)


# -- evaluation order ---------------------------------------------------------


def test_parallel_products_bit_identical(rng):
    R = tensor_algebra(2, 6, RR)
    a = random_series(A, rng).change_ring(RR, float)
    b = random_series(A, rng).change_ring(RR, float)
    serial = a * b
    with parallelism(4):
        threaded = a * b
    assert list(serial.terms.items()) == list(threaded.terms.items())
    assert serial.algebra == R


def test_mul_benchmark_n10(rng):
    B = tensor_algebra(2, 10)
    a = random_series(B, rng, density=1.0)
    b = random_series(B, rng, density=1.0)
    start = time.perf_counter()
    a * b
    elapsed = time.perf_counter() - start
    pairs = sum(len(B.category.decompositions(k)) for k in B.category.elements(10))
    print(f"\nmul N=10 d=2: {elapsed * 1000:.1f} ms over {pairs} coefficient pairs")
    assert elapsed < 30
