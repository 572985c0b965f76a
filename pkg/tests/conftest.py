from __future__ import annotations

import os
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from gradedseries import Algebra, Series  # noqa: E402

SEED = int(os.environ.get("GS_SEED", "20261016"))
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


def random_fraction(rng: random.Random, size: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_series(
    alg: Algebra,
    rng: random.Random,
    *,
    min_order: int = 0,
    max_order: int | None = None,
    density: float = 0.5,
    max_terms: int | None = None,
    constant=None,
) -> Series:
    """A random series drawing each index of order in range with probability ``density``."""
    top = alg.truncation if max_order is None else max_order
    cat = alg.category
    candidates = [i for i in cat.elements(top) if cat.ord(i) >= max(min_order, 1)]
    if max_terms is not None and len(candidates) > max_terms:
        candidates = rng.sample(candidates, max_terms)
    terms = {i: random_fraction(rng) for i in candidates if rng.random() < density}
    if constant is not None:
        terms[cat.neutral] = constant
    elif min_order == 0:
        terms[cat.neutral] = random_fraction(rng)
    return alg.series(terms)


def random_unit(alg: Algebra, rng: random.Random, **kw) -> Series:
    lam = Fraction(0)
    while lam == 0:
        lam = random_fraction(rng)
    return random_series(alg, rng, constant=lam, **kw)


fractions = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def series_in(draw, alg: Algebra, min_order: int = 0, max_terms: int = 8):
    cat = alg.category
    indices = [i for i in cat.elements(alg.truncation) if cat.ord(i) >= min_order]
    terms = draw(st.dictionaries(st.sampled_from(indices), fractions, max_size=max_terms))
    return alg.series(terms)


def random_invertible_matrix(M, rng: random.Random, size: int = 3):
    """A random unit of the matrix algebra ``M`` with small rational entries."""
    while True:
        m = M.coerce([[random_fraction(rng, size) for _ in range(M.n)] for _ in range(M.n)])
        if M.is_unit(m):
            return m


def random_matrix(M, rng: random.Random, size: int = 3):
    return M.coerce([[random_fraction(rng, size) for _ in range(M.n)] for _ in range(M.n)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
