from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from conleytrace.exactalg import Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-4, max_value=4)
small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def square_matrices(draw, max_dim=4, entries=small_ints):
    n = draw(st.integers(min_value=0, max_value=max_dim))
    rows = [[draw(entries) for _ in range(n)] for _ in range(n)]
    return Matrix(rows, shape=(n, n))


@st.composite
def matrices(draw, max_dim=4, entries=small_ints):
    r = draw(st.integers(min_value=0, max_value=max_dim))
    c = draw(st.integers(min_value=0, max_value=max_dim))
    return Matrix([[draw(entries) for _ in range(c)] for _ in range(r)], shape=(r, c))


@st.composite
def permutations(draw, max_size=8):
    n = draw(st.integers(min_value=0, max_value=max_size))
    return tuple(draw(st.permutations(list(range(n)))))


def to_sympy(m: Matrix):
    import sympy

    r, c = m.shape
    return sympy.Matrix(r, c, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


def poly_from_sympy(expr, var):
    import sympy

    coeffs = sympy.Poly(expr, var).all_coeffs()[::-1]
    return [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs]


@pytest.fixture
def horseshoe_matrix():
    return Matrix([[1, 1], [1, 1]])


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
