from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import small_fractions
from modelgen import invertible
from conleytrace.errors import InsufficientOrder, NonUnit, NotNilpotent
from conleytrace.exactalg import Matrix, inverse
from conleytrace.series import (
    FormalSeries,
    evaluate_on_nilpotent,
    nilpotency_index,
    no_nonzero_eigenvalue_certificate,
    series_inverse,
    series_mul,
)


def one(order):
    return FormalSeries([1] + [0] * order, order=order)


def geometric_inverse_of_shift(lam, order):
    """-(1/lam) sum x^j / lam^j, the inverse of x - lam."""
    lam = Fraction(lam)
    return FormalSeries.from_rule(lambda j: -(1 / lam) * lam**-j, order)


def test_mul_examples():
    assert series_mul(FormalSeries([1, 1]), FormalSeries([1, -1]), 2).prefix(2) == (1, 0, -1)
    assert series_mul(FormalSeries.geometric(1, 5), FormalSeries([1, -1]), 5) == one(5)
    for lam in (2, -3, Fraction(1, 2)):
        assert series_mul(FormalSeries([-lam, 1]), geometric_inverse_of_shift(lam, 6), 6) == one(6)


def test_inverse_examples():
    assert series_inverse(FormalSeries([1, -1]), 6).prefix(6) == (1,) * 7
    inv = series_inverse(FormalSeries([-2, 1]), 4)
    assert inv.prefix(4) == tuple(-Fraction(1, 2 ** (j + 1)) for j in range(5))
    with pytest.raises(NonUnit):
        series_inverse(FormalSeries([0, 1]), 3)


def test_order_bookkeeping():
    s = FormalSeries([1, 2, 3], order=2)
    with pytest.raises(InsufficientOrder):
        s.prefix(4)
    g = FormalSeries.geometric(2, 3)
    assert g.extend(6).prefix(6) == tuple(Fraction(2) ** j for j in range(7))
    assert g.extend(2).order == 2


def test_evaluate_examples():
    m = Matrix([[0, 1], [0, 0]])
    assert evaluate_on_nilpotent(FormalSeries.geometric(1, 8), m) == Matrix([[1, 1], [0, 1]])
    z = Matrix.zeros(3)
    assert evaluate_on_nilpotent(FormalSeries([5, 7, 9]), z) == Matrix.scalar(3, 5)
    shifted = evaluate_on_nilpotent(FormalSeries([-1, 1]), m)
    assert shifted == m - Matrix.identity(2)
    inv = evaluate_on_nilpotent(series_inverse(FormalSeries([-1, 1]), 8), m)
    assert inv @ shifted == Matrix.identity(2)


def test_certificate_examples():
    m = Matrix([[0, 1], [0, 0]])
    cert = no_nonzero_eigenvalue_certificate(m)
    assert cert.inverse_at(1) == Matrix([[-1, -1], [0, -1]]) and cert.all_verified
    z = no_nonzero_eigenvalue_certificate(Matrix.zeros(2))
    assert z.inverse_at(2) == Matrix.scalar(2, Fraction(-1, 2))
    with pytest.raises(NotNilpotent):
        no_nonzero_eigenvalue_certificate(Matrix([[1]]))


unit_series = st.builds(
    lambda c0, rest: FormalSeries([c0] + rest, order=16),
    small_fractions.filter(bool),
    st.lists(small_fractions, min_size=16, max_size=16),
)


@st.composite
def nilpotent(draw, max_dim=5):
    n = draw(st.integers(1, max_dim))
    upper = [[draw(st.integers(-3, 3)) if j > i else 0 for j in range(n)] for i in range(n)]
    s = draw(invertible(n))
    return s @ Matrix(upper) @ inverse(s)


@given(unit_series)
def test_inverse_times_original(a):
    assert series_mul(a, series_inverse(a, 16), 16) == one(16)


@given(nilpotent())
def test_nilpotency_index_exact(m):
    k = nilpotency_index(m)
    assert (m**k).is_zero() and (k == 0 or not (m ** (k - 1)).is_zero())


@given(nilpotent(), st.lists(small_fractions, min_size=1, max_size=6), st.lists(small_fractions, min_size=1, max_size=6))
def test_evaluation_is_ring_homomorphism(m, a, b):
    A, B = FormalSeries(a), FormalSeries(b)
    assert evaluate_on_nilpotent(A * B, m) == evaluate_on_nilpotent(A, m) @ evaluate_on_nilpotent(B, m)
    assert evaluate_on_nilpotent(A + B, m) == evaluate_on_nilpotent(A, m) + evaluate_on_nilpotent(B, m)


@given(nilpotent(), st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3)]))
def test_resolvent_certificate_matches_inverse(m, lam):
    cert = no_nonzero_eigenvalue_certificate(m)
    assert cert.all_verified
    assert cert.inverse_at(lam) == inverse(m - Matrix.scalar(m.rows, lam))
