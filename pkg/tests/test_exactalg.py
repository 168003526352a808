from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import matrices, permutations, poly_from_sympy, small_fractions, square_matrices, to_sympy
from conleytrace.errors import InconsistentSystem, NonSquare, ParseError
from conleytrace.exactalg import (
    Matrix,
    Polynomial,
    char_poly,
    cyclotomic,
    det,
    image_basis,
    interpolate,
    inverse,
    kernel_basis,
    nonzero_part,
    permutation_matrix,
    power_root_poly,
    power_sums,
    rank,
    resultant,
    roots_of_unity_only,
    solve,
    split_zero_part,
    to_fraction,
    trace_powers,
)

X = sympy.Symbol("x")
x = Polynomial.x()


def P(*coeffs):
    return Polynomial(coeffs)


# --- scalars and matrices -------------------------------------------------


def test_to_fraction_accepts_exact_forms():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(-2) == Fraction(-2)
    assert to_fraction(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, "0.5", "abc"])
def test_to_fraction_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        to_fraction(bad)


def test_matrix_json_round_trip():
    m = Matrix([[1, "1/2"], [0, -3]])
    assert m.to_json() == [["1", "1/2"], ["0", "-3"]]
    assert Matrix.from_json(m.to_json()) == m
    with pytest.raises(ParseError):
        Matrix.from_json("nope")


def test_matrix_power_and_inverse():
    m = Matrix([[2, 1], [1, 1]])
    assert m**0 == Matrix.identity(2)
    assert m**-1 == Matrix([[1, -1], [-1, 2]])
    assert (m**3) @ (m**-3) == Matrix.identity(2)


@pytest.mark.parametrize(
    "rows, expected",
    [([[1, 0], [0, 1]], 2), ([[1, 1], [1, 1]], 1), ([[0, 1], [0, 0]], 1)],
)
def test_rank_examples(rows, expected):
    assert rank(Matrix(rows)) == expected


def test_kernel_examples():
    assert sorted(kernel_basis(Matrix.zeros(2))) == [(0, 1), (1, 0)]
    assert kernel_basis(Matrix.identity(3)) == []
    (v,) = kernel_basis(Matrix([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_image_examples(horseshoe_matrix):
    assert sorted(image_basis(Matrix.identity(2))) == [(0, 1), (1, 0)]
    (v,) = image_basis(horseshoe_matrix)
    assert v[0] == v[1] != 0
    assert image_basis(Matrix.zeros(3)) == []


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices())
def test_rank_nullity_and_kernel(m):
    ker = kernel_basis(m)
    img = image_basis(m)
    assert len(img) == rank(m)
    assert len(ker) + rank(m) == m.cols
    for v in ker:
        assert all(c == 0 for c in m.apply(v))
    # every image vector lies in the column space
    for v in img:
        stacked = m.hstack(Matrix.from_columns([v], m.rows))
        assert rank(stacked) == rank(m)


@given(square_matrices(max_dim=5))
def test_det_matches_sympy(m):
    assert det(m) == to_sympy(m).det()


@given(square_matrices(max_dim=4, entries=small_fractions))
def test_inverse_when_nonsingular(m):
    if det(m) == 0:
        return
    assert m @ inverse(m) == Matrix.identity(m.rows)


def test_solve_inconsistent():
    with pytest.raises(InconsistentSystem):
        solve(Matrix([[1], [1]]), Matrix([[0], [1]]))


def test_non_square_rejected():
    with pytest.raises(NonSquare):
        det(Matrix([[1, 2]]))


# --- polynomials ----------------------------------------------------------


def test_polynomial_arithmetic():
    p = (x - 1) * (x + 2)
    assert p == P(-2, 1, 1)
    q, r = divmod(p, x - 1)
    assert q == x + 2 and r.is_zero()
    assert p(3) == 10
    assert P(1, 0, 0).degree == 0
    assert Polynomial().degree == -1


def test_polynomial_format():
    assert (x**2 - 2 * x).format() == "x^2 - 2*x"
    assert Polynomial().format() == "0"


@given(st.lists(small_fractions, min_size=1, max_size=5), st.integers(-3, 3).filter(bool))
def test_scale_roots(coeffs, s):
    p = Polynomial(coeffs)
    if p.degree < 1:
        return
    q = p.scale_roots(s)
    # q(s*t) is proportional to p(t) at several points
    ratio = None
    for t in range(-3, 4):
        if p(t) != 0:
            ratio = q(s * t) / p(t)
            break
    if ratio is not None:
        for t in range(-3, 4):
            assert q(s * t) == ratio * p(t)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4), st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_resultant_matches_sylvester_determinant(a, b):
    pa, pb = Polynomial(a), Polynomial(b)
    if pa.degree < 1 or pb.degree < 1:
        return
    m, n = pa.degree, pb.degree
    high_a = list(pa.coeffs[::-1])
    high_b = list(pb.coeffs[::-1])
    rows = [[0] * i + high_a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + high_b + [0] * (m - 1 - i) for i in range(m)]
    assert resultant(pa, pb) == sympy.Matrix(rows).det()


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5, unique=True), st.data())
def test_interpolation_reproduces_values(xs, data):
    ys = [data.draw(small_fractions) for _ in xs]
    p = interpolate([Fraction(v) for v in xs], ys)
    assert all(p(a) == b for a, b in zip(xs, ys))
    assert p.degree < len(xs)


def test_power_root_poly_example():
    assert power_root_poly(x**2 - 1, 2) == (x - 1) ** 2
    assert power_root_poly(x - 2, 2) == x - 4


@given(square_matrices(max_dim=4), st.integers(1, 3))
def test_power_root_poly_is_char_poly_of_power(m, n):
    assert power_root_poly(char_poly(m), n) == char_poly(m**n)


# --- spectra --------------------------------------------------------------


def test_char_poly_examples(horseshoe_matrix):
    assert char_poly(horseshoe_matrix) == x**2 - 2 * x
    assert char_poly(Matrix.identity(3)) == (x - 1) ** 3
    assert char_poly(Matrix([[0, 1], [0, 0]])) == x**2
    assert char_poly(Matrix.zeros(0)) == P(1)


@given(square_matrices(max_dim=5, entries=small_fractions))
def test_char_poly_matches_det_interpolation(m):
    # det(tI - m) at n+1 points determines the characteristic polynomial
    n = m.rows
    ts = [Fraction(t) for t in range(n + 1)]
    ys = [det(Matrix.scalar(n, t) - m) for t in ts]
    assert char_poly(m) == interpolate(ts, ys)


@given(square_matrices(max_dim=5))
def test_char_poly_matches_sympy(m):
    assert char_poly(m).coeffs == tuple(poly_from_sympy(to_sympy(m).charpoly(X).as_expr(), X))


@given(square_matrices(max_dim=4, entries=small_fractions))
def test_cayley_hamilton(m):
    assert char_poly(m).evaluate_matrix(m).is_zero()


def test_split_zero_part():
    assert split_zero_part(x**2 - 2 * x) == (1, x - 2)
    assert split_zero_part(x**3) == (3, P(1))
    assert split_zero_part(x**2 - 1) == (0, x**2 - 1)


def test_trace_powers_examples(horseshoe_matrix):
    assert trace_powers(horseshoe_matrix, 3) == [2, 4, 8]
    assert trace_powers(Matrix.identity(2), 2) == [2, 2]
    assert trace_powers(Matrix([[0, 1], [0, 0]]), 2) == [0, 0]


@given(square_matrices(max_dim=4, entries=small_fractions), st.integers(1, 6))
def test_newton_identities_agree_with_iteration(m, n_max):
    assert trace_powers(m, n_max, "newton") == trace_powers(m, n_max, "iterate")
    assert power_sums(char_poly(m), n_max) == trace_powers(m, n_max)


def test_roots_of_unity_examples():
    r = roots_of_unity_only(x**2 - 1)
    assert r and set(r.indices) == {1, 2}
    r = roots_of_unity_only(x - 2)
    assert not r and r.witness == x - 2
    r = roots_of_unity_only(x**2 + x + 1)
    assert r and set(r.indices) == {3}


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_matches_sympy(n):
    assert cyclotomic(n).coeffs == tuple(poly_from_sympy(sympy.cyclotomic_poly(n, X), X))


@given(permutations())
def test_permutation_spectra_are_roots_of_unity(images):
    m = permutation_matrix(images)
    assert roots_of_unity_only(nonzero_part(char_poly(m)))


def test_permutation_matrix_convention():
    m = permutation_matrix((1, 2, 0))
    assert m.apply((1, 0, 0)) == (0, 1, 0)
