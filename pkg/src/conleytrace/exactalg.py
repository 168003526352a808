"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, which keeps numerator and
denominator in lowest terms with a positive denominator after every
operation.  Matrices are dense and immutable; polynomials are stored lowest
degree first.  Nothing in this module ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    InconsistentSystem,
    NonSquare,
    ParseError,
    PolynomialHasZeroRoot,
    ZeroPolynomial,
)

ExactScalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing anything inexact.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE") or not text:
            raise ValueError(f"not an exact rational string: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_to_str(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Matrices


class Matrix:
    """Dense immutable matrix over Q.

    ``Matrix([[1, 2], [3, 4]])`` builds a 2x2 matrix.  Empty shapes need the
    ``shape`` argument, e.g. ``Matrix([], shape=(0, 3))``.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), shape: tuple[int, int] | None = None):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if shape is None:
            nrows = len(rows)
            ncols = len(rows[0]) if rows else 0
        else:
            nrows, ncols = shape
            if nrows < 0 or ncols < 0:
                raise ValueError(f"negative shape {shape}")
            if nrows == 0 or ncols == 0:
                if any(len(r) for r in rows):
                    raise ValueError(f"entries given for empty shape {shape}")
                rows = tuple(() for _ in range(nrows))
            elif len(rows) != nrows:
                raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = nrows
        self.cols = ncols
        self._data = rows

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(([_ZERO] * cols for _ in range(rows)), shape=(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(([_ONE if i == j else _ZERO for j in range(n)] for i in range(n)), shape=(n, n))

    @classmethod
    def scalar(cls, n: int, value) -> "Matrix":
        value = to_fraction(value)
        return cls(([value if i == j else _ZERO for j in range(n)] for i in range(n)), shape=(n, n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        ncols = len(columns)
        for c in columns:
            if len(c) != nrows:
                raise ValueError("column length does not match nrows")
        return cls(([columns[j][i] for j in range(ncols)] for i in range(nrows)), shape=(nrows, ncols))

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        nrows = sum(b.rows for b in blocks)
        ncols = sum(b.cols for b in blocks)
        out = [[_ZERO] * ncols for _ in range(nrows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, shape=(nrows, ncols))

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    # -- arithmetic -----------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._data) if self.rows else (), shape=(self.cols, self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)),
            shape=self.shape,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(([-a for a in r] for r in self._data), shape=self.shape)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        c = to_fraction(other)
        return Matrix(([c * a for a in r] for r in self._data), shape=self.shape)

    def __rmul__(self, other):
        return self * other

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.matmul(other)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = []
        for r in self._data:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), _ZERO) for c in ocols])
        return Matrix(out, shape=(self.rows, other.cols))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), _ZERO) for r in self._data)

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square:
            raise NonSquare(f"cannot raise a {self.shape} matrix to a power")
        if n < 0:
            return inverse(self) ** (-n)
        result = Matrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def trace(self) -> Fraction:
        if not self.is_square:
            raise NonSquare("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), _ZERO)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return Matrix((a + b for a, b in zip(self._data, other._data)), shape=(self.rows, self.cols + other.cols))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(([self._data[i][j] for j in cols] for i in rows), shape=(len(rows), len(cols)))

    # -- comparison / display -------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        if not self.rows or not self.cols:
            return f"Matrix([], shape={self.shape})"
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    def to_json(self) -> list[list[str]]:
        return [[fraction_to_str(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, data, shape: tuple[int, int] | None = None) -> "Matrix":
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise ParseError("matrix must be a list of rows")
        return cls(data, shape=shape)


# ---------------------------------------------------------------------------
# Elimination kernels


def _integer_rows(m: Matrix) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; return rows and scales."""
    out, scales = [], []
    for r in m._data:
        s = 1
        for x in r:
            s = lcm(s, x.denominator)
        out.append([int(x * s) for x in r])
        scales.append(s)
    return out, scales


def _bareiss(a: list[list[int]]) -> tuple[int, int, int]:
    """Fraction-free echelon reduction in place.

    Returns ``(rank, last_pivot, swaps)``.  For a square full-rank input the
    last pivot is the determinant up to the sign of the row swaps.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    prev = 1
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        piv = a[r][c]
        for i in range(r + 1, nrows):
            lead = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * piv - lead * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r, prev, swaps


def rank(m: Matrix) -> int:
    """Rank over Q, computed by fraction-free (Bareiss) elimination."""
    if not m.rows or not m.cols:
        return 0
    rows, _ = _integer_rows(m)
    return _bareiss(rows)[0]


def det(m: Matrix) -> Fraction:
    if not m.is_square:
        raise NonSquare(f"determinant of a {m.shape} matrix")
    if m.rows == 0:
        return _ONE
    rows, scales = _integer_rows(m)
    r, last, swaps = _bareiss(rows)
    if r < m.rows:
        return _ZERO
    denom = 1
    for s in scales:
        denom *= s
    return Fraction((-1) ** swaps * last, denom)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns (ascending)."""
    a = m.tolist()
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(a, shape=m.shape), tuple(pivots)


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of ker(m), one vector per free column of the RREF, ascending."""
    R, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(tuple(v))
    return basis


def image_basis(m: Matrix) -> list[Vector]:
    """Canonical basis of the column space: nonzero rows of rref(m^T)."""
    R, pivots = rref(m.T)
    return [R.row(i) for i in range(len(pivots))]


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve ``a @ x == b``.

    Free variables are set to zero, so for full column rank ``a`` the
    answer is the unique solution.  Raises InconsistentSystem otherwise.
    """
    if a.rows != b.rows:
        raise ValueError("row count mismatch in solve")
    R, pivots = rref(a.hstack(b))
    n = a.cols
    if any(p >= n for p in pivots):
        raise InconsistentSystem("linear system has no solution")
    x = [[_ZERO] * b.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = R[i, n + j]
    return Matrix(x, shape=(n, b.cols))


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise NonSquare(f"inverse of a {m.shape} matrix")
    if rank(m) != m.rows:
        raise ZeroDivisionError("matrix is singular")
    return solve(m, Matrix.identity(m.rows))


# ---------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic normalisation")
        lc = self.leading
        return Polynomial(c / lc for c in self.coeffs)

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial([1])
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        quot = [_ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lc
            quot[k - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= f * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = _ZERO if not isinstance(x, Polynomial) else Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, m: Matrix) -> Matrix:
        if not m.is_square:
            raise NonSquare("polynomial evaluated at a non-square matrix")
        acc = Matrix.zeros(m.rows)
        eye = Matrix.identity(m.rows)
        for c in reversed(self.coeffs):
            acc = acc @ m + eye * c
        return acc

    def scale_roots(self, s) -> "Polynomial":
        """Monic polynomial whose roots are ``s`` times the roots of self."""
        s = to_fraction(s)
        if s == 0:
            raise ValueError("scale factor must be nonzero")
        d = self.degree
        return Polynomial(c * s ** (d - k) for k, c in enumerate(self.coeffs)).monic()

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [fraction_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        if not isinstance(data, list):
            raise ParseError("polynomial must be a list of coefficients")
        return cls(data)


def _as_poly(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial([p])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def resultant(a: Polynomial, b: Polynomial) -> Fraction:
    """Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a.

    Computed with the Euclidean recursion
    Res(a, b) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r), r = a mod b.
    """
    if a.is_zero() or b.is_zero():
        return _ZERO
    sign = 1
    acc = _ONE
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return sign * acc * b.leading**m
        if m == 0:
            return sign * acc * a.leading**n
        r = a % b
        if r.is_zero():
            return _ZERO
        if (m * n) % 2:
            sign = -sign
        acc *= b.leading ** (m - r.degree)
        a, b = b, r


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Polynomial:
    """Lagrange interpolation through the points ``(xs[i], ys[i])``."""
    total = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = Polynomial([1])
        denom = _ONE
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Polynomial([-xj, 1])
                denom *= xi - xj
        total = total + basis * (yi / denom)
    return total


def power_root_poly(p: Polynomial, n: int) -> Polynomial:
    """Monic polynomial whose roots are the n-th powers of the roots of ``p``.

    Evaluates lambda -> Res_mu(p(mu), lambda - mu^n) at deg(p)+1 rational
    points and interpolates.
    """
    if p.is_zero():
        raise ZeroPolynomial("power_root_poly of the zero polynomial")
    if n < 1:
        raise ValueError("n must be >= 1")
    p = p.monic()
    k = p.degree
    mu_n = Polynomial.monomial(n)
    xs = [Fraction(i) for i in range(k + 1)]
    ys = [resultant(p, Polynomial([c]) - mu_n) for c in xs]
    return interpolate(xs, ys).monic()


# ---------------------------------------------------------------------------
# Characteristic polynomial and spectra


def char_poly(m: Matrix) -> Polynomial:
    """det(xI - m) by the division-free Berkowitz algorithm."""
    if not m.is_square:
        raise NonSquare(f"characteristic polynomial of a {m.shape} matrix")
    n = m.rows
    if n == 0:
        return Polynomial([1])
    a = m._data
    vect = [_ONE, -a[0][0]]  # highest degree first
    for r in range(1, n):
        R = a[r][:r]
        C = [a[i][r] for i in range(r)]
        col = [_ONE, -a[r][r]]
        # -R M^k C for k = 0..r-1, with M the leading r x r block
        v = C
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(R, v)), _ZERO))
            v = [sum((a[i][j] * v[j] for j in range(r)), _ZERO) for i in range(r)]
        # Toeplitz (r+2) x (r+1) lower-triangular product
        new = []
        for i in range(r + 2):
            s = _ZERO
            for j in range(min(i, r) + 1):
                s += col[i - j] * vect[j]
            new.append(s)
        vect = new
    return Polynomial(reversed(vect))


def split_zero_part(p: Polynomial) -> tuple[int, Polynomial]:
    """Write p = x^m0 * q with q(0) != 0 and return (m0, q)."""
    if p.is_zero():
        raise ZeroPolynomial("split_zero_part of the zero polynomial")
    m0 = next(i for i, c in enumerate(p.coeffs) if c != 0)
    return m0, Polynomial(p.coeffs[m0:])


def nonzero_part(p: Polynomial) -> Polynomial:
    return split_zero_part(p)[1]


def power_sums(p: Polynomial, n_max: int) -> list[Fraction]:
    """Newton's identities: sums of k-th powers of the roots of monic p."""
    p = p.monic()
    k = p.degree
    c = p.coeffs
    s: list[Fraction] = []
    for j in range(1, n_max + 1):
        acc = _ZERO
        for i in range(1, min(j - 1, k) + 1):
            acc += c[k - i] * s[j - i - 1]
        if j <= k:
            acc += j * c[k - j]
        s.append(-acc)
    return s


def trace_powers(m: Matrix, n_max: int, method: str = "iterate") -> list[Fraction]:
    """[trace(m), trace(m^2), ..., trace(m^n_max)].

    ``method`` is ``"iterate"`` (repeated multiplication) or ``"newton"``
    (power sums from the characteristic polynomial).
    """
    if not m.is_square:
        raise NonSquare(f"trace_powers of a {m.shape} matrix")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if method == "newton":
        return power_sums(char_poly(m), n_max)
    if method != "iterate":
        raise ValueError(f"unknown method {method!r}")
    out = []
    power = m
    for _ in range(n_max):
        out.append(power.trace())
        power = power @ m
    return out


# ---------------------------------------------------------------------------
# Roots of unity


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in _factorize(n):
        result = result // p * (p - 1)
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Polynomial:
    """The n-th cyclotomic polynomial, from x^n - 1 = prod_{d | n} Phi_d."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    p = Polynomial.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p // cyclotomic(d)
    return p


def cyclotomic_indices_up_to_degree(degree: int) -> list[int]:
    """All n with totient(n) <= degree.

    totient(n) >= sqrt(n/2), so n <= 2 * degree**2 bounds the search.
    """
    if degree < 1:
        return []
    return [n for n in range(1, 2 * degree * degree + 1) if totient(n) <= degree]


@dataclass(frozen=True)
class RootsOfUnityResult:
    all_roots_of_unity: bool
    indices: tuple[int, ...]
    witness: Polynomial | None

    def __bool__(self) -> bool:
        return self.all_roots_of_unity


def roots_of_unity_only(p: Polynomial) -> RootsOfUnityResult:
    """Decide whether every complex root of ``p`` is a root of unity.

    Divides out cyclotomic factors Phi_n (with multiplicity) for every n with
    totient(n) <= deg(p).  On success ``indices`` lists the Phi_n used; on
    failure ``witness`` is the monic cofactor that has no root of unity as
    a root.
    """
    if p.is_zero():
        raise ZeroPolynomial("roots_of_unity_only of the zero polynomial")
    if p.coeff(0) == 0:
        raise PolynomialHasZeroRoot("0 is a root; split it off first")
    rem = p.monic()
    indices: list[int] = []
    for n in cyclotomic_indices_up_to_degree(rem.degree):
        phi = cyclotomic(n)
        if phi.degree > rem.degree:
            continue
        while rem.degree >= phi.degree:
            q, r = divmod(rem, phi)
            if not r.is_zero():
                break
            rem = q
            indices.append(n)
        if rem.degree == 0:
            break
    if rem.degree == 0:
        return RootsOfUnityResult(True, tuple(indices), None)
    return RootsOfUnityResult(False, tuple(indices), rem)


def companion(p: Polynomial) -> Matrix:
    """Companion matrix of monic p; its characteristic polynomial is p."""
    p = p.monic()
    k = p.degree
    rows = [[_ZERO] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = _ONE
    for i in range(k):
        rows[i][k - 1] = -p.coeffs[i]
    return Matrix(rows, shape=(k, k))


def permutation_matrix(images: Sequence[int]) -> Matrix:
    """Matrix sending basis vector e_j to e_{images[j]}."""
    n = len(images)
    rows = [[_ZERO] * n for _ in range(n)]
    for j, i in enumerate(images):
        rows[i][j] = _ONE
    return Matrix(rows, shape=(n, n))
