"""Formal power series over Q, held as exact prefixes.

A series is either a polynomial (known to every order) or a coefficient rule
materialised up to a working order.  Evaluation on a matrix is only allowed
when the matrix is nilpotent, where the sum is genuinely finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InsufficientOrder, NonSquare, NonUnit, NotNilpotent
from .exactalg import Matrix, to_fraction

_ZERO = Fraction(0)


class FormalSeries:
    """Exact prefix a_0 + a_1 x + ... of a formal power series.

    ``order`` is the highest index whose coefficient is known, or ``None``
    for a polynomial (every coefficient past the stored ones is zero).
    """

    __slots__ = ("_coeffs", "order", "_rule")

    def __init__(self, coeffs: Iterable = (), order: int | None = None, rule: Callable[[int], object] | None = None):
        self._coeffs = tuple(to_fraction(c) for c in coeffs)
        self._rule = rule
        if order is None and rule is not None:
            order = len(self._coeffs) - 1
        if order is not None and len(self._coeffs) < order + 1:
            if rule is None:
                raise InsufficientOrder(f"{len(self._coeffs)} coefficients given for order {order}")
            self._coeffs += tuple(to_fraction(rule(j)) for j in range(len(self._coeffs), order + 1))
        self.order = order

    @classmethod
    def polynomial(cls, coeffs: Iterable) -> "FormalSeries":
        return cls(coeffs)

    @classmethod
    def from_rule(cls, rule: Callable[[int], object], order: int) -> "FormalSeries":
        return cls((), order=order, rule=rule)

    @classmethod
    def geometric(cls, ratio=1, order: int = 16) -> "FormalSeries":
        """sum_j ratio^j x^j."""
        r = to_fraction(ratio)
        return cls.from_rule(lambda j: r**j, order)

    @property
    def is_polynomial(self) -> bool:
        return self.order is None

    def known_to(self, order: int) -> bool:
        return self.order is None or self.order >= order

    def coeff(self, j: int) -> Fraction:
        if j < 0:
            return _ZERO
        if self.order is not None and j > self.order:
            if self._rule is None:
                raise InsufficientOrder(f"coefficient {j} requested but series known only to order {self.order}")
            return to_fraction(self._rule(j))
        return self._coeffs[j] if j < len(self._coeffs) else _ZERO

    def extend(self, order: int) -> "FormalSeries":
        """Recompute the prefix to ``order`` from the rule (or pad a polynomial)."""
        if self.order is None:
            return self
        if order <= self.order:
            return FormalSeries(self._coeffs[: order + 1], order=order, rule=self._rule)
        if self._rule is None:
            raise InsufficientOrder(f"series has no rule to extend past order {self.order}")
        return FormalSeries(self._coeffs, order=order, rule=self._rule)

    def prefix(self, order: int) -> tuple[Fraction, ...]:
        if not self.known_to(order):
            if self._rule is None:
                raise InsufficientOrder(f"series known only to order {self.order}, need {order}")
        return tuple(self.coeff(j) for j in range(order + 1))

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        order = _min_order(self, other)
        n = order + 1 if order is not None else max(len(self._coeffs), len(other._coeffs))
        return FormalSeries((self.coeff(j) + other.coeff(j) for j in range(n)), order=order)

    def __neg__(self) -> "FormalSeries":
        return FormalSeries((-c for c in self._coeffs), order=self.order)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + (-other)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        order = _min_order(self, other)
        if order is None:
            order = len(self._coeffs) + len(other._coeffs) - 2
            return series_mul(self, other, max(order, 0)).trimmed()
        return series_mul(self, other, order)

    def trimmed(self) -> "FormalSeries":
        """Same series as a polynomial (drops the order bookkeeping)."""
        c = list(self._coeffs)
        while c and c[-1] == 0:
            c.pop()
        return FormalSeries(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        order = _min_order(self, other)
        if order is None:
            n = max(len(self._coeffs), len(other._coeffs))
            return all(self.coeff(j) == other.coeff(j) for j in range(n))
        return self.prefix(order) == other.prefix(order)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self._coeffs)
        tail = "" if self.order is None else f", order={self.order}"
        return f"FormalSeries([{body}]{tail})"

    def to_json(self) -> list[str]:
        return [str(c) for c in self._coeffs]


def _min_order(a: FormalSeries, b: FormalSeries) -> int | None:
    orders = [o for o in (a.order, b.order) if o is not None]
    return min(orders) if orders else None


def series_mul(a: FormalSeries, b: FormalSeries, order: int) -> FormalSeries:
    """Cauchy product c_j = sum_k a_k b_{j-k} for j <= order."""
    pa, pb = a.prefix(order), b.prefix(order)
    out = []
    for j in range(order + 1):
        out.append(sum((pa[k] * pb[j - k] for k in range(j + 1) if pa[k] and pb[j - k]), _ZERO))
    return FormalSeries(out, order=order)


def series_inverse(a: FormalSeries, order: int) -> FormalSeries:
    """Multiplicative inverse to ``order`` by forward substitution."""
    pa = a.prefix(order)
    if pa[0] == 0:
        raise NonUnit("series with zero constant term has no inverse")
    inv0 = 1 / pa[0]
    b = [inv0]
    for j in range(1, order + 1):
        s = sum((pa[k] * b[j - k] for k in range(1, j + 1) if pa[k]), _ZERO)
        b.append(-s * inv0)
    return FormalSeries(b, order=order)


def nilpotency_index(m: Matrix) -> int:
    """Smallest k with m^k = 0; raises NotNilpotent when m^dim != 0."""
    if not m.is_square:
        raise NonSquare(f"nilpotency of a {m.shape} matrix")
    n = m.rows
    power = Matrix.identity(n)
    for k in range(n + 1):
        if power.is_zero():
            return k
        power = power @ m
    raise NotNilpotent("matrix is not nilpotent")


def evaluate_on_nilpotent(a: FormalSeries, m: Matrix) -> Matrix:
    """sum_{j < k} a_j m^j where k is the nilpotency index of m."""
    k = nilpotency_index(m)
    n = m.rows
    if k == 0:
        return Matrix.zeros(n)
    coeffs = a.prefix(k - 1)
    acc = Matrix.zeros(n)
    eye = Matrix.identity(n)
    for c in reversed(coeffs):
        acc = acc @ m + eye * c
    return acc


@dataclass(frozen=True)
class ResolventCertificate:
    """(m - lam I)^{-1} = -(1/lam) sum_{j<k} m^j / lam^j for nilpotent m.

    ``powers`` holds m^0, ..., m^{k-1}; the inverse at a given lam is the
    combination with coefficient -lam^{-(j+1)} on m^j.
    """

    matrix: Matrix
    nilpotency_index: int
    powers: tuple[Matrix, ...]
    checked: dict

    def inverse_at(self, lam) -> Matrix:
        lam = to_fraction(lam)
        if lam == 0:
            raise ZeroDivisionError("the resolvent is only certified for nonzero lambda")
        n = self.matrix.rows
        acc = Matrix.zeros(n)
        for j, p in enumerate(self.powers):
            acc = acc + p * (-(lam ** -(j + 1)))
        return acc

    def verify(self, lam) -> bool:
        lam = to_fraction(lam)
        n = self.matrix.rows
        shifted = self.matrix - Matrix.scalar(n, lam)
        inv = self.inverse_at(lam)
        eye = Matrix.identity(n)
        return shifted @ inv == eye and inv @ shifted == eye

    @property
    def all_verified(self) -> bool:
        return all(self.checked.values())


DEFAULT_CHECK_POINTS: Sequence[Fraction] = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3))


def no_nonzero_eigenvalue_certificate(m: Matrix, check_points: Sequence = DEFAULT_CHECK_POINTS) -> ResolventCertificate:
    k = nilpotency_index(m)
    powers = []
    p = Matrix.identity(m.rows)
    for _ in range(k):
        powers.append(p)
        p = p @ m
    cert = ResolventCertificate(m, k, tuple(powers), {})
    for lam in check_points:
        cert.checked[to_fraction(lam)] = cert.verify(lam)
    return cert
