"""Leray reduction: restrict an endomorphism to its stabilised image.

For phi on a finite-dimensional V the images im phi^k decrease and
stabilise at some m <= dim V.  On W = im phi^m the restriction is invertible
and carries every nonzero eigenvalue of phi with its multiplicity, so it is
the canonical representative of phi's shift-equivalence class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonSquare
from .exactalg import (
    Matrix,
    Polynomial,
    char_poly,
    det,
    image_basis,
    inverse,
    kernel_basis,
    nonzero_part,
    rank,
    solve,
    split_zero_part,
    trace_powers,
)


@dataclass(frozen=True)
class LerayReduction:
    original_dim: int
    stabilization_index: int
    reduced_matrix: Matrix
    inclusion: Matrix

    @property
    def dim(self) -> int:
        return self.reduced_matrix.rows

    def char_poly(self) -> Polynomial:
        return char_poly(self.reduced_matrix)


def _require_square(phi: Matrix) -> None:
    if not phi.is_square:
        raise NonSquare(f"expected a square matrix, got {phi.shape}")


def reduce(phi: Matrix) -> LerayReduction:
    _require_square(phi)
    n = phi.rows
    power = Matrix.identity(n)
    m = 0
    current = n
    while True:
        nxt = power @ phi
        r = rank(nxt)
        if r == current:
            break
        power, current, m = nxt, r, m + 1
    basis = image_basis(power)
    inclusion = Matrix.from_columns(basis, n)
    if not basis:
        reduced = Matrix.zeros(0)
    else:
        reduced = solve(inclusion, phi @ inclusion)
    return LerayReduction(n, m, reduced, inclusion)


def betti_drop(phi: Matrix) -> int:
    """Dimension of the reduced space: dim V minus the multiplicity of 0."""
    _require_square(phi)
    if phi.rows == 0:
        return 0
    m0, _ = split_zero_part(char_poly(phi))
    return phi.rows - m0


def shift_equivalence_invariants(phi: Matrix, n_max: int) -> tuple[Polynomial, list[Fraction]]:
    """Nonzero spectrum (as a monic polynomial) and the trace sequence."""
    _require_square(phi)
    red = reduce(phi)
    spectrum = nonzero_part(char_poly(phi))
    traces = trace_powers(red.reduced_matrix, n_max) if red.dim else [Fraction(0)] * n_max
    return spectrum, traces


@dataclass(frozen=True)
class ShiftEquivalence:
    """Matrices r: V -> W and s: W -> V with lag m such that

    R r = r phi,  phi s = s R,  s r = phi^m,  r s = R^m.
    """

    r: Matrix
    s: Matrix
    lag: int

    def verify(self, phi: Matrix, reduced: Matrix) -> bool:
        r, s, m = self.r, self.s, self.lag
        return (
            reduced @ r == r @ phi
            and phi @ s == s @ reduced
            and s @ r == phi**m
            and r @ s == reduced**m
        )


def shift_equivalence_witness(phi: Matrix, red: LerayReduction | None = None) -> ShiftEquivalence:
    """Explicit shift equivalence between phi and its Leray reduction.

    Uses the splitting V = im phi^m (+) ker phi^m: the projection onto the
    first summand, followed by R^m, is r; the inclusion is s.
    """
    red = red or reduce(phi)
    n, k, m = red.original_dim, red.dim, red.stabilization_index
    if k == 0:
        return ShiftEquivalence(Matrix.zeros(0, n), Matrix.zeros(n, 0), m)
    complement = kernel_basis(phi**m)
    frame = red.inclusion.hstack(Matrix.from_columns(complement, n))
    projection = inverse(frame).submatrix(range(k), range(n))
    r = red.reduced_matrix**m @ projection
    return ShiftEquivalence(r, red.inclusion, m)


def is_invertible(m: Matrix) -> bool:
    return det(m) != 0
