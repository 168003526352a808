"""Per-degree cohomological Conley index data assembled from a chain model."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chains import ChainPairModel, induced_endomorphism, iterate_model, require_valid
from .errors import DimensionMismatch
from .exactalg import Matrix, Polynomial, char_poly, nonzero_part, power_root_poly, trace_powers
from .leray import LerayReduction, reduce

_LINEAR_ONE = Polynomial([-1, 1])  # x - 1
_LINEAR_MINUS_ONE = Polynomial([1, 1])  # x + 1


@dataclass(frozen=True)
class DegreeIndex:
    degree: int
    betti: int
    induced: Matrix
    reduced: LerayReduction
    nonzero_spectrum: Polynomial
    traces: tuple[Fraction, ...]

    @property
    def betti_drop(self) -> int:
        return self.reduced.dim


@dataclass(frozen=True)
class ConleyReport:
    max_degree: int
    n_max: int
    degrees: dict[int, DegreeIndex]
    chi_wu_rel: int
    attractor_signature: bool
    repeller_signature: int | None
    name: str = ""

    def trace(self, q: int, n: int) -> Fraction:
        """trace of the degree-q index of f^n (zero outside the model)."""
        if not 1 <= n <= self.n_max:
            raise IndexError(f"n={n} outside 1..{self.n_max}")
        d = self.degrees.get(q)
        return d.traces[n - 1] if d is not None else Fraction(0)

    def spectrum(self, q: int) -> Polynomial:
        d = self.degrees.get(q)
        return d.nonzero_spectrum if d is not None else Polynomial([1])

    def to_json(self) -> dict:
        degrees = {}
        for q, d in sorted(self.degrees.items()):
            degrees[str(q)] = {
                "betti": d.betti,
                "betti_drop": d.betti_drop,
                "stabilization_index": d.reduced.stabilization_index,
                "reduced_matrix": d.reduced.reduced_matrix.to_json(),
                "nonzero_spectrum": d.nonzero_spectrum.to_json(),
                "traces": [str(t) for t in d.traces],
            }
        return {
            "degrees": degrees,
            "chi_wu_rel": self.chi_wu_rel,
            "flags": {
                "attractor_signature": self.attractor_signature,
                "repeller_signature": self.repeller_signature,
            },
        }


def build_report(model: ChainPairModel, n_max: int) -> ConleyReport:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    require_valid(model)
    induced = induced_endomorphism(model)
    degrees = {}
    for q in model.degrees():
        phi = induced[q]
        red = reduce(phi)
        spectrum = nonzero_part(char_poly(phi))
        if red.dim:
            traces = tuple(trace_powers(red.reduced_matrix, n_max))
        else:
            traces = (Fraction(0),) * n_max
        degrees[q] = DegreeIndex(q, induced.betti(q), phi, red, spectrum, traces)

    chi = sum((-1) ** q * d.betti_drop for q, d in degrees.items())
    zero = degrees[0]
    attractor = zero.nonzero_spectrum == _LINEAR_ONE and all(t == 1 for t in zero.traces)
    top = degrees[model.max_degree].nonzero_spectrum
    repeller = 1 if top == _LINEAR_ONE else -1 if top == _LINEAR_MINUS_ONE else None
    return ConleyReport(model.max_degree, n_max, degrees, chi, attractor, repeller, model.name)


@dataclass(frozen=True)
class DegreeComparison:
    degree: int
    expected: Polynomial
    actual: Polynomial
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    passed: bool
    details: list = field(default_factory=list)
    message: str = ""

    def __bool__(self) -> bool:
        return self.passed


def verify_iterate_law(model: ChainPairModel, n: int) -> Verdict:
    """Nonzero spectrum of the n-th iterate equals the n-th powers of the spectrum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = build_report(model, 1)
    iterated = build_report(iterate_model(model, n), 1)
    details = []
    for q in model.degrees():
        expected = power_root_poly(base.spectrum(q), n)
        actual = iterated.spectrum(q)
        details.append(DegreeComparison(q, expected, actual, expected == actual))
    ok = all(d.passed for d in details)
    bad = [d.degree for d in details if not d.passed]
    return Verdict(ok, details, "" if ok else f"iterate law fails in degrees {bad}")


def szymczak_duality_check(
    model_f: ChainPairModel,
    model_finv: ChainPairModel,
    dim_ambient: int,
    orientation: int,
) -> Verdict:
    """Compare h^{d-q}(f) with h^q(f^-1), eigenvalues scaled by the orientation sign.

    The caller asserts that both models come from one invertible map and its
    inverse on an open set of R^d.  One global sign is applied; a degree that
    would only match under the opposite sign is flagged in its note.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    for m in (model_f, model_finv):
        if m.max_degree > dim_ambient:
            raise DimensionMismatch(f"model has degree {m.max_degree} above ambient dimension {dim_ambient}")
    rep_f = build_report(model_f, 1)
    rep_inv = build_report(model_finv, 1)
    details = []
    for q in range(dim_ambient + 1):
        actual = rep_f.spectrum(dim_ambient - q)
        dual = rep_inv.spectrum(q)
        expected = dual.scale_roots(orientation)
        ok = actual == expected
        note = ""
        if not ok and actual == dual.scale_roots(-orientation):
            note = "matches under the opposite orientation sign"
        details.append(DegreeComparison(dim_ambient - q, expected, actual, ok, note))
    ok = all(d.passed for d in details)
    bad = [d.degree for d in details if not d.passed]
    return Verdict(ok, details, "" if ok else f"duality fails in degrees {bad}")
