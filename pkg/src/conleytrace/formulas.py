"""Trace, index and Euler-characteristic identities as two-sided checks.

Each function evaluates one identity from permutation and restriction data
and, where the Conley report provides the other side, says whether the two
agree.  Identities with hypotheses refuse to run outside them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .chains import ChainPairModel
from .conley import ConleyReport, build_report
from .errors import HypothesisViolated, InconsistentInput, MissingDegreeData, NonIntegralIndex
from .exactalg import Matrix, Polynomial, char_poly, nonzero_part, poly_gcd, roots_of_unity_only, trace_powers
from .unstable import BranchCohomology, PermutationModel, cycle_decomposition, fix_count, higher_block_trace


def _power_trace(m: Matrix, n: int) -> Fraction:
    return (m**n).trace() if m.rows else Fraction(0)


@dataclass(frozen=True)
class RestrictionData:
    """Action on im i* (inside Ȟ^q of the lifted X) and on Ȟ^q(X), per degree."""

    im_i_star: Mapping[int, Matrix] = field(default_factory=dict)
    hX: Mapping[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        for name, maps in (("im_i_star", self.im_i_star), ("hX", self.hX)):
            for q, m in maps.items():
                if not m.is_square:
                    raise InconsistentInput(f"{name}[{q}] is {m.shape}, not square")
        for q, m in self.im_i_star.items():
            h = self.hX.get(q)
            if h is not None and m.rows > h.rows:
                raise InconsistentInput(f"im i* in degree {q} is larger than Ȟ^{q}(X)")

    def im_i(self, q: int) -> Matrix:
        if q not in self.im_i_star:
            raise MissingDegreeData(f"no im i* data in degree {q}")
        return self.im_i_star[q]

    def h_X(self, q: int) -> Matrix:
        if q not in self.hX:
            raise MissingDegreeData(f"no Ȟ^{q}(X) data")
        return self.hX[q]

    def betti_X(self) -> dict[int, int]:
        return {q: m.rows for q, m in sorted(self.hX.items())}

    def euler_characteristic_X(self) -> int:
        if not self.hX:
            raise MissingDegreeData("no Ȟ^*(X) data")
        return sum((-1) ** q * m.rows for q, m in self.hX.items())

    def lefschetz_sequence(self, n_max: int) -> list[Fraction]:
        """Lefschetz numbers of f^n restricted to X, n = 1..n_max."""
        if not self.hX:
            raise MissingDegreeData("no Ȟ^*(X) data to compute Lefschetz numbers")
        out = [Fraction(0)] * n_max
        for q, m in self.hX.items():
            if m.rows:
                for i, t in enumerate(trace_powers(m, n_max)):
                    out[i] += (-1) ** q * t
        return out

    def to_json(self) -> dict:
        return {
            "im_i_star": {str(q): m.to_json() for q, m in sorted(self.im_i_star.items())},
            "hX": {str(q): m.to_json() for q, m in sorted(self.hX.items())},
        }


@dataclass(frozen=True)
class ScenarioBundle:
    """Everything known about one isolated invariant set.

    Only ``report`` and ``n_max`` are always present; checks that need a
    missing part raise MissingDegreeData.
    """

    report: ConleyReport | None
    perm: PermutationModel | None
    restriction: RestrictionData
    n_max: int
    is_attractor: bool = False
    model: ChainPairModel | None = None
    branch: BranchCohomology = field(default_factory=BranchCohomology)
    stable_perm: PermutationModel | None = None
    planar: bool = False
    orientation_reversing: bool | None = None
    fixes_complement_components: bool = False
    dual_model: ChainPairModel | None = None
    dim_ambient: int | None = None
    orientation: int = 1
    lambda_X: tuple[int, ...] | None = None
    name: str = ""
    parameters: Mapping = field(default_factory=dict)
    expected: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    @classmethod
    def from_model(cls, model: ChainPairModel, n_max: int, **kwargs) -> "ScenarioBundle":
        return cls(report=build_report(model, n_max), n_max=n_max, model=model, **kwargs)

    def with_n_max(self, n_max: int) -> "ScenarioBundle":
        report = build_report(self.model, n_max) if self.model is not None else None
        return replace(self, report=report, n_max=n_max)

    def require_perm(self) -> PermutationModel:
        if self.perm is None:
            raise MissingDegreeData("scenario has no permutation model of essential quasicomponents")
        return self.perm

    def require_report(self) -> ConleyReport:
        if self.report is None:
            raise MissingDegreeData("scenario has no Conley report")
        return self.report


@dataclass(frozen=True)
class TraceDecomposition:
    n: int
    value: Fraction
    summands: dict
    report_value: Fraction | None

    @property
    def consistent(self) -> bool | None:
        if self.report_value is None:
            return None
        return self.report_value == self.value


def _report_trace(bundle: ScenarioBundle, q: int, n: int) -> Fraction | None:
    rep = bundle.report
    if rep is None or n > rep.n_max:
        return None
    return rep.trace(q, n)


def corollary_A_trace(bundle: ScenarioBundle, n: int) -> TraceDecomposition:
    """trace h^1(f^n) = -1 + #Fix(phi^n) + trace on im i*, or only the last term for attractors."""
    perm = bundle.require_perm()
    third = _power_trace(bundle.restriction.im_i(1), n)
    if bundle.is_attractor:
        summands = {"constant": Fraction(0), "fixed_quasicomponents": Fraction(0), "im_i_star": third}
    else:
        summands = {
            "constant": Fraction(-1),
            "fixed_quasicomponents": Fraction(fix_count(perm, n)),
            "im_i_star": third,
        }
    value = sum(summands.values(), Fraction(0))
    return TraceDecomposition(n, value, summands, _report_trace(bundle, 1, n))


def corollary_B_trace(bundle: ScenarioBundle, q: int, n: int) -> TraceDecomposition:
    """Degree-q trace for q > 1 when phi^n moves every essential quasicomponent.

    If phi^n fixes some quasicomponent, HypothesisViolated is raised with the
    same three-term value attached as a fallback valid only modulo d.
    """
    if q <= 1:
        raise ValueError("corollary_B_trace needs q > 1")
    perm = bundle.require_perm()
    r = bundle.restriction
    summands = {
        "im_i_star_q": _power_trace(r.im_i(q), n),
        "im_i_star_q_minus_1": _power_trace(r.im_i(q - 1), n),
        "h_X_q_minus_1": -_power_trace(r.h_X(q - 1), n),
    }
    value = sum(summands.values(), Fraction(0))
    fixed = fix_count(perm, n)
    if fixed:
        d = cycle_decomposition(perm).d
        raise HypothesisViolated(
            f"phi^{n} fixes {fixed} essential quasicomponents; identity only holds mod {d}",
            fallback=TraceDecomposition(n, value, summands, _report_trace(bundle, q, n)),
            modulus=d,
        )
    return TraceDecomposition(n, value, summands, _report_trace(bundle, q, n))


def congruent(a: Fraction, b: Fraction, d: int) -> bool:
    """a == b mod d for integers; d == 0 means exact equality."""
    diff = a - b
    if d == 0:
        return diff == 0
    return diff.denominator == 1 and diff.numerator % d == 0


def fixed_point_index_sequence(bundle: ScenarioBundle) -> list[int]:
    """i(f^n, X) = sum_q (-1)^q trace h^q(f^n, X), for n = 1..n_max."""
    rep = bundle.require_report()
    out = []
    for n in range(1, rep.n_max + 1):
        s = sum(((-1) ** q * rep.trace(q, n) for q in rep.degrees), Fraction(0))
        if s.denominator != 1:
            raise NonIntegralIndex(f"alternating trace sum {s} at n={n} is not an integer")
        out.append(s.numerator)
    return out


@dataclass(frozen=True)
class LefschetzRow:
    n: int
    index: int
    lefschetz: Fraction
    mode: str  # "exact" or "mod d"
    modulus: int
    passed: bool


def lefschetz_hopf_check(bundle: ScenarioBundle, lambda_X_seq: Sequence | None = None) -> list[LefschetzRow]:
    """Compare i(f^n, X) with the Lefschetz number of f^n on X.

    Equality is required when no cycle length of phi divides n (always, when
    there are no essential quasicomponents); otherwise congruence mod d.
    """
    perm = bundle.require_perm()
    indices = fixed_point_index_sequence(bundle)
    n_max = len(indices)
    supplied = lambda_X_seq if lambda_X_seq is not None else bundle.lambda_X
    derived = bundle.restriction.lefschetz_sequence(n_max) if bundle.restriction.hX else None
    if supplied is None and derived is None:
        raise MissingDegreeData("need Lefschetz numbers of f|X or Ȟ^*(X) matrices")
    if supplied is not None:
        supplied = [Fraction(x) for x in supplied]
        if len(supplied) < n_max:
            raise MissingDegreeData(f"{len(supplied)} Lefschetz numbers supplied, need {n_max}")
        if derived is not None and list(supplied[:n_max]) != derived:
            raise InconsistentInput("supplied Lefschetz numbers disagree with the Ȟ^*(X) matrices")
    lam = supplied if supplied is not None else derived
    structure = cycle_decomposition(perm)
    rows = []
    for n in range(1, n_max + 1):
        periodic = any(n % r == 0 for r in structure.lengths)
        if periodic:
            ok = congruent(Fraction(indices[n - 1]), lam[n - 1], structure.d)
            rows.append(LefschetzRow(n, indices[n - 1], lam[n - 1], "mod d", structure.d, ok))
        else:
            rows.append(LefschetzRow(n, indices[n - 1], lam[n - 1], "exact", 0, indices[n - 1] == lam[n - 1]))
    return rows


class Theorem7Conclusion(str, enum.Enum):
    NO_CONCLUSION = "no conclusion"
    ALTERNATIVE_II_POSSIBLE = "alternative (ii) possible"
    INFINITELY_MANY_COMPONENTS = "infinitely many components"


@dataclass(frozen=True)
class Theorem7Diagnosis:
    conclusion: Theorem7Conclusion
    witness: Polynomial | None
    shared_factor: Polynomial | None = None
    note: str = ""


def theorem7_diagnostic(
    report: ConleyReport, hX1_matrix: Matrix | None = None, planar: bool = False
) -> Theorem7Diagnosis:
    """What a non-root-of-unity eigenvalue of h^1 forces on X.

    The witness is the factor of the degree-1 nonzero spectrum left after
    removing all cyclotomic factors.  Alternative (ii) needs that factor to
    share a root with the action on Ȟ^1(X); in the planar case (ii) is
    impossible and infinitely many components are forced.
    """
    if 1 not in report.degrees:
        raise MissingDegreeData("report has no degree-1 index")
    spectrum = report.spectrum(1)
    if spectrum.degree < 1:
        return Theorem7Diagnosis(Theorem7Conclusion.NO_CONCLUSION, None, note="degree-1 index is trivial")
    cert = roots_of_unity_only(spectrum)
    if cert:
        return Theorem7Diagnosis(Theorem7Conclusion.NO_CONCLUSION, None, note="all eigenvalues are roots of unity")
    witness = cert.witness
    shared = None
    if hX1_matrix is not None and hX1_matrix.rows:
        g = poly_gcd(witness, nonzero_part(char_poly(hX1_matrix)))
        if g.degree >= 1:
            shared = g
    if planar:
        note = "planar homeomorphism: alternative (ii) cannot hold"
        if shared is not None:
            note += "; supplied Ȟ^1(X) action contradicts the planar hypothesis"
        return Theorem7Diagnosis(Theorem7Conclusion.INFINITELY_MANY_COMPONENTS, witness, shared, note)
    if shared is not None:
        return Theorem7Diagnosis(Theorem7Conclusion.ALTERNATIVE_II_POSSIBLE, witness, shared)
    if hX1_matrix is None:
        return Theorem7Diagnosis(
            Theorem7Conclusion.ALTERNATIVE_II_POSSIBLE,
            witness,
            note="action on Ȟ^1(X) unknown; cannot rule out alternative (ii)",
        )
    return Theorem7Diagnosis(Theorem7Conclusion.INFINITELY_MANY_COMPONENTS, witness, note="Ȟ^1(X) shares no such eigenvalue")


@dataclass(frozen=True)
class S2Row:
    n: int
    index: int
    report_index: int | None
    bound_ok: bool
    strict_ok: bool
    consistent: bool | None


@dataclass(frozen=True)
class S2Verdict:
    rows: list[S2Row]
    period: int | None

    @property
    def passed(self) -> bool:
        return all(r.bound_ok and r.strict_ok and r.consistent is not False for r in self.rows)


def detect_period(seq: Sequence) -> int | None:
    """Smallest p <= len/2 with seq[i] == seq[i+p] throughout, else None."""
    n = len(seq)
    for p in range(1, n // 2 + 1):
        if all(seq[i] == seq[i + p] for i in range(n - p)):
            return p
    return None


def s2_bound_check(
    bundle: ScenarioBundle, orientation_reversing: bool, fixes_complement_components: bool
) -> S2Verdict:
    """Index bound for an isolated continuum with the cohomology of S^2 in R^3.

    With Ȟ^1(X) = 0 the index of an orientation-reversing map is
    2 - #Fix(phi^n) - #Fix(psi^n), psi being the permutation on the stable
    side.  The bound i <= 2 is checked for every n and, when f fixes the
    complementary components, i < 2 for odd n.  Odd n are cross-checked
    against the report, where f^n reverses orientation.
    """
    betti = bundle.restriction.betti_X()
    pattern = tuple(betti.get(q, 0) for q in range(max(betti, default=0) + 1))
    if pattern[:3] != (1, 0, 1) or any(pattern[3:]):
        raise HypothesisViolated(f"Ȟ^*(X) has Betti numbers {pattern}, not those of S^2")
    perm = bundle.require_perm()
    if bundle.stable_perm is None:
        raise MissingDegreeData("no permutation model for the stable side")
    reported = fixed_point_index_sequence(bundle) if bundle.report is not None else None
    rows = []
    values = []
    for n in range(1, bundle.n_max + 1):
        value = 2 - fix_count(perm, n) - fix_count(bundle.stable_perm, n)
        values.append(value)
        bound_ok = value <= 2 if orientation_reversing else True
        strict_ok = value < 2 if (orientation_reversing and fixes_complement_components and n % 2) else True
        rep = reported[n - 1] if reported is not None else None
        consistent = None
        if rep is not None and orientation_reversing and n % 2:
            consistent = rep == value
        rows.append(S2Row(n, value, rep, bound_ok, strict_ok, consistent))
    return S2Verdict(rows, detect_period(reported if reported is not None else values))


def lcy_template(r: int, q: int, n_max: int) -> list[int]:
    """1 - r*q when r divides n, else 1."""
    if r < 1 or q < 1:
        raise ValueError("r and q must be >= 1")
    return [1 - r * q if n % r == 0 else 1 for n in range(1, n_max + 1)]


def mod_d_law(perm: PermutationModel, branch: BranchCohomology, n_max: int) -> bool:
    """Traces built purely from permutation/block data vanish mod d."""
    d = cycle_decomposition(perm).d
    if d == 0:
        return True
    for n in range(1, n_max + 1):
        if fix_count(perm, n) % d:
            return False
        for q in branch.degrees():
            t = higher_block_trace(branch, perm, q, n)
            if t.denominator != 1 or t.numerator % d:
                return False
    return True
