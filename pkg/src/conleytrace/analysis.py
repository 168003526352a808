"""Run the formula checks on a scenario bundle and collect pass/fail/skip results."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .conley import szymczak_duality_check, verify_iterate_law
from .errors import ConleyError, HypothesisViolated, MissingDegreeData
from .exactalg import Polynomial
from .formulas import (
    ScenarioBundle,
    congruent,
    corollary_A_trace,
    corollary_B_trace,
    fixed_point_index_sequence,
    lefschetz_hopf_check,
    s2_bound_check,
    theorem7_diagnostic,
)
from .unstable import chi_congruence_check

PASS, FAIL, SKIP = "pass", "fail", "skip"

ITERATE_LAW_MAX = 4


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    message: str = ""
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"check": self.name, "status": self.status, "message": self.message}
        if self.failures:
            out["failures"] = self.failures
        return out


def _result(name: str, failures: list, ok_message: str) -> CheckResult:
    if failures:
        return CheckResult(name, FAIL, failures[0], failures)
    return CheckResult(name, PASS, ok_message)


def _check_iterate(b: ScenarioBundle) -> CheckResult:
    if b.model is None:
        raise MissingDegreeData("no chain model")
    top = min(b.n_max, ITERATE_LAW_MAX)
    failures = []
    for n in range(1, top + 1):
        v = verify_iterate_law(b.model, n)
        if not v:
            failures.append(f"n={n}: {v.message}")
    return _result("iterate", failures, f"n=1..{top}")


def _check_duality(b: ScenarioBundle) -> CheckResult:
    if b.model is None or b.dual_model is None or b.dim_ambient is None:
        raise MissingDegreeData("needs model, dual_model and dim_ambient")
    v = szymczak_duality_check(b.model, b.dual_model, b.dim_ambient, b.orientation)
    failures = [
        f"degree {d.degree}: expected {d.expected.format()}, got {d.actual.format()}" + (f" ({d.note})" if d.note else "")
        for d in v.details
        if not d.passed
    ]
    return _result("duality", failures, f"d={b.dim_ambient}, sign {b.orientation:+d}")


def _check_corollary_a(b: ScenarioBundle) -> CheckResult:
    failures = []
    for n in range(1, b.n_max + 1):
        t = corollary_A_trace(b, n)
        if t.consistent is False:
            failures.append(f"n={n}: formula gives {t.value}, index trace is {t.report_value}")
    return _result("corollaryA", failures, f"trace h^1 matches for n=1..{b.n_max}")


def _check_corollary_b(b: ScenarioBundle) -> CheckResult:
    rep = b.require_report()
    if rep.max_degree < 2:
        raise MissingDegreeData("no degrees above 1")
    failures = []
    exact = modular = 0
    for q in range(2, rep.max_degree + 1):
        for n in range(1, b.n_max + 1):
            try:
                t = corollary_B_trace(b, q, n)
            except HypothesisViolated as exc:
                t = exc.fallback
                if t.report_value is not None and not congruent(t.value, t.report_value, exc.modulus):
                    failures.append(f"q={q}, n={n}: {t.value} vs {t.report_value} not congruent mod {exc.modulus}")
                modular += 1
                continue
            if t.consistent is False:
                failures.append(f"q={q}, n={n}: formula gives {t.value}, index trace is {t.report_value}")
            exact += 1
    return _result("corollaryB", failures, f"{exact} exact, {modular} mod d")


def _check_lefschetz(b: ScenarioBundle) -> CheckResult:
    rows = lefschetz_hopf_check(b)
    failures = [
        f"n={r.n}: i={r.index}, Lambda={r.lefschetz}" + (f" (mod {r.modulus})" if r.mode != "exact" else "")
        for r in rows
        if not r.passed
    ]
    exact = sum(r.mode == "exact" for r in rows)
    return _result("lefschetz", failures, f"{exact} exact, {len(rows) - exact} mod d")


def _check_chi(b: ScenarioBundle) -> CheckResult:
    perm = b.require_perm()
    rep = b.require_report()
    v = chi_congruence_check(b.branch, perm, b.restriction.euler_characteristic_X(), rep.chi_wu_rel)
    return _result("chi", [] if v.passed else [v.message], v.message)


def _check_theorem7(b: ScenarioBundle) -> CheckResult:
    diag = theorem7_diagnostic(b.require_report(), b.restriction.hX.get(1), b.planar)
    msg = diag.conclusion.value
    if diag.witness is not None:
        msg += f" (witness {diag.witness.format()})"
    return CheckResult("theorem7", PASS, msg)


def _check_s2(b: ScenarioBundle) -> CheckResult:
    if b.stable_perm is None or b.orientation_reversing is None:
        raise MissingDegreeData("needs stable_perm and orientation_reversing")
    v = s2_bound_check(b, b.orientation_reversing, b.fixes_complement_components)
    failures = []
    for r in v.rows:
        if not r.bound_ok:
            failures.append(f"n={r.n}: index {r.index} exceeds 2")
        elif not r.strict_ok:
            failures.append(f"n={r.n}: index {r.index} not below 2")
        elif r.consistent is False:
            failures.append(f"n={r.n}: formula gives {r.index}, report gives {r.report_index}")
    period = f", period {v.period}" if v.period else ""
    return _result("s2", failures, f"bound holds for n=1..{b.n_max}{period}")


def _spectrum_matches(expected, actual: Polynomial) -> bool:
    try:
        return Polynomial.from_json(list(expected)) == actual
    except (ConleyError, TypeError, ValueError):
        return False


def check_expected(b: ScenarioBundle) -> CheckResult:
    """Compare the pipeline output with the scenario's own ``expected`` block."""
    exp = b.expected
    if not exp:
        raise MissingDegreeData("no expected values")
    rep = b.require_report()
    failures = []
    if "index_sequence" in exp:
        seq = fixed_point_index_sequence(b)
        for n, (want, got) in enumerate(zip(exp["index_sequence"], seq), start=1):
            if Fraction(want) != got:
                failures.append(f"index sequence differs first at n={n}: expected {want}, got {got}")
                break
    for q, coeffs in sorted(exp.get("nonzero_spectra", {}).items(), key=lambda kv: int(kv[0])):
        actual = rep.spectrum(int(q))
        if not _spectrum_matches(coeffs, actual):
            failures.append(f"degree {q} nonzero spectrum: expected {list(coeffs)}, got {actual.to_json()}")
    if "theorem7" in exp:
        diag = theorem7_diagnostic(rep, b.restriction.hX.get(1), b.planar)
        if diag.conclusion.value != exp["theorem7"]:
            failures.append(f"theorem7: expected {exp['theorem7']!r}, got {diag.conclusion.value!r}")
    return _result("expected", failures, ", ".join(sorted(str(k) for k in exp)))


CHECKS: dict[str, Callable[[ScenarioBundle], CheckResult]] = {
    "iterate": _check_iterate,
    "duality": _check_duality,
    "corollaryA": _check_corollary_a,
    "corollaryB": _check_corollary_b,
    "lefschetz": _check_lefschetz,
    "chi": _check_chi,
    "theorem7": _check_theorem7,
    "s2": _check_s2,
}


def run_checks(b: ScenarioBundle, checks: Iterable[str] | None = None) -> list[CheckResult]:
    """Run the named checks (all by default) followed by the expected-values check.

    A check whose inputs are absent, or whose hypotheses do not hold for the
    scenario, is reported as skipped.
    """
    names = list(CHECKS) if checks is None else list(checks)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    out = []
    for name, fn in [(n, CHECKS[n]) for n in names] + [("expected", check_expected)]:
        try:
            out.append(fn(b))
        except (MissingDegreeData, HypothesisViolated) as exc:
            out.append(CheckResult(name, SKIP, str(exc)))
        except ConleyError as exc:
            out.append(CheckResult(name, FAIL, f"{type(exc).__name__}: {exc}", [str(exc)]))
    return out


def all_passed(results: Iterable[CheckResult]) -> bool:
    return all(r.status != FAIL for r in results)
