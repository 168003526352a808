import pytest

from conleytrace.analysis import FAIL, run_checks
from conleytrace.chains import validate
from conleytrace.conley import verify_iterate_law
from conleytrace.errors import UnsupportedDimension
from conleytrace.exactalg import Matrix, Polynomial
from conleytrace.examples import (
    SCENARIOS,
    all_builtin_bundles,
    gen_attractor_point,
    gen_g_horseshoe,
    gen_lcy,
    gen_repeller,
    gen_smale_horseshoe_unstable,
)
from conleytrace.formulas import Theorem7Conclusion, corollary_A_trace, fixed_point_index_sequence, lefschetz_hopf_check, theorem7_diagnostic
from conleytrace.unstable import cycle_decomposition, fix_count, h1_model_matrix

x = Polynomial.x()


def test_horseshoe_bundle():
    b = gen_g_horseshoe()
    assert b.report.spectrum(1) == x - 2
    assert fixed_point_index_sequence(b) == [-(2**n) for n in range(1, 9)]
    assert theorem7_diagnostic(b.report, planar=b.planar).conclusion is Theorem7Conclusion.INFINITELY_MANY_COMPONENTS


def test_smale_unstable():
    p = gen_smale_horseshoe_unstable()
    assert h1_model_matrix(p) == Matrix([[1]])
    assert cycle_decomposition(p).d == 1
    assert all(fix_count(p, n) == 1 for n in range(1, 6))


@pytest.mark.parametrize("r, q", [(2, 1), (3, 2), (4, 3)])
def test_lcy_bundle(r, q):
    b = gen_lcy(r, q, 4)
    assert fix_count(b.perm, r) == r * q
    assert cycle_decomposition(b.perm).d == r
    if (r, q) == (2, 1):
        assert fixed_point_index_sequence(b) == [1, -1, 1, -1]


def test_attractor_and_repeller():
    assert fixed_point_index_sequence(gen_attractor_point()) == [1] * 8
    rep = gen_repeller(-1, 2).report
    assert list(rep.degrees[2].traces) == [(-1) ** n for n in range(1, 9)]
    assert all(r.passed and r.mode == "exact" for r in lefschetz_hopf_check(gen_attractor_point()))
    with pytest.raises(UnsupportedDimension):
        gen_repeller(1, 4)
    with pytest.raises(UnsupportedDimension):
        gen_attractor_point(5)


def test_every_builtin_valid_and_consistent():
    for b in all_builtin_bundles(8):
        assert validate(b.model).ok
        assert all(verify_iterate_law(b.model, n) for n in range(1, 5))
        results = run_checks(b)
        assert not [r for r in results if r.status == FAIL], (b.name, b.parameters)


def test_registry_builds_defaults():
    for name, spec in SCENARIOS.items():
        b = spec.build(4)
        assert b.n_max == 4 and validate(b.model).ok
