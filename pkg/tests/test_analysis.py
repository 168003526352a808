from dataclasses import replace

import pytest

from conleytrace.analysis import CHECKS, FAIL, PASS, SKIP, all_passed, run_checks
from conleytrace.examples import gen_g_horseshoe, gen_lcy, gen_s2_continuum


def by_name(results):
    return {r.name: r for r in results}


def test_horseshoe_statuses():
    res = by_name(run_checks(gen_g_horseshoe()))
    assert res["iterate"].status == PASS
    assert res["theorem7"].status == PASS and "infinitely many" in res["theorem7"].message
    assert res["corollaryA"].status == SKIP
    assert res["expected"].status == PASS


def test_s2_runs_every_check():
    res = by_name(run_checks(gen_s2_continuum()))
    assert all(r.status == PASS for r in res.values())
    assert set(res) == set(CHECKS) | {"expected"}


def test_corrupted_expected_names_first_n():
    b = gen_lcy(3, 2)
    bad = list(b.expected["index_sequence"])
    bad[4] = 7
    res = by_name(run_checks(replace(b, expected={"index_sequence": bad})))
    assert res["expected"].status == FAIL
    assert "n=5" in res["expected"].message
    assert not all_passed(res.values())


def test_wrong_spectrum_and_theorem7_expected():
    b = replace(gen_g_horseshoe(), expected={"nonzero_spectra": {"1": ["-3", "1"]}, "theorem7": "no conclusion"})
    res = by_name(run_checks(b))["expected"]
    assert res.status == FAIL and len(res.failures) == 2


def test_subset_and_unknown():
    res = run_checks(gen_lcy(2, 1), ["chi"])
    assert [r.name for r in res] == ["chi", "expected"]
    with pytest.raises(ValueError):
        run_checks(gen_lcy(2, 1), ["nope"])
