from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import permutations
from conleytrace.errors import InconsistentBlocks, InvalidPermutation, ParseError
from conleytrace.exactalg import Matrix, Polynomial, char_poly, roots_of_unity_only, nonzero_part, trace_powers
from conleytrace.examples import gen_smale_horseshoe_unstable
from conleytrace.unstable import (
    BranchCohomology,
    PermutationModel,
    block_matrix,
    chi_congruence_check,
    cycle_decomposition,
    cycle_type_char_poly,
    fix_count,
    h1_model_matrix,
    higher_block_trace,
    permutation_from_json,
    relative_euler_characteristic,
)

x = Polynomial.x()


def brute_fix(phi, n):
    count = 0
    for j in range(len(phi)):
        k = j
        for _ in range(n):
            k = phi[k]
        count += k == j
    return count


def test_cycle_examples():
    s = cycle_decomposition(PermutationModel(3, (0, 1, 2)))
    assert s.lengths == (1, 1, 1) and s.d == 1
    s = cycle_decomposition(PermutationModel.from_cycles(lengths=[4]))
    assert s.lengths == (4,) and s.d == 4
    assert cycle_decomposition(PermutationModel.from_cycles(lengths=[2, 4])).d == 2
    assert cycle_decomposition(PermutationModel(0, ())).d == 0


def test_fix_count_examples():
    p = PermutationModel.from_cycles(lengths=[3])
    assert fix_count(p, 3) == 3 and fix_count(p, 2) == 0
    r, q = 3, 2
    assert fix_count(PermutationModel.from_cycles(lengths=[r] * q), r) == r * q


def test_h1_model_examples():
    swap = PermutationModel(2, (1, 0))
    assert h1_model_matrix(swap) == Matrix([[0, 1], [1, 0]])
    assert char_poly(h1_model_matrix(swap)) == x**2 - 1
    for r in range(1, 7):
        assert char_poly(h1_model_matrix(PermutationModel.from_cycles(lengths=[r]))) == x**r - 1
    empty = h1_model_matrix(PermutationModel(0, ()))
    assert empty.shape == (0, 0) and char_poly(empty) == Polynomial([1])
    assert h1_model_matrix(gen_smale_horseshoe_unstable()) == Matrix([[1]])


def test_invalid_permutation():
    with pytest.raises(InvalidPermutation):
        PermutationModel(2, (0, 0)).check()


@given(permutations(max_size=9))
def test_permutation_spectrum_properties(phi):
    p = PermutationModel(len(phi), phi)
    m = h1_model_matrix(p)
    assert char_poly(m) == cycle_type_char_poly(p)
    traces = trace_powers(m, 12) if m.rows else [0] * 12
    assert traces == [brute_fix(phi, n) for n in range(1, 13)]
    assert all(fix_count(p, n) == brute_fix(phi, n) for n in range(1, 13))
    assert roots_of_unity_only(nonzero_part(char_poly(m)))


def test_higher_block_trace_examples():
    swap = PermutationModel(2, (1, 0))
    assert higher_block_trace(BranchCohomology({2: (0, 0)}), swap, 2, 3) == 0
    b = BranchCohomology({2: (1, 1)})
    assert higher_block_trace(b, swap, 2, 2) == 2
    assert higher_block_trace(b, swap, 2, 1) == 0


def test_block_matrix_with_supplied_blocks():
    swap = PermutationModel(2, (1, 0))
    b = BranchCohomology({2: (1, 1)}, {2: {0: Matrix([[2]]), 1: Matrix([[3]])}})
    assert block_matrix(b, swap, 2) == Matrix([[0, 3], [2, 0]])
    assert higher_block_trace(b, swap, 2, 2) == 12


@pytest.mark.parametrize(
    "branch",
    [
        BranchCohomology({1: (1, 1)}),
        BranchCohomology({2: (1,)}),
        BranchCohomology({2: (1, 2)}),
        BranchCohomology({2: (1, 1)}, {2: {0: Matrix([[0]])}}),
        BranchCohomology({2: (1, 1)}, {2: {0: Matrix([[1, 0]])}}),
    ],
)
def test_inconsistent_blocks(branch):
    with pytest.raises(InconsistentBlocks):
        block_matrix(branch, PermutationModel(2, (1, 0)), 2)


def test_chi_examples():
    empty = PermutationModel(0, ())
    v = chi_congruence_check(BranchCohomology(), empty, 1, 1)
    assert v.passed and v.exact_additivity
    cyc = PermutationModel.from_cycles(lengths=[4])
    assert relative_euler_characteristic(BranchCohomology(), cyc) == -4
    assert chi_congruence_check(BranchCohomology(), cyc, 1, -3).passed
    assert not chi_congruence_check(BranchCohomology(), cyc, 1, -2).passed
    ident = PermutationModel(3, (0, 1, 2))
    assert chi_congruence_check(BranchCohomology(), ident, 5, -17).passed


@given(st.integers(1, 6), st.integers(1, 3), st.lists(st.integers(0, 3), max_size=3))
def test_block_euler_characteristic_divisible_by_d(k, copies, betti):
    p = PermutationModel.from_cycles(lengths=[k] * copies)
    branch = BranchCohomology({q + 2: (b,) * p.size for q, b in enumerate(betti)})
    assert relative_euler_characteristic(branch, p) % cycle_decomposition(p).d == 0


def test_permutation_json():
    p, b = permutation_from_json({"phi": [1, 0], "branch_betti": {"2": [1, 1]}})
    assert p.phi == (1, 0) and b.betti == {2: (1, 1)}
    with pytest.raises(ParseError) as exc:
        permutation_from_json({"phi": [1, 0], "branch_betti": {"2": [1, 2]}}, "$.perm")
    assert exc.value.location == "$.perm.branch_betti"
    with pytest.raises(ParseError):
        permutation_from_json({"phi": [0, 0]})
