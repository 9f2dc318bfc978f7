# -*- coding: utf-8 -*-
from math import comb

import pytest
from sympy import QQ

from pcompact_algebra.constants import GroupConst
from pcompact_algebra.errors import BudgetExceededError, InconsistentSystemError, VerificationError
from pcompact_algebra.integrality import (
    CombinationTerm,
    IntegralCombination,
    combination_gradings,
    default_candidates,
    derive_combination,
    expand_F_monomial,
    linear_coefficient_recursion,
    load_combination,
    load_combinations,
    solve_integralization,
    verify_combination,
)
from pcompact_algebra.invariants import build_invariants
from pcompact_algebra.sympoly import SymPoly


def _bare(group_id, base_degree):
    return IntegralCombination(group_id, base_degree, (CombinationTerm(((base_degree, 1),), QQ.one),), base_degree)


def test_load_combination():
    combination = load_combination("G29", 4)
    assert combination.prime == 5
    assert combination.coefficient(((4, 1),)) == 1
    assert combination.coefficient(((8, 1),)) == QQ(-1, 5)
    assert combination.coefficient(((4, 2),)) == QQ(-1, 10)


def test_combination_json_encoding():
    combination = load_combination("G29", 4)
    assert IntegralCombination.from_json(combination.to_json()) == combination


def test_combination_rejects_foreign_denominators():
    with pytest.raises(VerificationError):
        IntegralCombination(
            "G29", 4, (CombinationTerm(((4, 1),), QQ.one), CombinationTerm(((8, 1),), QQ(1, 3))), 4
        )


def test_combination_needs_a_unit_base_term():
    with pytest.raises(VerificationError):
        IntegralCombination("G29", 4, (CombinationTerm(((4, 1),), QQ(2)),), 4)


def test_expand_F_monomial():
    assert expand_F_monomial("G29", ((4, 1),), 8) == SymPoly(4, {(8,): QQ(4, 5), (5, 1, 1, 1): QQ(-12, 5)})
    assert expand_F_monomial("G29", ((4, 2),), 8) == build_invariants("G29")[4].pow(2)
    assert not expand_F_monomial("G29", ((4, 1),), 6)


def test_expand_F_monomial_above_the_cap():
    with pytest.raises(BudgetExceededError):
        expand_F_monomial("G29", ((4, 1),), 24)


def test_log_picture_has_every_grading():
    # log(1 + x) has an x^2 term, so F_4 already moves to grading 5.
    assert expand_F_monomial("G29", ((4, 1),), 5, picture="log")
    assert combination_gradings(load_combination("G29", 4), "log", through=8) == [4, 5, 6, 7, 8]
    assert combination_gradings(load_combination("G29", 4)) == [4, 8, 12, 16, 20]


def test_default_candidates():
    assert default_candidates("G29", 8) == [((4, 2),), ((8, 1),)]
    assert default_candidates("G34", 12) == [((12, 1),)]
    assert default_candidates("G34", 36) == [((36, 1),)]
    assert default_candidates("G34", 48) == []


def test_solve_integralization_at_grading_8():
    step = solve_integralization(_bare("G29", 4), 8, [((4, 2),), ((8, 1),)])
    assert step.power == 1
    assert step.values == (3, 1)
    assert step.combination.coefficient(((4, 2),)) == QQ(-3, 5)
    assert step.combination.coefficient(((8, 1),)) == QQ(-1, 5)
    assert step.combination.verified_through == 8


def test_solve_integralization_without_repair():
    step = solve_integralization(load_combination("G29", 4), 8, [((4, 2),), ((8, 1),)])
    assert step.power == 0
    assert step.solution is None
    assert step.values == (0, 0)


def test_solve_integralization_inconsistent():
    # F_8 has no m_(5,1,1,1) part, so it cannot cancel the one of F_4.
    with pytest.raises(InconsistentSystemError):
        solve_integralization(_bare("G29", 4), 8, [((8, 1),)])


def test_solve_integralization_rejects_wrong_degrees():
    with pytest.raises(ValueError):
        solve_integralization(_bare("G29", 4), 8, [((4, 1),)])


def test_derive_combination_first_step():
    steps = derive_combination("G29", 4, through=8)
    assert [step.grading for step in steps] == [8]
    assert steps[0].values == (3, 1)


def test_verify_combination_detects_the_bare_symbol():
    ledger = verify_combination(_bare("G29", 4), through=8)
    assert ledger["grading"].tolist() == [4, 8]
    assert ledger["passed"].tolist() == [True, False]
    assert ledger["min_valuation"].tolist()[1] == -1


def test_verify_combination_g29_f4_line():
    ledger = verify_combination(load_combination("G29", 4), through=12)
    assert ledger["passed"].all()
    assert ledger["modulus"].tolist() == [1, 5, 25]


@pytest.mark.slow
@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_shipped_ledgers(group_id):
    for combination in load_combinations(group_id).values():
        assert verify_combination(combination)["passed"].all()


@pytest.mark.slow
def test_verify_combination_in_a_process_pool():
    ledger = verify_combination(load_combination("G29", 4), threads=2)
    assert ledger.equals(verify_combination(load_combination("G29", 4)))


@pytest.mark.slow
@pytest.mark.parametrize("base_degree", [4, 8, 12])
def test_derived_g29_lines_are_integral(base_degree):
    derived = derive_combination("G29", base_degree)[-1].combination
    assert verify_combination(derived)["passed"].all()


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_linear_coefficient_recursion(k):
    def c(j):
        return 1 + (-1) ** j * 27 ** (j - 1) * 5

    coefficients = linear_coefficient_recursion(k, 6)
    assert coefficients[0] == 1
    for t in range(1, 7):
        total = sum(coefficients[j] * comb(6 * k + 6 * j, t - j) * c(k + j) for j in range(t + 1))
        assert total % 7**t == 0
        assert 0 <= coefficients[t] < 7**t


def test_linear_coefficient_recursion_first_value():
    assert linear_coefficient_recursion(1, 1) == [1, 1]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_shipped_g34_lines_follow_the_recursion(k):
    line = load_combination("G34", 6 * k).linear_coefficients()
    expected = linear_coefficient_recursion(k, 7 - k)
    assert [line[6 * (k + t)] * 7**t for t in range(8 - k)] == expected
