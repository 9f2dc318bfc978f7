# -*- coding: utf-8 -*-
import pytest
from sympy import ZZ, Poly

from pcompact_algebra.constants import GroupConst
from pcompact_algebra.errors import BudgetExceededError, CatalogLookupError
from pcompact_algebra.v1pi import (
    X,
    bousfield_generator,
    bspace_group,
    classical_residuals,
    closed_form,
    closed_form_at,
    exponent_at,
    find_peak,
    order_equality,
    peaks,
    period,
    presentation_matrix,
    reduce_to_residuals,
    snf_at,
    snf_cokernel_ppart,
    sweep,
    valuation_profile,
    verify_cyclic_odd,
)
from pcompact_algebra.verify_all import (
    REFERENCE_CONSTANT_CLASSES,
    REFERENCE_PEAK_CLASSES,
    REFERENCE_PIVOT_COUNTS,
    REFERENCE_SPOT_VALUES,
)


def test_bousfield_generator():
    assert bousfield_generator(5) == 2
    assert bousfield_generator(7) == 3
    assert period("G29") == 20
    assert period("G34") == 42


def test_g29_presentation():
    presentation = presentation_matrix("G29")
    assert presentation.shape == (8, 4)
    assert presentation.r == 2
    assert [int(presentation.entry(0, j).eval(0)) for j in range(4)] == [125, -15600, -31274880, -9765631257408]
    assert presentation.entry(4, 0) == Poly(8 - X, X, domain=ZZ)
    assert [int(presentation.entry(4, j).eval(0)) for j in range(1, 4)] == [-24, -1344, -268704]


def test_untransposed_presentation():
    presentation = presentation_matrix("G29", transposed=False)
    assert [int(presentation.entry(i, 0).eval(0)) for i in range(4)] == [125, -15600, -31274880, -9765631257408]


def test_presentation_at():
    presentation = presentation_matrix("G29")
    assert presentation.at(3)[4][0] == 0
    with pytest.raises(BudgetExceededError):
        presentation.at(3, max_bits=1)
    with pytest.raises(ValueError):
        presentation.at(0)


def test_snf_cokernel_ppart():
    group = snf_cokernel_ppart([[25, 0], [0, 3], [5, 10]], 5)
    assert group.exponents == (1,)
    assert snf_cokernel_ppart([[1, 0], [0, 1]], 5).is_trivial()


def test_g29_classical_residuals():
    residuals = classical_residuals("G29")
    assert [(row + 1, col + 1) for row, col in residuals.pivots] == [(5, 2), (6, 3), (7, 4)]
    assert len(residuals.polynomials) == 5
    # The last residual is the characteristic polynomial of psi^2.
    assert residuals.polynomials[4] == Poly((8 - X) * (128 - X) * (2048 - X) * (524288 - X), X, domain=ZZ)
    assert residuals.denominator.degree() == 2
    assert residuals.denominator.LC() == -268704


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_unit_pivoting_leaves_one_column(group_id):
    residuals = reduce_to_residuals(group_id)
    assert residuals.is_cyclic()
    assert not residuals.is_trivial()
    assert len(residuals.pivots) == REFERENCE_PIVOT_COUNTS[group_id]


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_off_class_reduction_is_trivial(group_id):
    prime = GroupConst.PRIME[group_id]
    residue = (GroupConst.RESIDUE_X0[group_id] + 1) % prime or 1
    assert reduce_to_residuals(group_id, residue).is_trivial()


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_verify_cyclic_odd(group_id):
    assert verify_cyclic_odd(group_id) == REFERENCE_PIVOT_COUNTS[group_id]


@pytest.mark.parametrize("group_t, exponent", REFERENCE_SPOT_VALUES.items())
def test_spot_values(group_t, exponent):
    group_id, t = group_t
    assert exponent_at(group_id, t).exponent == exponent
    assert snf_at(group_id, t).exponent == exponent


def test_exponent_at_label():
    assert exponent_at("G34", 5).label() == "Z/7^5"
    assert exponent_at("G29", 4).label() == "0"


def test_exponent_at_rejects_non_positive_t():
    with pytest.raises(ValueError):
        exponent_at("G29", 0)


def test_exponent_at_huge_t():
    # t - 2507 = 4 * 5^30, far past the cap.
    assert exponent_at("G29", 2507 + 4 * 5**30).exponent == 8


@pytest.mark.parametrize("t", [3, 7, 8, 27])
def test_order_equality(t):
    even, odd = order_equality("G29", t)
    assert even.exponent == odd.exponent


def test_valuation_profile():
    profile = valuation_profile("G29", 3, 5)
    assert len(profile) == 5
    assert profile[-1] == 0


def test_find_peak_g29_class_7():
    result = find_peak("G29", 7)
    assert result.peak == 2507
    assert result.modulus == 12500
    assert (result.base, result.cap) == (3, 8)
    assert result.offset() == (4, 4)
    assert result.formula() == "min(8,3+nu_5(t-7-4*5^4))"


def test_find_peak_rejects_zero_classes():
    with pytest.raises(ValueError):
        find_peak("G29", 4)


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_closed_forms(group_id):
    constant = {result.representative: result.cap for result in peaks(group_id) if result.is_constant()}
    assert constant == REFERENCE_CONSTANT_CLASSES[group_id]
    peaked = {
        result.representative: (result.base, result.cap, *result.offset())
        for result in peaks(group_id)
        if not result.is_constant()
    }
    assert peaked == REFERENCE_PEAK_CLASSES[group_id]


def test_closed_form_table():
    table = closed_form("G29")
    assert table["kind"].tolist() == ["zero", "constant", "peak", "peak", "peak"]
    assert table.loc[1, "classes"] == "3,15"


def test_closed_form_at():
    assert closed_form_at("G29", 2507).exponent == 8
    assert closed_form_at("G29", 3).exponent == 3
    assert closed_form_at("G29", 4).is_trivial()


def test_sweep_small_t():
    table = sweep("G29", range(1, 41))
    assert table["agree"].all()
    assert table["t"].tolist() == list(range(1, 41))


@pytest.mark.slow
@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_sweep_against_the_snf(group_id):
    assert sweep(group_id, range(1, 101), threads=2)["agree"].all()


def test_bspace_group():
    assert bspace_group((11, 35, 59, 83), 13, 5).exponent == 5
    assert bspace_group((11, 35, 59, 83), 13, 6).is_trivial()
    assert bspace_group((11, 47, 83), 19, 6).is_trivial()
    assert bspace_group((11, 35, 59, 83), 13, 5).group_id == "B(11,35,59,83)"


def test_bspace_group_unknown_space():
    with pytest.raises(CatalogLookupError):
        bspace_group((3, 5), 3, 1)
