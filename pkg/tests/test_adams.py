# -*- coding: utf-8 -*-
import pytest
from sympy import QQ

from pcompact_algebra.adams import (
    KPowerCombo,
    adams_matrix,
    basis_dimensions,
    bott_transpose_note,
    change_of_basis,
    inverse_matrix,
    rational_matmul,
)
from pcompact_algebra.constants import GroupConst


def test_k_power_combo():
    combo = KPowerCombo.from_dict({3: QQ(1, 5), 7: QQ(-1, 5), 11: QQ(0)})
    assert combo.as_dict() == {3: QQ(1, 5), 7: QQ(-1, 5)}
    assert combo.evaluate(2) == -24
    assert combo.shift(-1).evaluate(2) == -12
    assert combo.scale(5).evaluate(1) == 0
    assert KPowerCombo.from_json(combo.to_json()) == combo
    assert not KPowerCombo()


def test_basis_dimensions():
    assert basis_dimensions("G29") == (3, 7, 11, 19)
    assert basis_dimensions("34") == (5, 11, 17, 23, 29, 41)


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_change_of_basis_is_unit_lower_triangular(group_id):
    matrix = change_of_basis(group_id)
    size = len(GroupConst.DEGREES[group_id])
    assert len(matrix) == size
    for i in range(size):
        assert matrix[i][i] == 1
        assert all(not matrix[i][j] for j in range(i + 1, size))


def test_change_of_basis_g34_divided_row():
    assert change_of_basis("G34")[5][0] == QQ(16647, 16807)
    assert change_of_basis("G34")[1][0] == QQ(1, 7)


def test_inverse_matrix():
    matrix = change_of_basis("G29")
    identity = rational_matmul(matrix, inverse_matrix(matrix))
    assert all(identity[i][j] == (1 if i == j else 0) for i in range(4) for j in range(4))


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_adams_matrix_shape(group_id):
    matrix = adams_matrix(group_id)
    assert matrix.is_lower_triangular()
    assert matrix.size == len(GroupConst.DEGREES[group_id])
    assert [entry.as_dict() for entry in matrix.diagonal()] == [
        {degree - 1: 1} for degree in GroupConst.DEGREES[group_id]
    ]


def test_g29_entries():
    matrix = adams_matrix("G29")
    assert matrix.basis_names() == ["z_3", "z_7", "z_11", "z_19"]
    assert matrix.entries[1][0].as_dict() == {3: QQ(1, 5), 7: QQ(-1, 5)}
    assert matrix.entries[2][0].as_dict() == {3: QQ(24, 25), 7: QQ(-8, 25), 11: QQ(-16, 25)}


@pytest.mark.parametrize(
    "k, column",
    [(5, (125, -15600, -31274880, -9765631257408)), (2, (8, -24, -1344, -268704))],
)
def test_g29_first_column(k, column):
    values = adams_matrix("G29").evaluate(k)
    assert tuple(row[0] for row in values) == column


def test_undivided_matrix():
    matrix = adams_matrix("G29", divide=False)
    assert matrix.diagonal()[0].as_dict() == {4: 1}
    assert matrix.evaluate(2)[1][0] == 2 * adams_matrix("G29").evaluate(2)[1][0]


def test_evaluate_rejects_zero():
    with pytest.raises(ValueError):
        adams_matrix("G29").evaluate(0)


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
@pytest.mark.parametrize("j, k", [(2, 3), (-1, 2), (3, 3)])
def test_composition(group_id, j, k):
    assert adams_matrix(group_id).compose(j, k)


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
@pytest.mark.parametrize("k", [2, 3, -1])
def test_psi_k_is_p_integral_for_k_prime_to_p(group_id, k):
    assert adams_matrix(group_id).non_integral_entries(k) == []


def test_psi_p_is_p_integral():
    assert adams_matrix("G29").non_integral_entries(5) == []
    assert adams_matrix("G34").non_integral_entries(7) == []


@pytest.mark.parametrize("group_id", GroupConst.GROUP_IDS)
def test_reconstruct_diagonal(group_id):
    matrix = adams_matrix(group_id)
    reconstructed = matrix.reconstruct_diagonal()
    for i, row in enumerate(reconstructed):
        for j, entry in enumerate(row):
            assert entry.as_dict() == ({matrix.basis[i]: 1} if i == j else {})


def test_to_json():
    payload = adams_matrix("G29").to_json(symbolic=False, k=5)
    assert payload["group"] == "X29"
    assert payload["matrix"][0][0] == "125"
    assert payload["matrix"][0][1] == "0"
    assert "symbolic" not in payload
    assert "symbolic" in adams_matrix("G29").to_json()


def test_bott_transpose_note():
    assert "K^1(X31)" in bott_transpose_note("G31")
