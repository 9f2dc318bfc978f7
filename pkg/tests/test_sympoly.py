# -*- coding: utf-8 -*-
import pytest
from sympy import QQ

from pcompact_algebra.errors import BudgetExceededError, PartitionError
from pcompact_algebra.exact import I_UNIT, CycRational
from pcompact_algebra.sympoly import (
    GradedSeries,
    SymPoly,
    check_partition,
    collect_symmetric,
    derivative_sum,
    full_expand,
    invariance_method,
    is_invariant,
    m_product,
    orbit_size,
    p_typical_tail,
    padic_log_substitute,
    partitions_of,
    shift_by_sum,
    substitute_linear,
)

SWAP = ((0, 1), (1, 0))


def test_orbit_size():
    assert orbit_size((1, 1, 1, 1), 4) == 1
    assert orbit_size((2, 1), 4) == 12
    assert orbit_size((), 6) == 1


def test_partitions_of():
    assert partitions_of(4, 2) == [(4,), (3, 1), (2, 2)]
    assert len(partitions_of(12, 4)) == 34
    assert partitions_of(0, 3) == [()]


@pytest.mark.parametrize("partition, nvars", [((1, 2), 3), ((1, 1, 1, 1, 1), 4), ((2, 0), 3)])
def test_check_partition_rejects(partition, nvars):
    with pytest.raises(PartitionError):
        check_partition(partition, nvars)


def test_m_product_square_of_sum():
    expected = SymPoly(2, {(2,): 1, (1, 1): 2})
    assert m_product((1,), (1,), 2) == expected
    assert m_product((1,), (1,), 4) == SymPoly(4, {(2,): 1, (1, 1): 2})


def test_m_product_mixed_parts():
    assert m_product((2,), (1,), 3) == SymPoly(3, {(3,): 1, (2, 1): 1})


def test_m_product_truncated_by_length():
    assert m_product((1,), (1,), 4, max_length=1) == SymPoly(4, {(2,): 1})


def test_multiply_agrees_with_full_expansion():
    f = SymPoly(3, {(2,): 1, (1, 1): -3})
    g = SymPoly(3, {(1, 1, 1): 2, (3,): QQ(1, 2)})
    product = f * g
    expanded_f, expanded_g = full_expand(f), full_expand(g)
    expected = {}
    for left, a in expanded_f.items():
        for right, b in expanded_g.items():
            key = tuple(x + y for x, y in zip(left, right))
            expected[key] = expected.get(key, 0) + a * b
    assert collect_symmetric({key: value for key, value in expected.items() if value}, 3) == product


def test_arithmetic():
    f = SymPoly(4, {(4,): 1, (1, 1, 1, 1): -12})
    assert not f - f
    assert f.scale(QQ(1, 2)).coefficient((1, 1, 1, 1)) == -6
    assert f.is_homogeneous(4)
    assert not (f + SymPoly.monomial((1,), 4)).is_homogeneous()
    assert f.restrict(1) == SymPoly(4, {(4,): 1})
    assert f.max_part_count() == 4
    assert len(f.pow(2)) == 4


def test_pow_truncated_by_grading():
    f = SymPoly(2, {(1,): 1, (2,): 1})
    assert f.pow(2, max_grading=3).gradings() == [2, 3]


def test_derivative_sum():
    assert derivative_sum(SymPoly.monomial((2,), 2)) == SymPoly.monomial((1,), 2, 2)
    assert derivative_sum(SymPoly.monomial((1, 1), 3)) == SymPoly.monomial((1,), 3, 2)
    assert not derivative_sum(SymPoly.one(3))


def test_shift_by_sum():
    m1 = SymPoly.monomial((1,), 2)
    assert shift_by_sum(m1, QQ(1)) == m1.scale(3)
    assert not shift_by_sum(m1, QQ(-1, 2))


def test_shift_by_sum_matches_substitution():
    f = SymPoly(3, {(2,): 1, (1, 1): 5})
    c = QQ(-2, 3)
    matrix = tuple(tuple(c + (1 if i == j else 0) for j in range(3)) for i in range(3))
    assert collect_symmetric(substitute_linear(f, matrix, force_expand=True), 3) == shift_by_sum(f, c)


def test_full_expand_budget():
    with pytest.raises(BudgetExceededError):
        full_expand(SymPoly(6, {(3, 2, 1): 1}), budget=10)


def test_collect_symmetric_rejects_incomplete_orbit():
    with pytest.raises(ArithmeticError):
        collect_symmetric({(1, 0): CycRational.coerce(1)}, 2)


def test_invariance_method():
    assert invariance_method(SWAP) == "monomial"
    assert invariance_method(((1, 0), (1, 1))) == "expand"
    assert invariance_method(((QQ(1, 2), QQ(-1, 2)), (QQ(-1, 2), QQ(1, 2)))) == "shift"


def test_is_invariant():
    f = SymPoly.monomial((2,), 2)
    assert is_invariant(f, SWAP)
    assert is_invariant(f, SWAP, method="expand")
    assert is_invariant(f, ((-1, 0), (0, 1)))
    assert not is_invariant(f, ((2, 0), (0, 1)))
    assert not is_invariant(SymPoly.monomial((1,), 2), ((-1, 0), (0, 1)))


def test_is_invariant_under_i():
    # diag(i, 1, 1, 1) fixes x_1^4 but not x_1^2.
    matrix = ((I_UNIT, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    assert is_invariant(SymPoly.monomial((4,), 4), matrix)
    assert not is_invariant(SymPoly.monomial((2,), 4), matrix)


def test_is_invariant_rejects_wrong_shape():
    with pytest.raises(PartitionError):
        is_invariant(SymPoly.monomial((2,), 3), SWAP)


def test_p_typical_tail():
    assert p_typical_tail(5, 24) == ((5, QQ(1, 5)), (25, QQ(1, 25)))
    assert p_typical_tail(7, 5) == ()


def test_padic_log_substitute():
    assert padic_log_substitute((4,), 5, 8, 4) == SymPoly(4, {(8,): QQ(4, 5)})
    assert padic_log_substitute((1, 1, 1, 1), 5, 8, 4) == SymPoly(4, {(5, 1, 1, 1): QQ(1, 5)})
    assert padic_log_substitute((4,), 5, 4, 4) == SymPoly.monomial((4,), 4)
    assert not padic_log_substitute((4,), 5, 7, 4)
    assert not padic_log_substitute((4,), 5, 3, 4)


def test_padic_log_substitute_with_explicit_tail():
    # (x + x^7)^6 contributes 6 x^12 to m_(12).
    assert padic_log_substitute((6,), 7, 12, 6, tail=((7, QQ(1)),)).coefficient((12,)) == 6


def test_graded_series_cap():
    series = GradedSeries(SymPoly(2, {(1,): 1, (3,): 1}), cap=2)
    assert series.component(1) == SymPoly.monomial((1,), 2)
    assert not series.component(2)
    with pytest.raises(BudgetExceededError):
        series.component(3)


def test_json_encoding():
    f = SymPoly(4, {(8,): 1, (4, 4): 14, (2, 2, 2, 2): 168})
    assert f.to_json()["terms"][0] == {"partition": [8], "coeff": "1"}
    assert SymPoly.from_json(f.to_json()) == f
