# -*- coding: utf-8 -*-
import pytest
from sympy import QQ

from pcompact_algebra.errors import InconsistentSystemError
from pcompact_algebra.exact import INFINITY
from pcompact_algebra.modular import (
    check_solution_mod_prime_power,
    min_valuation,
    reduce_rational_matrix,
    solve_mod_prime_power,
    solve_over_field_mod_p,
    solve_rational,
)


def test_solve_mod_prime_power_with_non_unit_pivot():
    solution = solve_mod_prime_power([[1, 0], [0, 5]], [3, 10], 5, 2)
    assert solution.values == (3, 2)
    assert solution.pivots == ((0, 0, 0), (1, 1, 1))
    assert solution.modulus == 25
    assert not solution.is_unique()


def test_solve_mod_prime_power_unique():
    matrix, rhs = [[2, 1], [1, 3]], [4, 7]
    solution = solve_mod_prime_power(matrix, rhs, 7, 3)
    assert solution.is_unique()
    assert check_solution_mod_prime_power(matrix, rhs, solution.values, 7**3)
    assert all(0 <= value < 7**3 for value in solution.values)


def test_solve_mod_prime_power_free_unknown_is_zero():
    solution = solve_mod_prime_power([[1, 1]], [4], 5, 1)
    assert solution.values == (4, 0)


def test_solve_mod_prime_power_overdetermined_consistent():
    matrix, rhs = [[1], [2], [3]], [2, 4, 6]
    assert solve_mod_prime_power(matrix, rhs, 5, 2).values == (2,)


@pytest.mark.parametrize(
    "matrix, rhs, power",
    [([[5]], [1], 1), ([[5]], [1], 2), ([[1], [1]], [1, 2], 1)],
)
def test_solve_mod_prime_power_inconsistent(matrix, rhs, power):
    with pytest.raises(InconsistentSystemError):
        solve_mod_prime_power(matrix, rhs, 5, power)


def test_reduce_rational_matrix():
    assert reduce_rational_matrix([[QQ(1, 2), QQ(-1)]], 5) == [[3, 4]]


def test_solve_over_field_mod_p():
    assert solve_over_field_mod_p([[QQ(1, 2)]], [QQ(1)], 5) == (2,)
    assert solve_over_field_mod_p([[QQ(5)]], [QQ(1)], 5) is None


def test_solve_rational():
    assert solve_rational([[1, 1], [1, -1], [2, 0]], [3, 1, 4]) == (QQ(2), QQ(1))
    assert solve_rational([[3]], [QQ(1, 2)]) == (QQ(1, 6),)


@pytest.mark.parametrize(
    "matrix, rhs",
    [([[1, 1]], [1]), ([[1], [1]], [1, 2])],
)
def test_solve_rational_rejects(matrix, rhs):
    with pytest.raises(InconsistentSystemError):
        solve_rational(matrix, rhs)


def test_min_valuation():
    assert min_valuation([QQ(1, 5), QQ(25)], 5) == -1
    assert min_valuation([0, 0], 5) == INFINITY
    assert min_valuation([], 7) == INFINITY
