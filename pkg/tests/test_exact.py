# -*- coding: utf-8 -*-
import pytest
from sympy import QQ

from pcompact_algebra.errors import FieldMismatchError
from pcompact_algebra.exact import (
    BASE_QW,
    I_UNIT,
    INFINITY,
    OMEGA,
    OMEGA_SQUARED,
    SQRT_MINUS_3,
    CycRational,
    cyc_mul,
    format_rational,
    is_p_integral,
    parse_rational,
    pow_mod,
    residue,
    valuation,
)


@pytest.mark.parametrize(
    "text, expected",
    [("-3/6", QQ(-1, 2)), ("7", QQ(7)), (" 16647/16807 ", QQ(16647, 16807))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("value, expected", [(QQ(4, 2), "2"), (QQ(-7, 25), "-7/25"), (0, "0")])
def test_format_rational(value, expected):
    assert format_rational(value) == expected


@pytest.mark.parametrize(
    "value, prime, expected",
    [
        (QQ(100682, 7**6), 7, -6),
        (QQ(733671261, 19519520), 7, 0),
        (QQ(24, 25), 5, -2),
        (1250, 5, 4),
        (-1250, 5, 4),
    ],
)
def test_valuation(value, prime, expected):
    assert valuation(value, prime) == expected


def test_valuation_of_zero_is_infinite():
    assert valuation(0, 5) == INFINITY


def test_is_p_integral():
    assert is_p_integral(QQ(3, 7), 5)
    assert not is_p_integral(QQ(1, 10), 5)


def test_residue():
    assert residue(QQ(1, 2), 5) == 3
    assert residue(-4, 25) == 21
    assert residue(QQ(-1, 2), 7**3) * 2 % 7**3 == 7**3 - 1


def test_residue_of_non_integral_value():
    with pytest.raises(ZeroDivisionError):
        residue(QQ(1, 5), 25)


def test_pow_mod_with_huge_exponent():
    exponent = 24 * 7**36
    assert pow_mod(2, exponent, 5**10) == pow(2, exponent, 5**10)


@pytest.mark.parametrize("exponent, modulus", [(-1, 25), (3, 12), (3, 1), (3, 23 * 29), (3, 0)])
def test_pow_mod_rejects(exponent, modulus):
    with pytest.raises(ValueError):
        pow_mod(2, exponent, modulus)


def test_omega_is_a_cube_root_of_unity():
    assert OMEGA**3 == 1
    assert OMEGA * OMEGA == OMEGA_SQUARED
    assert 1 + OMEGA + OMEGA_SQUARED == 0


def test_sqrt_minus_3():
    assert SQRT_MINUS_3 * SQRT_MINUS_3 == -3
    assert SQRT_MINUS_3.norm() == 3
    assert SQRT_MINUS_3 * SQRT_MINUS_3.inverse() == 1


def test_i_unit():
    assert I_UNIT**2 == -1
    assert I_UNIT.conjugate() == -I_UNIT
    assert (1 + I_UNIT).norm() == 2


def test_rational_elements_mix_with_both_extensions():
    half = CycRational.coerce(QQ(1, 2))
    assert half * OMEGA == CycRational(BASE_QW, 0, QQ(1, 2))
    assert (half + I_UNIT).b == 1


def test_extensions_do_not_mix():
    with pytest.raises(FieldMismatchError):
        _ = I_UNIT * OMEGA


def test_json_encoding():
    value = CycRational(BASE_QW, QQ(-1, 3), QQ(2, 3))
    assert value.to_json() == {"base": "Qw", "a": "-1/3", "b": "2/3"}
    assert CycRational.from_json(value.to_json()) == value
    assert CycRational.from_json("5/7") == QQ(5, 7)


def test_cyc_mul():
    assert cyc_mul(SQRT_MINUS_3, SQRT_MINUS_3) == CycRational.coerce(-3)
    assert cyc_mul(I_UNIT, I_UNIT) == CycRational.coerce(-1)
    assert cyc_mul(OMEGA, 2) == CycRational(BASE_QW, 0, 2)
    with pytest.raises(FieldMismatchError):
        cyc_mul(I_UNIT, OMEGA)


@pytest.mark.parametrize("modulus", [23**2, 29**3, 7**40, 1009])
def test_pow_mod_accepts_large_prime_powers(modulus):
    assert pow_mod(2, 3, modulus) == 8 % modulus
    assert pow_mod(3, modulus, modulus) == pow(3, modulus, modulus)
