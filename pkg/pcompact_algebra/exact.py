# -*- coding: utf-8 -*-
"""Exact scalar arithmetic used everywhere in the package.

Rationals are the elements of sympy's ``QQ`` domain (gmpy2 ``mpq`` when gmpy2 is installed),
which are always reduced with a positive denominator. On top of them this module implements
:class:`CycRational`, the elements a + b*i of Q(i) and a + b*w of Q(w) with w a primitive cube
root of unity, together with p-adic valuations and residues mod p^N.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, Union

from sympy import QQ
from sympy.ntheory import factorint, multiplicity

from .errors import FieldMismatchError

logger = logging.getLogger(__name__)

Rational = type(QQ.one)
T_RATIONAL_LIKE = Union[int, Rational, str]
T_VALUATION = Union[int, float]

# Valuation of zero. Kept distinct from every integer valuation and absorbing under addition.
INFINITY = math.inf

BASE_Q = "Q"
BASE_QI = "Qi"
BASE_QW = "Qw"
_BASES = (BASE_Q, BASE_QI, BASE_QW)


def to_rational(value: T_RATIONAL_LIKE) -> Rational:
    """This function converts an integer, a "num/den" string, or a rational into a ``QQ`` element.

    Args:
        value: The value to convert. A :class:`CycRational` with zero irrational part is accepted too.

    Returns:
        The value as a reduced rational.
    """
    if isinstance(value, CycRational):
        if value.b:
            raise FieldMismatchError(f"The value {value} is not rational.")
        return value.a
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def parse_rational(text: str) -> Rational:
    """Parse the "num/den" encoding (the denominator may be omitted)."""
    num, _, den = text.strip().partition("/")
    return QQ(int(num), int(den) if den else 1)


def format_rational(value: T_RATIONAL_LIKE) -> str:
    """Format a rational as "num/den", omitting the denominator when it is 1."""
    value = to_rational(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def valuation(value: T_RATIONAL_LIKE, prime: int) -> T_VALUATION:
    """This function computes the p-adic valuation nu_p of a rational number.

    Args:
        value: An integer or rational.
        prime: The prime p.

    Returns:
        nu_p(numerator) - nu_p(denominator), or :data:`INFINITY` when the value is zero.
    """
    value = to_rational(value)
    if not value:
        return INFINITY
    return multiplicity(prime, abs(int(value.numerator))) - multiplicity(prime, int(value.denominator))


def is_p_integral(value: T_RATIONAL_LIKE, prime: int) -> bool:
    """Tell whether the denominator of ``value`` is prime to p."""
    return int(to_rational(value).denominator) % prime != 0


def residue(value: T_RATIONAL_LIKE, modulus: int) -> int:
    """This function reduces a p-integral rational modulo p^N.

    Args:
        value: A rational whose denominator is prime to the modulus.
        modulus: The modulus p^N.

    Returns:
        The least non-negative residue of num * den^-1 modulo ``modulus``.

    Raises:
        ZeroDivisionError: If the denominator is not invertible modulo ``modulus``.
    """
    value = to_rational(value)
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return num % modulus
    try:
        return num * pow(den, -1, modulus) % modulus
    except ValueError as err:
        raise ZeroDivisionError(f"The value {format_rational(value)} is not integral modulo {modulus}.") from err


def pow_mod(base: int, exponent: int, modulus: int) -> int:
    """This function computes base^exponent modulo p^N by square-and-multiply.

    Exponents may be astronomically large (e.g. 24 * 7^36), only the modulus bounds the cost.

    Args:
        base: The integer base.
        exponent: A non-negative integer exponent.
        modulus: A prime power p^N with N >= 1.

    Returns:
        The least non-negative residue.
    """
    if exponent < 0:
        raise ValueError(f"Negative exponent {exponent} is not supported.")
    if modulus < 2 or not _is_prime_power(modulus):
        raise ValueError(f"The modulus {modulus} is not a prime power p^N with N >= 1.")
    return pow(base, exponent, modulus)


def _is_prime_power(modulus: int) -> bool:
    return len(factorint(modulus)) == 1


@dataclass(frozen=True, eq=False)
class CycRational:
    """An element a + b*u of Q, Q(i) (u = i, i^2 = -1) or Q(w) (u = w, w^2 = -1 - w).

    The base field is carried explicitly. Rational elements (base "Q") combine with both extensions,
    but Q(i) and Q(w) elements never mix.
    """

    base: str
    a: Rational
    b: Rational = QQ.zero

    def __post_init__(self):
        if self.base not in _BASES:
            raise ValueError(f"Unknown base field {self.base}, expected one of {_BASES}.")
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "b", to_rational(self.b))
        if self.base == BASE_Q and self.b:
            raise ValueError("A rational CycRational cannot carry an irrational part.")

    @classmethod
    def coerce(cls, value: Union["CycRational", T_RATIONAL_LIKE]) -> "CycRational":
        """Wrap integers and rationals as elements of Q."""
        if isinstance(value, CycRational):
            return value
        return cls(BASE_Q, to_rational(value))

    def _common_base(self, other: "CycRational") -> str:
        if self.base == other.base or other.base == BASE_Q:
            return self.base
        if self.base == BASE_Q:
            return other.base
        raise FieldMismatchError(f"Cannot combine elements of {self.base} and {other.base}: {self} and {other}.")

    def __add__(self, other):
        other = CycRational.coerce(other)
        return CycRational(self._common_base(other), self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return CycRational(self.base, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-CycRational.coerce(other))

    def __rsub__(self, other):
        return CycRational.coerce(other) - self

    def __mul__(self, other):
        other = CycRational.coerce(other)
        base = self._common_base(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        if base == BASE_QW:
            # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, with w^2 = -1 - w
            return CycRational(base, a * c - b * d, a * d + b * c - b * d)
        return CycRational(base, a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "CycRational":
        """Complex conjugation: i -> -i, w -> w^2 = -1 - w."""
        if self.base == BASE_QW:
            return CycRational(self.base, self.a - self.b, -self.b)
        return CycRational(self.base, self.a, -self.b)

    def norm(self) -> Rational:
        """The field norm x * conj(x), always rational."""
        if self.base == BASE_QW:
            return self.a * self.a - self.a * self.b + self.b * self.b
        return self.a * self.a + self.b * self.b

    def inverse(self) -> "CycRational":
        norm = self.norm()
        if not norm:
            raise ZeroDivisionError("Inverse of zero requested.")
        conj = self.conjugate()
        return CycRational(self.base, conj.a / norm, conj.b / norm)

    def __truediv__(self, other):
        return self * CycRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return CycRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycRational(self.base, QQ.one)
        factor = self
        while exponent:
            if exponent & 1:
                result = result * factor
            factor = factor * factor
            exponent >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return not self.b and self.a == other
        if not isinstance(other, CycRational):
            return NotImplemented
        if self.a != other.a or self.b != other.b:
            return False
        return not self.b or self.base == other.base

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return not self.b

    def __repr__(self):
        unit = {BASE_QI: "i", BASE_QW: "w"}.get(self.base, "")
        if not self.b:
            return format_rational(self.a)
        return f"({format_rational(self.a)} + {format_rational(self.b)}{unit})"

    def to_json(self) -> Dict[str, str]:
        return {"base": self.base, "a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_json(cls, data: Union[Dict[str, str], str, int]) -> "CycRational":
        """Decode the {"base", "a", "b"} encoding; plain "num/den" strings and integers are read as rationals."""
        if isinstance(data, (str, int)):
            return cls.coerce(data)
        return cls(data.get("base", BASE_Q), parse_rational(str(data["a"])), parse_rational(str(data.get("b", "0"))))


def cyc_mul(x: CycRational, y: CycRational) -> CycRational:
    """Exact product in Q(i) or Q(w); mixing the two extensions raises :class:`FieldMismatchError`."""
    return CycRational.coerce(x) * CycRational.coerce(y)


I_UNIT = CycRational(BASE_QI, 0, 1)
OMEGA = CycRational(BASE_QW, 0, 1)
OMEGA_SQUARED = CycRational(BASE_QW, -1, -1)
SQRT_MINUS_3 = CycRational(BASE_QW, 1, 2)
