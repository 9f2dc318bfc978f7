# -*- coding: utf-8 -*-
"""Adams operations on the indecomposable quotient QK^1 of the p-compact groups.

The integral combinations of the integrality module fix a p-local basis z_{d-1} of QK^1. On the rational basis F_d the
operation psi^k is diagonal with eigenvalues k^d, so in the integral basis it is P^-1 diag(k^d) P, where P is the
change-of-basis matrix built from the linear terms of the combinations. The Bott periodicity shift K^1 -> K^-1
divides the whole matrix by k.
"""
import logging
from dataclasses import dataclass, field
from functools import cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .constants import GroupConst
from .errors import VerificationError
from .exact import Rational, format_rational, is_p_integral, parse_rational, to_rational
from .integrality import load_combinations
from .invariants import resolve_group_id
from .reports import Report, RunConfig

T_RATIONAL_MATRIX = Tuple[Tuple[Rational, ...], ...]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KPowerCombo:
    """A function of k of the form sum_d a_d k^d with rational a_d; zero coefficients are never stored."""

    terms: Tuple[Tuple[int, Rational], ...] = field(default=())

    @classmethod
    def from_dict(cls, values: Dict[int, Rational]) -> "KPowerCombo":
        return cls(tuple(sorted((power, to_rational(coeff)) for power, coeff in values.items() if coeff)))

    @classmethod
    def monomial(cls, power: int, coeff: Rational = QQ.one) -> "KPowerCombo":
        return cls.from_dict({power: coeff})

    def as_dict(self) -> Dict[int, Rational]:
        return dict(self.terms)

    def __add__(self, other: "KPowerCombo") -> "KPowerCombo":
        values = self.as_dict()
        for power, coeff in other.terms:
            values[power] = values.get(power, QQ.zero) + coeff
        return KPowerCombo.from_dict(values)

    def scale(self, factor: Rational) -> "KPowerCombo":
        return KPowerCombo.from_dict({power: coeff * factor for power, coeff in self.terms})

    def shift(self, offset: int) -> "KPowerCombo":
        """Multiply by k^offset."""
        return KPowerCombo(tuple((power + offset, coeff) for power, coeff in self.terms))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, k: int) -> Rational:
        value = QQ.zero
        for power, coeff in self.terms:
            value += coeff * (QQ(k) ** power if power >= 0 else QQ.one / QQ(k) ** -power)
        return value

    def to_json(self) -> List[Dict[str, Any]]:
        return [{"power": power, "coeff": format_rational(coeff)} for power, coeff in self.terms]

    @classmethod
    def from_json(cls, data: Iterable[Dict[str, Any]]) -> "KPowerCombo":
        return cls.from_dict({int(item["power"]): parse_rational(str(item["coeff"])) for item in data})

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({format_rational(coeff)})k^{power}" for power, coeff in self.terms)


T_COMBO_MATRIX = Tuple[Tuple[KPowerCombo, ...], ...]


@dataclass(frozen=True)
class AdamsMatrix:
    """The matrix of psi^k on the generators z_{d-1}; entry (i, j) is the z_i component of psi^k(z_j)."""

    group_id: str
    basis: Tuple[int, ...]
    entries: T_COMBO_MATRIX
    divided: bool = True

    @property
    def prime(self) -> int:
        return GroupConst.PRIME[self.group_id]

    @property
    def size(self) -> int:
        return len(self.basis)

    def basis_names(self) -> List[str]:
        return [f"z_{dim}" for dim in self.basis]

    def evaluate(self, k: int) -> T_RATIONAL_MATRIX:
        if k == 0:
            raise ValueError("psi^k is only evaluated for k != 0.")
        return tuple(tuple(entry.evaluate(k) for entry in row) for row in self.entries)

    def is_lower_triangular(self) -> bool:
        return all(not self.entries[i][j] for i in range(self.size) for j in range(i + 1, self.size))

    def diagonal(self) -> Tuple[KPowerCombo, ...]:
        return tuple(self.entries[i][i] for i in range(self.size))

    def non_integral_entries(self, k: int) -> List[Tuple[int, int, Rational]]:
        """The entries of psi^k which are not p-local integers (empty for a lattice preserving operation)."""
        return [
            (i, j, value)
            for i, row in enumerate(self.evaluate(k))
            for j, value in enumerate(row)
            if not is_p_integral(value, self.prime)
        ]

    def compose(self, j: int, k: int) -> bool:
        """Check psi^j psi^k = psi^{jk} on evaluated matrices."""
        return rational_matmul(self.evaluate(j), self.evaluate(k)) == self.evaluate(j * k)

    def reconstruct_diagonal(self) -> T_COMBO_MATRIX:
        """P psi^k P^-1 computed symbolically; diag(k^(d - 1)) for the divided matrix."""
        matrix = change_of_basis(self.group_id)
        return combo_matmul(
            combo_matmul(_constant_combos(matrix), self.entries), _constant_combos(inverse_matrix(matrix))
        )

    def to_json(self, symbolic: bool = True, k: Optional[int] = None) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "group": GroupConst.SPACE[self.group_id],
            "basis": self.basis_names(),
            "divided_by_k": self.divided,
        }
        if symbolic:
            payload["symbolic"] = [[entry.to_json() for entry in row] for row in self.entries]
        if k is not None:
            payload["k"] = k
            payload["matrix"] = [[format_rational(value) for value in row] for row in self.evaluate(k)]
        return payload


def rational_matmul(left: Sequence[Sequence[Rational]], right: Sequence[Sequence[Rational]]) -> T_RATIONAL_MATRIX:
    return tuple(
        tuple(sum((left[i][m] * right[m][j] for m in range(len(right))), QQ.zero) for j in range(len(right[0])))
        for i in range(len(left))
    )


def combo_matmul(left: T_COMBO_MATRIX, right: T_COMBO_MATRIX) -> T_COMBO_MATRIX:
    size = len(right)
    result = []
    for i in range(len(left)):
        row = []
        for j in range(len(right[0])):
            value = KPowerCombo()
            for m in range(size):
                for power, coeff in left[i][m].terms:
                    value = value + right[m][j].shift(power).scale(coeff)
            row.append(value)
        result.append(tuple(row))
    return tuple(result)


def _constant_combos(matrix: Sequence[Sequence[Rational]]) -> T_COMBO_MATRIX:
    return tuple(tuple(KPowerCombo.monomial(0, value) for value in row) for row in matrix)


def inverse_matrix(matrix: Sequence[Sequence[Rational]]) -> T_RATIONAL_MATRIX:
    size = len(matrix)
    inverse = DomainMatrix([[to_rational(entry) for entry in row] for row in matrix], (size, size), QQ).inv()
    return tuple(tuple(QQ.convert(entry) for entry in row) for row in inverse.to_list())


def generator_degrees(group_id: str) -> Tuple[int, ...]:
    return GroupConst.DEGREES[resolve_group_id(group_id)]


def basis_dimensions(group_id: str) -> Tuple[int, ...]:
    """Dimensions of the odd generators z_{d-1} of the indecomposables."""
    return tuple(degree - 1 for degree in generator_degrees(group_id))


def _fractional_part(value: Rational) -> Rational:
    value = to_rational(value)
    return value - QQ(int(value.numerator) // int(value.denominator))


@cache
def change_of_basis(group_id: str) -> T_RATIONAL_MATRIX:
    """This function builds the unit lower-triangular change-of-basis matrix P of a group.

    Entry (i, j) is the coefficient of F_{d_i} in the integral combination with base degree d_j. The F-symbols of
    ``GroupConst.DECOMPOSABLE_SYMBOLS`` have no row. The row of a divided generator (f_42 of G34, which enters the
    integral basis through (f_42 - f_6^7) / 7) is p times the coefficients, reduced to their fractional part.

    Args:
        group_id: "G29", "G31" or "G34" (aliases accepted).

    Returns:
        P as a tuple of rows of sympy rationals.

    Raises:
        VerificationError: If a sub-diagonal entry is missing the expected shape (P must be unit triangular).
    """
    group_id = resolve_group_id(group_id)
    degrees = generator_degrees(group_id)
    combinations = load_combinations(group_id)
    divided = GroupConst.DIVIDED_GENERATORS[group_id]
    prime = GroupConst.PRIME[group_id]
    logger.debug("Going to build the change-of-basis matrix of %s.", group_id)

    rows = []
    for i, row_degree in enumerate(degrees):
        row = []
        for j, column_degree in enumerate(degrees):
            if i == j:
                row.append(QQ.one)
                continue
            coeff = combinations[column_degree].linear_coefficients().get(row_degree, QQ.zero)
            if row_degree in divided:
                coeff = _fractional_part(prime * coeff)
            if i < j and coeff:
                raise VerificationError(
                    f"The combination of F_{column_degree} for {group_id} contains the lower degree symbol "
                    f"F_{row_degree}. Please investigate."
                )
            row.append(coeff)
        rows.append(tuple(row))
    return tuple(rows)


def bott_transpose_note(group_id: str) -> str:
    """Describe how the K^1 operation relates to the one printed on the generators."""
    space = GroupConst.SPACE[resolve_group_id(group_id)]
    return (
        f"psi^k on K^1({space}) corresponds to psi^k / k on K^-1({space}); "
        "the divided matrix is P^-1 diag(k^d) P with every power of k lowered by one."
    )


@cache
def adams_matrix(group_id: str, divide: bool = True) -> AdamsMatrix:
    """This function returns psi^k of a group as a lower-triangular matrix of k-power combinations.

    Args:
        group_id: "G29", "G31" or "G34" (aliases accepted).
        divide: If True (default), apply the Bott shift psi^k -> psi^k / k, i.e. the matrix on the generators
            z_{d-1}; otherwise return P^-1 diag(k^d) P itself.

    Returns:
        The symbolic Adams matrix.
    """
    group_id = resolve_group_id(group_id)
    logger.info("Going to compute the Adams operations of %s.", GroupConst.SPACE[group_id])
    matrix = change_of_basis(group_id)
    inverse = inverse_matrix(matrix)
    offset = -1 if divide else 0
    diagonal = tuple(
        tuple(KPowerCombo.monomial(degree + offset) if i == j else KPowerCombo() for j in range(len(matrix)))
        for i, degree in enumerate(generator_degrees(group_id))
    )
    entries = combo_matmul(combo_matmul(_constant_combos(inverse), diagonal), _constant_combos(matrix))

    result = AdamsMatrix(group_id, basis_dimensions(group_id), entries, divide)
    if not result.is_lower_triangular():
        raise VerificationError(f"The Adams matrix of {group_id} is not lower-triangular. Please investigate.")
    return result


def process(config: RunConfig) -> Report:
    """This is the entry point of the ``adams`` subcommand.

    Args:
        config: ``--group``, optionally ``--k`` for the evaluated matrix and ``--symbolic`` for the k-power entries
            (always emitted when no k is given).
    """
    logger.info("The processing of %s just started.", __name__)
    group_id = resolve_group_id(config.require_group())
    matrix = adams_matrix(group_id)
    payload = matrix.to_json(symbolic=config.symbolic or config.k is None, k=config.k)
    payload["change_of_basis"] = [[format_rational(value) for value in row] for row in change_of_basis(group_id)]
    payload["note"] = bott_transpose_note(group_id)

    if config.k is None:
        values = [[str(entry) for entry in row] for row in matrix.entries]
    else:
        payload["p_integral"] = not matrix.non_integral_entries(config.k)
        values = payload["matrix"]
    table = pd.DataFrame(values, index=matrix.basis_names(), columns=matrix.basis_names()).reset_index()
    return Report("adams", payload, table.rename(columns={"index": "psi"}))
