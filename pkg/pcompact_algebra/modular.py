# -*- coding: utf-8 -*-
"""Linear algebra over the local rings Z/p^k and over Q.

Systems coming from the integralization and decomposition steps are tiny (at most a dozen unknowns), but their
coefficients can have a dozen digits and more, so everything is exact.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import InconsistentSystemError
from .exact import Rational, residue, to_rational, valuation

T_INT_MATRIX = List[List[int]]
T_PIVOT = Tuple[int, int, int]  # (row, column, valuation of the pivot)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModularSolution:
    """A solution of A c = b (mod p^k) together with the pivots used to obtain it."""

    prime: int
    power: int
    values: Tuple[int, ...]
    pivots: Tuple[T_PIVOT, ...]

    @property
    def modulus(self) -> int:
        return self.prime**self.power

    def is_unique(self) -> bool:
        """True if every unknown got a unit pivot, i.e. the solution is the only one mod p^k."""
        return len(self.pivots) == len(self.values) and all(v == 0 for _, _, v in self.pivots)


def _int_valuation(value: int, prime: int, cap: int) -> int:
    """nu_p of an integer mod p^cap, with zero mapped to ``cap``."""
    if value == 0:
        return cap
    result = 0
    while value % prime == 0 and result < cap:
        value //= prime
        result += 1
    return result


def solve_mod_prime_power(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int], prime: int, power: int
) -> ModularSolution:
    """This function solves A c = b over Z/p^k.

    Elimination always picks, in the not yet eliminated part of the matrix, an entry of minimal p-adic valuation;
    ties are broken by the lowest column and then the lowest row index. The pivot row is scaled so that the pivot is
    exactly p^v and eliminated from the remaining rows. Back substitution sets free unknowns to 0 and returns every
    pivot unknown as its least non-negative residue, so the output is canonical.

    Args:
        matrix: The coefficient matrix (integers, reduced internally).
        rhs: The right hand side.
        prime: The prime p.
        power: The exponent k >= 1.

    Returns:
        The canonical solution.

    Raises:
        InconsistentSystemError: If the system has no solution modulo p^k.
    """
    modulus = prime**power
    rows = [[int(entry) % modulus for entry in row] + [int(value) % modulus] for row, value in zip(matrix, rhs)]
    if len(rows) != len(rhs):
        raise ValueError(f"The matrix has {len(matrix)} rows but the right hand side has {len(rhs)} entries.")
    ncols = len(matrix[0]) if matrix else 0

    remaining_rows = list(range(len(rows)))
    remaining_cols = list(range(ncols))
    pivots: List[T_PIVOT] = []

    while remaining_rows and remaining_cols:
        best: Optional[Tuple[int, int, int]] = None
        for col in remaining_cols:
            for row in remaining_rows:
                if rows[row][col]:
                    candidate = (_int_valuation(rows[row][col], prime, power), col, row)
                    if best is None or candidate < best:
                        best = candidate
        if best is None:
            break

        pivot_val, pivot_col, pivot_row = best
        unit = rows[pivot_row][pivot_col] // prime**pivot_val
        unit_inverse = pow(unit, -1, modulus)
        rows[pivot_row] = [entry * unit_inverse % modulus for entry in rows[pivot_row]]

        remaining_rows.remove(pivot_row)
        remaining_cols.remove(pivot_col)
        for row in remaining_rows:
            entry = rows[row][pivot_col]
            if entry:
                factor = entry // prime**pivot_val
                rows[row] = [(a - factor * b) % modulus for a, b in zip(rows[row], rows[pivot_row])]
        pivots.append((pivot_row, pivot_col, pivot_val))

    for row in remaining_rows:
        if rows[row][-1]:
            raise InconsistentSystemError(
                f"The system is inconsistent modulo {prime}^{power}: row {row} reduces to 0 = {rows[row][-1]}."
            )

    values = [0] * ncols
    for pivot_row, pivot_col, pivot_val in reversed(pivots):
        remainder = rows[pivot_row][-1]
        for col in range(ncols):
            if col != pivot_col:
                remainder -= rows[pivot_row][col] * values[col]
        remainder %= modulus
        if _int_valuation(remainder, prime, power) < pivot_val:
            raise InconsistentSystemError(
                f"The system is inconsistent modulo {prime}^{power}: the pivot {prime}^{pivot_val} in column "
                f"{pivot_col} does not divide {remainder}."
            )
        values[pivot_col] = (remainder // prime**pivot_val) % prime ** (power - pivot_val)

    logger.debug("Solved a %sx%s system mod %s^%s with pivots %s.", len(rows), ncols, prime, power, pivots)
    return ModularSolution(prime, power, tuple(values), tuple(pivots))


def check_solution_mod_prime_power(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int], values: Sequence[int], modulus: int
) -> bool:
    """Tell whether ``values`` solves A c = b modulo ``modulus``."""
    return all(
        (sum(a * c for a, c in zip(row, values)) - b) % modulus == 0 for row, b in zip(matrix, rhs)
    )


def reduce_rational_matrix(matrix: Sequence[Sequence[Rational]], modulus: int) -> T_INT_MATRIX:
    """Reduce a matrix of p-integral rationals entry-wise modulo p^k."""
    return [[residue(entry, modulus) for entry in row] for row in matrix]


def solve_over_field_mod_p(
    matrix: Sequence[Sequence[Rational]], rhs: Sequence[Rational], prime: int
) -> Optional[Tuple[int, ...]]:
    """Solve a p-integral system over F_p; ``None`` if it is inconsistent."""
    try:
        return solve_mod_prime_power(
            reduce_rational_matrix(matrix, prime), [residue(value, prime) for value in rhs], prime, 1
        ).values
    except InconsistentSystemError:
        return None


def solve_rational(matrix: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> Tuple[Rational, ...]:
    """This function returns the unique solution of an overdetermined rational system A q = b.

    The reduced row echelon form of the augmented matrix is computed over ``QQ`` with sympy's ``DomainMatrix``.

    Raises:
        InconsistentSystemError: If the system has no solution, or more than one.
    """
    nrows, ncols = len(matrix), len(matrix[0])
    augmented = DomainMatrix(
        [[to_rational(entry) for entry in row] + [to_rational(value)] for row, value in zip(matrix, rhs)],
        (nrows, ncols + 1),
        QQ,
    )
    reduced, pivots = augmented.rref()
    if ncols in pivots:
        raise InconsistentSystemError(f"The {nrows}x{ncols} rational system is inconsistent.")
    if len(pivots) != ncols:
        raise InconsistentSystemError(
            f"The {nrows}x{ncols} rational system is underdetermined: rank {len(pivots)}. Please investigate."
        )
    rows = reduced.to_list()
    return tuple(QQ.convert(rows[i][ncols]) for i in range(ncols))


def min_valuation(values: Sequence[Rational], prime: int):
    """The minimum p-adic valuation over a vector (INFINITY for the zero vector)."""
    return min((valuation(value, prime) for value in values), default=valuation(0, prime))
