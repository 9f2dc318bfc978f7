# -*- coding: utf-8 -*-
"""v1-periodic homotopy groups of the p-compact groups from their Adams operations.

v1^-1 pi_2t(X) is presented by the 2n x n matrix with top block (psi^p)^T and bottom block (psi^r)^T - r^t I, where
r generates (Z/p^2)^x; v1^-1 pi_2t-1(X) uses the same blocks un-transposed. Two independent ways of reading off the
p-part of the cokernel are provided:

* the Smith normal form of the exact integer matrix at a given t (feasible while r^t stays small),
* unit pivoting on the symbolic matrix with x = r^t kept as a variable, leaving residual polynomials p_i(x) whose
  minimal valuation at x = r^t mod p^N is the exponent of the (cyclic) group for any t.

The closed forms min(cap, base + nu_p(t - t*)) are re-derived from the residual path by lifting residue classes.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cache
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from sympy import ZZ, Poly, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .adams import adams_matrix
from .catalog import bspace_formula
from .constants import BudgetConst, GroupConst
from .errors import BudgetExceededError, PrecisionExhaustedError, VerificationError
from .exact import INFINITY, Rational, is_p_integral, to_rational, valuation
from .invariants import resolve_group_id
from .reports import Report, RunConfig, records

X = Symbol("x")
METHODS = ("snf", "residual", "closed-form")

T_INT_MATRIX = Tuple[Tuple[int, ...], ...]

logger = logging.getLogger(__name__)


def _constant(value: int) -> Poly:
    return Poly(value, X, domain=ZZ)


def _eval_mod(poly: Poly, x: int, modulus: int) -> int:
    value = 0
    for coeff in poly.all_coeffs():
        value = (value * x + int(coeff)) % modulus
    return value


def _truncated_valuation(value: int, prime: int, power: int):
    """nu_p of an integer known modulo p^power; INFINITY when it vanishes there."""
    value %= prime**power
    return INFINITY if value == 0 else valuation(value, prime)


@cache
def bousfield_generator(prime: int) -> int:
    """This function returns the generator r of (Z/p^2)^x used in the presentations, checking that it is one."""
    r = GroupConst.BOUSFIELD_R[prime]
    order, value = 1, r % prime**2
    while value != 1:
        value = value * r % prime**2
        order += 1
    if order != prime * (prime - 1):
        raise VerificationError(
            f"{r} has order {order} in (Z/{prime**2})^x, it is not a generator. Please investigate."
        )
    return r


def period(group_id: str) -> int:
    """Modulus p(p - 1) of the residue classes on which the closed forms are stated."""
    prime = GroupConst.PRIME[resolve_group_id(group_id)]
    return prime * (prime - 1)


@dataclass(frozen=True)
class V1Group:
    """The p-part of a v1-periodic homotopy group: a sum of cyclic groups Z/p^e, one per entry of ``exponents``."""

    group_id: str
    prime: int
    t: int
    exponents: Tuple[int, ...]
    method: str

    def is_trivial(self) -> bool:
        return not self.exponents

    def is_cyclic(self) -> bool:
        return len(self.exponents) <= 1

    @property
    def exponent(self) -> int:
        """Exponent of the order; for a cyclic group the e of Z/p^e."""
        return sum(self.exponents)

    def label(self) -> str:
        if self.is_trivial():
            return "0"
        return " + ".join(f"Z/{self.prime}^{exponent}" for exponent in self.exponents)


@dataclass(frozen=True)
class PresentationMatrix:
    """The Bousfield presentation; the bottom diagonal carries the variable x standing for r^t."""

    group_id: str
    transposed: bool
    rows: Tuple[Tuple[Poly, ...], ...]

    @property
    def prime(self) -> int:
        return GroupConst.PRIME[self.group_id]

    @property
    def r(self) -> int:
        return bousfield_generator(self.prime)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def at_value(self, x: int) -> T_INT_MATRIX:
        return tuple(tuple(int(entry.eval(x)) for entry in row) for row in self.rows)

    def at(self, t: int, max_bits: int = BudgetConst.MAX_PRESENTATION_BITS) -> T_INT_MATRIX:
        """This function substitutes x = r^t exactly.

        Raises:
            BudgetExceededError: If r^t would have more than ``max_bits`` bits; use :func:`exponent_at` instead.
        """
        if t < 1:
            raise ValueError(f"The parameter t must be positive, got {t}.")
        bits = t * self.r.bit_length()
        if bits > max_bits:
            raise BudgetExceededError(
                f"The presentation of {self.group_id} at t = {t} needs about {bits} bits per entry "
                f"(budget {max_bits}); use the residual valuations instead."
            )
        return self.at_value(self.r**t)

    def to_json(self) -> List[List[List[str]]]:
        """Entries as coefficient lists from x^0 upward."""
        return [[[str(int(c)) for c in reversed(entry.all_coeffs())] for entry in row] for row in self.rows]


def _integral_rows(rows: Sequence[Sequence[Rational]], prime: int) -> List[List[int]]:
    """Clear the prime-to-p denominators row by row; this does not change the p-part of the cokernel."""
    result = []
    for row in rows:
        scale = 1
        for value in row:
            value = to_rational(value)
            if not is_p_integral(value, prime):
                raise VerificationError(
                    f"The Adams matrix has the entry {value} which is not {prime}-integral. Please investigate."
                )
            den = int(value.denominator)
            scale = scale * den // gcd(scale, den)
        result.append([int(to_rational(value) * scale) for value in row])
    return result


@cache
def presentation_matrix(group_id: str, transposed: bool = True) -> PresentationMatrix:
    """This function builds the symbolic presentation matrix of a group.

    Args:
        group_id: "G29", "G31" or "G34" (aliases accepted).
        transposed: True for v1^-1 pi_2t (blocks transposed), False for v1^-1 pi_2t-1.

    Returns:
        The 2n x n :class:`PresentationMatrix`.
    """
    group_id = resolve_group_id(group_id)
    prime = GroupConst.PRIME[group_id]
    r = bousfield_generator(prime)
    adams = adams_matrix(group_id)
    psi_p, psi_r = adams.evaluate(prime), adams.evaluate(r)
    if transposed:
        psi_p = tuple(zip(*psi_p))
        psi_r = tuple(zip(*psi_r))
    size = len(psi_p)

    rows = [tuple(_constant(value) for value in row) for row in _integral_rows(psi_p, prime)]
    for i, row in enumerate(_integral_rows(psi_r, prime)):
        rows.append(tuple(_constant(value) - (Poly(X, X, domain=ZZ) if i == j else 0) for j, value in enumerate(row)))
    logger.debug("The %s x %s presentation of %s is ready (transposed=%s).", 2 * size, size, group_id, transposed)
    return PresentationMatrix(group_id, transposed, tuple(rows))


def snf_cokernel_ppart(matrix: Sequence[Sequence[int]], prime: int, group_id: str = "", t: int = 0) -> V1Group:
    """This function computes the p-part of Z^n / (row space of M) through the Smith normal form.

    Args:
        matrix: An integer matrix with n columns and rank n.
        prime: The prime p.
        group_id: Attached to the result.
        t: Attached to the result.

    Returns:
        The p-part of the cokernel as a :class:`V1Group` with method "snf".

    Raises:
        VerificationError: If the cokernel is infinite.
    """
    nrows, ncols = len(matrix), len(matrix[0])
    integer_matrix = DomainMatrix([[ZZ(v) for v in row] for row in matrix], (nrows, ncols), ZZ)
    factors = [int(factor) for factor in invariant_factors(integer_matrix)]
    if len(factors) < ncols or 0 in factors:
        raise VerificationError(f"The presented group is infinite (invariant factors {factors}). Please investigate.")
    exponents = tuple(sorted(valuation(factor, prime) for factor in factors if factor % prime == 0))
    return V1Group(group_id, prime, t, exponents, "snf")


@dataclass(frozen=True)
class ResidualPolynomials:
    """What is left after unit pivoting: the remaining entries, all over the common ``denominator`` (a unit)."""

    group_id: str
    residue: int
    transposed: bool
    pivots: Tuple[Tuple[int, int], ...]
    rows: Tuple[int, ...]
    columns: Tuple[int, ...]
    polynomials: Tuple[Poly, ...]
    denominator: Poly

    @property
    def prime(self) -> int:
        return GroupConst.PRIME[self.group_id]

    def is_trivial(self) -> bool:
        return not self.columns

    def is_cyclic(self) -> bool:
        return len(self.columns) <= 1

    def min_valuation_at(self, x: int, power: int):
        modulus = self.prime**power
        return min(
            (_truncated_valuation(_eval_mod(poly, x, modulus), self.prime, power) for poly in self.polynomials),
            default=0,
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "group": GroupConst.SPACE[self.group_id],
            "residue": self.residue,
            "pivots": [[row + 1, col + 1] for row, col in self.pivots],
            "polynomials": [[str(int(c)) for c in reversed(poly.all_coeffs())] for poly in self.polynomials],
            "denominator": [str(int(c)) for c in reversed(self.denominator.all_coeffs())],
        }


def _is_unit(poly: Poly, prime: int, x0: int) -> bool:
    return int(poly.eval(x0)) % prime != 0


def _poly_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant over Z[x]."""
    rows = [list(row) for row in matrix]
    size, sign, previous = len(rows), 1, _constant(1)
    for k in range(size - 1):
        if rows[k][k].is_zero:
            swap = next((i for i in range(k + 1, size) if not rows[i][k].is_zero), None)
            if swap is None:
                return _constant(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]).exquo(previous)
        previous = rows[k][k]
    return rows[-1][-1] * sign


def _strip_common_content(poly: Poly, denominator: Poly) -> Poly:
    common = gcd(int(poly.content()), int(denominator.content()))
    return poly.exquo_ground(common) if common > 1 else poly


def _unit_pivot_reduction(
    presentation: PresentationMatrix, residue: int
) -> Tuple[List[Tuple[int, int]], List[int], List[int], Dict[Tuple[int, int], Poly], Poly]:
    prime = presentation.prime
    nrows, ncols = presentation.shape
    entries = {(i, j): presentation.entry(i, j) for i in range(nrows) for j in range(ncols)}
    rows, cols = list(range(nrows)), list(range(ncols))
    previous, pivots = _constant(1), []
    while cols:
        pivot = next(((i, j) for i in rows for j in cols if _is_unit(entries[i, j], prime, residue)), None)
        if pivot is None:
            break
        row, col = pivot
        head = entries[row, col]
        for i in rows:
            if i == row:
                continue
            for j in cols:
                if j != col:
                    entries[i, j] = (head * entries[i, j] - entries[i, col] * entries[row, j]).exquo(previous)
        rows.remove(row)
        cols.remove(col)
        previous = head
        pivots.append(pivot)
        logger.debug("Pivot %s on the class x = %s mod %s.", pivot, residue, prime)
    return pivots, rows, cols, entries, previous


@cache
def reduce_to_residuals(group_id: str, residue: Optional[int] = None, transposed: bool = True) -> ResidualPolynomials:
    """This function pivots on units of the symbolic presentation until none is left.

    An entry is a unit on the class x = residue mod p iff its value there is prime to p; the first such entry in
    row-major order is the pivot. Elimination is fraction-free (Bareiss), so every remaining entry is an n x n minor
    and the last pivot is the common denominator.

    Args:
        group_id: "G29", "G31" or "G34" (aliases accepted).
        residue: Class of x = r^t mod p; the class carrying the nonzero groups by default.
        transposed: True for v1^-1 pi_2t, False for v1^-1 pi_2t-1.

    Returns:
        The :class:`ResidualPolynomials` with the pivot transcript.
    """
    group_id = resolve_group_id(group_id)
    prime = GroupConst.PRIME[group_id]
    residue = GroupConst.RESIDUE_X0[group_id] if residue is None else residue % prime
    logger.info("Going to reduce the presentation of %s on the class x = %s mod %s.", group_id, residue, prime)
    pivots, rows, cols, entries, denominator = _unit_pivot_reduction(presentation_matrix(group_id, transposed), residue)
    polynomials = tuple(_strip_common_content(entries[i, j], denominator) for j in cols for i in rows)
    return ResidualPolynomials(
        group_id, residue, transposed, tuple(pivots), tuple(rows), tuple(cols), polynomials, denominator
    )


@cache
def classical_residuals(group_id: str) -> ResidualPolynomials:
    """This function replays the classical reduction: pivot on the bottom rows n+1..2n-1 and columns 2..n.

    The residuals are the minors det(M[pivot rows + (i,)]) for the top rows i and the last row, divided by the integer
    content they share with the pivot minor. For X29 these are exactly the polynomials p_1, ..., p_5 obtained from
    the pivots (5, 2), (7, 4) and (6, 3).

    Raises:
        VerificationError: If the pivot minor is not a unit on the nonzero class.
    """
    group_id = resolve_group_id(group_id)
    presentation = presentation_matrix(group_id)
    prime = presentation.prime
    residue = GroupConst.RESIDUE_X0[group_id]
    size = presentation.shape[1]
    pivot_rows = list(range(size, 2 * size - 1))
    pivot_cols = list(range(1, size))

    denominator = _poly_det([[presentation.entry(i, j) for j in pivot_cols] for i in pivot_rows])
    if not _is_unit(denominator, prime, residue):
        raise VerificationError(
            f"The pivot minor of {group_id} is not a unit on x = {residue} mod {prime}. Please investigate."
        )
    residual_rows = list(range(size)) + [2 * size - 1]
    polynomials = tuple(
        _strip_common_content(
            _poly_det([[presentation.entry(i, j) for j in range(size)] for i in pivot_rows + [row]]), denominator
        )
        for row in residual_rows
    )
    return ResidualPolynomials(
        group_id,
        residue,
        True,
        tuple(zip(pivot_rows, pivot_cols)),
        tuple(residual_rows),
        (0,),
        polynomials,
        denominator,
    )


def exponent_at(group_id: str, t: int, precision: Optional[int] = None, transposed: bool = True) -> V1Group:
    """This function computes v1^-1 pi_2t (or pi_2t-1) for any t from the residual polynomials.

    The residuals are evaluated at x = r^t mod p^N with N = cap + guard; if every one of them vanishes modulo p^N the
    precision is doubled, up to ``BudgetConst.MAX_PRECISION_RETRIES`` times.

    Args:
        group_id: "G29", "G31" or "G34" (aliases accepted).
        t: Positive integer, of any size.
        precision: Starting N, cap + guard by default.
        transposed: True for v1^-1 pi_2t, False for v1^-1 pi_2t-1.

    Returns:
        The :class:`V1Group` with method "residual".

    Raises:
        PrecisionExhaustedError: If all retries are used up.
        VerificationError: If the residuals do not present a cyclic group.
    """
    group_id = resolve_group_id(group_id)
    if t < 1:
        raise ValueError(f"The parameter t must be positive, got {t}.")
    prime = GroupConst.PRIME[group_id]
    r = bousfield_generator(prime)
    residuals = reduce_to_residuals(group_id, pow(r, t, prime), transposed)
    if residuals.is_trivial():
        return V1Group(group_id, prime, t, (), "residual")
    if not residuals.is_cyclic():
        raise VerificationError(f"Unit pivoting leaves {len(residuals.columns)} columns for {group_id} at t = {t}.")

    power = precision or GroupConst.CAP[group_id] + BudgetConst.PRECISION_GUARD
    for _ in range(BudgetConst.MAX_PRECISION_RETRIES):
        lowest = residuals.min_valuation_at(pow(r, t, prime**power), power)
        if lowest != INFINITY:
            return V1Group(group_id, prime, t, (lowest,) if lowest else (), "residual")
        logger.warning(
            "All residuals of %s vanish mod %s^%s at t = %s, doubling the precision.", group_id, prime, power, t
        )
        power *= 2
    raise PrecisionExhaustedError(f"The exponent of {group_id} at t = {t} exceeds {prime}^{power // 2}.")


def snf_at(
    group_id: str, t: int, transposed: bool = True, max_bits: int = BudgetConst.MAX_PRESENTATION_BITS
) -> V1Group:
    """The exact Smith normal form path at t."""
    group_id = resolve_group_id(group_id)
    presentation = presentation_matrix(group_id, transposed)
    return snf_cokernel_ppart(presentation.at(t, max_bits), presentation.prime, group_id, t)


def order_equality(group_id: str, t: int) -> Tuple[V1Group, V1Group]:
    """The SNF groups of the 2t and 2t-1 presentations; their orders must agree."""
    even, odd = snf_at(group_id, t, True), snf_at(group_id, t, False)
    if even.exponent != odd.exponent:
        raise VerificationError(
            f"v1^-1 pi_{2 * t} and v1^-1 pi_{2 * t - 1} of {group_id} have orders p^{even.exponent} and "
            f"p^{odd.exponent}. Please investigate."
        )
    return even, odd


def verify_cyclic_odd(group_id: str) -> int:
    """This function counts the unit pivots of the un-transposed presentation on the nonzero class.

    Returns:
        The number of unit pivots, n - 1 for a cyclic v1^-1 pi_2t-1.

    Raises:
        VerificationError: If fewer than n - 1 unit pivots exist.
    """
    group_id = resolve_group_id(group_id)
    residuals = reduce_to_residuals(group_id, None, False)
    size = presentation_matrix(group_id, False).shape[1]
    if len(residuals.pivots) < size - 1:
        raise VerificationError(
            f"Only {len(residuals.pivots)} unit pivots in the odd presentation of {group_id}, expected {size - 1}."
        )
    return len(residuals.pivots)


def valuation_profile(group_id: str, m: int, index: int, precision: Optional[int] = None) -> Tuple[Any, ...]:
    """This function returns nu_p of the coefficients of y^0, y^1, ... in p_index(r^m + y).

    ``index`` counts the classical residuals from 1; coefficients vanishing mod p^N are reported as INFINITY.
    """
    residuals = classical_residuals(group_id)
    prime = residuals.prime
    power = precision or GroupConst.CAP[residuals.group_id] + BudgetConst.PRECISION_GUARD
    modulus = prime**power
    shifted = residuals.polynomials[index - 1].shift(pow(bousfield_generator(prime), m, modulus))
    return tuple(_truncated_valuation(int(c), prime, power) for c in reversed(shifted.all_coeffs()))


@dataclass(frozen=True)
class PeakResult:
    """The closed form of one residue class: min(cap, base + nu_p(t - peak)), or the constant ``cap``."""

    group_id: str
    representative: int
    modulus: int
    base: int
    cap: int
    peak: Optional[int]
    stages: Tuple[Tuple[int, int, Tuple[int, ...]], ...]

    @property
    def prime(self) -> int:
        return GroupConst.PRIME[self.group_id]

    def is_constant(self) -> bool:
        return self.peak is None

    def offset(self) -> Tuple[int, int]:
        """(a, e) with peak - representative = a p^e and a prime to p."""
        difference = self.peak - self.representative
        if difference == 0:
            return 0, 0
        power = valuation(difference, self.prime)
        return difference // self.prime**power, power

    def predict(self, t: int) -> int:
        if self.is_constant():
            return self.cap
        return int(min(self.cap, self.base + valuation(t - self.peak, self.prime)))

    def formula(self) -> str:
        if self.is_constant():
            return str(self.cap)
        a, power = self.offset()
        return f"min({self.cap},{self.base}+nu_{self.prime}(t-{self.representative}-{a}*{self.prime}^{power}))"


def _class_representative(group_id: str, residue: int) -> int:
    """The generator dimension d - 1 in the class if there is one, else the least residue."""
    modulus = period(group_id)
    return next(
        (degree - 1 for degree in GroupConst.DEGREES[group_id] if (degree - 1) % modulus == residue % modulus),
        residue % modulus,
    )


def find_peak(group_id: str, residue: int, precision: Optional[int] = None) -> PeakResult:
    """This function lifts a residue class modulo p(p - 1) p^s until the group stops growing.

    At each stage the p lifts c + j M of the current class are evaluated; all but the one containing the peak t*
    give base + nu_p(M). The lift with the largest exponent is kept and M is multiplied by p. A stage where all lifts
    agree ends the search: at stage 0 the class is constant, later the cap is reached and t* is known mod M.

    Args:
        group_id: "G29", "G31" or "G34" (aliases accepted).
        residue: A class modulo p(p - 1) with t = T0 mod (p - 1).
        precision: Passed to :func:`exponent_at`.

    Returns:
        The :class:`PeakResult`.

    Raises:
        ValueError: If the class carries the zero group.
        VerificationError: If the lifting does not settle within ``BudgetConst.MAX_PEAK_STAGES`` stages.
    """
    group_id = resolve_group_id(group_id)
    prime = GroupConst.PRIME[group_id]
    if residue % (prime - 1) != GroupConst.NONZERO_T0[group_id] % (prime - 1):
        raise ValueError(f"The groups of {group_id} vanish on t = {residue} mod {prime - 1}.")
    representative = _class_representative(group_id, residue)
    current, modulus = representative, period(group_id)
    logger.info("Going to find the peak of %s on t = %s mod %s.", group_id, representative, modulus)

    stages = []
    for _ in range(BudgetConst.MAX_PEAK_STAGES):
        exponents = tuple(exponent_at(group_id, current + j * modulus, precision).exponent for j in range(prime))
        stages.append((modulus, current, exponents))
        if len(set(exponents)) == 1:
            break
        current += exponents.index(max(exponents)) * modulus
        modulus *= prime
    else:
        raise VerificationError(f"The peak of {group_id} on t = {representative} did not settle. Please investigate.")

    first = stages[0][2]
    if len(stages) == 1:
        return PeakResult(group_id, representative, modulus, first[0], first[0], None, tuple(stages))
    return PeakResult(group_id, representative, modulus, min(first) - 1, stages[-1][2][0], current, tuple(stages))


@cache
def peaks(group_id: str) -> Tuple[PeakResult, ...]:
    group_id = resolve_group_id(group_id)
    prime = GroupConst.PRIME[group_id]
    t0 = GroupConst.NONZERO_T0[group_id]
    return tuple(find_peak(group_id, residue) for residue in range(t0, period(group_id), prime - 1))


def closed_form(group_id: str) -> pd.DataFrame:
    """This function derives the closed form of v1^-1 pi_* for every residue class modulo p(p - 1).

    Returns:
        Pandas DataFrame with the columns group, modulus, classes, kind, base, cap, peak, formula. The first row is
        the class off which the groups vanish; constant classes with the same exponent share one row.
    """
    group_id = resolve_group_id(group_id)
    prime = GroupConst.PRIME[group_id]
    t0 = GroupConst.NONZERO_T0[group_id]
    rows = [
        {
            "group": GroupConst.SPACE[group_id],
            "modulus": prime - 1,
            "classes": f"not {t0}",
            "kind": "zero",
            "base": 0,
            "cap": 0,
            "peak": "",
            "formula": "0",
        }
    ]
    constant: Dict[int, List[int]] = {}
    for result in peaks(group_id):
        if result.is_constant():
            constant.setdefault(result.cap, []).append(result.representative)
    for cap, classes in constant.items():
        rows.append(
            {
                "group": GroupConst.SPACE[group_id],
                "modulus": period(group_id),
                "classes": ",".join(str(c) for c in sorted(classes)),
                "kind": "constant",
                "base": cap,
                "cap": cap,
                "peak": "",
                "formula": str(cap),
            }
        )
    for result in peaks(group_id):
        if not result.is_constant():
            a, power = result.offset()
            rows.append(
                {
                    "group": GroupConst.SPACE[group_id],
                    "modulus": period(group_id),
                    "classes": str(result.representative),
                    "kind": "peak",
                    "base": result.base,
                    "cap": result.cap,
                    "peak": f"{result.representative}+{a}*{prime}^{power}",
                    "formula": result.formula(),
                }
            )
    return pd.DataFrame(rows)


def closed_form_at(group_id: str, t: int) -> V1Group:
    """Evaluate the derived closed form at t."""
    group_id = resolve_group_id(group_id)
    prime = GroupConst.PRIME[group_id]
    if t % (prime - 1) != GroupConst.NONZERO_T0[group_id] % (prime - 1):
        return V1Group(group_id, prime, t, (), "closed-form")
    result = next(p for p in peaks(group_id) if (t - p.representative) % period(group_id) == 0)
    return V1Group(group_id, prime, t, (result.predict(t),) if result.predict(t) else (), "closed-form")


def bspace_group(dims: Sequence[int], prime: int, t: int) -> V1Group:
    """This function evaluates v1^-1 pi_2t(B(dims))_(p) for the spherically resolved B-spaces with a known formula.

    The group is Z/p^e with e the max over gamma of min(gamma, offset + nu_p(t - gamma)) on the class t = residue
    mod period, and 0 elsewhere; the constants come from the catalog.

    Raises:
        CatalogLookupError: If (dims, p) has no shipped formula.
    """
    formula = bspace_formula(tuple(dims), prime)
    label = f"B({','.join(str(dim) for dim in formula.dims)})"
    if (t - formula.residue) % formula.period:
        return V1Group(label, prime, t, (), "closed-form")
    exponent = max(min(gamma, formula.offset + valuation(t - gamma, prime)) for gamma in formula.gammas)
    return V1Group(label, prime, t, (int(exponent),), "closed-form")


def _sweep_cell(payload: Tuple[str, int, int]) -> Dict[str, Any]:
    group_id, t, max_bits = payload
    residual = exponent_at(group_id, t)
    predicted = closed_form_at(group_id, t)
    try:
        snf = snf_at(group_id, t, max_bits=max_bits).exponent
    except BudgetExceededError:
        snf = None
    return {
        "group": GroupConst.SPACE[group_id],
        "t": t,
        "snf": snf,
        "residual": residual.exponent,
        "closed_form": predicted.exponent,
        "agree": residual.exponent == predicted.exponent and snf in (None, residual.exponent),
    }


def sweep(
    group_id: str,
    t_values: Sequence[int],
    threads: int = 1,
    max_bits: int = BudgetConst.MAX_PRESENTATION_BITS,
) -> pd.DataFrame:
    """This function compares the SNF, residual and closed-form exponents over many t.

    Returns:
        Pandas DataFrame sorted by t with the columns group, t, snf, residual, closed_form, agree; snf is None where
        the exact matrix exceeds the bit budget.
    """
    group_id = resolve_group_id(group_id)
    peaks(group_id)
    payloads = [(group_id, t, max_bits) for t in t_values]
    logger.info("Going to sweep %s values of t for %s.", len(payloads), group_id)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            cells = list(executor.map(_sweep_cell, payloads))
    else:
        cells = [_sweep_cell(payload) for payload in payloads]
    table = pd.DataFrame(cells).sort_values("t").reset_index(drop=True) if cells else pd.DataFrame(cells)
    if not table.empty and not table["agree"].all():
        logger.warning("Disagreement for %s at t = %s.", group_id, table.loc[~table["agree"], "t"].tolist())
    return table


def _parse_dims(values: Sequence[int]) -> Tuple[int, ...]:
    dims = tuple(int(value) for value in values)
    if not dims or any(dim < 1 or dim % 2 == 0 for dim in dims):
        raise ValueError(f"--bspace expects odd sphere dimensions, got {dims}.")
    return dims


def _bspace_report(config: RunConfig) -> Report:
    if config.p is None or config.t is None:
        raise ValueError("--bspace needs --p and --t.")
    group = bspace_group(_parse_dims(config.bspace), config.p, config.t)
    payload = {
        "space": group.group_id,
        "prime": group.prime,
        "t": group.t,
        "group": group.label(),
        "exponent": group.exponent,
        "method": [group.method],
        "agree": True,
    }
    return Report("v1pi", payload, pd.DataFrame([payload]).drop(columns=["method", "agree"]))


def _group_at_report(config: RunConfig, group_id: str) -> Report:
    residual = exponent_at(group_id, config.t, config.precision)
    methods, exponents = ["residual"], {residual.exponent}
    try:
        snf = snf_at(group_id, config.t, max_bits=config.max_bits)
        methods.insert(0, "snf")
        exponents.add(snf.exponent)
    except BudgetExceededError as err:
        logger.warning("Skipping the SNF path: %s", err)
    payload = {
        "space": GroupConst.SPACE[group_id],
        "prime": residual.prime,
        "t": config.t,
        "group": residual.label(),
        "exponent": residual.exponent,
        "method": methods,
        "agree": len(exponents) == 1,
    }
    table = pd.DataFrame([{key: value for key, value in payload.items() if key != "method"}])
    return Report("v1pi", payload, table, passed=payload["agree"])


def process(config: RunConfig) -> Report:
    """This is the entry point of the ``v1pi`` subcommand.

    Args:
        config: Either ``--bspace`` with ``--p`` and ``--t``, or ``--group`` with ``--t`` (one group, both oracles),
            ``--closed-form`` (the closed form of every residue class), or neither (the presentation matrix and the
            residual polynomials).
    """
    logger.info("The processing of %s just started.", __name__)
    if config.bspace:
        return _bspace_report(config)

    group_id = resolve_group_id(config.require_group())
    space = GroupConst.SPACE[group_id]
    if config.t is not None:
        return _group_at_report(config, group_id)
    if config.closed_form:
        table = closed_form(group_id)
        payload = {"space": space, "prime": GroupConst.PRIME[group_id], "closed_form": records(table)}
        return Report("v1pi", payload, table)

    presentation = presentation_matrix(group_id)
    residuals = classical_residuals(group_id)
    payload = {
        "space": space,
        "prime": presentation.prime,
        "r": presentation.r,
        "presentation": presentation.to_json(),
        "residuals": residuals.to_json(),
    }
    table = pd.DataFrame(
        {
            "residual": [f"p_{index + 1}" for index in range(len(residuals.polynomials))],
            "polynomial": [str(poly.as_expr()) for poly in residuals.polynomials],
        }
    )
    return Report("v1pi", payload, table)
