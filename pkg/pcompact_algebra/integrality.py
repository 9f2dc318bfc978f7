# -*- coding: utf-8 -*-
"""p-integral combinations of the K-theory classes F_d = f_d(log(1 + x_1), ..., log(1 + x_n)).

A polynomial in the F_d is p-integral through the cap iff the same polynomial in F~_d = f_d(l_p(x_1), ...) is, where
l_p(x) = x + x^p/p + x^(p^2)/p^2 + ... is the p-typical log. All work is therefore done with F~_d, one grading at a
time: at grading g the coordinates of a combination in the m-basis must be p-integral, and a combination which is not
gets corrected by candidates of degree g with coefficients c_i / p^k found by solving a linear system mod p^k.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cache
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from sympy import QQ

from .constants import GroupConst
from .data_utils import load_data_file
from .errors import InconsistentSystemError, VerificationError
from .exact import INFINITY, Rational, format_rational, parse_rational, residue
from .invariants import T_F_MONOMIAL, f_monomials_of_degree, format_f_monomial, poly_for_degree, resolve_group_id
from .modular import ModularSolution, min_valuation, solve_mod_prime_power
from .reports import Report, RunConfig, records
from .sympoly import GradedSeries, SymPoly, log_tail, substitute_series

PICTURES = ("typical", "log")

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CombinationTerm:
    monomial: T_F_MONOMIAL
    coefficient: Rational

    def degree(self) -> int:
        return sum(degree * exponent for degree, exponent in self.monomial)


@dataclass(frozen=True)
class IntegralCombination:
    """F_d plus a rational combination of F-monomials of higher degree, p-integral through ``verified_through``."""

    group_id: str
    base_degree: int
    terms: Tuple[CombinationTerm, ...]
    verified_through: int

    def __post_init__(self):
        prime = GroupConst.PRIME[self.group_id]
        if self.coefficient(((self.base_degree, 1),)) != 1:
            raise VerificationError(f"The base term F_{self.base_degree} must have coefficient 1.")
        for term in self.terms:
            denominator = int(term.coefficient.denominator)
            while denominator % prime == 0:
                denominator //= prime
            if denominator != 1:
                raise VerificationError(
                    f"The coefficient {format_rational(term.coefficient)} of {format_f_monomial(term.monomial, 'F')} "
                    f"has a denominator which is not a power of {prime}."
                )

    @property
    def prime(self) -> int:
        return GroupConst.PRIME[self.group_id]

    def coefficient(self, monomial: T_F_MONOMIAL) -> Rational:
        return next((term.coefficient for term in self.terms if term.monomial == tuple(monomial)), QQ.zero)

    def linear_coefficients(self) -> Dict[int, Rational]:
        """{d: coefficient of F_d} for the terms of length one."""
        return {
            term.monomial[0][0]: term.coefficient
            for term in self.terms
            if len(term.monomial) == 1 and term.monomial[0][1] == 1
        }

    def plus(
        self, corrections: Sequence[Tuple[T_F_MONOMIAL, Rational]], verified_through: int
    ) -> "IntegralCombination":
        """A new combination with the corrections added; terms stay in the order they were introduced."""
        values = {term.monomial: term.coefficient for term in self.terms}
        for monomial, coefficient in corrections:
            values[tuple(monomial)] = values.get(tuple(monomial), QQ.zero) + coefficient
        terms = tuple(CombinationTerm(monomial, value) for monomial, value in values.items() if value)
        return IntegralCombination(self.group_id, self.base_degree, terms, verified_through)

    def to_json(self) -> Dict[str, Any]:
        return {
            "group": self.group_id,
            "base_degree": self.base_degree,
            "verified_through": self.verified_through,
            "terms": [
                {
                    "F": {str(degree): exponent for degree, exponent in term.monomial},
                    "coeff": format_rational(term.coefficient),
                }
                for term in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "IntegralCombination":
        return cls(data["group"], data["base_degree"], _parse_terms(data["terms"]), data["verified_through"])


def _parse_terms(terms: Sequence[Dict[str, Any]]) -> Tuple[CombinationTerm, ...]:
    return tuple(
        CombinationTerm(
            tuple(sorted((int(degree), int(exponent)) for degree, exponent in term["F"].items())),
            parse_rational(str(term["coeff"])),
        )
        for term in terms
    )


@cache
def load_combinations(group_id: str) -> Dict[int, IntegralCombination]:
    """This function loads the shipped integral combinations of a group, one per base degree."""
    group_id = resolve_group_id(group_id)
    data = load_data_file("combinations.json")["combinations"][group_id]
    return {
        int(base_degree): IntegralCombination(group_id, int(base_degree), _parse_terms(terms), data["verified_through"])
        for base_degree, terms in data["lines"].items()
    }


def load_combination(group_id: str, base_degree: int) -> IntegralCombination:
    combinations = load_combinations(group_id)
    if base_degree not in combinations:
        raise ValueError(f"No combination with base degree {base_degree} for {group_id}: {sorted(combinations)}.")
    return combinations[base_degree]


def symbol_degrees(group_id: str) -> Tuple[int, ...]:
    """Degrees d of the F_d symbols: the generator degrees plus the decomposable symbols (F_36 for G34)."""
    group_id = resolve_group_id(group_id)
    return tuple(sorted(GroupConst.DEGREES[group_id] + GroupConst.DECOMPOSABLE_SYMBOLS[group_id]))


@cache
def f_series(group_id: str, degree: int, picture: str = "typical") -> GradedSeries:
    """F~_d (``picture="typical"``) or F_d (``picture="log"``) through the cap of the group."""
    if picture not in PICTURES:
        raise ValueError(f"Unknown picture {picture}, expected one of {PICTURES}.")
    group_id = resolve_group_id(group_id)
    prime, cap = GroupConst.PRIME[group_id], GroupConst.CAP[group_id]
    logger.debug("Going to expand F_%s of %s in the %s picture.", degree, group_id, picture)
    tail = log_tail(cap) if picture == "log" else None
    return substitute_series(poly_for_degree(group_id, degree), prime, cap, tail)


@cache
def _monomial_series(group_id: str, monomial: T_F_MONOMIAL, picture: str) -> GradedSeries:
    series: Optional[GradedSeries] = None
    for degree, exponent in monomial:
        for _ in range(exponent):
            factor = f_series(group_id, degree, picture)
            series = factor if series is None else series * factor
    if series is None:
        raise ValueError("The empty monomial has no series.")
    return series


def expand_F_monomial(  # pylint: disable=invalid-name
    group_id: str, monomial: T_F_MONOMIAL, grading: int, picture: str = "typical"
) -> SymPoly:
    """This function returns the grading ``grading`` component of prod F~_d^(e_d) in the m-basis.

    Args:
        group_id: The group.
        monomial: ((d, e_d), ...).
        grading: Must not exceed the cap of the group.
        picture: "typical" for F~ (the p-typical log), "log" for F itself.

    Returns:
        Exact rational coordinates.

    Raises:
        BudgetExceededError: If the grading is above the cap.
    """
    group_id = resolve_group_id(group_id)
    return _monomial_series(group_id, tuple(monomial), picture).component(grading)


def combination_component(combination: IntegralCombination, grading: int, picture: str = "typical") -> SymPoly:
    result = SymPoly(GroupConst.NVARS[combination.group_id])
    for term in combination.terms:
        if term.degree() <= grading:
            result = result + expand_F_monomial(combination.group_id, term.monomial, grading, picture).scale(
                term.coefficient
            )
    return result


def combination_gradings(combination: IntegralCombination, picture: str = "typical", through: Optional[int] = None):
    """Gradings to check: base, base + (p - 1), ... in the typical picture, every grading in the log picture."""
    through = GroupConst.CAP[combination.group_id] if through is None else through
    step = combination.prime - 1 if picture == "typical" else 1
    return list(range(combination.base_degree, through + 1, step))


def _ledger_cell(payload: Tuple[Dict[str, Any], int, int, str]) -> Tuple[int, int, Any, int]:
    combination_json, grading, length, picture = payload
    combination = IntegralCombination.from_json(combination_json)
    component = combination_component(combination, grading, picture)
    values = [value for partition, value in component.terms.items() if len(partition) == length]
    return grading, length, min_valuation(values, combination.prime), len(values)


def verify_combination(
    combination: IntegralCombination,
    through: Optional[int] = None,
    picture: str = "typical",
    threads: int = 1,
) -> pd.DataFrame:
    """This function checks a combination grading by grading and returns the congruence ledger.

    At grading g = base + (p - 1) t the combination is p-integral iff p^t times its coordinates vanish mod p^t,
    i.e. iff their minimal valuation is >= 0. Every (grading, partition length) cell is independent, and with
    ``threads > 1`` the cells are spread over a process pool.

    Args:
        combination: The combination.
        through: Last grading to check, the cap of the group by default.
        picture: "typical" or "log".
        threads: Number of worker processes.

    Returns:
        Pandas DataFrame with one row per grading and the columns group, base_degree, grading, t, modulus,
        coordinates, min_valuation, passed. Failures are rows with passed == False.
    """
    gradings = combination_gradings(combination, picture, through)
    nvars = GroupConst.NVARS[combination.group_id]
    payloads = [
        (combination.to_json(), grading, length, picture) for grading in gradings for length in range(1, nvars + 1)
    ]
    logger.info(
        "Going to verify the F_%s line of %s through grading %s (%s cells).",
        combination.base_degree,
        combination.group_id,
        gradings[-1] if gradings else combination.base_degree,
        len(payloads),
    )
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            cells = list(executor.map(_ledger_cell, payloads))
    else:
        cells = [_ledger_cell(payload) for payload in payloads]

    prime = combination.prime
    rows = []
    for grading in gradings:
        grading_cells = [cell for cell in cells if cell[0] == grading]
        lowest = min((cell[2] for cell in grading_cells), default=INFINITY)
        t = (grading - combination.base_degree) // (prime - 1)
        rows.append(
            {
                "group": combination.group_id,
                "base_degree": combination.base_degree,
                "grading": grading,
                "t": t,
                "modulus": prime**t,
                "coordinates": sum(cell[3] for cell in grading_cells),
                "min_valuation": lowest,
                "passed": lowest >= 0,
            }
        )
    ledger = pd.DataFrame(rows)
    failed = ledger[~ledger["passed"]] if not ledger.empty else ledger
    if not failed.empty:
        logger.warning("The F_%s line fails at gradings %s.", combination.base_degree, failed["grading"].tolist())
    return ledger


@dataclass(frozen=True)
class IntegralizationStep:
    """One solve: c with sum_i c_i W_i = -sign p^k V (mod p^k), applied as C + sign sum_i (c_i / p^k) candidate_i."""

    grading: int
    power: int
    candidates: Tuple[T_F_MONOMIAL, ...]
    solution: Optional[ModularSolution]
    combination: IntegralCombination

    @property
    def values(self) -> Tuple[int, ...]:
        return self.solution.values if self.solution else tuple(0 for _ in self.candidates)


def integralization_system(
    combination: IntegralCombination, grading: int, candidates: Sequence[T_F_MONOMIAL]
) -> Tuple[List[List[int]], List[Rational], int]:
    """This function sets up the mod p^k system of :func:`solve_integralization`.

    Returns:
        (matrix, scaled right hand side p^k V, k). The matrix holds the integer coordinates of the candidates at
        their own degree, i.e. of the products of the f_d, one row per partition.
    """
    prime = combination.prime
    component = combination_component(combination, grading)
    lowest = min_valuation(list(component.terms.values()), prime)
    if lowest >= 0:
        return [], [], 0
    power = int(-lowest)

    modulus = prime**power
    products = [expand_F_monomial(combination.group_id, candidate, grading) for candidate in candidates]
    coordinates = sorted(set(component.terms).union(*(poly.terms for poly in products)), reverse=True)
    matrix = [[residue(poly.coefficient(partition), modulus) for poly in products] for partition in coordinates]
    rhs = [component.coefficient(partition) * modulus for partition in coordinates]
    return matrix, rhs, power


def solve_integralization(
    combination: IntegralCombination, grading: int, candidates: Sequence[T_F_MONOMIAL]
) -> IntegralizationStep:
    """This function makes a combination p-integral at one grading.

    With V the coordinates of the combination at ``grading`` and k = -min nu_p(V), it solves
    sum_i c_i W_i = -sign p^k V (mod p^k), W_i being the integer coordinates of the candidates, and returns the
    canonical solution (least non-negative residues) together with the corrected combination
    C + sign sum_i (c_i / p^k) candidate_i. The sign is -1 for G29 and G31, +1 for G34.

    Args:
        combination: The combination, integral below ``grading``.
        grading: The grading to fix.
        candidates: F-monomials of degree ``grading``.

    Returns:
        The step; no solve happens when the combination is already integral at ``grading``.

    Raises:
        InconsistentSystemError: If the candidates cannot repair the grading.
    """
    candidates = tuple(tuple(candidate) for candidate in candidates)
    for candidate in candidates:
        if sum(degree * exponent for degree, exponent in candidate) != grading:
            raise ValueError(f"The candidate {format_f_monomial(candidate, 'F')} is not of degree {grading}.")

    matrix, rhs, power = integralization_system(combination, grading, candidates)
    if power == 0:
        unchanged = combination.plus((), max(grading, combination.verified_through))
        return IntegralizationStep(grading, 0, candidates, None, unchanged)

    prime = combination.prime
    sign = GroupConst.INTEGRALIZATION_SIGN[combination.group_id]
    modulus = prime**power
    try:
        solution = solve_mod_prime_power(matrix, [residue(-sign * value, modulus) for value in rhs], prime, power)
    except InconsistentSystemError as err:
        raise InconsistentSystemError(
            f"Grading {grading} of the F_{combination.base_degree} line of {combination.group_id} cannot be made "
            f"integral with {[format_f_monomial(c, 'F') for c in candidates]}. Please investigate."
        ) from err

    corrections = [
        (candidate, QQ(sign * value, modulus)) for candidate, value in zip(candidates, solution.values) if value
    ]
    logger.debug("Grading %s: k = %s, solution %s.", grading, power, solution.values)
    return IntegralizationStep(grading, power, candidates, solution, combination.plus(corrections, grading))


def default_candidates(group_id: str, grading: int) -> List[T_F_MONOMIAL]:
    """All F-monomials of degree ``grading``, or only F_grading for the groups needing linear terms only."""
    group_id = resolve_group_id(group_id)
    degrees = symbol_degrees(group_id)
    if group_id in GroupConst.LINEAR_ONLY:
        return [((grading, 1),)] if grading in degrees else []
    return f_monomials_of_degree(GroupConst.DEGREES[group_id], grading)


def derive_combination(group_id: str, base_degree: int, through: Optional[int] = None) -> List[IntegralizationStep]:
    """This function re-derives the integral combination starting at F_d, grading by grading.

    Args:
        group_id: The group.
        base_degree: d.
        through: Last grading, the cap by default.

    Returns:
        The steps; the combination of the last step is the derived line.
    """
    group_id = resolve_group_id(group_id)
    through = GroupConst.CAP[group_id] if through is None else through
    prime = GroupConst.PRIME[group_id]
    base_term = CombinationTerm(((base_degree, 1),), QQ.one)
    combination = IntegralCombination(group_id, base_degree, (base_term,), base_degree)

    logger.info("Going to derive the F_%s line of %s through grading %s.", base_degree, group_id, through)
    steps = []
    for grading in range(base_degree + prime - 1, through + 1, prime - 1):
        step = solve_integralization(combination, grading, default_candidates(group_id, grading))
        combination = step.combination
        steps.append(step)
    return steps


def linear_coefficient_recursion(k: int, t_max: int, prime: int = 7) -> List[int]:
    """This function solves the length one congruences of the G34 lines.

    The coefficient of m_(6k+6t) in f_6j(x + x^7) is binom(6j, t + k - j) c_j with
    c_j = 1 + (-1)^j 27^(j-1) 5, so the F_6k line sum_t (a_t / 7^t) F_(6k+6t) needs
    sum_{j=0..t} a_j binom(6k+6j, t-j) c_(k+j) = 0 mod 7^t. Each a_t is taken as the least residue mod 7^t.

    Args:
        k: The line starts at F_6k.
        t_max: Last t.
        prime: 7.

    Returns:
        [a_0 = 1, a_1, ..., a_t_max].
    """

    def c(j: int) -> int:
        return 1 + (-1) ** j * 27 ** (j - 1) * 5

    coefficients = [1]
    for t in range(1, t_max + 1):
        modulus = prime**t
        known = sum(coefficients[j] * comb(6 * k + 6 * j, t - j) * c(k + j) for j in range(t))
        coefficients.append(-known * pow(c(k + t), -1, modulus) % modulus)
    return coefficients


def _correction(group_id: str, power: int, value: int) -> Rational:
    """The coefficient sign * value / p^power a solved value enters the combination with."""
    return QQ(GroupConst.INTEGRALIZATION_SIGN[group_id] * value, GroupConst.PRIME[group_id] ** power)


def _derive_report(config: RunConfig, group_id: str) -> Report:
    if config.degree is None:
        raise ValueError("--derive needs --degree, the base degree of the line.")
    steps = derive_combination(group_id, config.degree, config.through)
    rows = [
        {
            "grading": step.grading,
            "power": step.power,
            "candidate": format_f_monomial(candidate, "F"),
            "value": value,
            "coefficient": format_rational(_correction(group_id, step.power, value)),
        }
        for step in steps
        for candidate, value in zip(step.candidates, step.values)
    ]
    derived = steps[-1].combination if steps else load_combination(group_id, config.degree)
    payload = {
        "group": group_id,
        "base_degree": config.degree,
        "steps": [
            {
                "grading": step.grading,
                "power": step.power,
                "candidates": [format_f_monomial(candidate, "F") for candidate in step.candidates],
                "values": list(step.values),
            }
            for step in steps
        ],
        "derived": derived.to_json(),
    }
    return Report("integrality", payload, pd.DataFrame(rows))


def process(config: RunConfig) -> Report:
    """This is the entry point of the ``integrality`` subcommand.

    Args:
        config: ``--group`` and optionally ``--degree`` (one line instead of all of them). ``--verify`` emits the
            congruence ledger through ``--through`` in the ``--picture``, ``--derive`` re-runs the solves of one line.
            Without either the shipped combinations are listed.
    """
    logger.info("The processing of %s just started.", __name__)
    group_id = resolve_group_id(config.require_group())
    if config.picture not in PICTURES:
        raise ValueError(f"--picture must be one of {PICTURES}, got {config.picture}.")
    if config.derive:
        return _derive_report(config, group_id)

    combinations = load_combinations(group_id)
    lines = [load_combination(group_id, config.degree)] if config.degree else list(combinations.values())
    if not config.verify:
        table = pd.DataFrame(
            [
                {
                    "base_degree": line.base_degree,
                    "term": format_f_monomial(term.monomial, "F"),
                    "coeff": format_rational(term.coefficient),
                }
                for line in lines
                for term in line.terms
            ]
        )
        return Report("integrality", {"group": group_id, "lines": [line.to_json() for line in lines]}, table)

    ledger = pd.concat(
        [verify_combination(line, config.through, config.picture, config.threads) for line in lines],
        ignore_index=True,
    )
    passed = bool(ledger["passed"].all())
    payload = {"group": group_id, "picture": config.picture, "ledger": records(ledger), "passed": passed}
    return Report("integrality", payload, ledger, passed=passed)
