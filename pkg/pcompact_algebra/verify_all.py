# -*- coding: utf-8 -*-
"""The acceptance sweep behind the ``verify-all`` subcommand.

Checks are tiered: tier 1 runs in seconds (matrices, generator polynomials, small t), tier 2 in minutes (the full
integrality ledgers, the f_36 decomposition, the indecomposability tests, the closed forms), tier 3 is opt-in (the
lattice permutation check, the large t SNF stress run and the G34 invariance).
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import pandas as pd
from sympy import QQ, ZZ, Poly

from .adams import KPowerCombo, adams_matrix, change_of_basis, generator_degrees
from .catalog import catalog_report, lookup
from .constants import GroupConst
from .errors import PCompactError
from .integrality import derive_combination, load_combinations, verify_combination
from .invariants import (
    build_f6k,
    build_invariants,
    decompose_f36,
    divisibility_check_h42,
    indecomposable_mod_p,
    integral_generators,
    power_sum,
    verify_invariance,
    verify_lattice,
)
from .reports import Report, RunConfig
from .v1pi import (
    X,
    bspace_group,
    exponent_at,
    find_peak,
    order_equality,
    peaks,
    period,
    presentation_matrix,
    snf_at,
    verify_cyclic_odd,
)

T_CHECK_RESULT = Tuple[bool, str]

logger = logging.getLogger(__name__)

# Closed forms of v1^-1 pi_2t: constant classes {representative: exponent}, and peak classes
# {representative: (base, cap, a, e)} for min(cap, base + nu_p(t - representative - a p^e)).
REFERENCE_CONSTANT_CLASSES: Dict[str, Dict[int, int]] = {
    "G29": {3: 3, 15: 3},
    "G31": {7: 3, 15: 3},
    "G34": {5: 5, 35: 5},
}
REFERENCE_PEAK_CLASSES: Dict[str, Dict[int, Tuple[int, int, int, int]]] = {
    "G29": {7: (3, 8, 4, 4), 11: (3, 12, 4, 8), 19: (3, 20, 12, 16)},
    "G31": {11: (3, 8, 8, 4), 19: (3, 12, 16, 8), 23: (3, 20, 16, 16)},
    "G34": {11: (5, 12, 12, 6), 17: (5, 18, 18, 12), 23: (5, 24, 18, 18), 29: (5, 30, 12, 24), 41: (5, 42, 24, 36)},
}

# (group, t) -> exponent of the cyclic group v1^-1 pi_2t.
REFERENCE_SPOT_VALUES = {("G29", 3): 3, ("G29", 7): 7, ("G29", 27): 4, ("G29", 4): 0, ("G34", 5): 5}

REFERENCE_PIVOT_COUNTS = {"G29": 3, "G31": 3, "G34": 5}

# Rows of the transposed G29 presentation: the first row of (psi^5)^T and the first row of (psi^2)^T - x I.
REFERENCE_G29_PRESENTATION_ROWS = {
    0: (125, -15600, -31274880, -9765631257408),
    4: (8 - X, -24, -1344, -268704),
}

# Coefficients of f_6 f_30, f_12 f_24, f_18^2, f_6^2 f_24, f_6 f_12 f_18, f_12^3, f_6^3 f_18, f_6^2 f_12^2, f_6^4 f_12
# and f_6^6 in f_36.
REFERENCE_F36_COEFFICIENTS = (
    QQ(944610925401, 15161583716),
    QQ(733671261, 19519520),
    QQ(243068633, 9781739),
    QQ(-133840666859131062549, 73986709144034080),
    QQ(-1758887990521258018071215403, 629320589839873719708800),
    QQ(-1602221942044323, 4879880000000),
    QQ(4011206338081535787030788541, 114421925425431585401600),
    QQ(701461342458322269763709951654931, 15733014745996842992720000000),
    QQ(-11844219519446025955021712628669, 22348032309654606523750000),
    QQ(26589469730264682368719198549833, 22348032309654606523750000),
)


@dataclass(frozen=True)
class Check:
    name: str
    tier: int
    run: Callable[[RunConfig], T_CHECK_RESULT]


def _invariants_degrees(_: RunConfig) -> T_CHECK_RESULT:
    degrees = {group_id: build_invariants(group_id).degrees for group_id in GroupConst.GROUP_IDS}
    passed = all(degrees[group_id] == GroupConst.DEGREES[group_id] for group_id in GroupConst.GROUP_IDS)
    return passed, f"generator degrees {degrees}"


def _invariance(group_id: str, degrees=None) -> Callable[[RunConfig], T_CHECK_RESULT]:
    def run(config: RunConfig) -> T_CHECK_RESULT:
        report = verify_invariance(build_invariants(group_id), degrees, config.max_monomials)
        failed = report[report["invariant"].map(lambda value: value is not None and not bool(value))]
        skipped = int(report["invariant"].isna().sum())
        return failed.empty and not skipped, f"{len(report)} pairs, {len(failed)} failed, {skipped} over budget"

    return run


def _power_sums(_: RunConfig) -> T_CHECK_RESULT:
    p3, p4 = power_sum(3), power_sum(4)
    matches = power_sum(6) == build_f6k(1)
    return not p3 and not p4 and matches, f"p_3: {len(p3)} terms, p_4: {len(p4)} terms, p_6 == f_6: {matches}"


def _lattice(_: RunConfig) -> T_CHECK_RESULT:
    report = verify_lattice()
    return report.ok and report.vector_count == 756, f"{report.vector_count} vectors, {len(report.missing)} missing"


def _indecomposability(_: RunConfig) -> T_CHECK_RESULT:
    f20 = indecomposable_mod_p(build_invariants("G29"), 20)
    divisibility_check_h42()
    h42 = indecomposable_mod_p(integral_generators("G34"), 42, target_name="h42")
    passed = not f20.decomposable and not h42.decomposable and len(f20.candidates) == 5
    return passed, f"f20 mod 5 over {len(f20.candidates)} products, h42 mod 7 over {len(h42.candidates)} products"


def _f36(_: RunConfig) -> T_CHECK_RESULT:
    decomposition = decompose_f36()
    if len(decomposition.coefficients) != len(REFERENCE_F36_COEFFICIENTS):
        return False, f"expected 10 coefficients, got {len(decomposition.coefficients)}"
    mismatched = [
        index + 1
        for index, (value, expected) in enumerate(zip(decomposition.coefficients, REFERENCE_F36_COEFFICIENTS))
        if value != expected
    ]
    return not mismatched, f"10 unit coefficients, mismatched: {mismatched}"


def _ledgers(config: RunConfig) -> T_CHECK_RESULT:
    failures = []
    for group_id in GroupConst.GROUP_IDS:
        for combination in load_combinations(group_id).values():
            ledger = verify_combination(combination, threads=config.threads)
            if not ledger["passed"].all():
                failures.append(f"{group_id}/F_{combination.base_degree}")
    return not failures, f"failing lines: {failures}"


def _derivation(_: RunConfig) -> T_CHECK_RESULT:
    steps = derive_combination("G29", 4, 8)
    values = dict(zip(steps[0].candidates, steps[0].values))
    derived = derive_combination("G29", 4)[-1].combination
    ledger_passed = bool(verify_combination(derived)["passed"].all())
    passed = values == {((8, 1),): 1, ((4, 2),): 3} and ledger_passed
    return passed, f"grading 8 solution {values}, re-derived F_4 line integral: {ledger_passed}"


def _adams_shape(_: RunConfig) -> T_CHECK_RESULT:
    details = []
    passed = True
    for group_id in GroupConst.GROUP_IDS:
        matrix = adams_matrix(group_id)
        expected = tuple(KPowerCombo.monomial(degree - 1) for degree in generator_degrees(group_id))
        rebuilt = matrix.reconstruct_diagonal()
        diagonal_ok = all(rebuilt[i][i] == expected[i] for i in range(matrix.size)) and all(
            not rebuilt[i][j] for i in range(matrix.size) for j in range(matrix.size) if i != j
        )
        composes = matrix.compose(2, 3)
        integral = not matrix.non_integral_entries(matrix.prime)
        passed = passed and diagonal_ok and composes and integral
        details.append(f"{group_id}: diagonal {diagonal_ok}, psi^2 psi^3 = psi^6 {composes}, integral {integral}")
    return passed, "; ".join(details)


def _adams_entries(_: RunConfig) -> T_CHECK_RESULT:
    x29 = adams_matrix("G29")
    expected = {
        (1, 0): KPowerCombo.from_dict({3: QQ(1, 5), 7: QQ(-1, 5)}),
        (2, 0): KPowerCombo.from_dict({3: QQ(24, 25), 7: QQ(-8, 25), 11: QQ(-16, 25)}),
    }
    entries_ok = all(x29.entries[i][j] == value for (i, j), value in expected.items())
    x34_ok = change_of_basis("G34")[5][0] == QQ(16647, 16807)

    presentation = presentation_matrix("G29")
    rows_ok = all(
        presentation.rows[row] == tuple(Poly(value, X, domain=ZZ) for value in values)
        for row, values in REFERENCE_G29_PRESENTATION_ROWS.items()
    )
    return entries_ok and x34_ok and rows_ok, f"X29 entries {entries_ok}, X34 P {x34_ok}, presentation {rows_ok}"


def _spot_values(_: RunConfig) -> T_CHECK_RESULT:
    wrong = []
    for (group_id, t), exponent in REFERENCE_SPOT_VALUES.items():
        residual, snf = exponent_at(group_id, t).exponent, snf_at(group_id, t).exponent
        if residual != exponent or snf != exponent:
            wrong.append((group_id, t, residual, snf))
    return not wrong, f"{len(REFERENCE_SPOT_VALUES)} values, wrong (group, t, residual, snf): {wrong}"


def _cyclic(_: RunConfig) -> T_CHECK_RESULT:
    counts = {group_id: verify_cyclic_odd(group_id) for group_id in GroupConst.GROUP_IDS}
    return counts == REFERENCE_PIVOT_COUNTS, f"unit pivots {counts}"


def _oracles(t_max: int) -> Callable[[RunConfig], T_CHECK_RESULT]:
    def run(config: RunConfig) -> T_CHECK_RESULT:
        wrong = [
            (group_id, t)
            for group_id in GroupConst.GROUP_IDS
            for t in range(1, t_max + 1)
            if exponent_at(group_id, t).exponent != snf_at(group_id, t, max_bits=config.max_bits).exponent
        ]
        return not wrong, f"t = 1..{t_max}, disagreements: {wrong[:10]}"

    return run


def _order_equality(_: RunConfig) -> T_CHECK_RESULT:
    for group_id in GroupConst.GROUP_IDS:
        for t in range(1, 101):
            order_equality(group_id, t)
    return True, "t = 1..100, odd and even presentations have equal orders"


def _closed_forms(_: RunConfig) -> T_CHECK_RESULT:
    problems = []
    for group_id in GroupConst.GROUP_IDS:
        prime = GroupConst.PRIME[group_id]
        for result in peaks(group_id):
            rep = result.representative
            if result.is_constant():
                if REFERENCE_CONSTANT_CLASSES[group_id].get(rep) != result.cap:
                    problems.append(f"{group_id} t = {rep}: constant {result.cap}")
                continue
            base, cap, a, e = REFERENCE_PEAK_CLASSES[group_id].get(rep, (None, None, 0, 0))
            if (result.base, result.cap) != (base, cap) or (result.peak - rep - a * prime**e) % result.modulus:
                problems.append(f"{group_id} t = {rep}: {result.formula()}")
                continue
            samples = [rep + j * period(group_id) for j in range(40)]
            samples += [result.peak + j * (result.modulus // prime) for j in range(1, 11)]
            problems.extend(
                f"{group_id} t = {t}" for t in samples if exponent_at(group_id, t).exponent != result.predict(t)
            )
    return not problems, f"problems: {problems[:10]}"


def _bspace(_: RunConfig) -> T_CHECK_RESULT:
    values = {
        ((11, 35, 59, 83), 13, 5): 5,
        ((11, 35, 59, 83), 13, 6): 0,
        ((11, 47, 83), 19, 6): 0,
    }
    wrong = [key for key, exponent in values.items() if bspace_group(*key).exponent != exponent]
    return not wrong, f"wrong: {wrong}"


def _catalog(_: RunConfig) -> T_CHECK_RESULT:
    report = catalog_report()
    lookups = {
        ("12", 3): "B(11,15)",
        ("32", 7): "B(23,35,47,59)",
        ("X(2,2,6)", 7): "X(2,1,5) x S^11",
    }
    wrong = [key for key, rendered in lookups.items() if lookup(*key).render() != rendered]
    return not wrong, f"{len(report)} entries pass the degree checks, wrong lookups: {wrong}"


def _stress(config: RunConfig) -> T_CHECK_RESULT:
    exponent = snf_at("G29", 2507, max_bits=config.max_bits).exponent
    peak = find_peak("G29", 7)
    return exponent == 8 == peak.predict(2507), f"SNF at t = 2507 gives 5^{exponent}"


CHECKS: Tuple[Check, ...] = (
    Check("invariants.degrees", 1, _invariants_degrees),
    Check("invariants.invariance.G29", 1, _invariance("G29")),
    Check("invariants.invariance.G31", 1, _invariance("G31")),
    Check("adams.shape", 1, _adams_shape),
    Check("adams.entries", 1, _adams_entries),
    Check("v1pi.spot_values", 1, _spot_values),
    Check("v1pi.cyclic", 1, _cyclic),
    Check("v1pi.oracles.small", 1, _oracles(40)),
    Check("v1pi.bspace", 1, _bspace),
    Check("catalog", 1, _catalog),
    Check("invariants.power_sums", 2, _power_sums),
    Check("invariants.indecomposability", 2, _indecomposability),
    Check("invariants.f36", 2, _f36),
    Check("integrality.ledgers", 2, _ledgers),
    Check("integrality.derivation", 2, _derivation),
    Check("v1pi.oracles", 2, _oracles(500)),
    Check("v1pi.order_equality", 2, _order_equality),
    Check("v1pi.closed_forms", 2, _closed_forms),
    Check("invariants.lattice", 3, _lattice),
    Check("invariants.invariance.G34", 3, _invariance("G34", (6, 12))),
    Check("v1pi.stress", 3, _stress),
)


def run_checks(config: RunConfig) -> List[Dict[str, object]]:
    """This function runs every check up to the configured tier; an exception fails its check only."""
    results = []
    for check in (check for check in CHECKS if check.tier <= config.tier):
        logger.info("Going to run the check %s (tier %s).", check.name, check.tier)
        try:
            passed, detail = check.run(config)
        except PCompactError as err:
            passed, detail = False, f"{type(err).__name__}: {err}"
        if not passed:
            logger.warning("The check %s failed: %s", check.name, detail)
        results.append({"name": check.name, "tier": check.tier, "passed": bool(passed), "detail": detail})
    return results


def process(config: RunConfig) -> Report:
    """This is the entry point of the ``verify-all`` subcommand.

    Args:
        config: ``--tier`` 1, 2 or 3 selects how much to run; tiers include the lower ones.
    """
    logger.info("The processing of %s just started.", __name__)
    results = run_checks(config)
    passed = all(result["passed"] for result in results)
    logger.info("%s of %s checks passed.", sum(result["passed"] for result in results), len(results))
    return Report(
        "verify_all",
        {"tier": config.tier, "checks": results, "passed": passed},
        pd.DataFrame(results, columns=["name", "tier", "passed", "detail"]),
        passed=passed,
    )
