# -*- coding: utf-8 -*-
"""Homotopy types of p-completed p-compact groups which are not products of spheres.

Lookup only: the non-modular table, the modular equivalences for (29, 5), (31, 5) and (34, 7), and the two infinite
family rules for the groups G(m, r, n). Every entry is checked against the degrees of its reflection group.
"""
import logging
import re
from dataclasses import dataclass
from functools import cache
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd

from .data_utils import load_data_file
from .errors import CatalogLookupError, VerificationError
from .reports import Report, RunConfig, records

FAMILY_PATTERN = re.compile(r"^\s*[XG]\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factor:
    kind: str  # "S", "B", or the name of a space
    dims: Tuple[int, ...]

    def render(self) -> str:
        if self.kind == "S":
            return f"S^{self.dims[0]}"
        if self.kind == "B":
            return f"B({','.join(str(dim) for dim in self.dims)})"
        return self.kind

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "dims": list(self.dims)}


@dataclass(frozen=True)
class HomotopyTypeEntry:
    """X_case completed at ``prime`` as a product of ``factors``."""

    case: str
    prime: int
    factors: Tuple[Factor, ...]
    source: str
    degrees: Tuple[int, ...]
    erratum: Optional[str] = None
    note: Optional[str] = None

    def render(self) -> str:
        return " x ".join(factor.render() for factor in self.factors)

    def factor_degrees(self) -> Tuple[int, ...]:
        """(d + 1) / 2 over all sphere dimensions d of all factors."""
        return tuple(sorted((dim + 1) // 2 for factor in self.factors for dim in factor.dims))

    def bookkeeping_holds(self) -> bool:
        return self.factor_degrees() == tuple(sorted(self.degrees))

    def admissible(self) -> bool:
        """(p - 1) divides the difference of two distinct degrees."""
        return any((a - b) % (self.prime - 1) == 0 for a, b in combinations(sorted(set(self.degrees)), 2))

    def to_json(self) -> Dict[str, Any]:
        payload = {
            "case": self.case,
            "prime": self.prime,
            "homotopy_type": self.render(),
            "factors": [factor.to_json() for factor in self.factors],
            "degrees": list(self.degrees),
            "source": self.source,
        }
        if self.erratum:
            payload["erratum"] = self.erratum
        if self.note:
            payload["note"] = self.note
        return payload


@dataclass(frozen=True)
class BSpaceFormula:
    """v1^-1 pi_2t(B(dims))_(p) = Z/p^max_gamma min(gamma, offset + nu_p(t - gamma)) on t = residue mod period."""

    dims: Tuple[int, ...]
    prime: int
    gammas: Tuple[int, ...]
    offset: int
    period: int
    residue: int


def _factors(data: List[Dict[str, Any]]) -> Tuple[Factor, ...]:
    return tuple(Factor(item["kind"], tuple(item["dims"])) for item in data)


def case_degrees(case: Union[int, str]) -> Tuple[int, ...]:
    degrees = load_data_file("catalog.json")["degrees"]
    if str(case) not in degrees:
        raise CatalogLookupError(f"No degrees are recorded for the Shephard-Todd case {case}.")
    return tuple(degrees[str(case)])


@cache
def table_entries() -> Tuple[HomotopyTypeEntry, ...]:
    """All shipped entries: the non-modular table followed by the modular equivalences."""
    data = load_data_file("catalog.json")
    entries = [
        HomotopyTypeEntry(
            str(item["case"]),
            item["prime"],
            _factors(item["factors"]),
            "non-modular table",
            case_degrees(item["case"]),
            erratum=item.get("erratum"),
        )
        for item in data["entries"]
    ]
    entries.extend(
        HomotopyTypeEntry(
            str(item["case"]),
            item["prime"],
            _factors(item["factors"]),
            "modular equivalence",
            case_degrees(item["case"]),
            note=item.get("note"),
        )
        for item in data["modular"]
    )
    return tuple(entries)


def _family_degrees(m: int, r: int, n: int) -> Tuple[int, ...]:
    return tuple(sorted([m * i for i in range(1, n)] + [n * m // r]))


def family_m_divides_p_minus_1(m: int, r: int, n: int, prime: int) -> HomotopyTypeEntry:
    """X(m, r, n) = X(m, 1, n - 1) x S^(2nm/r - 1) for m | p - 1 and r > 1; X(m, 1, 1) is S^(2m - 1)."""
    if (prime - 1) % m or r <= 1 or m % r or n < 2:
        raise CatalogLookupError(f"The rule for m | p - 1 does not apply to X({m},{r},{n}) at p = {prime}.")
    if n == 2:
        first = Factor("S", (2 * m - 1,))
    else:
        first = Factor(f"X({m},1,{n - 1})", tuple(2 * m * i - 1 for i in range(1, n)))
    return HomotopyTypeEntry(
        f"X({m},{r},{n})",
        prime,
        (first, Factor("S", (2 * n * m // r - 1,))),
        "family m | p - 1",
        _family_degrees(m, r, n),
    )


def family_m_divides_p_plus_1(m: int, prime: int) -> HomotopyTypeEntry:
    """X(m, m, 2) = B(3, 2p + 1) for m = p + 1 and S^3 x S^(2m - 1) for the other divisors m of p + 1."""
    if (prime + 1) % m:
        raise CatalogLookupError(f"The rule for m | p + 1 does not apply to X({m},{m},2) at p = {prime}.")
    if m == prime + 1:
        factors = (Factor("B", (3, 2 * prime + 1)),)
    else:
        factors = (Factor("S", (3,)), Factor("S", (2 * m - 1,)))
    return HomotopyTypeEntry(f"X({m},{m},2)", prime, factors, "family m | p + 1", _family_degrees(m, m, 2))


def lookup(case: Union[int, str], prime: int) -> HomotopyTypeEntry:
    """This function returns the homotopy type of X_case at a prime.

    Args:
        case: A Shephard-Todd number (4 to 34) or a family member written "X(m,r,n)".
        prime: An odd prime.

    Returns:
        The :class:`HomotopyTypeEntry`.

    Raises:
        CatalogLookupError: If the pair is neither in the table nor covered by a family rule.
    """
    match = FAMILY_PATTERN.match(str(case))
    if match:
        m, r, n = (int(group) for group in match.groups())
        if (prime - 1) % m == 0 and r > 1:
            return family_m_divides_p_minus_1(m, r, n, prime)
        if r == m and n == 2 and (prime + 1) % m == 0:
            return family_m_divides_p_plus_1(m, prime)
        raise CatalogLookupError(f"No rule covers X({m},{r},{n}) at p = {prime}.")

    entry = next((e for e in table_entries() if e.case == str(case).strip() and e.prime == prime), None)
    if entry is None:
        raise CatalogLookupError(
            f"The case {case} at p = {prime} is not listed; it is a product of spheres or not covered."
        )
    return entry


def bspace_formula(dims: Tuple[int, ...], prime: int) -> BSpaceFormula:
    for item in load_data_file("catalog.json")["bspace_groups"]:
        if tuple(item["dims"]) == tuple(dims) and item["prime"] == prime:
            return BSpaceFormula(
                tuple(item["dims"]), prime, tuple(item["gammas"]), item["offset"], item["period"], item["residue"]
            )
    raise CatalogLookupError(
        f"No v1-periodic formula for B{tuple(dims)} at p = {prime}; B(2n+1, 2n+2p-1) and sphere products are "
        "covered by the literature."
    )


def catalog_report() -> pd.DataFrame:
    """This function lists every shipped entry together with its two consistency checks.

    Returns:
        Pandas DataFrame with the columns case, prime, homotopy_type, degrees, bookkeeping, admissible, source,
        erratum.

    Raises:
        VerificationError: If an entry fails a check.
    """
    logger.info("Going to check %s catalog entries.", len(table_entries()))
    report = pd.DataFrame(
        [
            {
                "case": entry.case,
                "prime": entry.prime,
                "homotopy_type": entry.render(),
                "degrees": ",".join(str(degree) for degree in entry.degrees),
                "bookkeeping": entry.bookkeeping_holds(),
                "admissible": entry.admissible(),
                "source": entry.source,
                "erratum": entry.erratum or "",
            }
            for entry in table_entries()
        ]
    )
    failed = report[~(report["bookkeeping"] & report["admissible"])]
    if not failed.empty:
        raise VerificationError(
            f"Catalog entries {list(zip(failed['case'], failed['prime']))} fail the degree checks. Please investigate."
        )
    return report


def process(config: RunConfig) -> Report:
    """This is the entry point of the ``catalog`` subcommand.

    Args:
        config: ``--case`` and ``--prime`` select one entry; without them the whole catalog is listed and checked.
    """
    logger.info("The processing of %s just started.", __name__)
    if config.case is None:
        report = catalog_report()
        return Report("catalog", {"entries": records(report)}, report)
    if config.prime is None:
        raise ValueError("The catalog command needs --prime together with --case.")

    entry = lookup(config.case, config.prime)
    table = pd.DataFrame(
        [{"case": entry.case, "prime": entry.prime, "homotopy_type": entry.render(), "source": entry.source}]
    )
    return Report("catalog", {"entries": [entry.to_json()]}, table)
