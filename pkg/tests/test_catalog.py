# -*- coding: utf-8 -*-
import pytest

from pcompact_algebra.catalog import (
    bspace_formula,
    case_degrees,
    catalog_report,
    family_m_divides_p_minus_1,
    family_m_divides_p_plus_1,
    lookup,
    table_entries,
)
from pcompact_algebra.errors import CatalogLookupError


@pytest.mark.parametrize(
    "case, prime, expected",
    [
        (12, 3, "B(11,15)"),
        (32, 7, "B(23,35,47,59)"),
        ("X(2,2,6)", 7, "X(2,1,5) x S^11"),
        ("X(4,4,2)", 3, "B(3,7)"),
        ("X(2,2,2)", 3, "S^3 x S^3"),
        (29, 5, "B(7,15,23,39)"),
        (31, 5, "X0(E8)"),
        (34, 7, "B(11,23,35,47,59,83)"),
    ],
)
def test_lookup(case, prime, expected):
    assert lookup(case, prime).render() == expected


def test_lookup_accepts_string_cases():
    assert lookup("12", 3) == lookup(12, 3)
    assert lookup(" G(2, 2, 6) ", 7).case == "X(2,2,6)"


@pytest.mark.parametrize("case, prime", [(99, 5), ("X(5,1,3)", 7), (4, 3), ("X(3,1,2)", 5)])
def test_lookup_rejects_uncovered_pairs(case, prime):
    with pytest.raises(CatalogLookupError):
        lookup(case, prime)


def test_modular_entries_are_marked():
    entry = lookup(29, 5)
    assert entry.source == "modular equivalence"
    assert "SU(20)" in entry.note
    assert lookup(12, 3).source == "non-modular table"


def test_errata_are_carried():
    assert "S^11" in lookup(27, 19).erratum
    assert lookup(27, 19).render() == "B(23,59) x S^11"
    assert "erratum" in lookup(30, 19).to_json()


def test_case_degrees():
    assert case_degrees(34) == (6, 12, 18, 24, 30, 42)
    with pytest.raises(CatalogLookupError):
        case_degrees(3)


@pytest.mark.parametrize("entry", table_entries(), ids=lambda entry: f"{entry.case}@{entry.prime}")
def test_entries_pass_the_degree_checks(entry):
    assert entry.bookkeeping_holds()
    assert entry.admissible()


def test_family_entries_pass_the_degree_checks():
    assert family_m_divides_p_minus_1(2, 2, 6, 7).bookkeeping_holds()
    assert family_m_divides_p_minus_1(3, 3, 2, 7).render() == "S^5 x S^3"
    assert family_m_divides_p_plus_1(4, 3).bookkeeping_holds()


def test_family_rules_reject_their_complements():
    with pytest.raises(CatalogLookupError):
        family_m_divides_p_minus_1(5, 5, 3, 7)
    with pytest.raises(CatalogLookupError):
        family_m_divides_p_plus_1(5, 7)


def test_catalog_report():
    report = catalog_report()
    assert len(report) == len(table_entries())
    assert report["bookkeeping"].all()
    assert report["admissible"].all()
    assert set(report["source"]) == {"non-modular table", "modular equivalence"}


def test_bspace_formula():
    formula = bspace_formula((11, 35, 59, 83), 13)
    assert formula.gammas == (5, 17, 29, 41)
    assert (formula.offset, formula.period, formula.residue) == (4, 12, 5)
    assert bspace_formula((11, 47, 83), 19).offset == 3


def test_bspace_formula_unknown_space():
    with pytest.raises(CatalogLookupError):
        bspace_formula((3, 7), 3)
