# -*- coding: utf-8 -*-
import pytest

from pcompact_algebra import verify_all
from pcompact_algebra.data_utils import validate_payload
from pcompact_algebra.errors import BudgetExceededError
from pcompact_algebra.reports import RunConfig
from pcompact_algebra.verify_all import CHECKS, Check, process, run_checks


def _budget_exceeded(_config):
    raise BudgetExceededError("too many monomials")


FAKE_CHECKS = (
    Check("fake.ok", 1, lambda _config: (True, "fine")),
    Check("fake.failing", 2, lambda _config: (False, "off by one")),
    Check("fake.budget", 2, _budget_exceeded),
    Check("fake.opt_in", 3, lambda _config: (True, "fine")),
)


def test_check_names_are_unique_and_tiers_ordered():
    names = [check.name for check in CHECKS]
    assert len(names) == len(set(names))
    assert [check.tier for check in CHECKS] == sorted(check.tier for check in CHECKS)


def test_run_checks_respects_the_tier(monkeypatch):
    monkeypatch.setattr(verify_all, "CHECKS", FAKE_CHECKS)
    assert [result["name"] for result in run_checks(RunConfig("verify-all", tier=1))] == ["fake.ok"]
    assert len(run_checks(RunConfig("verify-all", tier=3))) == 4


def test_run_checks_turns_errors_into_failures(monkeypatch):
    monkeypatch.setattr(verify_all, "CHECKS", FAKE_CHECKS)
    results = {result["name"]: result for result in run_checks(RunConfig("verify-all", tier=2))}
    assert results["fake.ok"]["passed"]
    assert not results["fake.failing"]["passed"]
    assert results["fake.budget"]["detail"] == "BudgetExceededError: too many monomials"


def test_process(monkeypatch):
    monkeypatch.setattr(verify_all, "CHECKS", FAKE_CHECKS)
    report = process(RunConfig("verify-all", tier=2))
    assert not report.passed
    assert report.payload["tier"] == 2
    validate_payload(report.payload, "verify_all")
    assert report.table["name"].tolist() == ["fake.ok", "fake.failing", "fake.budget"]


@pytest.mark.slow
def test_tier_1_passes():
    results = run_checks(RunConfig("verify-all", tier=1))
    assert [result["name"] for result in results if not result["passed"]] == []
