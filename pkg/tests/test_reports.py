# -*- coding: utf-8 -*-
import json

import pandas as pd
import pytest

from pcompact_algebra.constants import RunnerConst
from pcompact_algebra.data_utils import load_data_file, validate_payload
from pcompact_algebra.errors import VerificationError
from pcompact_algebra.reports import Report, RunConfig, records


@pytest.mark.parametrize(
    "overrides",
    [{"threads": 0}, {"max_monomials": -1}, {"max_bits": 0}, {"precision": 0}, {"tier": 4}, {"output_format": "csv"}],
)
def test_run_config_rejects(overrides):
    with pytest.raises(ValueError):
        RunConfig("adams", **overrides)


def test_require_group():
    assert RunConfig("adams", group="29").require_group() == "29"
    with pytest.raises(ValueError):
        RunConfig("adams").require_group()


def test_threads_from_env(monkeypatch):
    monkeypatch.setenv(RunnerConst.THREADS_ENV_VAR, "4")
    assert RunConfig.threads_from_env(None) == 4
    assert RunConfig.threads_from_env(2) == 2
    monkeypatch.setenv(RunnerConst.THREADS_ENV_VAR, " ")
    assert RunConfig.threads_from_env(None) == 1


def test_records():
    frame = pd.DataFrame({"t": [1, 2], "value": [0.5, float("nan")]})
    assert records(frame) == [{"t": 1, "value": 0.5}, {"t": 2, "value": None}]
    assert records(pd.DataFrame()) == []


def test_report_rendering():
    payload = {"entries": [{"case": "12", "prime": 3, "homotopy_type": "B(11,15)", "source": "non-modular table"}]}
    report = Report("catalog", payload, pd.DataFrame(payload["entries"]))
    assert json.loads(report.render("json")) == payload
    assert "B(11,15)" in report.render("table")
    assert json.loads(Report("catalog", payload).render("table")) == payload


def test_report_validates_its_payload():
    with pytest.raises(VerificationError):
        Report("catalog", {"entries": []}).to_json()


def test_validate_payload():
    validate_payload({"command": "catalog", "error": "CatalogLookupError", "message": "missing"}, "error")
    with pytest.raises(VerificationError):
        validate_payload({"command": "catalog"}, "error")


def test_load_data_file():
    assert load_data_file("groups.json")["version"] == 1
