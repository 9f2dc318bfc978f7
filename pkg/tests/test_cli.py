# -*- coding: utf-8 -*-
import json

import pytest

import export_golden_tables
import pcompact_runner
from pcompact_algebra.constants import RunnerConst
from pcompact_algebra.data_utils import validate_payload


@pytest.fixture(autouse=True)
def _no_threads_env(monkeypatch):
    monkeypatch.delenv(RunnerConst.THREADS_ENV_VAR, raising=False)


def _run(capsys, *argv):
    code = pcompact_runner.main(list(argv))
    return code, capsys.readouterr()


def _run_json(capsys, schema, *argv):
    code, captured = _run(capsys, *argv)
    payload = json.loads(captured.out)
    validate_payload(payload, schema)
    return code, payload


def test_commands():
    assert pcompact_runner.COMMANDS == ["invariants", "integrality", "adams", "v1pi", "catalog", "verify-all"]


def test_adams(capsys):
    code, payload = _run_json(capsys, "adams", "adams", "--group", "29", "--k", "5")
    assert code == RunnerConst.EXIT_OK
    assert payload["matrix"][0][0] == "125"
    assert payload["p_integral"] is True


def test_adams_symbolic(capsys):
    code, payload = _run_json(capsys, "adams", "adams", "-g", "31", "--symbolic")
    assert code == RunnerConst.EXIT_OK
    assert "symbolic" in payload


def test_v1pi_at_t(capsys):
    code, payload = _run_json(capsys, "v1pi", "v1pi", "--group", "34", "--t", "5")
    assert code == RunnerConst.EXIT_OK
    assert payload["group"] == "Z/7^5"
    assert payload["agree"] is True


def test_v1pi_bspace(capsys):
    code, payload = _run_json(capsys, "v1pi", "v1pi", "--bspace", "11,35,59,83", "--p", "13", "--t", "5")
    assert code == RunnerConst.EXIT_OK
    assert payload["exponent"] == 5


def test_catalog(capsys):
    code, payload = _run_json(capsys, "catalog", "catalog", "--case", "12", "--prime", "3")
    assert code == RunnerConst.EXIT_OK
    assert payload["entries"][0]["homotopy_type"] == "B(11,15)"


def test_catalog_miss_is_a_failure(capsys):
    code, payload = _run_json(capsys, "error", "catalog", "--case", "99", "--prime", "5")
    assert code == RunnerConst.EXIT_FAILURE
    assert payload["error"] == "CatalogLookupError"


def test_invariants(capsys):
    code, payload = _run_json(capsys, "invariants", "invariants", "--group", "29", "--degree", "4")
    assert code == RunnerConst.EXIT_OK
    assert payload["term_count"] == 2


def test_integrality_derive(capsys):
    code, payload = _run_json(
        capsys, "integrality", "integrality", "--group", "29", "--derive", "--degree", "4", "--through", "8"
    )
    assert code == RunnerConst.EXIT_OK
    assert payload["steps"][0]["values"] == [3, 1]


def test_table_format(capsys):
    code, captured = _run(capsys, "catalog", "--case", "12", "--prime", "3", "--format", "table")
    assert code == RunnerConst.EXIT_OK
    assert "B(11,15)" in captured.out
    assert not captured.out.lstrip().startswith("{")


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["adams", "--group", "29", "--k", "five"],
        ["adams", "--group", "29", "--threads", "0"],
        ["adams"],
        ["catalog", "--case", "12"],
        ["v1pi", "--bspace", "11,x", "--p", "13", "--t", "5"],
    ],
)
def test_usage_errors(capsys, argv):
    code, captured = _run(capsys, *argv)
    assert code == RunnerConst.EXIT_USAGE
    assert captured.out == ""
    assert "usage" in captured.err


def test_threads_from_env(capsys, monkeypatch):
    monkeypatch.setenv(RunnerConst.THREADS_ENV_VAR, "many")
    assert _run(capsys, "adams", "--group", "29")[0] == RunnerConst.EXIT_USAGE


def test_help(capsys):
    code, captured = _run(capsys, "--help")
    assert code == RunnerConst.EXIT_OK
    assert "verify-all" in captured.out


@pytest.mark.slow
def test_export_golden_tables(tmp_path):
    export_golden_tables.export_golden_tables(str(tmp_path))
    assert sorted(path.name for path in tmp_path.iterdir()) == [
        "catalog.csv",
        "closed_forms.csv",
        "x29.json",
        "x31.json",
        "x34.json",
    ]
    document = json.loads((tmp_path / "x29.json").read_text(encoding="utf-8"))
    assert document["adams"]["basis"] == ["z_3", "z_7", "z_11", "z_19"]


def test_invariants_over_budget_is_a_failure(capsys):
    code, payload = _run_json(
        capsys, "invariants", "invariants", "-g", "34", "--degree", "12", "--verify", "--max-monomials", "10"
    )
    assert code == RunnerConst.EXIT_FAILURE
    assert payload["passed"] is False
    assert payload["skipped"] == 6


def test_output_is_identical_across_runs_and_thread_counts(capsys, monkeypatch):
    argv = ["integrality", "--group", "29", "--degree", "4", "--verify", "--through", "12"]
    code, serial = _run(capsys, *argv)
    assert code == RunnerConst.EXIT_OK

    monkeypatch.setenv(RunnerConst.THREADS_ENV_VAR, "2")
    first, second = _run(capsys, *argv), _run(capsys, *argv)
    assert first[0] == second[0] == RunnerConst.EXIT_OK
    assert first[1].out == second[1].out == serial.out
