# -*- coding: utf-8 -*-
"""This module holds the run configuration shared by all subcommands and the report each of them returns.

Every subcommand module exposes ``process(config: RunConfig) -> Report``. The runner only serializes the report:
JSON validated against the shipped schema, or a plain text table rendered by pandas.
"""
import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from .constants import BudgetConst, RunnerConst
from .data_utils import validate_payload


@dataclass(frozen=True)
class RunConfig:  # pylint: disable=too-many-instance-attributes
    """Parsed command line of one run. Budgets must be positive; the prime of a group is never configurable."""

    command: str
    group: Optional[str] = None
    k: Optional[int] = None
    t: Optional[int] = None
    symbolic: bool = False
    closed_form: bool = False
    bspace: Optional[Tuple[int, ...]] = None
    p: Optional[int] = None
    case: Optional[str] = None
    prime: Optional[int] = None
    tier: int = 1
    degree: Optional[int] = None
    through: Optional[int] = None
    picture: str = "typical"
    verify: bool = False
    derive: bool = False
    output_format: str = RunnerConst.DEFAULT_OUTPUT_FORMAT
    threads: int = 1
    max_monomials: int = BudgetConst.MAX_FULL_MONOMIALS
    precision: Optional[int] = None
    max_bits: int = BudgetConst.MAX_PRESENTATION_BITS

    def __post_init__(self):
        for name in ("threads", "max_monomials", "max_bits"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive, got {getattr(self, name)}.")
        if self.precision is not None and self.precision < 1:
            raise ValueError(f"--precision must be positive, got {self.precision}.")
        if self.tier not in RunnerConst.VERIFY_TIERS:
            raise ValueError(f"--tier must be one of {RunnerConst.VERIFY_TIERS}, got {self.tier}.")
        if self.output_format not in RunnerConst.OUTPUT_FORMATS:
            raise ValueError(f"--format must be one of {RunnerConst.OUTPUT_FORMATS}, got {self.output_format}.")

    def require_group(self) -> str:
        if self.group is None:
            raise ValueError(f"The {self.command} command needs --group (29, 31 or 34).")
        return self.group

    @classmethod
    def threads_from_env(cls, value: Optional[int]) -> int:
        """--threads, else the environment variable, else 1."""
        if value is not None:
            return value
        env_value = os.environ.get(RunnerConst.THREADS_ENV_VAR, "").strip()
        if not env_value:
            return 1
        try:
            return int(env_value)
        except ValueError as err:
            raise ValueError(f"{RunnerConst.THREADS_ENV_VAR} must be an integer, got {env_value!r}.") from err


@dataclass
class Report:
    """Outcome of one subcommand: a JSON payload, the table shown for ``--format table``, and a pass flag."""

    schema: str
    payload: Dict[str, Any]
    table: pd.DataFrame = field(default_factory=pd.DataFrame)
    passed: bool = True

    def to_json(self) -> str:
        validate_payload(self.payload, self.schema)
        return json.dumps(self.payload, indent=2, sort_keys=False)

    def to_table(self) -> str:
        if self.table.empty:
            return json.dumps(self.payload, indent=2)
        with pd.option_context("display.max_colwidth", None, "display.width", 200):
            return self.table.to_string(index=False)

    def render(self, output_format: str) -> str:
        return self.to_json() if output_format == "json" else self.to_table()


def records(frame: pd.DataFrame) -> List[Dict[str, Any]]:
    """JSON-ready rows of a DataFrame; numpy scalars become plain numbers, NaN and infinity become null."""
    if frame.empty:
        return []
    return json.loads(frame.to_json(orient="records"))
