#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""This is the main script, i.e. the main entry point of the exact computations on the p-compact groups
X29, X31 (p = 5) and X34 (p = 7). Every subcommand maps onto one module of the ``pcompact_algebra`` package:

    invariants   generator polynomials of the invariant rings and their invariance
    integrality  p-integral combinations of the K-theory classes, their ledgers and re-derivation
    adams        Adams operations on the indecomposables
    v1pi         v1-periodic homotopy groups (SNF and residual valuations, closed forms, B-spaces)
    catalog      homotopy types of p-compact groups which are not products of spheres
    verify-all   the tiered acceptance sweep

The result goes to stdout as JSON (validated against the shipped schema) or as a table. Exit codes: 0 on success,
1 if a computation fails or a check does not pass, 2 on bad flags.

Note: Please see more detailed info about the usage supplied by the `--help` CLI parameter.
"""
import argparse
import importlib
import json
import logging.config
import os
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import pcompact_algebra
from pcompact_algebra.constants import LOGGING_CONF, RunnerConst
from pcompact_algebra.data_utils import validate_payload
from pcompact_algebra.errors import PCompactError
from pcompact_algebra.reports import RunConfig

COMMANDS = [name.replace("_", "-") for name in pcompact_algebra.__dict__["__all__"]]

logger = logging.getLogger(__name__)


def _int_list(value: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {value!r}") from err


def get_parser() -> argparse.ArgumentParser:
    """CLI argument parsing."""
    parser = argparse.ArgumentParser(
        description="Exact computer algebra for the p-compact groups X29, X31 and X34: invariant polynomials, "
        "p-integral K-theory generators, Adams operations, v1-periodic homotopy groups, and a catalog of homotopy "
        "types. All arithmetic is exact."
    )
    parser.add_argument("command", help="What to compute.", choices=COMMANDS)
    parser.add_argument("-g", "--group", help="Reflection group: 29, 31 or 34 (the prime follows: 5, 5, 7).")
    parser.add_argument("--k", type=int, help="Evaluate psi^k at this k (adams).")
    parser.add_argument("--t", type=int, help="Compute v1^-1 pi_2t at this t (v1pi).")
    parser.add_argument("--symbolic", default=False, action="store_true", help="Emit psi^k as k-power combinations.")
    parser.add_argument(
        "--closed-form", default=False, action="store_true", help="Derive the closed form of every residue class."
    )
    parser.add_argument("--bspace", type=_int_list, help="Sphere dimensions of a B-space, e.g. 11,35,59,83 (v1pi).")
    parser.add_argument("--p", type=int, help="Prime of the B-space (v1pi --bspace).")
    parser.add_argument("--case", help="Shephard-Todd number or X(m,r,n) (catalog).")
    parser.add_argument("--prime", type=int, help="Prime of the catalog entry.")
    parser.add_argument(
        "--tier", type=int, default=1, choices=RunnerConst.VERIFY_TIERS, help="How much of verify-all to run."
    )
    parser.add_argument("--degree", type=int, help="Polynomial degree (invariants) or base degree (integrality).")
    parser.add_argument("--through", type=int, help="Last grading of the integrality checks, the cap by default.")
    parser.add_argument("--picture", default="typical", choices=("typical", "log"), help="Integrality picture.")
    parser.add_argument(
        "--verify", default=False, action="store_true", help="Run the checks (invariants, integrality)."
    )
    parser.add_argument("--derive", default=False, action="store_true", help="Re-derive a combination (integrality).")
    parser.add_argument(
        "--format",
        dest="output_format",
        default=RunnerConst.DEFAULT_OUTPUT_FORMAT,
        choices=RunnerConst.OUTPUT_FORMATS,
        help="Output format.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        help=f"Worker processes; falls back to the {RunnerConst.THREADS_ENV_VAR} environment variable, then 1.",
    )
    parser.add_argument("--max-monomials", type=int, help="Monomial budget of the full polynomial expansions.")
    parser.add_argument("--max-bits", type=int, help="Bit budget of the exact presentation matrices.")
    parser.add_argument("--precision", type=int, help="Starting N of the mod p^N residual valuations.")
    return parser


def get_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return get_parser().parse_args(argv)


def build_config(cli_args: argparse.Namespace) -> RunConfig:
    """This function turns the parsed flags into a :class:`RunConfig`, leaving unset budgets at their defaults."""
    overrides = {
        name: getattr(cli_args, name)
        for name in ("max_monomials", "max_bits", "precision")
        if getattr(cli_args, name) is not None
    }
    return RunConfig(
        command=cli_args.command,
        group=cli_args.group,
        k=cli_args.k,
        t=cli_args.t,
        symbolic=cli_args.symbolic,
        closed_form=cli_args.closed_form,
        bspace=cli_args.bspace,
        p=cli_args.p,
        case=cli_args.case,
        prime=cli_args.prime,
        tier=cli_args.tier,
        degree=cli_args.degree,
        through=cli_args.through,
        picture=cli_args.picture,
        verify=cli_args.verify,
        derive=cli_args.derive,
        output_format=cli_args.output_format,
        threads=RunConfig.threads_from_env(cli_args.threads),
        **overrides,
    )


def _usage_error(message: str) -> int:
    get_parser().print_usage(sys.stderr)
    print(f"error: {message}", file=sys.stderr)
    return RunnerConst.EXIT_USAGE


def _diagnostic(command: str, err: PCompactError) -> str:
    payload = {"command": command, "error": type(err).__name__, "message": str(err)}
    validate_payload(payload, "error")
    return json.dumps(payload, indent=2)


def main(argv: Optional[List[str]] = None) -> int:
    """This function runs one subcommand and returns the exit code."""
    try:
        cli_args = get_args(argv)
    except SystemExit as err:
        return int(err.code or RunnerConst.EXIT_OK)

    try:
        config = build_config(cli_args)
    except ValueError as err:
        return _usage_error(str(err))

    imported_module = importlib.import_module(f"{pcompact_algebra.__name__}.{config.command.replace('-', '_')}")
    processing_function = getattr(imported_module, "process")
    try:
        report = processing_function(config)
        output = report.render(config.output_format)
    except ValueError as err:
        return _usage_error(str(err))
    except PCompactError as err:
        logger.error("The %s command failed: %s", config.command, err)
        print(_diagnostic(config.command, err))
        return RunnerConst.EXIT_FAILURE

    print(output)
    return RunnerConst.EXIT_OK if report.passed else RunnerConst.EXIT_FAILURE


if __name__ == "__main__":
    Path(os.path.dirname(LOGGING_CONF["handlers"]["file_handler"]["filename"])).mkdir(exist_ok=True, parents=True)
    logging.config.dictConfig(LOGGING_CONF)

    sys.exit(main())
