#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""This is a helper script that regenerates the golden tables: the presentation matrices, the residual polynomials,
the Adams matrices, the closed forms of the v1-periodic groups and the catalog, as JSON and CSV files for easier
comparison against earlier runs.
"""
import argparse
import json
import logging.config
import os
from glob import glob
from pathlib import Path
from typing import Any, Dict

import pandas as pd

from pcompact_algebra.adams import adams_matrix
from pcompact_algebra.catalog import catalog_report
from pcompact_algebra.constants import LOGGING_CONF, GroupConst
from pcompact_algebra.v1pi import classical_residuals, closed_form, presentation_matrix

logger = logging.getLogger(__name__)


def get_args():
    """CLI argument parsing."""
    parser = argparse.ArgumentParser(
        description="This is a helper script that regenerates the golden tables (presentation matrices, residual "
        "polynomials, Adams matrices, closed forms, catalog) into a directory of JSON and CSV files."
    )
    parser.add_argument(
        "-o",
        "--output_directory",
        required=True,
        help="Directory where the tables will be written. It will be created if it doesn't exist yet.",
    )
    parser.add_argument(
        "--overwrite",
        default=False,
        action="store_true",
        help="Whether or not to remove all existing JSON and CSV files of the output directory first.",
    )
    return parser.parse_args()


def _write_json(document: Dict[str, Any], output_dir: str, file_name: str) -> None:
    with open(os.path.join(output_dir, file_name), "w", encoding="utf-8") as output_file:
        json.dump(document, output_file, indent=2)
        output_file.write("\n")


def export_golden_tables(output_dir: str) -> None:
    """This function writes one JSON file per group with the exact matrices and residuals, and one CSV file per
    table.

    Args:
        output_dir: Directory where the files will be exported. It will be created if it doesn't exist yet.
    """
    Path(output_dir).mkdir(exist_ok=True, parents=True)

    closed_forms = []
    for group_id in GroupConst.GROUP_IDS:
        space = GroupConst.SPACE[group_id]
        logger.info("Going to export the golden tables of %s.", space)
        document = {
            "group": space,
            "adams": adams_matrix(group_id).to_json(symbolic=True),
            "presentation": presentation_matrix(group_id).to_json(),
            "presentation_odd": presentation_matrix(group_id, transposed=False).to_json(),
            "residuals": classical_residuals(group_id).to_json(),
        }
        _write_json(document, output_dir, f"{space.lower()}.json")
        closed_forms.append(closed_form(group_id))

    pd.concat(closed_forms, ignore_index=True).to_csv(os.path.join(output_dir, "closed_forms.csv"), index=False)
    catalog_report().to_csv(os.path.join(output_dir, "catalog.csv"), index=False)


if __name__ == "__main__":
    cli_args = get_args()

    Path(os.path.dirname(LOGGING_CONF["handlers"]["file_handler"]["filename"])).mkdir(exist_ok=True, parents=True)
    logging.config.dictConfig(LOGGING_CONF)

    if cli_args.overwrite:
        for file_to_remove in glob(f"{cli_args.output_directory}/*.csv") + glob(f"{cli_args.output_directory}/*.json"):
            logger.info("Removing %s.", file_to_remove)
            os.remove(file_to_remove)

    export_golden_tables(cli_args.output_directory)
