# -*- coding: utf-8 -*-
"""This module implements helpers around the versioned JSON data and the JSON schemas shipped with the package."""
import json
import logging
import os
from functools import cache
from typing import Any, Dict, Sequence, Tuple

import jsonschema

from .constants import DATA_DIR, SCHEMAS_DIR, GroupConst
from .errors import VerificationError
from .exact import CycRational

T_CYC_MATRIX = Tuple[Tuple[CycRational, ...], ...]

logger = logging.getLogger(__name__)


@cache
def load_data_file(file_name: str) -> Dict[str, Any]:
    """This function loads, caches, and returns one of the data files under ``pcompact_algebra/data``.

    Args:
        file_name: Name of the file, e.g. "groups.json".

    Returns:
        The decoded JSON document.

    Raises:
        VerificationError: If the file carries an unexpected format version.
    """
    logger.debug("Going to load the data file %s.", file_name)
    with open(os.path.join(DATA_DIR, file_name), encoding="utf-8") as data_file:
        document = json.load(data_file)

    if document.get("version") != GroupConst.DATA_VERSION:
        raise VerificationError(
            f"The data file {file_name} has version {document.get('version')}, "
            f"expected {GroupConst.DATA_VERSION}. Please investigate."
        )
    return document


@cache
def load_schema(schema_name: str) -> Dict[str, Any]:
    with open(os.path.join(SCHEMAS_DIR, f"{schema_name}.schema.json"), encoding="utf-8") as schema_file:
        return json.load(schema_file)


def validate_payload(payload: Dict[str, Any], schema_name: str) -> None:
    """Validate a CLI payload against its shipped schema.

    Raises:
        VerificationError: If the payload does not conform.
    """
    try:
        jsonschema.validate(payload, load_schema(schema_name))
    except jsonschema.ValidationError as err:
        raise VerificationError(f"The {schema_name} output does not match its schema: {err.message}") from err


def parse_matrix(rows: Sequence[Sequence[Any]]) -> T_CYC_MATRIX:
    """Decode a matrix whose entries use the "num/den" or {"base", "a", "b"} encodings."""
    return tuple(tuple(CycRational.from_json(entry) for entry in row) for row in rows)
