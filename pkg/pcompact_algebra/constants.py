# -*- coding: utf-8 -*-
"""This file contains all Python constants used in this project."""
import os

_CURR_DIR = os.path.abspath(os.path.dirname(__file__))

DATA_DIR = os.path.join(_CURR_DIR, "data")
SCHEMAS_DIR = os.path.join(DATA_DIR, "schemas")

LOGGING_CONF = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "%(asctime)s %(levelname)s [%(processName)s|%(name)s] - %(message)s"},
    },
    "handlers": {
        "default": {
            "level": "INFO",
            "formatter": "simple",
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
        },
        "file_handler": {
            "level": "INFO",
            "filename": os.path.join(_CURR_DIR, os.path.pardir, "logs", "pcompact_algebra.log"),
            "class": "logging.FileHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "": {"handlers": ["default", "file_handler"], "level": "INFO", "propagate": True},
    },
}


class GroupConst:  # pylint: disable=too-few-public-methods
    """This class holds the fixed per-group data: the prime, the number of variables, the invariant degrees,
    the truncation cap of the K-theory computations, and the Bousfield generator r of (Z/p^2)^x.
    """

    GROUP_IDS = ("G29", "G31", "G34")

    # The CLI accepts both "29" and "G29".
    ALIASES = {"29": "G29", "31": "G31", "34": "G34"}

    PRIME = {"G29": 5, "G31": 5, "G34": 7}
    NVARS = {"G29": 4, "G31": 4, "G34": 6}
    DEGREES = {
        "G29": (4, 8, 12, 20),
        "G31": (8, 12, 20, 24),
        "G34": (6, 12, 18, 24, 30, 42),
    }
    CAP = {"G29": 20, "G31": 24, "G34": 42}

    # Name of the p-compact group whose K-theory / homotopy is computed from the reflection group.
    SPACE = {"G29": "X29", "G31": "X31", "G34": "X34"}

    # Generator r of (Z/p^2)^x used in the bottom block psi^r - r^t.
    BOUSFIELD_R = {5: 2, 7: 3}

    # Generators of the integral invariant ring which replace f_d by (f_d - decomposable) / p.
    # Their row of the change-of-basis matrix is p times the line coefficients, taken mod 1.
    DIVIDED_GENERATORS = {"G29": (), "G31": (), "G34": (42,)}

    # F-symbols that are decomposable and therefore do not enter the change-of-basis matrix.
    DECOMPOSABLE_SYMBOLS = {"G29": (), "G31": (), "G34": (36,)}

    # Groups whose integral combinations need linear terms only.
    LINEAR_ONLY = ("G34",)

    # Corrections found mod p^k enter the combinations as C + sign * sum_i (c_i / p^k) * candidate_i.
    INTEGRALIZATION_SIGN = {"G29": -1, "G31": -1, "G34": 1}

    # The nonzero v1-periodic groups live on t = T0 mod (p - 1), where x = r^t = X0 mod p.
    NONZERO_T0 = {"G29": 3, "G31": 3, "G34": 5}
    RESIDUE_X0 = {"G29": 3, "G31": 3, "G34": 5}

    # The f_36 decomposition is solved on the m_e of length <= 4; there are 34 of them (partitions of 36 into
    # multiples of 3).
    F36_COORDINATES = 34

    DATA_VERSION = 1


class BudgetConst:  # pylint: disable=too-few-public-methods
    """This class holds the default budgets guarding the expensive (oracle-grade) computations."""

    MAX_FULL_MONOMIALS = 250_000
    MAX_POWER_SUM_DEGREE = 12
    MAX_PRESENTATION_BITS = 1_000_000

    # Residual valuations are evaluated mod p^N with N = cap + PRECISION_GUARD.
    PRECISION_GUARD = 20
    MAX_PRECISION_RETRIES = 6

    # Safety stop for the peak lifting (stages beyond the cap never happen for the shipped groups).
    MAX_PEAK_STAGES = 64

    # Decomposition questions are first settled on the m_e with at most this many parts.
    RESTRICTED_LENGTH = 4


class RunnerConst:  # pylint: disable=too-few-public-methods
    """This class holds constants of the command line runner."""

    EXIT_OK = 0
    EXIT_FAILURE = 1
    EXIT_USAGE = 2

    OUTPUT_FORMATS = ("json", "table")
    DEFAULT_OUTPUT_FORMAT = "json"

    THREADS_ENV_VAR = "PCOMPACT_THREADS"

    VERIFY_TIERS = (1, 2, 3)
