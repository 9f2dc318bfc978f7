# -*- coding: utf-8 -*-
"""Exceptions raised across the package. Everything derives from :class:`PCompactError`
so that the runner can turn any computational failure into a diagnostic and exit code 1.
"""


class PCompactError(Exception):
    """Base class of all errors of this package."""


class FieldMismatchError(PCompactError):
    """Arithmetic between Q(i) and Q(omega) elements was requested."""


class PartitionError(PCompactError):
    """A partition does not fit into the ambient number of variables, or is malformed."""


class BudgetExceededError(PCompactError):
    """An oracle-grade computation would exceed its configured budget."""


class PrecisionExhaustedError(PCompactError):
    """A valuation computed mod p^N reached N, so the precision must be raised and the call retried."""


class InconsistentSystemError(PCompactError):
    """A linear system (over Q or Z/p^k) expected to be solvable has no solution."""


class VerificationError(PCompactError):
    """A computed object contradicts a property that must hold for the shipped data."""


class CatalogLookupError(PCompactError):
    """The requested (case, prime) pair is neither in the catalog nor covered by a family rule."""
