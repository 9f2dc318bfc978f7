# -*- coding: utf-8 -*-
"""This package contains modules for exact computer algebra on the p-compact groups X29 and X31 at p = 5 and X34
at p = 7: their invariant polynomials, the p-integral K-theory generators, the Adams operations, the v1-periodic
homotopy groups, and a catalog of homotopy types.
"""

# List of modules, i.e. subcommands of the runner; "verify_all" is spelled "verify-all" on the command line.
__all__ = ["invariants", "integrality", "adams", "v1pi", "catalog", "verify_all"]
