"""
Mirrorforge (Closed-String Mirror Symmetry by Exact Computation)

Mirrorforge checks, on small explicit data, the chain of algebraic identities
relating the bulk deformation of a Fukaya-type A-infinity category to the
Jacobian ring of its mirror potential. Everything is computed exactly over
the field Q(s), where s stands for T^(1/N).

Available Pipelines:
    - Toric Fano potentials, Jacobian rings and critical points
    - Quantum cohomology presentations and the divisor-level ks map
    - A-infinity categories, bimodules and Hochschild (co)homology
    - Matrix factorizations, their dg-category and the gamma primitive
    - The localized mirror functor of a reference object
    - The bulk action G - F = delta(xi) on the mirror bimodule

Every check returns a Report carrying its truncation parameters, a verdict
per identity and a witness when an identity fails.

Example:
    ```python
    from mirrorforge import builtin, jacobian_ring, potential, shipped, check_main_theorem

    P = potential(builtin("CP2"))
    print(P.poly, jacobian_ring(P)[1])      # three monomials, dimension 3

    setup, datum = shipped("clifford-u")
    report = check_main_theorem(setup, datum, rmax=2)
    print(report.passed, report.data["ks"])  # True x**2
    ```
For the command line, run `mirrorforge --help`.

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

from mirrorforge.version import vernum

__version__ = str(vernum)

# Core
from mirrorforge.core.config import RunConfig
from mirrorforge.core.exceptions import CheckError, InputError, MirrorforgeError, NotStabilized
from mirrorforge.core.laurent import LaurentPoly, parse_expr
from mirrorforge.core.report import Report

# Structures
from mirrorforge.structures.ainfty import AInfCategory, check_ainfty, curved_clifford
from mirrorforge.structures.hoch import hh_cohomology
from mirrorforge.structures.mf import MatrixFactorization, MFCategory, check_gamma, validate_mf

# Mirror constructions
from mirrorforge.mirror.toric import ToricFanoData, builtin, critical_points, jacobian_ring, potential
from mirrorforge.mirror.lmfunctor import MirrorSetup, check_lm_functor
from mirrorforge.mirror.bulk import BulkDatum, corrupt_datum
from mirrorforge.mirror.theorem import check_cap_scalar, check_main_theorem
from mirrorforge.mirror.examples import shipped

__all__ = [
    "__version__",
    "RunConfig",
    "MirrorforgeError",
    "InputError",
    "CheckError",
    "NotStabilized",
    "LaurentPoly",
    "parse_expr",
    "Report",
    "AInfCategory",
    "check_ainfty",
    "curved_clifford",
    "hh_cohomology",
    "MatrixFactorization",
    "MFCategory",
    "check_gamma",
    "validate_mf",
    "ToricFanoData",
    "builtin",
    "potential",
    "jacobian_ring",
    "critical_points",
    "MirrorSetup",
    "check_lm_functor",
    "BulkDatum",
    "corrupt_datum",
    "check_main_theorem",
    "check_cap_scalar",
    "shipped",
]
