"""Mirrorforge Core"""

from mirrorforge.core.coeff import FIELD, NovScalar, parse_rational
from mirrorforge.core.config import RunConfig
from mirrorforge.core.exceptions import CheckError, InputError, MirrorforgeError, NotStabilized
from mirrorforge.core.laurent import LaurentPoly, groebner_basis, parse_expr
from mirrorforge.core.multilinear import Gen, MultilinearMap, TableMap, Vector
from mirrorforge.core.report import Report

__all__ = (
    "FIELD",
    "NovScalar",
    "parse_rational",
    "RunConfig",
    "MirrorforgeError",
    "InputError",
    "CheckError",
    "NotStabilized",
    "LaurentPoly",
    "parse_expr",
    "groebner_basis",
    "Gen",
    "Vector",
    "MultilinearMap",
    "TableMap",
    "Report",
)
