"""Mirrorforge Mirror Constructions"""

from mirrorforge.mirror.bulk import BulkDatum, bulk_from_family, co_cocycle, corrupt_datum, kodaira_spencer
from mirrorforge.mirror.examples import clifford_setup, shipped, u_family_datum, w_family_datum
from mirrorforge.mirror.lmfunctor import MirrorSetup, check_lm_functor, lm_functor, lm_object
from mirrorforge.mirror.theorem import build_FG_xi, check_cap_scalar, check_main_theorem
from mirrorforge.mirror.toric import ToricFanoData, builtin, critical_points, jacobian_ring, potential

__all__ = (
    "BulkDatum",
    "bulk_from_family",
    "co_cocycle",
    "corrupt_datum",
    "kodaira_spencer",
    "clifford_setup",
    "shipped",
    "w_family_datum",
    "u_family_datum",
    "MirrorSetup",
    "lm_object",
    "lm_functor",
    "check_lm_functor",
    "build_FG_xi",
    "check_main_theorem",
    "check_cap_scalar",
    "ToricFanoData",
    "builtin",
    "potential",
    "jacobian_ring",
    "critical_points",
)
