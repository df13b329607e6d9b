"""Mirrorforge Structures"""

from mirrorforge.structures.ainfty import AInfCategory, AInfFunctor, check_ainfty, check_unit, curved_clifford
from mirrorforge.structures.bimod import AInfBimodule, Premorphism, check_bimodule, diagonal, tensor
from mirrorforge.structures.hoch import HochschildChain, HochschildCochain, cap, cup, hh_cohomology, hochschild_diff
from mirrorforge.structures.mf import MatrixFactorization, MFCategory, koszul_mf, mf_ainfty_category, validate_mf

__all__ = (
    "AInfCategory",
    "AInfFunctor",
    "check_ainfty",
    "check_unit",
    "curved_clifford",
    "AInfBimodule",
    "Premorphism",
    "check_bimodule",
    "diagonal",
    "tensor",
    "HochschildCochain",
    "HochschildChain",
    "hochschild_diff",
    "cup",
    "cap",
    "hh_cohomology",
    "MatrixFactorization",
    "MFCategory",
    "koszul_mf",
    "mf_ainfty_category",
    "validate_mf",
)
