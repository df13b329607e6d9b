"""Mirrorforge Shipped Examples

Curved Clifford models of a weakly unobstructed object and their bulk families.

The model category has one object L with End(L) the Clifford algebra on odd
e_1..e_n, e_i^2 = u_i, and curvature m_0 = w * 1. Over Q(s)[x_1..x_n] the
reference cochain b = x_1 e_1 + .. + x_n e_n has potential

    W = w + u_1 x_1^2 + .. + u_n x_n^2,

and the object (L, 0) has potential value w, so its image under the localized
mirror functor factorizes W - w. Deforming w by t gives ks = 1; deforming u_i
by t gives ks = x_i^2.

Features:
    - clifford_category, clifford_setup, clifford_family
    - w_family_datum, u_family_datum
    - SETUPS / shipped: named (setup, datum) pairs used by the command line

Example:
    >>> from mirrorforge.mirror.examples import shipped
    >>> setup, datum = shipped("clifford-u")
    >>> setup.ring.to_sympy(setup.W)
    x**2

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from typing import Any, Optional, Sequence

from mirrorforge.core.exceptions import InputError, UnknownBuiltin
from mirrorforge.core.multilinear import Vector
from mirrorforge.mirror.bulk import BulkDatum, bulk_from_family
from mirrorforge.mirror.lmfunctor import MirrorSetup
from mirrorforge.structures.ainfty import AInfCategory, clifford_name, curved_clifford
from mirrorforge.structures.mf import mf_ring

__all__ = [
    "OBJECT",
    "coordinates",
    "clifford_category",
    "clifford_setup",
    "clifford_family",
    "w_family_datum",
    "u_family_datum",
    "SETUPS",
    "shipped",
    "catalogue",
]

LOGGER = logging.getLogger(__name__)

OBJECT = "L"

PARAMETER = "t"


def coordinates(n: int) -> tuple[str, ...]:
    """("x",) for one generator, (x1, .., xn) otherwise."""
    if n < 1:
        raise InputError(f"a Clifford model needs at least one generator, got n={n}")
    return ("x",) if n == 1 else tuple(f"x{i + 1}" for i in range(n))


def _u(n: int, u: Optional[Sequence[Any]]) -> list:
    u = [1] * n if u is None else list(u)
    if len(u) != n:
        raise InputError(f"expected {n} squares u_i, got {len(u)}")
    return u


def clifford_category(n: int, w: Any = 0, u: Optional[Sequence[Any]] = None) -> AInfCategory:
    """The curved Clifford model over Q(s)[x_1..x_n]."""
    return curved_clifford(w, _u(n, u), mf_ring(coordinates(n)), OBJECT)


def clifford_setup(
    n: int,
    w: Any = 0,
    u: Optional[Sequence[Any]] = None,
    category: Optional[AInfCategory] = None,
) -> MirrorSetup:
    """
    Reference (L, x_1 e_1 + .. + x_n e_n) and the single object L0 = (L, 0).

    Args:
        category: an already built Clifford model (for instance a bulk datum's t = 0 structure).
    """
    C = clifford_category(n, w, u) if category is None else category
    odd = {gen.name: gen for gen in C.hom(OBJECT, OBJECT)}
    b = Vector({odd[clifford_name((i,))]: x for i, x in enumerate(C.domain.gens)})
    return MirrorSetup(C, (OBJECT, b), {"L0": (OBJECT, Vector())}, f"Cl{n}")


def clifford_family(
    n: int,
    w: Any = 0,
    u: Optional[Sequence[Any]] = None,
    parameter: str = "w",
    indices: Sequence[int] = (0,),
) -> AInfCategory:
    """
    The Clifford model over Q(s)[x_1..x_n, t] with w -> w + t or u_i -> u_i + t for i in ``indices``.

    Raises:
        InputError: For an unknown parameter or an index out of range.
    """
    u = _u(n, u)
    ring = mf_ring(coordinates(n) + (PARAMETER,))
    t = ring.gens[-1]
    if parameter == "w":
        w_t, u_t = ring.convert(w) + t, [ring.convert(value) for value in u]
    elif parameter == "u":
        if any(not 0 <= i < n for i in indices):
            raise InputError(f"indices {list(indices)} out of range for n={n}")
        w_t = ring.convert(w)
        u_t = [ring.convert(value) + (t if i in indices else 0) for i, value in enumerate(u)]
    else:
        raise InputError(f"unknown deformation parameter {parameter!r}; use 'w' or 'u'")
    return curved_clifford(w_t, u_t, ring, OBJECT)


def w_family_datum(n: int, w: Any = 0, u: Optional[Sequence[Any]] = None) -> BulkDatum:
    """Bulk datum of w -> w + t: q_0 = 1 and every other q_k vanishes."""
    return bulk_from_family(clifford_family(n, w, u, "w"), PARAMETER, "alpha_w")


def u_family_datum(
    n: int, w: Any = 0, u: Optional[Sequence[Any]] = None, indices: Sequence[int] = (0,)
) -> BulkDatum:
    """Bulk datum of u_i -> u_i + t: q_2(e_i, e_i) = 1 for i in ``indices``."""
    return bulk_from_family(clifford_family(n, w, u, "u", indices), PARAMETER, "alpha_u")


def _paired(n: int, make_datum) -> tuple[MirrorSetup, BulkDatum]:
    datum = make_datum(n)
    return clifford_setup(n, category=datum.category), datum


SETUPS = {
    "clifford-w": lambda n=1: _paired(n, w_family_datum),
    "clifford-u": lambda n=1: _paired(n, u_family_datum),
}
"""Named (setup, datum) pairs; each takes the number of Clifford generators."""

DESCRIPTIONS = {
    "clifford-w": "Cl_n with W = sum x_i^2, bulk class deforming the curvature (ks = 1)",
    "clifford-u": "Cl_n with W = sum x_i^2, bulk class deforming e_1^2 (ks = x_1^2)",
}


def shipped(name: str, n: int = 1) -> tuple[MirrorSetup, BulkDatum]:
    try:
        factory = SETUPS[name]
    except KeyError:
        raise UnknownBuiltin(f"no shipped setup {name!r}; known: {', '.join(SETUPS)}") from None
    LOGGER.debug("building shipped setup %s with n=%d", name, n)
    return factory(n)


def catalogue() -> dict[str, str]:
    return dict(DESCRIPTIONS)
