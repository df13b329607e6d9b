"""Mirrorforge Bulk Data

First-order bulk deformations of an A-infinity category.

A one-parameter family m(t) of A-infinity structures on fixed hom spaces,
polynomial in t, gives the operators q = d/dt m(t) at t = 0. Differentiating
the A-infinity relation gives

    sum m(.., q(..), ..) + sum q(.., m(..), ..) = 0,

both sums with the usual insertion signs. q is therefore a Hochschild cocycle
of shifted degree one, and the derivative of the reference potential is its
value on the empty input at the reference object.

Features:
    - BulkDatum, bulk_from_family (verifies the family and the q-relation)
    - t_coefficient: coefficient extraction in the deformation parameter
    - co_cocycle: q (decorated by the weak bounding cochains) as a Hochschild cochain
    - kodaira_spencer: the derivative of the reference potential
    - corrupt_datum: a datum violating the q-relation, for negative controls

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Hashable, Optional

from sympy import Symbol

from mirrorforge.core.coeff import FIELD
from mirrorforge.core.exceptions import CheckError, FamilyNotAInfty, InputError
from mirrorforge.core.multilinear import (
    CoefficientMap,
    Insertion,
    LinearCombination,
    MultilinearMap,
    TableMap,
    Vector,
)
from mirrorforge.core.report import Report
from mirrorforge.mirror.lmfunctor import REFERENCE, MirrorSetup
from mirrorforge.structures.ainfty import (
    AInfCategory,
    DecoratedOperations,
    check_ainfty,
    m_exp_b,
    residual_check,
    unit_multiple,
)
from mirrorforge.structures.hoch import HochschildCochain, cochain_residual, hochschild_diff

__all__ = [
    "BulkDatum",
    "t_coefficient",
    "bulk_from_family",
    "decorated_q",
    "co_cocycle",
    "check_co_cocycle",
    "kodaira_spencer",
    "potential_derivative",
    "corrupt_datum",
]

LOGGER = logging.getLogger(__name__)


@dataclass
class BulkDatum:
    """
    The q-operators of a bulk class.

    Attributes:
        name (str): label of the class.
        category (AInfCategory): the structure at t = 0.
        q (MultilinearMap): d/dt m(t) at t = 0, shifted degree 1.
        family (AInfCategory, optional): the family it derives from, over R[t].
        report (Report): checks run while building the datum.
        parameter (str): name of the deformation parameter in the family's ring.
    """

    name: str
    category: AInfCategory
    q: MultilinearMap
    family: Optional[AInfCategory] = None
    report: Report = field(default_factory=lambda: Report("bulk datum"))
    parameter: str = "t"

    def q0(self, X: Hashable) -> Vector:
        return self.q.evaluate((), X)


def _split_ring(domain: Any, parameter: str) -> tuple[Any, int]:
    names = [str(sym) for sym in getattr(domain, "symbols", ())]
    if parameter not in names:
        raise InputError(f"the family has no parameter {parameter!r} (variables {names})")
    index = names.index(parameter)
    rest = [Symbol(name) for pos, name in enumerate(names) if pos != index]
    return (FIELD.poly_ring(*rest) if rest else FIELD), index


def t_coefficient(value: Any, k: int, index: int, ring: Any) -> Any:
    """Coefficient of t^k in ``value``, t being generator ``index`` of its ring, as an element of ``ring``."""
    terms = {monom[:index] + monom[index + 1 :]: coeff for monom, coeff in value.items() if monom[index] == k}
    if ring == FIELD:
        return terms.get((), FIELD.zero)
    return ring.ring.from_dict(terms)


def bulk_from_family(family: AInfCategory, parameter: str = "t", name: str = "alpha") -> BulkDatum:
    """
    q = d/dt m(t) at t = 0 for a family over R[t].

    The family must satisfy the A-infinity relation identically in t; the
    relation of q is then re-verified on the structure at t = 0.

    Raises:
        InputError: When the family's ring has no generator named ``parameter``.
        FamilyNotAInfty: When the family or the q-relation fails.
    """
    ring, index = _split_ring(family.domain, parameter)
    LOGGER.info("bulk datum %s from the family %s", name, family.name)
    report = Report(f"bulk datum {name} from {family.name}", {"parameter": parameter})
    family_report = check_ainfty(family)
    report.extend(family_report, "family:")
    if not family_report.passed:
        failure = family_report.failures()[0]
        raise FamilyNotAInfty(f"{family.name} fails the A-infinity relation: {failure.detail} {failure.witness}")

    def at(k):
        return lambda value: t_coefficient(value, k, index, ring)

    base = CoefficientMap(family.ops, at(0), ring, 1)
    units = {X: e.map_coefficients(at(0)) for X, e in family.units.items()}
    category = AInfCategory(
        f"{family.name}[t=0]", family.objects, family.homs, ring, base, units, family.kmax, family.complete
    )
    q = CoefficientMap(family.ops, at(1), ring, 1)
    relation = LinearCombination([(1, Insertion(category.ops, q)), (1, Insertion(q, category.ops))], ring, 0)
    if not residual_check(report, "qinfty", relation, category, category.check_horizon()):
        raise FamilyNotAInfty(f"the t-derivative of {family.name} fails the q-relation")
    return BulkDatum(name, category, q, family, report, parameter)


def decorated_q(datum: BulkDatum, setup: MirrorSetup) -> DecoratedOperations:
    """q with the weak bounding cochains of the setup folded in, on the mixed deformed category."""
    if datum.category.objects != setup.category.objects:
        raise InputError(f"datum {datum.name} and setup {setup.name} live on different categories")
    return DecoratedOperations(datum.q, setup.assignments, setup.category.kmax)


def co_cocycle(datum: BulkDatum, setup: Optional[MirrorSetup] = None) -> HochschildCochain:
    """
    The cochain (a_1..a_k) -> q(a_1..a_k).

    Without a setup it lives on the undeformed category; with one, on the
    flattened deformed category of the setup's objects.
    """
    if setup is None:
        return HochschildCochain(datum.category, datum.q, f"CO({datum.name})")
    return HochschildCochain(setup.source, decorated_q(datum, setup), f"CO({datum.name})")


def check_co_cocycle(datum: BulkDatum, setup: Optional[MirrorSetup] = None, lmax: int = 3) -> Report:
    """b* CO = 0 on tuples of length <= lmax."""
    phi = co_cocycle(datum, setup)
    report = Report(f"cocycle condition of {phi.name}", {"lmax": lmax})
    witness = cochain_residual(hochschild_diff(phi), lmax)
    report.add("closed", witness is None, f"b*{phi.name} = 0 up to length {lmax}", witness)
    return report


def kodaira_spencer(datum: BulkDatum, setup: MirrorSetup) -> Any:
    """
    The ring element ks with q_0^b = ks * e at the reference object.

    Raises:
        CheckError: When q_0 at the reference is not a multiple of the unit.
    """
    value = decorated_q(datum, setup).evaluate((), REFERENCE)
    ks = unit_multiple(setup.mixed, REFERENCE, value)
    if ks is None:
        raise CheckError(f"q_0 of {datum.name} at the reference is not a multiple of the unit: {value!r}")
    return ks


def corrupt_datum(datum: BulkDatum) -> BulkDatum:
    """
    The datum with q_1(e) = x added for the first odd x in hom(X, X), X the first object.

    The result satisfies neither the q-relation nor the unit condition.
    """
    C = datum.category
    X = C.objects[0]
    odd = [gen for gen in C.hom(X, X) if gen.deg == 1]
    if not odd or X not in C.units:
        raise InputError(f"{C.name} has no odd endomorphism to corrupt with")
    table = {(gen,): Vector.basis(odd[0], coeff) for gen, coeff in C.units[X].items()}
    q = LinearCombination([(1, datum.q), (1, TableMap(table, None, 1, C.domain))], C.domain, 1)
    report = Report(f"corrupted datum {datum.name}")
    report.warnings.append("q_1(e) altered by hand; the q-relation does not hold")
    return BulkDatum(f"{datum.name}~", C, q, None, report)


def potential_derivative(datum: BulkDatum, reference: tuple[Hashable, Vector]) -> Optional[Any]:
    """d/dt of the family's potential m(e^b) at the reference, or None without a family."""
    family = datum.family
    if family is None:
        return None
    ring, index = _split_ring(family.domain, datum.parameter)
    X, b = reference
    lifted = b.map_coefficients(family.domain.convert)
    value = unit_multiple(family, X, m_exp_b(family, X, lifted))
    return None if value is None else t_coefficient(value, 1, index, ring)
