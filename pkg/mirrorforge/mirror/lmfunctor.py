"""Mirrorforge Localized Mirror Functor

The functor from a weakly unobstructed A-infinity category to matrix
factorizations of its potential.

A reference object (LL, b) with b = x_1 X_1 + .. + x_n X_n over the polynomial
ring Q(s)[x_1..x_n] has potential W = m_0^b. An object (L, b_0) of potential
lambda goes to the factorization

    E = hom((L, b_0), (LL, b)),    Q = -m_1^{b_0, b},

so that Q^2 = (W - lambda) * Id. On morphisms the k-th component sends
(x_1, .., x_k) to the map g -> m_{k+1}^{b_0..b_k, b}(x_1, .., x_k, g).

Features:
    - MirrorSetup: source category, reference object, weak Maurer-Cartan data
    - lm_object, check_lm_object
    - ReferenceMorphisms: operators on the reference hom spaces as MF morphisms
    - lm_functor, lm_morphisms, check_lm_functor

Example:
    >>> from mirrorforge.mirror.examples import clifford_setup
    >>> setup = clifford_setup(1)
    >>> setup.factorization("L0").ranks
    (1, 1)

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from functools import cached_property
from typing import Any, Callable, Hashable, Mapping, Optional, Sequence

from mirrorforge.core.exceptions import InputError
from mirrorforge.core.multilinear import Gen, MultilinearMap, Vector, basis_vectors
from mirrorforge.core.report import Report
from mirrorforge.core.signs import parity
from mirrorforge.structures.ainfty import AInfCategory, AInfFunctor, check_functor, deform
from mirrorforge.structures.mf import MatrixFactorization, MFCategory, MFMorphism, validate_mf

__all__ = [
    "REFERENCE",
    "MirrorSetup",
    "ReferenceMorphisms",
    "reference_basis",
    "lm_object",
    "check_lm_object",
    "lm_functor",
    "lm_morphisms",
    "check_lm_functor",
]

LOGGER = logging.getLogger(__name__)

REFERENCE = "LL"
"""Label of the reference object inside the mixed deformed category."""

SUMMAND = "W-lambda"


def reference_basis(mixed: AInfCategory, label: Hashable) -> list[Gen]:
    """hom(label, reference) with the even generators first."""
    gens = mixed.hom(label, REFERENCE)
    return [gen for gen in gens if gen.deg == 0] + [gen for gen in gens if gen.deg == 1]


def _factorization(mixed: AInfCategory, label: Hashable, name: str) -> MatrixFactorization:
    basis = reference_basis(mixed, label)
    index = {gen: pos for pos, gen in enumerate(basis)}
    r0 = sum(1 for gen in basis if gen.deg == 0)
    size = len(basis)
    ring = mixed.domain
    full = [[ring.zero] * size for _ in range(size)]
    for col, gen in enumerate(basis):
        for out, coeff in mixed.ops.evaluate((gen,)).items():
            full[index[out]][col] -= coeff
    Q01 = [row[r0:] for row in full[:r0]]
    Q10 = [row[:r0] for row in full[r0:]]
    W = mixed.potentials[REFERENCE] - mixed.potentials[label]
    return MatrixFactorization(ring, W, Q01, Q10, (r0, size - r0), None, 1, name)


def lm_object(setup: "MirrorSetup", X: Hashable, b0: Vector, name: str = "LM") -> MatrixFactorization:
    """
    The factorization (hom((X, b0), (LL, b)), -m_1^{b0, b}) of W - lambda.

    Raises:
        MCInvalid: When b0 (or the reference b) is not a weak bounding cochain.
    """
    mixed = deform(setup.category, {name: (X, b0), REFERENCE: setup.reference}, require_common=False)
    return _factorization(mixed, name, f"LM({name})")


def check_lm_object(setup: "MirrorSetup", X: Hashable, b0: Vector, name: str = "LM") -> Report:
    """Q^2 = (W - lambda) * Id for lm_object; reported as skipped when W - lambda vanishes."""
    M = lm_object(setup, X, b0, name)
    report = Report(f"localized mirror of {name}", {"object": str(X), "ranks": list(M.ranks)})
    report.add("weak_mc", True, "b0 and b are weak bounding cochains")
    if not M.W:
        LOGGER.warning("W - lambda vanishes for %s; the square check is degenerate", name)
        report.add("square", True, "skipped: W - lambda = 0, Q^2 = 0 carries no information")
        report.warnings.append(f"{name}: W - lambda = 0")
        return report
    report.extend(validate_mf(M))
    report.data["W-lambda"] = str(M.ring.to_sympy(M.W))
    return report


class MirrorSetup:
    """
    Input of the localized mirror functor.

    Args:
        category (AInfCategory): source category over a polynomial ring Q(s)[x_1..x_n].
        reference (tuple): (object, b) of the reference object, b weakly unobstructed.
        objects: {label: (object, b_0)} sharing one potential value lambda.
        name (str): label used in reports.

    Raises:
        MCInvalid: When some cochain is not a weak bounding cochain.
        PotentialMismatch: When the objects have different potential values.
    """

    def __init__(
        self,
        category: AInfCategory,
        reference: tuple[Hashable, Vector],
        objects: Mapping[Hashable, tuple[Hashable, Vector]],
        name: str = "mirror",
    ):
        if not objects:
            raise InputError("a mirror setup needs at least one object")
        if REFERENCE in objects:
            raise InputError(f"{REFERENCE!r} is reserved for the reference object")
        self.category = category
        self.reference = reference
        self.objects = dict(objects)
        self.name = name
        self.assignments = {**self.objects, REFERENCE: reference}
        self.mixed = deform(category, self.assignments, require_common=False)
        self.source = deform(category, self.objects).without_central_curvature()
        self.W = self.mixed.potentials[REFERENCE]
        self.potential = self.mixed.potentials[next(iter(self.objects))]
        self.bases = {label: reference_basis(self.mixed, label) for label in self.objects}
        self.indices = {label: {gen: pos for pos, gen in enumerate(basis)} for label, basis in self.bases.items()}
        LOGGER.info("mirror setup %s: W = %s, lambda = %s", name, self.W, self.potential)

    # region Properties

    @property
    def ring(self) -> Any:
        return self.category.domain

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(str(sym) for sym in self.ring.symbols)

    @cached_property
    def target(self) -> MFCategory:
        """The MF category of W - lambda on the images of the objects."""
        summand = {label: _factorization(self.mixed, label, f"LM({label})") for label in self.objects}
        return MFCategory(f"MF({self.name})", {SUMMAND: summand})

    @cached_property
    def functor(self) -> AInfFunctor:
        return lm_functor(self)

    # endregion

    def factorization(self, label: Hashable) -> MatrixFactorization:
        return self.target.factorizations[label]

    def __repr__(self) -> str:
        return f"MirrorSetup({self.name!r}, objects={list(self.objects)}, W={self.W})"


class ReferenceMorphisms(MultilinearMap):
    """
    A path a = (a_1..a_r) of the source goes to the element of hom(l_0, l_r) = Hom(E_r, E_0)
    whose column at g is rule(a, g), for g running over the basis of E_r = hom(l_r, LL).

    Args:
        setup (MirrorSetup): supplies the bases and the target category.
        rule: (vectors a, vector g) -> Vector in hom(l_0, LL).
        degree (int): shifted degree of the resulting map.
        empty (bool): whether the empty path is evaluated (at ``start``).
    """

    def __init__(
        self,
        setup: MirrorSetup,
        rule: Callable[[list[Vector], Vector], Vector],
        degree: int = 0,
        empty: bool = False,
    ):
        super().__init__(degree, setup.ring)
        self.setup = setup
        self.rule = rule
        self.empty = empty

    def _evaluate(self, gens, start):
        if not gens and not self.empty:
            return Vector()
        first = gens[0].source if gens else start
        last = gens[-1].target if gens else start
        ops = self.setup.target.ops
        one = self.domain.one
        rows = self.setup.indices[first]
        result = Vector()
        for col, g in enumerate(self.setup.bases[last]):
            for h, coeff in self.rule(basis_vectors(gens, one), Vector.basis(g, one)).items():
                result.add_term(ops.unit(first, last, rows[h], col), coeff)
        return result


def lm_functor(setup: MirrorSetup) -> AInfFunctor:
    """
    The localized mirror functor on the flattened deformed category.

    Components are LM_k(x_1..x_k)(g) = m_{k+1}(x_1..x_k, g) for k >= 1; there is no k = 0 term.
    """
    ops = setup.mixed.ops
    components = ReferenceMorphisms(setup, lambda a, g: ops(a + [g]))
    objects = {label: label for label in setup.objects}
    return AInfFunctor(setup.source, setup.target, objects, components, setup.category.kmax, setup.category.complete)


def lm_morphisms(setup: MirrorSetup, inputs: Sequence[Vector]) -> MFMorphism:
    """LM_k(x_1..x_k) as a morphism LM(l_k) -> LM(l_0)."""
    inputs = list(inputs)
    if not inputs:
        raise InputError("the localized mirror functor has no component on the empty input")
    first, last = inputs[0].ends()[0], inputs[-1].ends()[1]
    value = setup.functor.components(inputs)
    degree = (parity(inputs) + 1) % 2
    return setup.target.to_morphism(value, first, last, degree)


def check_lm_functor(setup: MirrorSetup, kmax: Optional[int] = 4) -> Report:
    """Square of every object's Q and the functor equation up to arity kmax."""
    report = Report(f"localized mirror functor of {setup.name}", {"kmax": kmax})
    for label in setup.objects:
        M = setup.factorization(label)
        if not M.W:
            report.add(f"square[{label}]", True, "skipped: W - lambda = 0")
            report.warnings.append(f"{label}: W - lambda = 0")
            continue
        report.extend(validate_mf(M), f"{label}:")
    report.extend(check_functor(setup.functor, kmax))
    report.data["W"] = str(setup.ring.to_sympy(setup.W))
    report.data["lambda"] = str(setup.ring.to_sympy(setup.potential))
    return report
