"""Mirrorforge Main Theorem

Chain-level comparison of the two actions of a bulk class on the mirror bimodule.

Let M = (LM x 1)^* B_diag be the diagonal bimodule of the MF category B pulled
back along the localized mirror functor. A bulk datum q acts on M from the left
through its Hochschild cocycle, F = L^1(CO), and from the right through the
Kodaira-Spencer scalar, G = R^1(gamma(ks)). With

    xi^{r|1|0}(a_1..a_r, m) = m_2^B(q(a_1..a_r, .), m),    xi^{r|1|s} = 0 for s > 0,

the identity G - F = delta(xi) holds exactly. check_main_theorem verifies it
together with every intermediate identity of the argument, each as its own
named check with a witness on failure.

Features:
    - TheoremData and build_FG_xi
    - check_main_theorem: qinfty, qunit, aiunit, co_closed, ks, qunit2, xiandmodule,
      moduleandxi, deltaxi, qm1m1q, fminusgm, r11, r11', main
    - check_cap_scalar: gamma(r) cap psi = r psi on Hochschild chains of an MF category

Example:
    >>> from mirrorforge.mirror.examples import shipped
    >>> setup, datum = shipped("clifford-w")
    >>> check_main_theorem(setup, datum, rmax=1).passed
    True

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence, Union

from mirrorforge.core.config import rng
from mirrorforge.core.multilinear import Insertion, LinearCombination, MultilinearMap, TableMap, Vector, object_at
from mirrorforge.core.report import Report
from mirrorforge.core.signs import parity, sign
from mirrorforge.mirror.bulk import (
    BulkDatum,
    check_co_cocycle,
    co_cocycle,
    decorated_q,
    kodaira_spencer,
    potential_derivative,
)
from mirrorforge.mirror.lmfunctor import REFERENCE, MirrorSetup, ReferenceMorphisms
from mirrorforge.structures.ainfty import AInfCategory, check_unit, identity_functor, residual_check, unit_multiple
from mirrorforge.structures.bimod import (
    AInfBimodule,
    BarComposition,
    BimoduleMap,
    BimoduleSum,
    HatComposition,
    Premorphism,
    base_change,
    bimodule_residual,
    diagonal,
    premorphism_diff,
)
from mirrorforge.structures.hoch import HochschildChain, L_M1, R_M1, cap, cyclic_words
from mirrorforge.structures.mf import MFCategory, gamma

__all__ = ["TheoremData", "build_FG_xi", "check_main_theorem", "check_cap_scalar"]

LOGGER = logging.getLogger(__name__)


class _Formula(BimoduleMap):
    """Bimodule map given by a function of (left path, module generator, right path)."""

    def __init__(self, func: Callable, degree: int, domain: Any):
        super().__init__(degree, domain)
        self.func = func

    def _evaluate(self, left, module, right):
        return self.func(left, module, right)


@dataclass
class TheoremData:
    """
    Everything the comparison is built from.

    Attributes:
        setup (MirrorSetup): the localized mirror functor data.
        datum (BulkDatum): the bulk class.
        q (MultilinearMap): q decorated by the weak bounding cochains, on the mixed category.
        ks: the Kodaira-Spencer ring element.
        scalars (dict): q_0 = c_X * e_X on each source object (None when not a unit multiple).
        module (AInfBimodule): M = (LM x 1)^* B_diag.
        F, G, xi (Premorphism): the two actions and the homotopy between them.
    """

    setup: MirrorSetup
    datum: BulkDatum
    q: MultilinearMap
    ks: Any
    scalars: dict
    module: AInfBimodule
    F: Premorphism
    G: Premorphism
    xi: Premorphism


def build_FG_xi(setup: MirrorSetup, datum: BulkDatum) -> TheoremData:
    """
    F = L^1(CO(alpha)), G = R^1(gamma(ks(alpha))) and xi on M = (LM x 1)^* B_diag.

    Raises:
        InputError: When the datum and the setup live on different categories.
        CheckError: When q_0 at the reference is not a multiple of the unit.
    """
    B = setup.target
    q = decorated_q(datum, setup)
    ks = kodaira_spencer(datum, setup)
    scalars = {label: unit_multiple(setup.mixed, label, q.evaluate((), label)) for label in setup.objects}
    M = base_change(setup.functor, identity_functor(B), diagonal(B))
    LOGGER.info("mirror bimodule %s: %d generators, ks = %s", M.name, len(M.generators), ks)

    Q = ReferenceMorphisms(setup, lambda a, g: q(a + [g]), 1, empty=True)
    one = setup.ring.one

    def xi(left, module, right):
        if right:
            return Vector()
        return B.ops([Q.evaluate(left, module.source), Vector.basis(module, one)])

    F = L_M1(co_cocycle(datum, setup), M)
    G = R_M1(gamma(B, ks), M)
    return TheoremData(setup, datum, q, ks, scalars, M, F, G, Premorphism(M, M, _Formula(xi, 1, setup.ring), "xi"))


# region Expansions


class _Expansions:
    """Explicit formulas for the pieces of delta(xi), F and G in terms of m and q."""

    def __init__(self, data: TheoremData):
        setup = data.setup
        self.B: MFCategory = setup.target
        self.source: AInfCategory = setup.source
        self.one = setup.ring.one
        m, q = setup.mixed.ops, data.q
        self.LM = setup.functor.components
        self.Q = ReferenceMorphisms(setup, lambda a, g: q(a + [g]), 1, empty=True)

        def phi(a, g):
            result = Vector()
            vectors = a + [g]
            for i in range(len(a) + 1):
                sgn = sign(parity(a[:i]))
                here = object_at(vectors, i, None)
                for j in range(i, len(a) + 1):
                    result.add_scaled(m(a[:i] + [q(a[i:j], here)] + a[j:] + [g]), sgn)
            return result

        def zdelta(a, g):
            result = Vector()
            for i in range(len(a) + 1):
                sgn = sign(parity(a[:i]))
                result.add_scaled(m(a[:i] + [q(a[i:] + [g])]), sgn)
                result.add_scaled(q(a[:i] + [m(a[i:] + [g])]), sgn)
                for j in range(i + 1, len(a) + 1):
                    result.add_scaled(q(a[:i] + [m(a[i:j])] + a[j:] + [g]), sgn)
            return result

        self.Phi = ReferenceMorphisms(setup, phi, 0, empty=True)
        self.Zdelta = ReferenceMorphisms(setup, zdelta, 0, empty=True)
        units = {label: self.B.units[label].scale(data.ks) for label in setup.objects}
        self.KS = TableMap({}, units, 0, setup.ring)

    def m1(self, X: Vector) -> Vector:
        return self.B.ops([X])

    def m2(self, X: Vector, Y: Vector) -> Vector:
        return self.B.ops([X, Y])

    def basis(self, gens) -> list[Vector]:
        return [Vector.basis(gen, self.one) for gen in gens]

    def mu_xi(self, left, module, right) -> Vector:
        """mu o xi^ expanded: m_1(m_2(Q(a), m)) + sum m_2(LM(a_<=i), m_2(Q(a_>i), m)), and its s = 1 part."""
        mbar = Vector.basis(module, self.one)
        if len(right) > 1:
            return Vector()
        whole = self.m2(self.Q.evaluate(left, module.source), mbar)
        if right:
            return self.m2(whole, Vector.basis(right[0], self.one))
        result = self.m1(whole)
        for i in range(1, len(left) + 1):
            inner = self.m2(self.Q.evaluate(left[i:], module.source), mbar)
            result.add_scaled(self.m2(self.LM.evaluate(left[:i]), inner), sign(parity(left[:i])))
        return result

    def xi_mu(self, left, module, right) -> Vector:
        """xi o mu^ plus xi after the source operations, expanded."""
        mbar = Vector.basis(module, self.one)
        r = len(left)
        if len(right) > 1:
            return Vector()
        if right:
            inner = self.m2(mbar, Vector.basis(right[0], self.one))
            return self.m2(self.Q.evaluate(left, module.source), inner).scale(sign(parity(left)))
        start = left[0].source if left else module.source
        result = self.m2(self.Q.evaluate(left, module.source), self.m1(mbar)).scale(sign(parity(left)))
        vectors = self.basis(left)
        for i in range(r):
            head = self.Q.evaluate(left[:i], start)
            result.add_scaled(self.m2(head, self.m2(self.LM.evaluate(left[i:]), mbar)), sign(parity(left[:i])))
            for j in range(i + 1, r + 1):
                block = self.source.ops(vectors[i:j])
                if block:
                    head = self.Q(vectors[:i] + [block] + vectors[j:])
                    result.add_scaled(self.m2(head, mbar), sign(parity(left[:i])))
        return result

    def delta_xi(self, left, module, right) -> Vector:
        """m_2(Z(a), m) with Z the m-q expansion; zero for s > 0."""
        if right:
            return Vector()
        return self.m2(self.Zdelta.evaluate(left, module.source), Vector.basis(module, self.one))

    def g_minus_f(self, left, module, right) -> Vector:
        """m_2(ks * id - Phi(a), m) at s = 0; zero for s > 0."""
        if right:
            return Vector()
        start = module.source
        value = self.KS.evaluate(left, start) - self.Phi.evaluate(left, start)
        return self.m2(value, Vector.basis(module, self.one))


# endregion

# region Checks


def _summarize(report: Report, name: str, detail: str, sub: Report) -> bool:
    failures = sub.failures()
    witness = failures[0].witness if failures else None
    report.add(name, sub.passed, detail, witness, components=[f"{c.name}: {c.detail}" for c in sub.checks])
    return sub.passed


def _vanishes(report: Report, name: str, detail: str, residuals: dict, M: AInfBimodule, rmax: int, smax: int,
              smin: int = 0) -> bool:
    """One summarized check that every residual vanishes on tuples with smin <= s <= smax."""
    sub = Report(name)
    for label, residual in residuals.items():
        if not bimodule_residual(sub, label, residual, M, rmax, smax, smin=smin):
            break
    return _summarize(report, name, detail, sub)


def _unit_insertions(C: AInfCategory, op: MultilinearMap, kmax: int) -> Optional[dict]:
    """First input on which op with a unit inserted is nonzero, for arities 1..kmax."""
    for k in range(1, kmax + 1):
        for start, gens in C.basis_tuples(k - 1):
            vectors = [C.basis(g) for g in gens]
            for pos in range(k):
                obj = object_at(vectors, pos, start)
                if obj not in C.units:
                    continue
                value = op(vectors[:pos] + [C.units[obj]] + vectors[pos:], start)
                if value:
                    return {"inputs": [str(g) for g in gens], "position": pos, "value": repr(value)}
    return None


def _not_unit_multiples(C: AInfCategory, op: MultilinearMap) -> list[str]:
    return [str(X) for X in C.objects if unit_multiple(C, X, op.evaluate((), X)) is None]


def _unit_checks(report: Report, data: TheoremData):
    mixed, q = data.setup.mixed, data.q
    top = mixed.kmax + 1
    curved = _not_unit_multiples(mixed, mixed.ops)
    witness = {"objects": curved} if curved else _unit_insertions(mixed, q, top)
    report.add("qunit", witness is None, "m_0 is a unit multiple and q vanishes with a unit inserted", witness)

    bulk = _not_unit_multiples(mixed, q)
    units = check_unit(mixed, kmax=top)
    if bulk:
        witness = {"objects": bulk}
    else:
        witness = units.failures()[0].witness if units.failures() else None
    report.add("aiunit", not bulk and units.passed, "q_0 is a unit multiple and m is strictly unital", witness)


def _scalar_actions(report: Report, data: TheoremData):
    failures = []
    one = data.setup.ring.one
    for mbar in data.module.generators:
        basis = Vector.basis(mbar, one)
        c = data.scalars.get(mbar.source)
        if c is None or data.F.evaluate((), mbar, ()) != basis.scale(c):
            failures.append({"module": str(mbar), "action": "F"})
        if data.G.evaluate((), mbar, ()) != basis.scale(data.ks):
            failures.append({"module": str(mbar), "action": "G"})
    report.add("qunit2", not failures, "F^{0|1|0} = c * id and G^{0|1|0} = ks * id",
               failures[0] if failures else None)


def check_main_theorem(
    setup: MirrorSetup,
    datum: BulkDatum,
    rmax: int = 3,
    smax: int = 1,
    lmax: int = 3,
) -> Report:
    """
    G - F = delta(xi) on every tuple with r <= rmax, s <= smax, and each intermediate identity.

    The vanishing for s = 2 is checked for r <= min(rmax, 1). A datum violating
    the q-relation yields a failing report, not an exception.
    """
    report = Report(
        f"bulk action of {datum.name} on the mirror bimodule of {setup.name}",
        {"rmax": rmax, "smax": smax, "lmax": lmax, "substrate": "synthetic A-infinity data"},
    )
    report.warnings.extend(datum.report.warnings)
    data = build_FG_xi(setup, datum)
    M, xi = data.module, data.xi
    ex = _Expansions(data)
    mixed, ring = setup.mixed, setup.ring
    report.data.update({
        "ks": str(ring.to_sympy(data.ks)),
        "q0": {str(k): None if v is None else str(ring.to_sympy(v)) for k, v in data.scalars.items()},
        "generators": len(M.generators),
        "normalization": "weak bounding cochains folded into q before building CO",
    })

    sub = Report("qinfty")
    relation = LinearCombination([(1, Insertion(mixed.ops, data.q)), (1, Insertion(data.q, mixed.ops))], ring, 0)
    residual_check(sub, "qinfty", relation, mixed, mixed.check_horizon())
    _summarize(report, "qinfty", f"m{{q}} + q{{m}} = 0 with the reference object {REFERENCE}", sub)
    _unit_checks(report, data)
    closed = check_co_cocycle(datum, setup, lmax)
    report.add("co_closed", closed.passed, closed.checks[0].detail, closed.checks[0].witness)
    expected = potential_derivative(datum, setup.reference)
    if expected is not None:
        report.add("ks", expected == data.ks, f"q_0 at the reference = d/dt W = {ring.to_sympy(expected)}")
    _scalar_actions(report, data)

    def formula(func):
        return _Formula(func, 0, ring)

    def minus(first, second):
        return BimoduleSum([(1, first), (-1, second)], ring, 0)

    mu = M.mu
    hat_mu_xi = HatComposition(mu, xi.components)
    xi_hat_mu = BimoduleSum([(1, HatComposition(xi.components, mu)),
                             (1, BarComposition(xi.components, M.left.ops, M.right.ops))], ring, 0)
    delta = premorphism_diff(xi).components
    difference = (data.G - data.F).components

    _vanishes(report, "xiandmodule", "mu o xi^ equals its m-q expansion",
              {"xiandmodule": minus(hat_mu_xi, formula(ex.mu_xi))}, M, rmax, smax)
    _vanishes(report, "moduleandxi", "xi o mu^ + xi o m^ equals its m-q expansion",
              {"moduleandxi": minus(xi_hat_mu, formula(ex.xi_mu))}, M, rmax, smax)
    _vanishes(report, "deltaxi", "delta(xi)^{r|1|0} = m_2(Z(a), m) with Z = sum m(.., q(..)) + q(.., m(..))",
              {"deltaxi": minus(delta, formula(ex.delta_xi))}, M, rmax, 0)
    sub = Report("qm1m1q")
    qm1m1q = LinearCombination([(1, ex.Zdelta), (1, ex.Phi), (-1, ex.KS)], ring, 0)
    residual_check(sub, "qm1m1q", qm1m1q, setup.source, rmax)
    _summarize(report, "qm1m1q", "Z(a) = ks * id [r = 0] - Phi(a) on source paths", sub)
    _vanishes(report, "fminusgm", "(G - F)^{r|1|0} = m_2(ks * id [r = 0] - Phi(a), m)",
              {"fminusgm": minus(difference, formula(ex.g_minus_f))}, M, rmax, 0)
    _vanishes(report, "r11", "delta(xi)^{r|1|1} = 0 and (G - F)^{r|1|1} = 0",
              {"delta": delta, "difference": difference}, M, rmax, 1, smin=1)
    _vanishes(report, "r11'", "delta(xi)^{r|1|2} = 0 and (G - F)^{r|1|2} = 0",
              {"delta": delta, "difference": difference}, M, min(rmax, 1), 2, smin=2)
    _vanishes(report, "main", "G - F - delta(xi) = 0", {"main": minus(difference, delta)}, M, rmax, smax)
    if report.passed:
        LOGGER.info("G - F = delta(xi) holds for %s on %s", datum.name, setup.name)
    else:
        LOGGER.warning("failing identities: %s", ", ".join(c.name for c in report.failures()))
    return report


# endregion

# region Cap product


def check_cap_scalar(
    target: Union[MirrorSetup, MFCategory],
    rs: Optional[Sequence[Any]] = None,
    max_length: int = 1,
    samples: int = 8,
    seed: Optional[int] = None,
) -> Report:
    """
    gamma(r) cap psi = r * psi for sampled cyclic words psi of length <= max_length + 1.

    Args:
        target: a mirror setup (its MF category is used) or an MF category.
        rs: ring elements; defaults to 1 and the coordinates.
    """
    C = target.target if isinstance(target, MirrorSetup) else target
    ring = C.domain
    rs = [ring.one] + list(ring.gens) if rs is None else [ring.convert(r) for r in rs]
    words = [word for n in range(max_length + 1) for word in cyclic_words(C, n)]
    generator = rng(seed)
    if len(words) > samples:
        words = [words[i] for i in sorted(generator.choice(len(words), samples, replace=False))]
    report = Report(f"cap product with gamma on {C.name}", {"max_length": max_length, "samples": len(words)})
    for r in rs:
        phi = gamma(C, r)
        witness = None
        for word in words:
            psi = HochschildChain.word(word, ring.one)
            if cap(phi, psi) != psi.scale(r):
                witness = {"word": [str(g) for g in word]}
                break
        report.add(f"cap[{ring.to_sympy(r)}]", witness is None, "gamma(r) cap psi = r psi", witness)
    return report


# endregion
