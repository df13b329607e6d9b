"""Mirrorforge A-infinity Categories

Finite A-infinity categories over a commutative coefficient ring.

A category stores its objects, based Z/2-graded hom spaces and a single
MultilinearMap ``ops`` of shifted degree 1 whose value on k composable inputs
is m_k (and on the empty input at an object X, the curvature m_0^X).

Features:
    - AInfCategory with unit designations and an arity bound kmax
    - check_ainfty / check_unit with witnesses for the first failure
    - m_exp_b, is_weak_mc and deform (decorated category of weak bounding cochains)
    - AInfFunctor and check_functor
    - curved_clifford: the synthetic weakly unobstructed model

Example:
    >>> from sympy import QQ
    >>> from mirrorforge.structures.ainfty import curved_clifford, check_ainfty
    >>> C = curved_clifford(0, [1], QQ)
    >>> check_ainfty(C).passed
    True

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from itertools import combinations
from typing import Any, Hashable, Iterator, Mapping, Optional, Sequence

from mirrorforge.core.coeff import FIELD, frac_valuation
from mirrorforge.core.exceptions import MCInvalid, NonConvergent, PotentialMismatch
from mirrorforge.core.multilinear import (
    Composite,
    Gen,
    IdentityMap,
    Insertion,
    MultilinearMap,
    TableMap,
    Vector,
    compositions_with_zeros,
    object_at,
)
from mirrorforge.core.report import Report
from mirrorforge.core.signs import bubble_sign, koszul, parity, shifted

__all__ = [
    "AInfCategory",
    "AInfFunctor",
    "FlattenedOperations",
    "DecoratedOperations",
    "CliffordOperations",
    "check_ainfty",
    "check_unit",
    "m_exp_b",
    "is_weak_mc",
    "unit_multiple",
    "deform",
    "check_functor",
    "identity_functor",
    "curved_clifford",
    "valuation",
    "residual_check",
]

LOGGER = logging.getLogger(__name__)


class AInfCategory:
    """
    A finite A-infinity category.

    Args:
        name (str): label used in reports.
        objects: object labels.
        homs: {(X, Y): [Gen]} based hom spaces; missing pairs are zero.
        domain: sympy coefficient domain.
        ops (MultilinearMap): the operations m, shifted degree 1.
        units: {X: Vector} declared units.
        kmax (int): arity bound of the structure.
        complete (bool): True when m_k vanishes for k > kmax, so every sum is exact.
    """

    def __init__(
        self,
        name: str,
        objects: Sequence[Hashable],
        homs: Mapping[tuple, Sequence[Gen]],
        domain: Any,
        ops: MultilinearMap,
        units: Optional[Mapping[Hashable, Vector]] = None,
        kmax: int = 4,
        complete: bool = False,
    ):
        if ops.degree != 1:
            raise ValueError("A-infinity operations must have shifted degree 1")
        self.name = name
        self.objects = list(objects)
        self.homs = {pair: list(gens) for pair, gens in homs.items() if gens}
        self.domain = domain
        self.ops = ops
        self.units = dict(units or {})
        self.kmax = kmax
        self.complete = complete
        self.potentials: dict = {}

    # region Properties

    @property
    def one(self):
        return self.domain.one

    @property
    def generators(self) -> list[Gen]:
        return [gen for X in self.objects for Y in self.objects for gen in self.hom(X, Y)]

    @property
    def curved(self) -> bool:
        return any(self.ops([], X) for X in self.objects)

    # endregion

    def hom(self, X: Hashable, Y: Hashable) -> list[Gen]:
        return self.homs.get((X, Y), [])

    def m(self, inputs: Sequence[Vector], start: Hashable = None) -> Vector:
        return self.ops(inputs, start)

    def basis(self, gen: Gen) -> Vector:
        return Vector.basis(gen, self.one)

    def unit(self, X: Hashable) -> Vector:
        return self.units[X]

    def basis_tuples(self, k: int) -> Iterator[tuple[Hashable, tuple[Gen, ...]]]:
        """All composable generator tuples of length k, with their first object."""
        if k == 0:
            for X in self.objects:
                yield X, ()
            return

        def extend(prefix: tuple, last: Hashable) -> Iterator[tuple]:
            if len(prefix) == k:
                yield prefix
                return
            for Y in self.objects:
                for gen in self.hom(last, Y):
                    yield from extend(prefix + (gen,), Y)

        for X in self.objects:
            for word in extend((), X):
                yield X, word

    def check_horizon(self) -> int:
        """Largest arity on which the A-infinity relation is fully determined (and nontrivial)."""
        if self.complete:
            return max(2 * self.kmax - 1, 1)
        if not self.curved:
            return self.kmax
        return self.kmax - 1

    # region Derived categories

    def with_ops(self, ops: MultilinearMap, name: Optional[str] = None) -> "AInfCategory":
        result = AInfCategory(
            name or self.name, self.objects, self.homs, self.domain, ops, self.units, self.kmax, self.complete
        )
        result.potentials = dict(self.potentials)
        return result

    def full_subcategory(self, objects: Sequence[Hashable], name: Optional[str] = None) -> "AInfCategory":
        keep = set(objects)
        homs = {(X, Y): gens for (X, Y), gens in self.homs.items() if X in keep and Y in keep}
        units = {X: e for X, e in self.units.items() if X in keep}
        result = AInfCategory(
            name or self.name, [X for X in self.objects if X in keep], homs, self.domain, self.ops, units,
            self.kmax, self.complete,
        )
        result.potentials = {X: lam for X, lam in self.potentials.items() if X in keep}
        return result

    def without_central_curvature(self) -> "AInfCategory":
        """The same operations with every m_0 removed (the curvature lambda*e being central)."""
        return self.with_ops(FlattenedOperations(self.ops))

    def tabulate(self, kmax: Optional[int] = None) -> TableMap:
        """Explicit table of the operations on all basis tuples up to kmax."""
        kmax = self.kmax if kmax is None else kmax
        table, curvature = {}, {}
        for k in range(kmax + 1):
            for X, gens in self.basis_tuples(k):
                value = self.ops.evaluate(gens, X)
                if not value:
                    continue
                if k == 0:
                    curvature[X] = value
                else:
                    table[gens] = value
        return TableMap(table, curvature, 1, self.domain)

    # endregion

    def __repr__(self) -> str:
        return f"AInfCategory({self.name!r}, objects={self.objects}, kmax={self.kmax})"


class FlattenedOperations(MultilinearMap):
    """Operations with the empty-input value removed."""

    def __init__(self, base: MultilinearMap):
        super().__init__(base.degree, base.domain, base.r_linear)
        self.base = base

    def _evaluate(self, gens, start):
        return self.base.evaluate(gens, start) if gens else Vector()


# region Checks


def residual_check(report: Report, name: str, relation: MultilinearMap, category: AInfCategory, horizon: int):
    """Add one check per arity to the report; stop at the first nonzero residual."""
    for k in range(horizon + 1):
        count = 0
        for X, gens in category.basis_tuples(k):
            count += 1
            residual = relation.evaluate(gens, X)
            if residual:
                report.add(
                    f"{name}[k={k}]",
                    False,
                    f"nonzero residual on {len(gens)} inputs at {X}",
                    {"inputs": [str(g) for g in gens], "object": str(X), "residual": repr(residual)},
                )
                return False
        LOGGER.debug("%s: %d tuples of arity %d vanish", name, count, k)
        report.add(f"{name}[k={k}]", True, f"{count} tuples")
    return True


def check_ainfty(C: AInfCategory, kmax: Optional[int] = None) -> Report:
    """
    Evaluate sum (-1)^eps m(x_1..x_i, m(x_{i+1}..x_j), x_{j+1}..x_k) on all basis tuples.

    The relation is checked up to kmax (default: the category's check horizon).
    Output degrees of m are verified generator-wise on the way.
    """
    horizon = C.check_horizon() if kmax is None else kmax
    report = Report(f"A-infinity relation of {C.name}", {"kmax": horizon, "complete": C.complete})
    LOGGER.info("checking the A-infinity relation of %s up to arity %d", C.name, horizon)

    for k in range(C.kmax + 1):
        for X, gens in C.basis_tuples(k):
            expected = (1 + parity(gens)) % 2
            bad = [gen for gen in C.ops.evaluate(gens, X) if shifted(gen.deg) != expected]
            if bad:
                report.add("degree", False, f"m_{k} output has the wrong degree", {"inputs": [str(g) for g in gens]})
                return report
    report.add("degree", True, "every output has shifted degree 1 + sum of inputs")
    residual_check(report, "ainfty", Insertion(C.ops, C.ops), C, horizon)
    return report


def check_unit(C: AInfCategory, X: Optional[Hashable] = None, kmax: Optional[int] = None) -> Report:
    """
    Unit axioms for the declared units: m_2(e, x) = x, m_2(y, e) = (-1)^|y| y,
    m_1(e) = 0 and m_k(.., e, ..) = 0 for 3 <= k <= kmax.
    """
    kmax = C.kmax if kmax is None else kmax
    objects = [X] if X is not None else list(C.units)
    report = Report(f"unit axioms of {C.name}", {"kmax": kmax})
    for obj in objects:
        e = C.units[obj]
        ok = True
        if C.ops([e]):
            report.add(f"m1(e)[{obj}]", False, "m_1(e) is nonzero", {"value": repr(C.ops([e]))})
            ok = False
        for Y in C.objects:
            for gen in C.hom(obj, Y):
                if ok and C.ops([e, C.basis(gen)]) != C.basis(gen):
                    report.add(f"left[{obj}]", False, "m_2(e, x) differs from x", {"x": str(gen)})
                    ok = False
            for gen in C.hom(Y, obj):
                expected = C.basis(gen).scale(koszul(gen.deg, 1))
                if ok and C.ops([C.basis(gen), e]) != expected:
                    report.add(f"right[{obj}]", False, "m_2(y, e) differs from (-1)^|y| y", {"y": str(gen)})
                    ok = False
        for k in range(3, kmax + 1):
            if not ok:
                break
            for start, gens in C.basis_tuples(k - 1):
                vectors = [C.basis(g) for g in gens]
                for pos in range(k):
                    if object_at(vectors, pos, start) != obj:
                        continue
                    value = C.ops(vectors[:pos] + [e] + vectors[pos:])
                    if value:
                        report.add(f"higher[{obj}]", False, f"m_{k} with e inserted is nonzero",
                                   {"inputs": [str(g) for g in gens], "position": pos})
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            report.add(f"unit[{obj}]", True, f"strict unit up to arity {kmax}")
    return report


# endregion

# region Weak Maurer-Cartan theory


def valuation(coeff: Any):
    """Filtration degree of a coefficient: T-valuation, or lowest total degree for polynomials."""
    if not coeff:
        return float("inf")
    if FIELD.of_type(coeff):
        return frac_valuation(coeff)
    if hasattr(coeff, "itermonoms"):
        return min(sum(monom) for monom in coeff.itermonoms())
    return 0


def m_exp_b(C: AInfCategory, X: Hashable, b: Vector, truncation: Optional[int] = None) -> Vector:
    """
    m(e^b) = m_0 + m_1(b) + m_2(b, b) + ...

    Exact when the category is complete; otherwise b must be positively
    filtered and the sum is truncated at ``truncation`` (default kmax).

    Raises:
        NonConvergent: When the series is neither finite nor filtered.
    """
    if not C.complete and any(valuation(c) <= 0 for c in b.values()):
        raise NonConvergent(f"b at {X} has a coefficient of nonpositive filtration")
    top = C.kmax if truncation is None else truncation
    if not C.complete:
        LOGGER.warning("m(e^b) at %s truncated at arity %d", X, top)
    result = C.ops([], X)
    for k in range(1, top + 1):
        if not b:
            break
        result += C.ops([b] * k)
    return result


def unit_multiple(C: AInfCategory, X: Hashable, value: Vector) -> Optional[Any]:
    """The ring element r with value = r * e_X, or None when value is not a multiple of the unit."""
    if not value:
        return C.domain.zero
    e = C.units.get(X)
    if not e:
        return None
    gen, coeff = next(iter(e.items()))
    if gen not in value:
        return None
    try:
        r = C.domain.exquo(value[gen], coeff)
    except Exception:
        return None
    return r if value == e.scale(r) else None


def is_weak_mc(C: AInfCategory, X: Hashable, b: Vector) -> tuple[bool, Any]:
    """Whether m(e^b) is a multiple of the unit at X, with the multiple."""
    lam = unit_multiple(C, X, m_exp_b(C, X, b))
    return lam is not None, lam


class DecoratedOperations(MultilinearMap):
    """
    m^{b_0..b_k}(x_1..x_k) = sum m(b_0^l0, x_1, b_1^l1, .., x_k, b_k^lk).

    Decorated generators are Gen(name, label, label', deg) over base
    generators Gen(name, X, X', deg) with label -> (X, b).
    """

    def __init__(self, base: MultilinearMap, decorations: Mapping[Hashable, tuple], kmax: int):
        super().__init__(base.degree, base.domain, base.r_linear)
        self.base = base
        self.decorations = dict(decorations)
        self.kmax = kmax

    def undecorate(self, gen: Gen) -> Gen:
        return Gen(gen.name, self.decorations[gen.source][0], self.decorations[gen.target][0], gen.deg)

    def _evaluate(self, gens, start):
        labels = [gens[0].source if gens else start] + [gen.target for gen in gens]
        base_inputs = [Vector.basis(self.undecorate(gen), self.domain.one) for gen in gens]
        cochains = [self.decorations[label][1] for label in labels]
        first, last = labels[0], labels[-1]
        result = Vector()
        for extra in range(self.kmax - len(gens) + 1):
            for counts in compositions_with_zeros(extra, len(labels)):
                if any(n and not cochains[pos] for pos, n in enumerate(counts)):
                    continue
                inputs: list[Vector] = [cochains[0]] * counts[0]
                for pos, vec in enumerate(base_inputs):
                    inputs.append(vec)
                    inputs.extend([cochains[pos + 1]] * counts[pos + 1])
                result += self.base(inputs, self.decorations[first][0])
        return result.relabel(lambda gen: Gen(gen.name, first, last, gen.deg))


def deform(C: AInfCategory, assignments: Mapping[Hashable, tuple], require_common: bool = True) -> AInfCategory:
    """
    The category of weakly unobstructed objects (label -> (X, b)).

    Raises:
        MCInvalid: When some b is not a weak bounding cochain.
        PotentialMismatch: When ``require_common`` is set and the potentials differ.
    """
    potentials = {}
    for label, (X, b) in assignments.items():
        ok, lam = is_weak_mc(C, X, b)
        if not ok:
            raise MCInvalid(f"{label}: b is not a weak bounding cochain at {X}")
        potentials[label] = lam
    labels = sorted(potentials, key=str)
    pairs = [(a, b) for a, b in combinations(labels, 2) if potentials[a] != potentials[b]]
    if require_common and pairs:
        raise PotentialMismatch(pairs)

    homs = {}
    for l1, (X1, _) in assignments.items():
        for l2, (X2, _) in assignments.items():
            homs[(l1, l2)] = [Gen(gen.name, l1, l2, gen.deg) for gen in C.hom(X1, X2)]
    units = {
        label: C.units[X].relabel(lambda gen, label=label: Gen(gen.name, label, label, gen.deg))
        for label, (X, _) in assignments.items()
        if X in C.units
    }
    ops = DecoratedOperations(C.ops, assignments, C.kmax)
    result = AInfCategory(f"{C.name}_b", list(assignments), homs, C.domain, ops, units, C.kmax, C.complete)
    result.potentials = potentials
    return result


# endregion

# region Functors


class AInfFunctor:
    """
    A-infinity functor: object map plus components F_k (k >= 1) of shifted degree 0.
    """

    def __init__(
        self,
        source: AInfCategory,
        target: AInfCategory,
        object_map: Mapping[Hashable, Hashable],
        components: MultilinearMap,
        kmax: Optional[int] = None,
        complete: bool = True,
    ):
        if components.degree:
            raise ValueError("functor components must have shifted degree zero")
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.components = components
        self.kmax = source.kmax if kmax is None else kmax
        self.complete = complete

    def on_object(self, X: Hashable) -> Hashable:
        return self.object_map[X]

    def __call__(self, inputs: Sequence[Vector]) -> Vector:
        return self.components(inputs)


def identity_functor(C: AInfCategory) -> AInfFunctor:
    return AInfFunctor(C, C, {X: X for X in C.objects}, IdentityMap(C.domain), C.kmax, True)


def check_functor(F: AInfFunctor, kmax: Optional[int] = None) -> Report:
    """Residual of F o m^ - m o F^ on every basis tuple of the source."""
    horizon = F.source.check_horizon() if kmax is None else kmax
    report = Report(f"functor {F.source.name} -> {F.target.name}", {"kmax": horizon})
    lhs = Insertion(F.components, F.source.ops)
    rhs = Composite(F.target.ops, F.components, F.on_object)
    residual = _Difference(lhs, rhs)
    residual_check(report, "functor", residual, F.source, horizon)
    return report


class _Difference(MultilinearMap):
    def __init__(self, left: MultilinearMap, right: MultilinearMap):
        super().__init__(left.degree, left.domain, left.r_linear and right.r_linear)
        self.left = left
        self.right = right

    def _evaluate_vectors(self, vectors, start):
        return self.left(vectors, start) - self.right(vectors, start)


# endregion

# region Curved Clifford algebras


def clifford_name(indices: Sequence[int]) -> str:
    return "".join(f"e{i + 1}" for i in indices) or "1"


class CliffordOperations(MultilinearMap):
    """m_0 = w*1 and m_2(x, y) = (-1)^(|x|(|y|+1)) x*y on a Clifford algebra; all other m_k vanish."""

    def __init__(self, obj: Hashable, w: Any, u: Sequence[Any], domain: Any):
        super().__init__(1, domain)
        self.obj = obj
        self.w = domain.convert(w)
        self.u = [domain.convert(value) for value in u]
        self.gens = {}
        for size in range(len(self.u) + 1):
            for subset in combinations(range(len(self.u)), size):
                self.gens[subset] = Gen(clifford_name(subset), obj, obj, size % 2)
        self.by_name = {gen.name: subset for subset, gen in self.gens.items()}

    def product(self, left: Gen, right: Gen) -> Vector:
        sgn, word = bubble_sign(list(self.by_name[left.name]) + list(self.by_name[right.name]))
        coeff = self.domain.one * sgn
        subset = []
        pos = 0
        while pos < len(word):
            if pos + 1 < len(word) and word[pos] == word[pos + 1]:
                coeff = coeff * self.u[word[pos]]
                pos += 2
            else:
                subset.append(word[pos])
                pos += 1
        if not coeff:
            return Vector()
        return Vector({self.gens[tuple(subset)]: coeff})

    def _evaluate(self, gens, start):
        if not gens:
            return Vector({self.gens[()]: self.w}) if self.w else Vector()
        if len(gens) == 2:
            x, y = gens
            return self.product(x, y).scale(koszul(x.deg, y.deg + 1))
        return Vector()


def curved_clifford(w: Any, u: Sequence[Any], domain: Any, name: str = "L") -> AInfCategory:
    """
    One object whose endomorphisms form the Clifford algebra on odd e_1..e_n
    with e_i^2 = u_i, curvature m_0 = w*1 and m_2 the signed product.
    """
    ops = CliffordOperations(name, w, u, domain)
    basis = list(ops.gens.values())
    unit = Vector.basis(ops.gens[()], domain.one)
    return AInfCategory(f"Cl({name})", [name], {(name, name): basis}, domain, ops, {name: unit}, 2, True)


# endregion
