"""Mirrorforge Hochschild Complexes

Hochschild cochains and chains of a finite A-infinity category with diagonal
coefficients, the Getzler operations and the Morita comparison maps.

A cochain is a MultilinearMap on composable tuples with values in the category
itself; its ``degree`` is the shifted degree. Operations build new maps lazily
and are exact on every explicit tuple, so truncation only enters through
``hh_cohomology`` and through table cochains of bounded length.

Features:
    - hochschild_diff (b*), braces, gerstenhaber_Mk, cup
    - hh_cohomology with stabilization report and representatives
    - HochschildChain, chain_diff, cap, is_boundary
    - L_M1 / R_M1: left and right actions of cochains on a bimodule

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
import warnings
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterator, Mapping, Optional, Sequence

from mirrorforge.core.exceptions import NotStabilized, TruncationOverflow
from mirrorforge.core.linalg import CoordinateSpace, column_matrix, extend_span, nullspace, rank, require_field, solve
from mirrorforge.core.multilinear import (
    Gen,
    LinearCombination,
    MultilinearMap,
    TableMap,
    Vector,
    ZeroMap,
    object_at,
)
from mirrorforge.core.report import Report
from mirrorforge.core.signs import koszul, parity, shifted, sign
from mirrorforge.structures.ainfty import AInfCategory
from mirrorforge.structures.bimod import AInfBimodule, BimoduleMap, Premorphism

__all__ = [
    "HochschildCochain",
    "Brace",
    "LengthBounded",
    "hochschild_diff",
    "brace",
    "gerstenhaber_Mk",
    "cup",
    "unit_cochain",
    "scalar_cochain",
    "basis_cochain",
    "cochain_basis",
    "HHResult",
    "hh_cohomology",
    "HochschildChain",
    "cyclic_words",
    "chain_diff",
    "cap",
    "is_boundary",
    "LeftAction",
    "RightAction",
    "L_M1",
    "R_M1",
    "cochain_residual",
]

LOGGER = logging.getLogger(__name__)


# region Cochains


class HochschildCochain:
    """
    Cochain of a category with values in its diagonal bimodule.

    Attributes:
        category (AInfCategory): base category.
        map (MultilinearMap): the components; degree is the shifted degree.
        name (str): label for reports.
    """

    def __init__(self, category: AInfCategory, components: MultilinearMap, name: str = "phi"):
        self.category = category
        self.map = components
        self.name = name

    @property
    def degree(self) -> int:
        return self.map.degree

    @property
    def parity(self) -> int:
        """Unshifted degree of the Hochschild class."""
        return shifted(self.map.degree)

    def __call__(self, inputs: Sequence[Vector], start: Hashable = None) -> Vector:
        return self.map(inputs, start)

    def _combine(self, terms, name) -> "HochschildCochain":
        return HochschildCochain(self.category, LinearCombination(terms, self.category.domain, self.degree), name)

    def __add__(self, other: "HochschildCochain") -> "HochschildCochain":
        return self._combine([(1, self.map), (1, other.map)], f"{self.name}+{other.name}")

    def __sub__(self, other: "HochschildCochain") -> "HochschildCochain":
        return self._combine([(1, self.map), (-1, other.map)], f"{self.name}-{other.name}")

    def scale(self, coeff: Any) -> "HochschildCochain":
        return self._combine([(coeff, self.map)], f"{coeff}*{self.name}")

    def __repr__(self) -> str:
        return f"HochschildCochain({self.name!r}, degree={self.degree})"


class LengthBounded(MultilinearMap):
    """A cochain known only up to length ``lmax``; evaluating beyond raises TruncationOverflow."""

    def __init__(self, inner: MultilinearMap, lmax: int):
        super().__init__(inner.degree, inner.domain, inner.r_linear)
        self.inner = inner
        self.lmax = lmax

    def _evaluate(self, gens, start):
        if len(gens) > self.lmax:
            raise TruncationOverflow(f"cochain evaluated on length {len(gens)} beyond lmax={self.lmax}")
        return self.inner.evaluate(gens, start)

    def _evaluate_vectors(self, vectors, start):
        if len(vectors) > self.lmax:
            raise TruncationOverflow(f"cochain evaluated on length {len(vectors)} beyond lmax={self.lmax}")
        return self.inner(vectors, start)


class Brace(MultilinearMap):
    """
    outer{inner_1, .., inner_k}: the inners inserted in order into disjoint blocks,

        sum (-1)^(sum_l |inner_l| p(x's before block l)) outer(.., inner_1(..), .., inner_k(..), ..)
    """

    def __init__(self, outer: MultilinearMap, inners: Sequence[MultilinearMap]):
        inners = list(inners)
        degree = outer.degree + sum(inner.degree for inner in inners)
        r_linear = outer.r_linear and all(inner.r_linear for inner in inners)
        super().__init__(degree, outer.domain, r_linear)
        self.outer = outer
        self.inners = inners

    def _evaluate_vectors(self, vectors, start):
        result = Vector()
        first = object_at(vectors, 0, start)
        count = len(vectors)
        prefix = [0]
        for vec in vectors:
            prefix.append((prefix[-1] + vec.p) % 2)

        def place(pos: int, index: int, acc: list, exponent: int):
            if index == len(self.inners):
                value = self.outer(acc + list(vectors[pos:]), first)
                result.add_scaled(value, sign(exponent))
                return
            inner = self.inners[index]
            for i in range(pos, count + 1):
                here = object_at(vectors, i, start)
                for j in range(i, count + 1):
                    value = inner(vectors[i:j], here)
                    if value:
                        place(j, index + 1, acc + list(vectors[pos:i]) + [value],
                              exponent + inner.degree * prefix[i])

        place(0, 0, [], 0)
        return result


def brace(outer: MultilinearMap, *inners: MultilinearMap) -> Brace:
    return Brace(outer, inners)


def hochschild_diff(phi: HochschildCochain) -> HochschildCochain:
    """b* phi = m{phi} - (-1)^|phi| phi{m}."""
    C = phi.category
    components = LinearCombination(
        [(1, Brace(C.ops, [phi.map])), (-sign(phi.degree), Brace(phi.map, [C.ops]))], C.domain, phi.degree + 1
    )
    return HochschildCochain(C, components, f"b*({phi.name})")


def gerstenhaber_Mk(*phis: HochschildCochain, category: Optional[AInfCategory] = None) -> HochschildCochain:
    """M^0 = 0, M^1 = b*, M^k = m{phi_1, .., phi_k} for k >= 2."""
    C = phis[0].category if phis else category
    if not phis:
        return HochschildCochain(C, ZeroMap(1, C.domain), "M0")
    if len(phis) == 1:
        return hochschild_diff(phis[0])
    return HochschildCochain(C, Brace(C.ops, [phi.map for phi in phis]), f"M{len(phis)}")


def cup(phi: HochschildCochain, psi: HochschildCochain) -> HochschildCochain:
    """phi cup psi = (-1)^(|phi| + 1) M^2(phi, psi), |phi| the shifted degree."""
    product = gerstenhaber_Mk(phi, psi)
    return HochschildCochain(
        phi.category,
        LinearCombination([(sign(phi.degree + 1), product.map)], phi.category.domain, product.degree),
        f"{phi.name}u{psi.name}",
    )


def scalar_cochain(C: AInfCategory, scalars: Mapping[Hashable, Any], name: str = "r") -> HochschildCochain:
    """Length-zero cochain X -> r_X * e_X (objects without a scalar map to zero)."""
    curvature = {X: C.units[X].scale(C.domain.convert(r)) for X, r in scalars.items() if r}
    return HochschildCochain(C, TableMap({}, curvature, 1, C.domain), name)


def unit_cochain(C: AInfCategory) -> HochschildCochain:
    return scalar_cochain(C, {X: 1 for X in C.units}, "e")


def cochain_basis(C: AInfCategory, k: int) -> list[Gen]:
    """
    Basis of length-k cochains, one element per (tuple, output generator).

    Each element is encoded as Gen((tuple, output), X_0, X_k, shifted degree).
    """
    basis = []
    for X, gens in C.basis_tuples(k):
        end = gens[-1].target if gens else X
        for out in C.hom(X, end):
            basis.append(Gen((gens, out), X, end, (shifted(out.deg) + parity(gens)) % 2))
    return basis


def basis_cochain(C: AInfCategory, element: Gen) -> HochschildCochain:
    gens, out = element.name
    value = Vector.basis(out, C.domain.one)
    if gens:
        table = TableMap({gens: value}, None, element.deg, C.domain)
    else:
        table = TableMap({}, {element.source: value}, element.deg, C.domain)
    return HochschildCochain(C, table, str(out))


def _coordinates(phi: HochschildCochain, lengths: Sequence[int]) -> Vector:
    """The values of phi on all tuples of the given lengths, as a vector over cochain basis elements."""
    C = phi.category
    result = Vector()
    for k in lengths:
        for X, gens in C.basis_tuples(k):
            end = gens[-1].target if gens else X
            for out, coeff in phi.map.evaluate(gens, X).items():
                result.add_term(Gen((gens, out), X, end, (shifted(out.deg) + parity(gens)) % 2), coeff)
    return result


def cochain_residual(phi: HochschildCochain, lmax: int) -> Optional[dict]:
    """First tuple of length <= lmax on which phi is nonzero, or None."""
    C = phi.category
    for k in range(lmax + 1):
        for X, gens in C.basis_tuples(k):
            value = phi.map.evaluate(gens, X)
            if value:
                return {"inputs": [str(g) for g in gens], "object": str(X), "value": repr(value)}
    return None


# endregion

# region Cohomology


@dataclass
class HHResult:
    """
    Hochschild cohomology up to a length bound.

    Attributes:
        dims (dict): {unshifted parity: dimension}.
        previous (dict): the same at lmax - 1.
        per_length (dict): {length: {parity: dimension}} when the complex is graded by length.
        stable (bool): dims agree with previous.
        representatives (dict): {parity: [cochain vectors]}.
        lmax (int): the length bound.
    """

    dims: dict
    previous: dict
    stable: bool
    lmax: int
    per_length: dict = field(default_factory=dict)
    representatives: dict = field(default_factory=dict)

    def to_report(self, name: str) -> Report:
        report = Report(f"Hochschild cohomology of {name}", {"lmax": self.lmax})
        report.add("stable", self.stable, f"HH at lmax={self.lmax}: {self.dims}, at lmax-1: {self.previous}")
        report.data["HH"] = {f"HH^{p}": dim for p, dim in sorted(self.dims.items())}
        report.data["previous"] = {f"HH^{p}": dim for p, dim in sorted(self.previous.items())}
        if self.per_length:
            report.data["per_length"] = {str(k): v for k, v in sorted(self.per_length.items())}
        report.data["representatives"] = {
            f"HH^{p}": [_describe(vec) for vec in vecs] for p, vecs in sorted(self.representatives.items())
        }
        if not self.stable:
            report.warnings.append(f"dimensions not stabilized at lmax={self.lmax}")
        return report


def _describe(vec: Vector) -> list:
    return [
        {"inputs": [str(g) for g in gen.name[0]], "output": str(gen.name[1]), "coeff": str(coeff)}
        for gen, coeff in vec.sorted_items()
    ]


def _columns(C: AInfCategory, basis: Sequence[Gen], lengths: Sequence[int]) -> list[Vector]:
    return [_coordinates(hochschild_diff(basis_cochain(C, element)), lengths) for element in basis]


def _split(basis: Sequence[Gen]) -> dict[int, list[Gen]]:
    """Basis elements by shifted degree."""
    parts = {0: [], 1: []}
    for element in basis:
        parts[element.deg].append(element)
    return parts


def _graded_by_length(C: AInfCategory) -> bool:
    """True when only m_2 is nonzero (b* raises length by exactly one)."""
    for k in range(C.kmax + 1):
        if k == 2:
            continue
        for X, gens in C.basis_tuples(k):
            if C.ops.evaluate(gens, X):
                return False
    return True


def _kernel(elements: Sequence[Gen], columns: Sequence[Vector], target: CoordinateSpace, domain: Any) -> list[Vector]:
    if not elements:
        return []
    source = CoordinateSpace(elements)
    return [source.vector(coords) for coords in nullspace(column_matrix(columns, target, domain))]


def _homology(cycles: dict, boundaries: dict, space: CoordinateSpace, domain: Any) -> tuple[dict, dict]:
    dims, reps = {}, {}
    for p in (0, 1):
        b_dim = rank(boundaries[p], space, domain) if boundaries[p] else 0
        dims[p] = len(cycles[p]) - b_dim
        chosen = extend_span(boundaries[p], cycles[p], space, domain) if cycles[p] else []
        reps[p] = [cycles[p][i] for i in chosen]
    return dims, reps


def _per_length(C: AInfCategory, lmax: int) -> tuple[dict, dict]:
    per_length, reps = {}, {0: [], 1: []}
    incoming = {0: [], 1: []}
    bases = {k: cochain_basis(C, k) for k in range(lmax + 1)}
    for k in range(lmax):
        target = CoordinateSpace(bases[k + 1])
        cycles, outgoing = {}, {0: [], 1: []}
        for p, elements in _split(bases[k]).items():
            columns = _columns(C, elements, [k + 1])
            cycles[p] = _kernel(elements, columns, target, C.domain)
            outgoing[(p + 1) % 2] = [col for col in columns if col]
        per_length[k], found = _homology(cycles, incoming, CoordinateSpace(bases[k]), C.domain)
        for p in (0, 1):
            reps[p].extend(found[p])
        incoming = outgoing
    return per_length, reps


def _quotient_complex(C: AInfCategory, length: int) -> tuple[dict, dict]:
    lengths = list(range(length + 1))
    basis = [element for k in lengths for element in cochain_basis(C, k)]
    space = CoordinateSpace(basis)
    cycles, boundaries = {}, {0: [], 1: []}
    for p, elements in _split(basis).items():
        columns = _columns(C, elements, lengths)
        cycles[p] = _kernel(elements, columns, space, C.domain)
        boundaries[(p + 1) % 2] = [col for col in columns if col]
    return _homology(cycles, boundaries, space, C.domain)


def hh_cohomology(C: AInfCategory, lmax: int) -> HHResult:
    """
    Hochschild cohomology HH*(C, C) by exact linear algebra, with a stabilization check.

    Graded-by-length categories (only m_2) use the length-k cohomology for k < lmax;
    otherwise the quotient complex of cochains of length <= lmax is used.
    Dimensions are indexed by the unshifted parity of the class.

    Raises:
        CoefficientNotField: Over non-field coefficients.
        TruncationOverflow: For curved categories.
    """
    require_field(C.domain)
    if C.curved:
        raise TruncationOverflow(f"{C.name} is curved; its Hochschild complex has no length filtration")
    if lmax < 1:
        raise ValueError("lmax must be at least 1")
    LOGGER.info("Hochschild cohomology of %s up to length %d", C.name, lmax)
    if _graded_by_length(C):
        per_length, reps = _per_length(C, lmax)
        dims = {shifted(p): sum(per_length[k][p] for k in range(lmax)) for p in (0, 1)}
        previous = {shifted(p): sum(per_length[k][p] for k in range(lmax - 1)) for p in (0, 1)}
        per_length = {k: {shifted(p): d for p, d in v.items()} for k, v in per_length.items()}
    else:
        raw, reps = _quotient_complex(C, lmax)
        dims = {shifted(p): d for p, d in raw.items()}
        before, _ = _quotient_complex(C, lmax - 1)
        previous = {shifted(p): d for p, d in before.items()}
        per_length = {}
    stable = dims == previous
    if not stable:
        warnings.warn(NotStabilized(f"HH of {C.name} changed between lmax={lmax - 1} and lmax={lmax}"))
    representatives = {shifted(p): vecs for p, vecs in reps.items()}
    return HHResult(dims, previous, stable, lmax, per_length, representatives)


# endregion

# region Chains


class HochschildChain(dict):
    """
    Linear combination of cyclic words (a_0, a_1, .., a_n) with a_0 in the module slot.

    Keys are tuples of generators forming a closed composable cycle.
    """

    def add_term(self, word: tuple, coeff: Any) -> "HochschildChain":
        value = self.get(word)
        value = coeff if value is None else value + coeff
        if value:
            self[word] = value
        else:
            self.pop(word, None)
        return self

    def add_scaled(self, other: "HochschildChain", coeff: Any = None) -> "HochschildChain":
        for word, value in other.items():
            self.add_term(word, value if coeff is None else value * coeff)
        return self

    def __sub__(self, other: "HochschildChain") -> "HochschildChain":
        result = HochschildChain(self)
        for word, value in other.items():
            result.add_term(word, -value)
        return result

    def scale(self, coeff: Any) -> "HochschildChain":
        return HochschildChain({word: value * coeff for word, value in self.items() if value * coeff})

    @classmethod
    def word(cls, letters: Sequence[Gen], coeff: Any) -> "HochschildChain":
        letters = tuple(letters)
        if letters[-1].target != letters[0].source or any(
            a.target != b.source for a, b in zip(letters, letters[1:])
        ):
            raise ValueError("a Hochschild chain must be a closed composable cycle")
        return cls({letters: coeff})


def cyclic_words(C: AInfCategory, n: int) -> Iterator[tuple[Gen, ...]]:
    """Closed composable words (a_0, .., a_n)."""
    for X, gens in C.basis_tuples(n + 1):
        if gens[-1].target == X:
            yield gens


def _put(result: HochschildChain, head: Vector, tail: Sequence[Gen], coeff: Any):
    for gen, value in head.items():
        result.add_term((gen,) + tuple(tail), value * coeff)


def chain_diff(C: AInfCategory, psi: HochschildChain) -> HochschildChain:
    """
    Cyclic bar differential on chains of an uncurved category.

    Blocks through a_0 contribute (-1)^(p(a_{l+1..n}) p(a_0..a_l)) m(a_{l+1..n}, a_0, .., a_k) (x) a_{k+1..l};
    interior blocks contribute (-1)^(p(a_0..a_i)) a_0 (x) .. (x) m(a_{i+1..j}) (x) ...
    """
    if C.curved:
        raise TruncationOverflow(f"{C.name} is curved; the chain differential is not defined here")
    one = C.domain.one
    result = HochschildChain()
    for word, coeff in psi.items():
        n = len(word) - 1
        vecs = [Vector.basis(g, one) for g in word]
        for l in range(n + 1):
            for k in range(l + 1):
                rotated = vecs[l + 1 :] + vecs[: k + 1]
                head = C.ops(rotated)
                if head:
                    exponent = parity(word[l + 1 :]) * parity(word[: l + 1])
                    _put(result, head, word[k + 1 : l + 1], coeff * sign(exponent))
        for i in range(n + 1):
            prefix = parity(word[: i + 1])
            for j in range(i + 1, n + 1):
                inner = C.ops(vecs[i + 1 : j + 1])
                for gen, value in inner.items():
                    result.add_term(word[: i + 1] + (gen,) + word[j + 1 :], value * coeff * sign(prefix))
    return result


def cap(phi: HochschildCochain, psi: HochschildChain) -> HochschildChain:
    """
    phi cap psi: sum over 0 <= k <= l <= i <= j <= n of

        (-1)^(S1 + S2) m(a_{l+1..i}, phi(a_{i+1..j}), a_{j+1..n}, a_0, a_1..a_k) (x) a_{k+1..l}

    with S1 = |phi| p(a_0..a_i) and S2 = T p(a_0..a_l), T the parity of the rotated block.
    """
    C = phi.category
    one = C.domain.one
    result = HochschildChain()
    for word, coeff in psi.items():
        n = len(word) - 1
        vecs = [Vector.basis(g, one) for g in word]
        for i in range(n + 1):
            s1 = phi.degree * parity(word[: i + 1])
            here = word[i].target
            for j in range(i, n + 1):
                middle = phi.map(vecs[i + 1 : j + 1], here)
                if not middle:
                    continue
                for l in range(i + 1):
                    for k in range(l + 1):
                        inputs = vecs[l + 1 : i + 1] + [middle] + vecs[j + 1 :] + vecs[: k + 1]
                        head = C.ops(inputs)
                        if not head:
                            continue
                        block = parity(word[l + 1 : i + 1]) + phi.degree + parity(word[i + 1 : j + 1])
                        block += parity(word[j + 1 :])
                        s2 = block * parity(word[: l + 1])
                        _put(result, head, word[k + 1 : l + 1], coeff * sign(s1 + s2))
    return result


def is_boundary(C: AInfCategory, psi: HochschildChain) -> bool:
    """Whether psi is chain_diff of some chain of length at most one more than psi's longest word."""
    require_field(C.domain)
    if not psi:
        return True
    top = max(len(word) for word in psi)
    sources = [word for n in range(top + 1) for word in cyclic_words(C, n)]
    columns = [chain_diff(C, HochschildChain({word: C.domain.one})) for word in sources]
    keys = list(dict.fromkeys([word for col in columns for word in col] + list(psi)))
    encode = {word: Gen(word, None, None, 0) for word in keys}
    space = CoordinateSpace(list(encode.values()))
    as_vectors = [Vector({encode[w]: v for w, v in col.items()}) for col in columns]
    target = Vector({encode[w]: v for w, v in psi.items()})
    return solve(as_vectors, target, space, C.domain) is not None


# endregion

# region Morita actions


class LeftAction(BimoduleMap):
    """L^1(phi)(a, m, w) = sum (-1)^(|phi| p(A)) mu(A, phi(B), C, m, w) over splittings a = A B C."""

    def __init__(self, phi: HochschildCochain, M: AInfBimodule):
        super().__init__(phi.degree + 1, M.domain, phi.map.r_linear and M.mu.r_linear)
        self.phi = phi
        self.M = M

    def _evaluate_vectors(self, left, module, right):
        result = Vector()
        prefix = 0
        for i in range(len(left) + 1):
            if i:
                prefix += left[i - 1].p
            here = left[i].ends()[0] if i < len(left) else module.ends()[0]
            for j in range(i, len(left) + 1):
                value = self.phi.map(left[i:j], here)
                if value:
                    result.add_scaled(self.M.mu(left[:i] + [value] + left[j:], module, right),
                                      koszul(self.phi.degree, prefix))
        return result


class RightAction(BimoduleMap):
    """R^1(phi)(a, m, w) = -sum (-1)^(|phi|(p(a) + p(m) + p(W1))) mu(a, m, W1, phi(W2), W3)."""

    def __init__(self, phi: HochschildCochain, M: AInfBimodule):
        super().__init__(phi.degree + 1, M.domain, phi.map.r_linear and M.mu.r_linear)
        self.phi = phi
        self.M = M

    def _evaluate_vectors(self, left, module, right):
        result = Vector()
        prefix = parity(left) + module.p
        for i in range(len(right) + 1):
            if i:
                prefix += right[i - 1].p
            here = module.ends()[1] if i == 0 else right[i - 1].ends()[1]
            for j in range(i, len(right) + 1):
                value = self.phi.map(right[i:j], here)
                if value:
                    result.add_scaled(self.M.mu(left, module, right[:i] + [value] + right[j:]),
                                      -koszul(self.phi.degree, prefix))
        return result


def L_M1(phi: HochschildCochain, M: AInfBimodule) -> Premorphism:
    """Left action of a cochain of the left category on M."""
    if phi.category.objects != M.left.objects:
        raise ValueError("cochain must live on the left category of the bimodule")
    return Premorphism(M, M, LeftAction(phi, M), f"L({phi.name})")


def R_M1(phi: HochschildCochain, M: AInfBimodule) -> Premorphism:
    """Right action of a cochain of the right category on M."""
    if phi.category.objects != M.right.objects:
        raise ValueError("cochain must live on the right category of the bimodule")
    return Premorphism(M, M, RightAction(phi, M), f"R({phi.name})")


# endregion
