"""Mirrorforge A-infinity Bimodules

Bimodules over pairs of A-infinity categories and their premorphism calculus.

A module generator m in M(V, W) is a Gen with source V (an object of the left
category) and target W (an object of the right category), so that an input
(v_1, .., v_r, m, w_1, .., w_s) is a composable path. Structure maps and
premorphisms are BimoduleMap instances evaluated on such paths.

Features:
    - AInfBimodule, check_bimodule
    - Premorphism, premorphism_diff, compose, identity_premorphism
    - diagonal, base_change, tensor (bar-length filtered) and the multiplication premorphism
    - h0_is_quasi_iso: cohomology of mu^{0|1|0} by exact linear algebra

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from abc import ABC
from itertools import product
from typing import Any, Callable, Hashable, Iterator, Mapping, Optional, Sequence

import numpy as np

from mirrorforge.core.exceptions import ArityOverflow, InputError, TruncationOverflow
from mirrorforge.core.linalg import CoordinateSpace, column_matrix, nullspace, rank, require_field
from mirrorforge.core.multilinear import Gen, Vector, basis_vectors, composable, compositions, split_blocks
from mirrorforge.core.report import Report
from mirrorforge.core.signs import koszul, parity, shifted, sign
from mirrorforge.structures.ainfty import AInfCategory, AInfFunctor

__all__ = [
    "BimoduleMap",
    "TableBimoduleMap",
    "IdentityBimoduleMap",
    "BimoduleSum",
    "HatComposition",
    "BarComposition",
    "AInfBimodule",
    "Premorphism",
    "check_bimodule",
    "diagonal",
    "base_change",
    "tensor",
    "tensor_word",
    "multiplication_premorphism",
    "premorphism_diff",
    "compose",
    "identity_premorphism",
    "premorphism_residual",
    "h0_is_quasi_iso",
    "random_premorphism",
    "paths_to",
    "paths_from",
    "bimodule_residual",
]

LOGGER = logging.getLogger(__name__)

Path = tuple[Gen, ...]


def paths_to(C: AInfCategory, X: Hashable, k: int) -> Iterator[Path]:
    """Composable paths of length k in C ending at X."""
    if k == 0:
        yield ()
        return
    for (A, B), gens in C.homs.items():
        if B != X:
            continue
        for gen in gens:
            for rest in paths_to(C, A, k - 1):
                yield rest + (gen,)


def paths_from(C: AInfCategory, Y: Hashable, k: int) -> Iterator[Path]:
    """Composable paths of length k in C starting at Y."""
    if k == 0:
        yield ()
        return
    for (A, B), gens in C.homs.items():
        if A != Y:
            continue
        for gen in gens:
            for rest in paths_from(C, B, k - 1):
                yield (gen,) + rest


# region Bimodule maps


class BimoduleMap(ABC):
    """
    Multilinear map on inputs (v_1..v_r | m | w_1..w_s), of shifted degree ``degree``.
    """

    def __init__(self, degree: int = 0, domain: Any = None, r_linear: bool = True):
        self._degree = degree % 2
        self._domain = domain
        self._r_linear = r_linear
        self._cache: dict = {}

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def domain(self) -> Any:
        return self._domain

    @property
    def r_linear(self) -> bool:
        return self._r_linear

    def __call__(self, left: Sequence[Vector], module: Vector, right: Sequence[Vector]) -> Vector:
        left, right = list(left), list(right)
        if not module or any(not vec for vec in left + right):
            return Vector()
        result = Vector()
        if not self._r_linear:
            inputs = left + [module] + right
            for parts in product(*(list(vec.homogeneous_parts().values()) for vec in inputs)):
                if all(a.ends()[1] == b.ends()[0] for a, b in zip(parts, parts[1:])):
                    parts = list(parts)
                    result += self._evaluate_vectors(parts[: len(left)], parts[len(left)], parts[len(left) + 1 :])
            return result
        for terms in product(*(list(vec.items()) for vec in left + [module] + right)):
            gens = [gen for gen, _ in terms]
            output = self.evaluate(tuple(gens[: len(left)]), gens[len(left)], tuple(gens[len(left) + 1 :]))
            if not output:
                continue
            coeff = None
            for _, value in terms:
                coeff = value if coeff is None else coeff * value
            result.add_scaled(output, coeff)
        return result

    def evaluate(self, left: Path, module: Gen, right: Path) -> Vector:
        key = (tuple(left), module, tuple(right))
        if key in self._cache:
            return self._cache[key]
        value = self._evaluate(*key) if composable(key[0] + (module,) + key[2]) else Vector()
        self._cache[key] = value
        return value

    def _evaluate(self, left: Path, module: Gen, right: Path) -> Vector:
        one = self._domain.one
        return self._evaluate_vectors(basis_vectors(left, one), Vector.basis(module, one), basis_vectors(right, one))

    def _evaluate_vectors(self, left: list, module: Vector, right: list) -> Vector:
        raise NotImplementedError(f"{type(self).__name__} is only defined on generators")


class TableBimoduleMap(BimoduleMap):
    """Explicit values {(left, m, right): Vector}."""

    def __init__(self, table: Mapping[tuple, Vector], degree: int, domain: Any):
        super().__init__(degree, domain)
        self.table = {(tuple(l), m, tuple(r)): value for (l, m, r), value in table.items() if value}

    def _evaluate(self, left, module, right):
        return Vector(self.table.get((left, module, right), Vector()))


class IdentityBimoduleMap(BimoduleMap):
    def __init__(self, domain: Any):
        super().__init__(0, domain)

    def _evaluate(self, left, module, right):
        if left or right:
            return Vector()
        return Vector.basis(module, self._domain.one)


class BimoduleSum(BimoduleMap):
    """sum coeff * map over (coeff, map) pairs of equal degree."""

    def __init__(self, terms: Sequence[tuple[Any, BimoduleMap]], domain: Any = None, degree: Optional[int] = None):
        terms = [(coeff, inner) for coeff, inner in terms if coeff]
        if degree is None:
            degree = terms[0][1].degree if terms else 0
        if domain is None and terms:
            domain = terms[0][1].domain
        super().__init__(degree, domain, all(inner.r_linear for _, inner in terms))
        self.terms = terms

    def _evaluate(self, left, module, right):
        result = Vector()
        for coeff, inner in self.terms:
            result.add_scaled(inner.evaluate(left, module, right), coeff)
        return result

    def _evaluate_vectors(self, left, module, right):
        result = Vector()
        for coeff, inner in self.terms:
            result.add_scaled(inner(left, module, right), coeff)
        return result


class HatComposition(BimoduleMap):
    """
    outer o inner^:

        sum (-1)^(|inner| p(v_1..v_i)) outer(v_1..v_i, inner(v_{i+1}..v_r, m, w_1..w_j), w_{j+1}..w_s)
    """

    def __init__(self, outer: BimoduleMap, inner: BimoduleMap):
        super().__init__(outer.degree + inner.degree, outer.domain, outer.r_linear and inner.r_linear)
        self.outer = outer
        self.inner = inner

    def _evaluate_vectors(self, left, module, right):
        result = Vector()
        prefix = 0
        for i in range(len(left) + 1):
            if i:
                prefix += left[i - 1].p
            sgn = koszul(self.inner.degree, prefix)
            for j in range(len(right) + 1):
                middle = self.inner(left[i:], module, right[:j])
                if middle:
                    result.add_scaled(self.outer(left[:i], middle, right[j:]), sgn)
        return result


class BarComposition(BimoduleMap):
    """
    F applied after the category operations on blocks of the left and right inputs,
    empty blocks (curvature) included:

        sum (-1)^(p(v_1..v_i)) F(v_1..v_i, m_C(v_{i+1}..v_j), .., m, w)
      + sum (-1)^(p(v) + p(m) + p(w_1..w_i)) F(v, m, w_1..w_i, m_D(w_{i+1}..w_j), ..)
    """

    def __init__(self, functional: BimoduleMap, left_ops, right_ops):
        super().__init__(functional.degree + 1, functional.domain, functional.r_linear)
        self.functional = functional
        self.left_ops = left_ops
        self.right_ops = right_ops

    def _evaluate_vectors(self, left, module, right):
        result = Vector()
        r, s = len(left), len(right)
        prefix = 0
        for i in range(r + 1):
            if i:
                prefix += left[i - 1].p
            here = left[i].ends()[0] if i < r else module.ends()[0]
            for j in range(i, r + 1):
                inner = self.left_ops(left[i:j], here)
                if inner:
                    value = self.functional(left[:i] + [inner] + left[j:], module, right)
                    result.add_scaled(value, sign(prefix))
        # module.p is the shifted |m|' (see signs.py), matching the sign of mu^{r|1|s} on the diagonal
        prefix = parity(left) + module.p
        for i in range(s + 1):
            if i:
                prefix += right[i - 1].p
            here = module.ends()[1] if i == 0 else right[i - 1].ends()[1]
            for j in range(i, s + 1):
                inner = self.right_ops(right[i:j], here)
                if inner:
                    value = self.functional(left, module, right[:i] + [inner] + right[j:])
                    result.add_scaled(value, sign(prefix))
        return result


# endregion

# region Bimodules


class AInfBimodule:
    """
    A C-D bimodule.

    Args:
        name (str): label used in reports.
        left (AInfCategory): acting on the left.
        right (AInfCategory): acting on the right.
        spaces: {(V, W): [Gen]} based module spaces.
        mu (BimoduleMap): structure maps, shifted degree 1.
        kmax (int): total arity bound r + s + 1 of the structure maps.
        complete (bool): structure maps vanish beyond kmax.
        filtration (callable, optional): length of a generator, for bar-filtered bimodules.
        bound (int, optional): the bar-length bound matching ``filtration``.
    """

    def __init__(
        self,
        name: str,
        left: AInfCategory,
        right: AInfCategory,
        spaces: Mapping[tuple, Sequence[Gen]],
        mu: BimoduleMap,
        kmax: int,
        complete: bool = True,
        filtration: Optional[Callable[[Gen], int]] = None,
        bound: Optional[int] = None,
    ):
        if mu.degree != 1:
            raise ValueError("bimodule structure maps must have shifted degree 1")
        self.name = name
        self.left = left
        self.right = right
        self.spaces = {pair: list(gens) for pair, gens in spaces.items() if gens}
        self.mu = mu
        self.kmax = kmax
        self.complete = complete
        self.filtration = filtration
        self.bound = bound

    @property
    def domain(self):
        return self.mu.domain

    @property
    def generators(self) -> list[Gen]:
        return [gen for gens in self.spaces.values() for gen in gens]

    def space(self, V: Hashable, W: Hashable) -> list[Gen]:
        return self.spaces.get((V, W), [])

    def basis(self, gen: Gen) -> Vector:
        return Vector.basis(gen, self.domain.one)

    def check_horizon(self) -> int:
        """Largest r + s on which the bimodule relation is fully determined."""
        return 2 * self.kmax - 2 if self.complete else self.kmax - 1

    def tuples(self, r: int, s: int) -> Iterator[tuple[Path, Gen, Path]]:
        for m in self.generators:
            for left in paths_to(self.left, m.source, r):
                for right in paths_from(self.right, m.target, s):
                    yield left, m, right

    def __repr__(self) -> str:
        return f"AInfBimodule({self.name!r}, {len(self.generators)} generators)"


class Premorphism:
    """
    Premorphism of bimodules: components F^{r|1|s} of shifted degree ``degree``.
    """

    def __init__(self, source: AInfBimodule, target: AInfBimodule, components: BimoduleMap, name: str = "F"):
        self.source = source
        self.target = target
        self.components = components
        self.name = name

    @property
    def degree(self) -> int:
        return self.components.degree

    def __call__(self, left: Sequence[Vector], module: Vector, right: Sequence[Vector]) -> Vector:
        return self.components(left, module, right)

    def evaluate(self, left: Path, module: Gen, right: Path) -> Vector:
        return self.components.evaluate(left, module, right)

    def __add__(self, other: "Premorphism") -> "Premorphism":
        return Premorphism(self.source, self.target, BimoduleSum([(1, self.components), (1, other.components)]))

    def __sub__(self, other: "Premorphism") -> "Premorphism":
        return Premorphism(self.source, self.target, BimoduleSum([(1, self.components), (-1, other.components)]))

    def __neg__(self) -> "Premorphism":
        return Premorphism(self.source, self.target, BimoduleSum([(-1, self.components)]), f"-{self.name}")

    def scale(self, coeff: Any) -> "Premorphism":
        scaled = BimoduleSum([(coeff, self.components)], self.components.domain, self.degree)
        return Premorphism(self.source, self.target, scaled, self.name)


def bimodule_residual(
    report: Report, name: str, residual: BimoduleMap, M: AInfBimodule, rmax: int, smax: int,
    total: Optional[int] = None, smin: int = 0,
) -> bool:
    """Add one check per (r, s) with s >= smin to the report; stop at the first nonzero residual."""
    for r in range(rmax + 1):
        for s in range(smin, smax + 1):
            if total is not None and r + s > total:
                continue
            count = 0
            for left, m, right in M.tuples(r, s):
                count += 1
                value = residual.evaluate(left, m, right)
                if value:
                    witness = {"left": [str(g) for g in left], "module": str(m), "right": [str(g) for g in right],
                               "residual": repr(value)}
                    report.add(f"{name}[{r}|1|{s}]", False, "nonzero residual", witness)
                    return False
            report.add(f"{name}[{r}|1|{s}]", True, f"{count} tuples")
    return True


def premorphism_residual(F: Premorphism, rmax: int, smax: int, name: Optional[str] = None) -> Report:
    """Report whether F^{r|1|s} vanishes for r <= rmax, s <= smax."""
    label = name or F.name
    report = Report(f"vanishing of {label}", {"rmax": rmax, "smax": smax})
    bimodule_residual(report, label, F.components, F.source, rmax, smax)
    return report


def check_bimodule(M: AInfBimodule, total: Optional[int] = None) -> Report:
    """
    Residual of mu o mu^ + mu o (m_C, m_D)^ on every (v | m | w) with r + s <= total.
    """
    total = M.check_horizon() if total is None else total
    report = Report(f"bimodule relation of {M.name}", {"r+s": total})
    LOGGER.info("checking the bimodule relation of %s up to r+s=%d", M.name, total)
    residual = BimoduleSum([(1, HatComposition(M.mu, M.mu)), (1, BarComposition(M.mu, M.left.ops, M.right.ops))])
    bimodule_residual(report, "bimodule", residual, M, total, total, total)
    return report


def premorphism_diff(F: Premorphism) -> Premorphism:
    """delta F = mu' o F^ - (-1)^|F| F o mu^ (module and category operations)."""
    M, N = F.source, F.target
    outer = HatComposition(N.mu, F.components)
    inner = BimoduleSum([(1, HatComposition(F.components, M.mu)),
                         (1, BarComposition(F.components, M.left.ops, M.right.ops))])
    components = BimoduleSum([(1, outer), (-sign(F.degree), inner)], F.components.domain, F.degree + 1)
    return Premorphism(M, N, components, f"delta({F.name})")


def compose(F: Premorphism, G: Premorphism) -> Premorphism:
    """F o G, defined when G.target is F.source."""
    if G.target is not F.source:
        raise InputError(f"cannot compose {F.name} after {G.name}: bimodules do not match")
    return Premorphism(G.source, F.target, HatComposition(F.components, G.components), f"{F.name}o{G.name}")


def identity_premorphism(M: AInfBimodule) -> Premorphism:
    return Premorphism(M, M, IdentityBimoduleMap(M.domain), "id")


# endregion

# region Constructions


class DiagonalStructure(BimoduleMap):
    def __init__(self, C: AInfCategory):
        super().__init__(1, C.domain)
        self.ops = C.ops

    def _evaluate(self, left, module, right):
        return self.ops.evaluate(left + (module,) + right)


def diagonal(C: AInfCategory) -> AInfBimodule:
    """The diagonal bimodule: M(X, Y) = hom(X, Y) and mu^{r|1|s} = m_{r+s+1}."""
    return AInfBimodule(f"{C.name}_diag", C, C, C.homs, DiagonalStructure(C), C.kmax, C.complete)


class BaseChangeStructure(BimoduleMap):
    """Structure maps of (F x G)^* M, summed over nonempty block decompositions."""

    def __init__(self, F: AInfFunctor, G: AInfFunctor, M: AInfBimodule):
        super().__init__(1, M.domain)
        self.F, self.G, self.M = F, G, M

    def _images(self, functor: AInfFunctor, path: Path, sizes) -> Optional[list]:
        if not functor.complete and any(size > functor.kmax for size in sizes):
            raise ArityOverflow(f"functor component of arity {max(sizes)} beyond kmax={functor.kmax}")
        one = self.domain.one
        images = [functor.components(basis_vectors(block, one)) for block in split_blocks(path, sizes)]
        return images if all(images) else None

    def _evaluate(self, left, module, right):
        underlying = Gen(module.name, self.F.on_object(module.source), self.G.on_object(module.target), module.deg)
        first = left[0].source if left else module.source
        last = right[-1].target if right else module.target
        result = Vector()
        for lsizes in compositions(len(left)):
            fl = self._images(self.F, left, lsizes)
            if fl is None:
                continue
            for rsizes in compositions(len(right)):
                gr = self._images(self.G, right, rsizes)
                if gr is None:
                    continue
                result += self.M.mu(fl, self.M.basis(underlying), gr)
        return result.relabel(lambda gen: Gen(gen.name, first, last, gen.deg))


def base_change(F: AInfFunctor, G: AInfFunctor, M: AInfBimodule) -> AInfBimodule:
    """
    Pull back M along F on the left and G on the right.

    Raises:
        ArityOverflow: When evaluation needs functor components beyond a truncated functor's kmax.
    """
    spaces = {}
    for X in F.source.objects:
        for Y in G.source.objects:
            spaces[(X, Y)] = [
                Gen(gen.name, X, Y, gen.deg) for gen in M.space(F.on_object(X), G.on_object(Y))
            ]
    kmax = (M.kmax - 1) * max(F.kmax, G.kmax, 1) + 1
    return AInfBimodule(f"({F.source.name},{G.source.name})*{M.name}", F.source, G.source, spaces,
                        BaseChangeStructure(F, G, M), kmax, M.complete and F.complete and G.complete)


def tensor_word(letters: Sequence[Gen]) -> Gen:
    """The tensor-product generator m (x) d_1 (x) .. (x) d_k (x) n."""
    letters = tuple(letters)
    return Gen(letters, letters[0].source, letters[-1].target, (parity(letters) + 1) % 2)


def _word_length(gen: Gen) -> int:
    return len(gen.name) - 2


class TensorStructure(BimoduleMap):
    """
    Structure maps of M (x)_D N truncated at bar length L.

    mu^{0|1|0} collects mu_M on a prefix, m^D on interior blocks and mu_N on a
    suffix; mu^{r|1|0} and mu^{0|1|s} use mu_M resp. mu_N; mixed r, s > 0 vanish.
    """

    def __init__(self, M: AInfBimodule, N: AInfBimodule):
        super().__init__(1, M.domain)
        self.M, self.N = M, N
        self.middle = M.right

    def _evaluate(self, left, module, right):
        if left and right:
            return Vector()
        m, ds, n = module.name[0], module.name[1:-1], module.name[-1]
        result = Vector()
        if not right:
            for cut in range(len(ds) + 1):
                for gen, coeff in self.M.mu.evaluate(left, m, ds[:cut]).items():
                    result.add_term(tensor_word((gen,) + ds[cut:] + (n,)), coeff)
        if not left:
            # shifted |m|', as in BarComposition
            prefix = m.p
            for cut in range(len(ds) + 1):
                if cut:
                    prefix += ds[cut - 1].p
                for gen, coeff in self.N.mu.evaluate(ds[cut:], n, right).items():
                    result.add_term(tensor_word((m,) + ds[:cut] + (gen,)), coeff * sign(prefix))
        if not left and not right:
            prefix = m.p
            for i in range(len(ds) + 1):
                if i:
                    prefix += ds[i - 1].p
                for j in range(i + 1, len(ds) + 1):
                    for gen, coeff in self.middle.ops.evaluate(ds[i:j]).items():
                        result.add_term(tensor_word((m,) + ds[:i] + (gen,) + ds[j:] + (n,)), coeff * sign(prefix))
        return result


def tensor(M: AInfBimodule, N: AInfBimodule, bound: int) -> AInfBimodule:
    """
    M (x)_D N with at most ``bound`` letters from D in each generator.

    Raises:
        TruncationOverflow: When D is curved (the curvature raises bar length).
    """
    D = M.right
    if N.left is not D:
        raise InputError("tensor product needs M over C-D and N over D-E")
    if D.curved:
        raise TruncationOverflow(f"{D.name} is curved; its curvature does not preserve the bar-length filtration")
    spaces: dict = {}
    for m in M.generators:
        for k in range(bound + 1):
            for path in paths_from(D, m.target, k):
                end = path[-1].target if path else m.target
                for V, Z in N.spaces:
                    if V != end:
                        continue
                    for n in N.space(V, Z):
                        spaces.setdefault((m.source, Z), []).append(tensor_word((m,) + path + (n,)))
    LOGGER.info("tensor product %s (x) %s: %d generators at bar length <= %d", M.name, N.name,
                sum(len(g) for g in spaces.values()), bound)
    return AInfBimodule(f"{M.name}(x){N.name}", M.left, N.right, spaces, TensorStructure(M, N),
                        max(M.kmax, N.kmax), M.complete and N.complete, _word_length, bound)


class MultiplicationStructure(BimoduleMap):
    def __init__(self, N: AInfBimodule):
        super().__init__(1, N.domain)
        self.N = N

    def _evaluate(self, left, module, right):
        m, ds, n = module.name[0], module.name[1:-1], module.name[-1]
        return self.N.mu.evaluate(left + (m,) + ds, n, right)


def multiplication_premorphism(T: AInfBimodule, N: AInfBimodule) -> Premorphism:
    """C_diag (x)_C N -> N: (c | m (x) d (x) n | e) maps to mu_N(c, m, d, n, e)."""
    return Premorphism(T, N, MultiplicationStructure(N), "mult")


# endregion

# region Cohomology


def _cohomology_data(M: AInfBimodule) -> tuple[list[Vector], list[Vector], int]:
    """
    Cycles and boundaries of mu^{0|1|0} below the bar bound, and the cohomology dimension there.

    Boundaries are the images d(x) that land entirely below the bound.
    """
    require_field(M.domain)
    space = CoordinateSpace(M.generators)
    columns = [M.mu.evaluate((), gen, ()) for gen in space.basis]
    reliable = CoordinateSpace(
        [gen for gen in space.basis if M.filtration is None or M.filtration(gen) < M.bound]
    )
    cycle_matrix = column_matrix([columns[space.index[gen]] for gen in reliable.basis], space, M.domain)
    cycles = [reliable.vector(coords) for coords in nullspace(cycle_matrix)]
    outside = CoordinateSpace([gen for gen in space.basis if gen not in reliable])
    if len(outside):
        projected = [Vector({gen: c for gen, c in col.items() if gen in outside}) for col in columns]
        boundaries = []
        for coords in nullspace(column_matrix(projected, outside, M.domain)):
            vec = Vector()
            for col, coeff in zip(columns, coords):
                if coeff:
                    vec.add_scaled(col, coeff)
            if vec:
                boundaries.append(vec)
    else:
        boundaries = [col for col in columns if col]
    b_dim = rank(boundaries, reliable, M.domain) if boundaries else 0
    return cycles, boundaries, len(cycles) - b_dim


def h0_is_quasi_iso(F: Premorphism) -> bool:
    """
    Whether [F^{0|1|0}] is an isomorphism on mu^{0|1|0}-cohomology.

    For bar-filtered bimodules only generators below the bar bound are used.

    Raises:
        CoefficientNotField: Over non-field coefficients.
    """
    require_field(F.source.domain)
    source_cycles, _, h_source = _cohomology_data(F.source)
    _, target_boundaries, h_target = _cohomology_data(F.target)
    LOGGER.info("H0 dimensions: source %d, target %d", h_source, h_target)
    if h_source != h_target:
        return False
    space = CoordinateSpace(F.target.generators)
    images = [F.components((), z, ()) for z in source_cycles]
    spanned = [vec for vec in images + target_boundaries if vec]
    total = rank(spanned, space, F.target.domain) if spanned else 0
    base = rank(target_boundaries, space, F.target.domain) if target_boundaries else 0
    return total - base == h_source


# endregion

# region Sampling


def random_premorphism(
    source: AInfBimodule, target: AInfBimodule, degree: int, total: int, rng: np.random.Generator,
    density: float = 0.5,
) -> Premorphism:
    """Premorphism with random small integer components on tuples with r + s <= total."""
    table = {}
    domain = source.domain
    for r in range(total + 1):
        for s in range(total - r + 1):
            for left, m, right in source.tuples(r, s):
                first = left[0].source if left else m.source
                last = right[-1].target if right else m.target
                want = (degree + parity(left) + shifted(m.deg) + parity(right)) % 2
                value = Vector()
                for gen in target.space(first, last):
                    if shifted(gen.deg) == want and rng.random() < density:
                        value.add_term(gen, domain.convert(int(rng.integers(-2, 3))))
                if value:
                    table[(left, m, right)] = value
    return Premorphism(source, target, TableBimoduleMap(table, degree, domain), "R")


# endregion
