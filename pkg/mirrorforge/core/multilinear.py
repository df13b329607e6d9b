"""Mirrorforge Multilinear Maps

Generators, sparse vectors and multilinear maps on composable sequences.

All algebraic structures (A-infinity operations, functors, Hochschild cochains)
are instances of MultilinearMap: a rule sending a composable tuple of
generators to a Vector. Maps are linear over the coefficient ring unless they
declare ``r_linear = False``, in which case they are evaluated on homogeneous
vectors directly.

Features:
    - Gen: based generator with source, target and Z/2 degree
    - Vector: sparse linear combination of generators with exact coefficients
    - TableMap, ZeroMap, IdentityMap, CoefficientMap, LinearCombination
    - Insertion: sum of g inserted into f at every slot (Gerstenhaber composition)
    - Composite: outer map applied after a functor on every block decomposition

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

from abc import ABC, abstractmethod
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Iterator, NamedTuple, Optional, Sequence

from mirrorforge.core.signs import koszul, parity, shifted

__all__ = [
    "Gen",
    "Vector",
    "MultilinearMap",
    "TableMap",
    "ZeroMap",
    "IdentityMap",
    "CoefficientMap",
    "LinearCombination",
    "Insertion",
    "Composite",
    "compositions",
    "compositions_with_zeros",
    "composable",
    "basis_vectors",
]


class Gen(NamedTuple):
    """A based generator x: source -> target of Z/2 degree ``deg``."""

    name: Hashable
    source: Hashable
    target: Hashable
    deg: int

    @property
    def p(self) -> int:
        """Shifted degree."""
        return shifted(self.deg)

    def __str__(self) -> str:
        return f"{self.source}|{self.target}/{self.name}"


def composable(gens: Sequence[Gen]) -> bool:
    """True when gens[i].target == gens[i + 1].source for every i."""
    return all(a.target == b.source for a, b in zip(gens, gens[1:]))


class Vector(dict):
    """
    Sparse linear combination of generators.

    Keys are Gen, values are coefficients in a sympy domain. Zero coefficients
    are never stored, so ``not v`` tests for the zero vector.
    """

    @classmethod
    def basis(cls, gen: Gen, one: Any) -> "Vector":
        return cls({gen: one})

    def add_term(self, gen: Gen, coeff: Any) -> "Vector":
        value = self.get(gen)
        value = coeff if value is None else value + coeff
        if value:
            self[gen] = value
        else:
            self.pop(gen, None)
        return self

    def add_scaled(self, other: "Vector", coeff: Any = None) -> "Vector":
        """In-place self += coeff * other."""
        for gen, value in other.items():
            self.add_term(gen, value if coeff is None else value * coeff)
        return self

    def __iadd__(self, other: "Vector") -> "Vector":
        return self.add_scaled(other)

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(self).add_scaled(other)

    def __neg__(self) -> "Vector":
        return Vector({gen: -value for gen, value in self.items()})

    def __sub__(self, other: "Vector") -> "Vector":
        return Vector(self).add_scaled(-other)

    def scale(self, coeff: Any) -> "Vector":
        if not coeff:
            return Vector()
        return Vector({gen: value * coeff for gen, value in self.items() if value * coeff})

    def map_coefficients(self, func: Callable[[Any], Any]) -> "Vector":
        result = Vector()
        for gen, value in self.items():
            result.add_term(gen, func(value))
        return result

    def relabel(self, func: Callable[[Gen], Gen]) -> "Vector":
        result = Vector()
        for gen, value in self.items():
            result.add_term(func(gen), value)
        return result

    def homogeneous_parts(self) -> dict[tuple, "Vector"]:
        """Split by (source, target, degree)."""
        parts: dict[tuple, Vector] = {}
        for gen, value in self.items():
            parts.setdefault((gen.source, gen.target, gen.deg), Vector())[gen] = value
        return parts

    def ends(self) -> tuple[Hashable, Hashable]:
        """(source, target) of a homogeneous vector."""
        gen = next(iter(self))
        return gen.source, gen.target

    @property
    def deg(self) -> int:
        """Degree of a homogeneous vector."""
        return next(iter(self)).deg

    @property
    def p(self) -> int:
        return shifted(self.deg)

    def coefficient(self, gen: Gen, zero: Any = 0) -> Any:
        return self.get(gen, zero)

    def sorted_items(self) -> list[tuple[Gen, Any]]:
        return sorted(self.items(), key=lambda item: str(item[0]))

    def __repr__(self) -> str:
        if not self:
            return "Vector(0)"
        return "Vector(" + " + ".join(f"({value})*{gen}" for gen, value in self.sorted_items()) + ")"


def basis_vectors(gens: Iterable[Gen], one: Any) -> list[Vector]:
    return [Vector.basis(gen, one) for gen in gens]


def compositions(total: int) -> Iterator[tuple[int, ...]]:
    """Ordered decompositions of total into positive parts (empty tuple for 0)."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def compositions_with_zeros(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered decompositions of total into ``parts`` nonnegative parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions_with_zeros(total - first, parts - 1):
            yield (first,) + rest


def split_blocks(items: Sequence, sizes: Sequence[int]) -> list[Sequence]:
    blocks, pos = [], 0
    for size in sizes:
        blocks.append(items[pos : pos + size])
        pos += size
    return blocks


class MultilinearMap(ABC):
    """
    Multilinear map on composable sequences.

    Attributes:
        degree (int): shifted degree of the map, 0 or 1.
        domain: sympy domain of the coefficients.
        r_linear (bool): linear over the coefficient ring.
    """

    def __init__(self, degree: int = 0, domain: Any = None, r_linear: bool = True):
        self._degree = degree % 2
        self._domain = domain
        self._r_linear = r_linear
        self._cache: dict = {}

    # region Properties

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def domain(self) -> Any:
        return self._domain

    @property
    def r_linear(self) -> bool:
        return self._r_linear

    # endregion

    def __call__(self, inputs: Sequence[Vector], start: Hashable = None) -> Vector:
        """
        Evaluate on vectors.

        Args:
            inputs: composable vectors; heterogeneous vectors are expanded.
            start: object at which the empty input is evaluated.

        Returns:
            Vector: the output, zero if any input vanishes.
        """
        inputs = list(inputs)
        if any(not vec for vec in inputs):
            return Vector()
        result = Vector()
        if not self._r_linear:
            for parts in product(*(list(vec.homogeneous_parts().values()) for vec in inputs)):
                if all(a.ends()[1] == b.ends()[0] for a, b in zip(parts, parts[1:])):
                    result += self._evaluate_vectors(list(parts), start)
            return result
        for terms in product(*(list(vec.items()) for vec in inputs)):
            gens = tuple(gen for gen, _ in terms)
            output = self.evaluate(gens, start)
            if not output:
                continue
            coeff = None
            for _, value in terms:
                coeff = value if coeff is None else coeff * value
            result.add_scaled(output, coeff)
        return result

    def evaluate(self, gens: tuple[Gen, ...], start: Hashable = None) -> Vector:
        """Cached value on a tuple of generators; zero on non-composable tuples."""
        gens = tuple(gens)
        key = (gens, None if gens else start)
        if key in self._cache:
            return self._cache[key]
        value = self._evaluate(gens, start) if composable(gens) else Vector()
        self._cache[key] = value
        return value

    def clear_cache(self):
        self._cache.clear()

    def _evaluate(self, gens: tuple[Gen, ...], start: Hashable) -> Vector:
        return self._evaluate_vectors(basis_vectors(gens, self._domain.one), start)

    def _evaluate_vectors(self, vectors: list[Vector], start: Hashable) -> Vector:
        raise NotImplementedError(f"{type(self).__name__} is only defined on generators")


class TableMap(MultilinearMap):
    """
    Map given by an explicit table of values on generator tuples.

    Args:
        table: {(g1, ..., gk): Vector} for k >= 1.
        curvature: {object: Vector}, the value on the empty tuple.
    """

    def __init__(self, table: dict, curvature: Optional[dict] = None, degree: int = 1, domain: Any = None):
        super().__init__(degree, domain)
        self.table = {tuple(key): value for key, value in table.items() if value}
        self.curvature = {obj: value for obj, value in (curvature or {}).items() if value}

    def _evaluate(self, gens, start):
        if not gens:
            return Vector(self.curvature.get(start, Vector()))
        return Vector(self.table.get(gens, Vector()))

    def max_arity(self) -> int:
        return max((len(key) for key in self.table), default=0)


class ZeroMap(MultilinearMap):
    def _evaluate(self, gens, start):
        return Vector()


class IdentityMap(MultilinearMap):
    """Identity in arity one, zero elsewhere."""

    def __init__(self, domain: Any = None):
        super().__init__(0, domain)

    def _evaluate(self, gens, start):
        if len(gens) == 1:
            return Vector.basis(gens[0], self._domain.one)
        return Vector()


class CoefficientMap(MultilinearMap):
    """
    Apply ``func`` to every coefficient of ``inner`` evaluated on generators.

    The result is linear over the target domain; used to take derivatives of a
    family of operations in a deformation parameter.
    """

    def __init__(self, inner: MultilinearMap, func: Callable[[Any], Any], domain: Any = None, degree: int = None):
        super().__init__(inner.degree if degree is None else degree, domain)
        self.inner = inner
        self.func = func

    def _evaluate(self, gens, start):
        return self.inner.evaluate(gens, start).map_coefficients(self.func)


class LinearCombination(MultilinearMap):
    """Sum of coeff * map over a list of (coeff, map) pairs of equal degree."""

    def __init__(self, terms: Sequence[tuple[Any, MultilinearMap]], domain: Any = None, degree: int = None):
        terms = list(terms)
        if degree is None:
            degree = terms[0][1].degree if terms else 0
        super().__init__(degree, domain, all(inner.r_linear for _, inner in terms))
        self.terms = terms

    def _evaluate(self, gens, start):
        result = Vector()
        for coeff, inner in self.terms:
            result.add_scaled(inner.evaluate(gens, start), coeff)
        return result

    def _evaluate_vectors(self, vectors, start):
        result = Vector()
        for coeff, inner in self.terms:
            result.add_scaled(inner(vectors, start), coeff)
        return result


def object_at(vectors: Sequence[Vector], position: int, start: Hashable) -> Hashable:
    """Object sitting before slot ``position`` of a composable sequence of homogeneous vectors."""
    if position == 0:
        return vectors[0].ends()[0] if vectors else start
    return vectors[position - 1].ends()[1]


class Insertion(MultilinearMap):
    """
    outer o inner: sum over slots 0 <= i <= j <= k of

        (-1)^(|inner| p(x_1..x_i)) outer(x_1, .., x_i, inner(x_{i+1}, .., x_j), x_{j+1}, .., x_k)

    including empty blocks i = j.
    """

    def __init__(self, outer: MultilinearMap, inner: MultilinearMap, domain: Any = None):
        super().__init__(outer.degree + inner.degree, domain or outer.domain, outer.r_linear and inner.r_linear)
        self.outer = outer
        self.inner = inner

    def _evaluate_vectors(self, vectors, start):
        result = Vector()
        count = len(vectors)
        prefix = 0
        first = object_at(vectors, 0, start)
        for i in range(count + 1):
            if i:
                prefix = (prefix + vectors[i - 1].p) % 2
            sgn = koszul(self.inner.degree, prefix)
            here = object_at(vectors, i, start)
            for j in range(i, count + 1):
                middle = self.inner(vectors[i:j], here)
                if not middle:
                    continue
                value = self.outer(list(vectors[:i]) + [middle] + list(vectors[j:]), first)
                result.add_scaled(value, sgn)
        return result


class Composite(MultilinearMap):
    """
    outer after a degree-zero functor F:

        sum over decompositions into nonempty blocks B_1 .. B_j of outer(F(B_1), .., F(B_j)).

    The empty input evaluates to outer([], object_map(start)).
    """

    def __init__(self, outer: MultilinearMap, functor: MultilinearMap, object_map: Callable, domain: Any = None):
        if functor.degree:
            raise ValueError("Composite requires a functor of shifted degree zero")
        super().__init__(outer.degree, domain or outer.domain, outer.r_linear and functor.r_linear)
        self.outer = outer
        self.functor = functor
        self.object_map = object_map

    def _evaluate_vectors(self, vectors, start):
        if not vectors:
            return self.outer([], self.object_map(start))
        result = Vector()
        for sizes in compositions(len(vectors)):
            images = [self.functor(block) for block in split_blocks(vectors, sizes)]
            if all(images):
                result += self.outer(images)
        return result
