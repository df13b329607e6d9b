"""Mirrorforge Linear Algebra

Exact linear algebra over the coefficient field, on top of sympy's DomainMatrix.

Features:
    - CoordinateSpace: ordered basis of generators with coordinate maps
    - rank / nullspace / solve on columns given as sparse vectors
    - greedy span extension used to pick cohomology representatives

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

from typing import Any, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from mirrorforge.core.exceptions import CoefficientNotField
from mirrorforge.core.multilinear import Gen, Vector

__all__ = ["CoordinateSpace", "column_matrix", "rank", "nullspace", "solve", "extend_span", "require_field"]


def require_field(domain: Any):
    """Raise CoefficientNotField unless ``domain`` is a field."""
    if not getattr(domain, "is_Field", False):
        raise CoefficientNotField(f"exact linear algebra needs a field, got {domain}")


class CoordinateSpace:
    """Free module with an ordered basis of generators."""

    def __init__(self, basis: Sequence[Gen]):
        self.basis = list(dict.fromkeys(basis))
        self.index = {gen: pos for pos, gen in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)

    def __contains__(self, gen: Gen) -> bool:
        return gen in self.index

    def coordinates(self, vec: Vector) -> dict[int, Any]:
        """Sparse coordinates; generators outside the basis are an error."""
        try:
            return {self.index[gen]: value for gen, value in vec.items()}
        except KeyError as exc:
            raise ValueError(f"Generator {exc.args[0]} is outside the coordinate space") from exc

    def vector(self, coords: Sequence[Any]) -> Vector:
        result = Vector()
        for pos, value in enumerate(coords):
            if value:
                result.add_term(self.basis[pos], value)
        return result


def column_matrix(columns: Sequence[Vector], space: CoordinateSpace, domain: Any) -> DomainMatrix:
    """Matrix whose j-th column holds the coordinates of columns[j]."""
    dok = {}
    for col, vec in enumerate(columns):
        for row, value in space.coordinates(vec).items():
            dok[(row, col)] = domain.convert(value)
    return DomainMatrix.from_dok(dok, (len(space), len(columns)), domain)


def _rref(matrix: DomainMatrix) -> tuple[list[list[Any]], tuple[int, ...]]:
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return [[] for _ in range(rows)], ()
    reduced, pivots = matrix.rref()
    return reduced.to_list(), tuple(pivots)


def rank(columns: Sequence[Vector], space: CoordinateSpace, domain: Any) -> int:
    """Dimension of the span of ``columns``."""
    require_field(domain)
    return len(_rref(column_matrix(columns, space, domain))[1])


def nullspace(matrix: DomainMatrix) -> list[list[Any]]:
    """Basis of {x : matrix x = 0}, one coefficient list per basis vector."""
    require_field(matrix.domain)
    domain = matrix.domain
    cols = matrix.shape[1]
    reduced, pivots = _rref(matrix)
    basis = []
    for free in (col for col in range(cols) if col not in pivots):
        solution = [domain.zero] * cols
        solution[free] = domain.one
        for row, pivot in enumerate(pivots):
            solution[pivot] = -reduced[row][free]
        basis.append(solution)
    return basis


def solve(columns: Sequence[Vector], target: Vector, space: CoordinateSpace, domain: Any) -> Optional[list[Any]]:
    """
    Express ``target`` as a combination of ``columns``.

    Returns:
        list or None: coefficients c with sum c_j columns[j] = target, or None when
        target is outside the span.
    """
    require_field(domain)
    if not target:
        return [domain.zero] * len(columns)
    reduced, pivots = _rref(column_matrix(list(columns) + [target], space, domain))
    last = len(columns)
    if last in pivots:
        return None
    solution = [domain.zero] * len(columns)
    for row, pivot in enumerate(pivots):
        solution[pivot] = reduced[row][last]
    return solution


def extend_span(base: Sequence[Vector], candidates: Sequence[Vector], space: CoordinateSpace, domain: Any) -> list[int]:
    """
    Indices of candidates that, added greedily in order, enlarge span(base).
    """
    require_field(domain)
    chosen: list[int] = []
    current = list(base)
    current_rank = rank(current, space, domain) if current else 0
    for pos, vec in enumerate(candidates):
        if not vec:
            continue
        trial = rank(current + [vec], space, domain)
        if trial > current_rank:
            chosen.append(pos)
            current.append(vec)
            current_rank = trial
    return chosen
