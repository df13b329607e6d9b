"""Mirrorforge Toric Data

Toric Fano input data and its Landau-Ginzburg mirror.

A polytope P = {u | l_j(u) >= 0}, l_j(u) = <v_j, u> - lambda_j, gives the
potential sum_j T^(l_j(u)) y^(v_j). Its Jacobian ring is computed exactly over
Q(s); critical points are located numerically from the multiplication
matrices of the Jacobian quotient and refined by Newton iteration.

Features:
    - ToricFanoData with primitivity, spanning and interior validation
    - monotone_basepoint: the max-min point of the l_j by linear programming
    - potential, jacobian_ring, critical_points, critical_values
    - basepoint_independence of the potential up to the coordinate change y_i -> T^(u_i - u'_i) y_i
    - Built-in CP1..CP4 and CP1xCP1 with their quantum cohomology presentations
    - ks_divisor_check: the divisor-level ring map z_j -> T^(l_j(u)) y^(v_j)

Example:
    >>> from mirrorforge.mirror.toric import builtin, potential, jacobian_ring
    >>> P = potential(builtin("CP1"))
    >>> jacobian_ring(P)[1]
    2

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from math import gcd
from typing import Any, Mapping, Optional, Sequence

import numpy as np
from sympy import Rational, Symbol, symbols
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax

from mirrorforge.core.coeff import FIELD, QQ, as_complex, parse_rational, rational_to_str, specialize_T
from mirrorforge.core.config import rng
from mirrorforge.core.exceptions import (
    InputError,
    InvalidFan,
    MultiplicityMismatch,
    NewtonDivergence,
    NotZeroDimensional,
    RankMismatch,
    RelationNotKilled,
    UnknownBuiltin,
)
from mirrorforge.core.laurent import (
    Ideal,
    LaurentPoly,
    QuotientBasis,
    groebner_basis,
    multiplication_matrix,
    normal_form,
    standard_coordinates,
)
from mirrorforge.core.report import Report

__all__ = [
    "ToricFanoData",
    "Potential",
    "CriticalPoint",
    "QHPresentation",
    "BUILTINS",
    "validate",
    "monotone_basepoint",
    "potential",
    "jacobian_ring",
    "critical_points",
    "critical_values",
    "basepoint_independence",
    "builtin",
    "qh_presentation",
    "ks_image",
    "ks_divisor_check",
]

LOGGER = logging.getLogger(__name__)

MORSE_THRESHOLD = 1e-8
MAX_ITERATIONS = 100
MAX_RESTARTS = 8
CLUSTER_TOLERANCE = 1e-6


# region Toric data


@dataclass
class ToricFanoData:
    """
    Moment polytope of a toric Fano manifold.

    Attributes:
        dim (int): dimension n.
        facets (list): (normal v_j, constant lambda_j) pairs; normals are integer tuples.
        basepoint (tuple): interior point u (QQ entries).
        name (str): label used in reports.
        primitive_collections (list): index sets whose normals sum to zero (built-ins only).
    """

    dim: int
    facets: list
    basepoint: tuple
    name: str = "X"
    primitive_collections: list = field(default_factory=list)

    def __post_init__(self):
        self.facets = [(tuple(int(x) for x in normal), parse_rational(constant)) for normal, constant in self.facets]
        self.basepoint = tuple(parse_rational(x) for x in self.basepoint)
        self.primitive_collections = [tuple(c) for c in self.primitive_collections]

    @property
    def normals(self) -> list:
        return [normal for normal, _ in self.facets]

    def l_values(self, u: Optional[Sequence] = None) -> list:
        """l_j(u) for every facet, at the basepoint when u is omitted."""
        u = self.basepoint if u is None else tuple(parse_rational(x) for x in u)
        return [sum((QQ(v) * x for v, x in zip(normal, u)), QQ.zero) - constant for normal, constant in self.facets]

    def with_basepoint(self, u: Sequence) -> "ToricFanoData":
        return replace(self, basepoint=tuple(u))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "facets": [{"normal": list(v), "constant": rational_to_str(c)} for v, c in self.facets],
            "basepoint": [rational_to_str(x) for x in self.basepoint],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ToricFanoData":
        try:
            dim = int(data["dim"])
            facets = [(f["normal"], f.get("constant", "0")) for f in data["facets"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polytope: {exc}") from exc
        basepoint = data.get("basepoint")
        result = cls(dim, facets, basepoint or (0,) * dim, data.get("name", "X"))
        if basepoint is None:
            result.basepoint = monotone_basepoint(result)
        return result


def _maximal_minors_gcd(normals: list, n: int) -> int:
    value = 0
    for rows in combinations(normals, n):
        det = DomainMatrix([[ZZ(x) for x in row] for row in rows], (n, n), ZZ).det()
        value = gcd(value, int(det))
        if value == 1:
            break
    return value


def validate(data: ToricFanoData) -> Report:
    """
    Confirm the polytope invariants.

    Raises:
        InvalidFan: On the first violated invariant, with the reason.
    """
    report = Report(f"validate {data.name}", {"dim": data.dim, "facets": len(data.facets)})
    n = data.dim
    if n < 1 or len(data.basepoint) != n or any(len(v) != n for v in data.normals):
        raise InvalidFan("dimension mismatch between normals, basepoint and dim")
    report.add("dimension", True, f"{len(data.facets)} facets in dimension {n}")

    for j, normal in enumerate(data.normals):
        divisor = 0
        for x in normal:
            divisor = gcd(divisor, x)
        if divisor != 1:
            raise InvalidFan(f"non-primitive normal {normal} (facet {j})")
    report.add("primitive", True)

    if len(data.facets) < n or _maximal_minors_gcd(data.normals, n) != 1:
        raise InvalidFan("normals do not span the lattice Z^n")
    report.add("spanning", True)

    values = data.l_values()
    for j, value in enumerate(values):
        if value <= 0:
            raise InvalidFan(f"boundary basepoint: l_{j + 1}(u) = {rational_to_str(value)}")
    report.add("interior", True, "l_j(u) > 0 for every facet")
    report.data["l_values"] = [rational_to_str(v) for v in values]
    return report


def monotone_basepoint(data: ToricFanoData) -> tuple:
    """
    The point u maximizing min_j l_j(u), by linear programming.

    On a monotone polytope this is the point where every l_j takes the same
    value. Otherwise the simplex method returns one optimal vertex of the
    max-min problem, which is interior whenever the optimum is positive.

    Raises:
        InvalidFan: When the polytope is unbounded or has empty interior.
    """
    if data.dim < 1 or not data.facets:
        raise InvalidFan("a basepoint needs a positive dimension and at least one facet")
    u = symbols(f"u1:{data.dim + 1}")
    level = Symbol("level")
    forms = [
        sum((v * x for v, x in zip(normal, u)), Rational(0)) - Rational(int(QQ.numer(c)), int(QQ.denom(c)))
        for normal, c in data.facets
    ]
    try:
        # a free direction does not move the level, so boundedness is checked per coordinate
        for x in u:
            for sign in (1, -1):
                lpmax(sign * x, [form >= 0 for form in forms])
        optimum, point = lpmax(level, [form >= level for form in forms])
    except UnboundedLPError as exc:
        raise InvalidFan("polytope is unbounded; supply a basepoint") from exc
    except InfeasibleLPError as exc:
        raise InvalidFan("polytope is empty") from exc
    if optimum <= 0:
        raise InvalidFan(f"polytope has empty interior (max-min level {optimum})")
    LOGGER.debug("basepoint of %s at max-min level %s", data.name, optimum)
    return tuple(QQ(int(Rational(point[x]).p), int(Rational(point[x]).q)) for x in u)


# endregion

# region Potential


def _variables(n: int) -> tuple:
    return ("y",) if n == 1 else tuple(f"y{i + 1}" for i in range(n))


@dataclass
class Potential:
    """
    Leading-order potential sum_j z_j, z_j = T^(l_j(u)) y^(v_j).

    Attributes:
        poly (LaurentPoly): the sum.
        monomials (list[LaurentPoly]): z_j per facet.
        data (ToricFanoData): the source polytope.
    """

    poly: LaurentPoly
    monomials: list
    data: ToricFanoData

    @property
    def variables(self) -> tuple:
        return self.poly.variables

    @property
    def N(self) -> int:
        return self.poly.N

    def to_json(self) -> dict:
        return {"name": self.data.name, "potential": self.poly.to_json(), "text": str(self.poly)}


def potential(data: ToricFanoData) -> Potential:
    """Potential of validated data at its basepoint; N is the lcm of the l_j(u) denominators."""
    variables = _variables(data.dim)
    monomials = [
        LaurentPoly.T_monomial(variables, normal, value) for normal, value in zip(data.normals, data.l_values())
    ]
    poly = LaurentPoly.zero(variables)
    for z in monomials:
        poly = poly + z
    N = poly.N
    return Potential(poly, [z.with_N(N) for z in monomials], data)


def jacobian_ring(P: Potential) -> tuple[QuotientBasis, int]:
    """
    Jacobian quotient of the Laurent ring by the log-derivatives y_i dW/dy_i.

    Raises:
        NotZeroDimensional: When the quotient is infinite dimensional.
    """
    ideal = Ideal(P.variables, [P.poly.log_derivative(i) for i in range(len(P.variables))])
    Q = groebner_basis(ideal, saturate=True)
    if not Q.zero_dimensional:
        raise NotZeroDimensional(f"Jacobian ring of {P.poly} is infinite dimensional")
    return Q, Q.dimension


# endregion

# region Critical points


@dataclass
class CriticalPoint:
    """Numeric critical point of the potential at T = t0."""

    coordinates: tuple
    hessian_det: complex
    local_multiplicity: int
    value: complex
    residual: float

    @property
    def morse(self) -> bool:
        return abs(self.hessian_det) > MORSE_THRESHOLD

    def to_json(self) -> dict:
        return {
            "coordinates": list(self.coordinates),
            "hessian_det": self.hessian_det,
            "local_multiplicity": self.local_multiplicity,
            "value": self.value,
            "morse": self.morse,
            "residual": self.residual,
        }


class _NumericSystem:
    """Potential, log-gradient and log-Hessian specialised at T = t0."""

    def __init__(self, poly: LaurentPoly, t0):
        n = poly.arity
        self.n = n
        self.value_terms = self._pack(poly, t0)
        gradient = [poly.log_derivative(i) for i in range(n)]
        self.gradient_terms = [self._pack(g, t0) for g in gradient]
        self.hessian_terms = [[self._pack(g.log_derivative(j), t0) for j in range(n)] for g in gradient]

    @staticmethod
    def _pack(poly: LaurentPoly, t0):
        terms = poly.numeric_terms(t0)
        exps = np.array([exp for exp, _ in terms], dtype=int).reshape(len(terms), poly.arity)
        coeffs = np.array([c for _, c in terms], dtype=complex)
        return exps, coeffs

    @staticmethod
    def _eval(packed, y: np.ndarray) -> complex:
        exps, coeffs = packed
        if not len(coeffs):
            return 0j
        return complex(coeffs @ np.prod(y[None, :] ** exps, axis=1))

    def value(self, y):
        return self._eval(self.value_terms, y)

    def gradient(self, y) -> np.ndarray:
        return np.array([self._eval(g, y) for g in self.gradient_terms])

    def log_hessian(self, y) -> np.ndarray:
        return np.array([[self._eval(h, y) for h in row] for row in self.hessian_terms])

    def jacobian(self, y) -> np.ndarray:
        """d(y_i dW/dy_i)/dy_j = (y_j d/dy_j)(y_i dW/dy_i) / y_j."""
        return self.log_hessian(y) / y[None, :]


def _newton(system: _NumericSystem, start: np.ndarray, tolerance: float, max_iter: int) -> Optional[np.ndarray]:
    y = np.array(start, dtype=complex)
    for _ in range(max_iter):
        F = system.gradient(y)
        if np.linalg.norm(F) < tolerance:
            return y
        try:
            step = np.linalg.solve(system.jacobian(y), -F)
        except np.linalg.LinAlgError:
            return None
        y = y + step
        if not np.all(np.isfinite(y)) or np.any(np.abs(y) < 1e-300):
            return None
    return y if np.linalg.norm(system.gradient(y)) < tolerance else None


def _seeds(P: Potential, Q: QuotientBasis, t0, generator: np.random.Generator) -> list[np.ndarray]:
    """Approximate points from the common left eigenvectors of the multiplication matrices."""
    matrices = []
    for name in P.variables:
        exact = multiplication_matrix(LaurentPoly.variable(P.variables, name), Q)
        matrices.append(np.array([[as_complex(specialize_T(x, t0, Q.N)) for x in row] for row in exact], dtype=complex))
    weights = generator.normal(size=len(matrices))
    combined = sum(w * M for w, M in zip(weights, matrices))
    _, vectors = np.linalg.eig(combined.T)
    seeds = []
    for k in range(vectors.shape[1]):
        w = vectors[:, k]
        norm = w @ w.conj()
        seeds.append(np.array([(w @ M) @ w.conj() / norm for M in matrices]))
    return seeds


def _parse_t0(t0):
    value = parse_rational(t0) if isinstance(t0, (str, int)) else QQ.convert(t0)
    if not QQ.zero < value < QQ.one:
        raise InputError(f"t0 must lie strictly between 0 and 1, got {rational_to_str(value)}")
    return value


def _sort_key(point: CriticalPoint):
    return tuple((round(z.real, 9), round(z.imag, 9)) for z in point.coordinates)


def critical_points(
    P: Potential, t0: Any = "1/4", tolerance: float = 1e-12, max_iter: int = MAX_ITERATIONS, seed: Optional[int] = None
) -> list[CriticalPoint]:
    """
    All critical points of the potential at T = t0.

    Seeds come from the eigenvectors of a random combination of the
    multiplication matrices of the Jacobian quotient; each seed is refined by
    Newton iteration on y_i dW/dy_i = 0 and seeds meeting the same point add up
    to its local multiplicity.

    Args:
        P (Potential): the potential.
        t0: rational value of T in (0, 1).
        tolerance (float): Newton residual bound.
        max_iter (int): Newton iterations per attempt.
        seed (int, optional): sampling seed, MIRRORFORGE_SEED when omitted.

    Returns:
        list[CriticalPoint]: sorted lexicographically by (re, im) of the coordinates.

    Raises:
        NotZeroDimensional: When the Jacobian ring is infinite dimensional.
        NewtonDivergence: When a seed does not converge after restarts.
        MultiplicityMismatch: When the multiplicities disagree with the exact dimension.
    """
    t0 = _parse_t0(t0)
    Q, dimension = jacobian_ring(P)
    generator = rng(seed)
    system = _NumericSystem(P.poly, t0)
    LOGGER.info("Locating %d critical point(s) of %s at T=%s", dimension, P.data.name, rational_to_str(t0))

    found: list[list] = []
    for start in _seeds(P, Q, t0, generator):
        point = _newton(system, start, tolerance, max_iter)
        restarts = 0
        while point is None:
            if restarts == MAX_RESTARTS:
                raise NewtonDivergence(f"Newton iteration from {start} did not converge", restarts)
            restarts += 1
            LOGGER.info("Newton restart %d from a perturbed seed", restarts)
            noise = generator.normal(size=(len(start), 2)) @ np.array([1, 1j])
            point = _newton(system, start * (1 + 1e-3 * restarts * noise), tolerance, max_iter)
        for entry in found:
            if np.linalg.norm(entry[0] - point) < CLUSTER_TOLERANCE * max(1.0, np.linalg.norm(point)):
                entry[1] += 1
                break
        else:
            found.append([point, 1])

    points = []
    for y, multiplicity in found:
        det = complex(np.linalg.det(system.log_hessian(y)))
        point = CriticalPoint(
            tuple(complex(z) for z in y),
            det,
            multiplicity,
            system.value(y),
            float(np.linalg.norm(system.gradient(y))),
        )
        if point.morse and multiplicity != 1:
            raise MultiplicityMismatch(f"Morse point {point.coordinates} reached by {multiplicity} seeds")
        if not point.morse:
            LOGGER.warning("Degenerate critical point %s (|det Hess| = %.3g)", point.coordinates, abs(det))
        points.append(point)

    total = sum(p.local_multiplicity for p in points)
    if total != dimension:
        raise MultiplicityMismatch(f"multiplicities sum to {total}, Jacobian dimension is {dimension}")
    return sorted(points, key=_sort_key)


def critical_values(P: Potential, t0: Any = "1/4", seed: Optional[int] = None) -> list[complex]:
    return [p.value for p in critical_points(P, t0, seed=seed)]


def _same_values(first: list, second: list, tolerance: float = 1e-8) -> bool:
    if len(first) != len(second):
        return False
    remaining = list(second)
    for value in first:
        match = min(range(len(remaining)), key=lambda k: abs(remaining[k] - value), default=None)
        if match is None or abs(remaining[match] - value) > tolerance * max(1.0, abs(value)):
            return False
        remaining.pop(match)
    return True


def basepoint_independence(data: ToricFanoData, other: Sequence, t0: Any = "1/4", seed: Optional[int] = None) -> Report:
    """
    Compare the potentials at two interior basepoints u and u'.

    The substitution y_i -> T^(u_i - u'_i) y_i carries the potential at u'
    onto the potential at u; Jacobian dimensions and critical values agree.
    """
    moved = data.with_basepoint(other)
    validate(moved)
    first, second = potential(data), potential(moved)
    report = Report(
        f"basepoint independence of {data.name}",
        {"u": [rational_to_str(x) for x in data.basepoint], "u'": [rational_to_str(x) for x in moved.basepoint]},
    )
    variables = first.variables
    mapping = {
        name: LaurentPoly.T_monomial(variables, [int(i == k) for i in range(len(variables))], u - v)
        for k, (name, u, v) in enumerate(zip(variables, data.basepoint, moved.basepoint))
    }
    transported = second.poly.substitute(mapping, variables)
    report.add("substitution", transported == first.poly, f"{transported} vs {first.poly}")

    (_, dim1), (_, dim2) = jacobian_ring(first), jacobian_ring(second)
    report.add("jacobian_dimension", dim1 == dim2, f"{dim1} vs {dim2}")

    values1, values2 = critical_values(first, t0, seed), critical_values(second, t0, seed)
    report.add("critical_values", _same_values(values1, values2), witness=[values1, values2])
    return report


# endregion

# region Built-ins


def _projective_space(n: int) -> ToricFanoData:
    normals = [tuple(int(i == k) for i in range(n)) for k in range(n)] + [(-1,) * n]
    constants = [0] * n + [-1]
    return ToricFanoData(
        n,
        list(zip(normals, constants)),
        (QQ(1, n + 1),) * n,
        f"CP{n}",
        [tuple(range(n + 1))],
    )


def _product_of_lines() -> ToricFanoData:
    normals = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    return ToricFanoData(
        2,
        list(zip(normals, [0, 0, -1, -1])),
        (QQ(1, 2), QQ(1, 2)),
        "CP1xCP1",
        [(0, 2), (1, 3)],
    )


BUILTINS = {
    "CP1": lambda: _projective_space(1),
    "CP2": lambda: _projective_space(2),
    "CP3": lambda: _projective_space(3),
    "CP4": lambda: _projective_space(4),
    "CP1xCP1": _product_of_lines,
}
"""Built-in polytopes at their monotone basepoints."""


def builtin(name: str) -> ToricFanoData:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise UnknownBuiltin(f"no built-in polytope {name!r}; known: {', '.join(BUILTINS)}") from None


@dataclass
class QHPresentation:
    """
    Quantum cohomology ring as a quotient of Q(s)[z_1, ..., z_m].

    Attributes:
        name (str): built-in name.
        variables (tuple): z_1, ..., z_m, one per facet.
        linear (list[LaurentPoly]): sum_j v_(j,i) z_j, one per dimension.
        quantum (list[LaurentPoly]): prod_(j in C) z_j - T^(sum_(j in C) l_j(u)) per primitive collection C.
        data (ToricFanoData): the polytope.
    """

    name: str
    variables: tuple
    linear: list
    quantum: list
    data: ToricFanoData

    @property
    def relations(self) -> list:
        return self.linear + self.quantum

    def quotient(self) -> QuotientBasis:
        return groebner_basis(Ideal(self.variables, self.relations), saturate=False)

    @property
    def rank(self):
        return self.quotient().dimension


def qh_presentation(name: str) -> QHPresentation:
    """
    Presentation of a built-in quantum cohomology ring at the monotone basepoint.

    Raises:
        UnknownBuiltin: When the name is not a built-in.
    """
    data = builtin(name)
    m = len(data.facets)
    variables = tuple(f"z{j + 1}" for j in range(m))
    zs = [LaurentPoly.variable(variables, z) for z in variables]
    linear = []
    for i in range(data.dim):
        relation = LaurentPoly.zero(variables)
        for normal, z in zip(data.normals, zs):
            if normal[i]:
                relation = relation + z * normal[i]
        linear.append(relation)
    values = data.l_values()
    quantum = []
    for collection in data.primitive_collections:
        product = LaurentPoly.constant(variables)
        for j in collection:
            product = product * zs[j]
        exponent = sum((values[j] for j in collection), QQ.zero)
        quantum.append(product - LaurentPoly.T_monomial(variables, (0,) * m, exponent))
    return QHPresentation(name, variables, linear, quantum, data)


def ks_image(pres: QHPresentation, P: Potential, f: LaurentPoly) -> LaurentPoly:
    """Image of a polynomial in the z_j under z_j -> T^(l_j(u)) y^(v_j)."""
    return f.substitute(dict(zip(pres.variables, P.monomials)), P.variables)


def ks_divisor_check(pres: QHPresentation, P: Potential) -> Report:
    """
    Check that z_j -> z_j(y) induces a ring isomorphism onto the Jacobian ring.

    Raises:
        RelationNotKilled: When a relation survives in the Jacobian ring.
        RankMismatch: When the map is not surjective or the ranks differ.
    """
    if len(pres.variables) != len(P.monomials):
        raise InputError(f"{len(pres.variables)} generators for {len(P.monomials)} facets")
    report = Report(f"ks divisor check {pres.name}", {"generators": len(pres.variables)})
    Q, dimension = jacobian_ring(P)

    for relation in pres.relations:
        witness = normal_form(ks_image(pres, P, relation), Q)
        if witness:
            raise RelationNotKilled(relation, witness)
    report.add("relations", True, f"{len(pres.relations)} relations vanish in Jac")

    presented = pres.quotient()
    if not presented.zero_dimensional:
        raise RankMismatch(f"presentation of {pres.name} is infinite dimensional")
    columns = []
    for exp in presented.staircase:
        standard = LaurentPoly.monomial(pres.variables, exp)
        columns.append(standard_coordinates(ks_image(pres, P, standard), Q))
    rows = [[columns[c][r] for c in range(len(columns))] for r in range(dimension)]
    image_rank = DomainMatrix(rows, (dimension, len(columns)), FIELD).rank() if columns and dimension else 0
    if image_rank != dimension:
        raise RankMismatch(f"image spans {image_rank} of {dimension} Jacobian dimensions")
    report.add("surjective", True, f"rank {image_rank}")

    if presented.dimension != dimension:
        raise RankMismatch(f"presentation rank {presented.dimension} vs Jacobian dimension {dimension}")
    report.add("rank", True, f"{dimension}")
    report.data.update({"rank": dimension, "relations": [str(r) for r in pres.relations]})
    return report


# endregion
