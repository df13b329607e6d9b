"""Mirrorforge Matrix Factorizations

Matrix factorizations over polynomial rings in local coordinates, their
A-infinity category and the length-zero map gamma from the Jacobian ring into
Hochschild cohomology.

A factorization (E, Q) has E = E^0 + E^1 free of ranks (r0, r1) and
Q = [[0, Q01], [Q10, 0]] with Q^2 = W * Id. In the A-infinity convention
hom(E, F) = Hom_R(F, E), so a generator of hom(E, F) is a matrix unit with
rows indexed by E and columns indexed by F, and

    m_1(P) = Q_E P - (-1)^|P| P Q_F,    m_2(P, R) = (-1)^|P| P R.

Completed local rings are modeled by adic truncation: a factorization built in
adic mode satisfies Q^2 = W modulo terms of total degree >= d.

Features:
    - MatrixFactorization, validate_mf (exact or adic verdict, tolerance-aware)
    - MFMorphism, mf_diff, mf_compose
    - MFCategory: the dg category of several factorizations, and direct sums
      over critical points with no morphisms between summands
    - local_potential, koszul_mf: Koszul factorizations at critical points,
      exact over Q(s) or numeric over CC with a zero tolerance
    - gamma, jacobian_primitive, check_gamma

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
from itertools import combinations
from math import lcm
from numbers import Complex, Rational
from typing import Any, Hashable, Mapping, Optional, Sequence, Union

from sympy import Symbol, binomial
from sympy.polys.domains import CC
from sympy.polys.matrices import DomainMatrix

from mirrorforge.core.coeff import FIELD, NovScalar, as_complex, parse_rational, specialize_T
from mirrorforge.core.exceptions import InputError, NotCritical, PotentialMismatch, RingMismatch
from mirrorforge.core.laurent import LaurentPoly
from mirrorforge.core.linalg import CoordinateSpace, rank, solve
from mirrorforge.core.multilinear import Gen, LinearCombination, MultilinearMap, TableMap, Vector
from mirrorforge.core.report import Report
from mirrorforge.core.signs import sign
from mirrorforge.structures.ainfty import AInfCategory
from mirrorforge.structures.hoch import HochschildCochain, cup, hochschild_diff, scalar_cochain

__all__ = [
    "NUMERIC_TOLERANCE",
    "MatrixFactorization",
    "MFMorphism",
    "MFOperations",
    "MFCategory",
    "Derivation",
    "mf_ring",
    "poly_from_laurent",
    "adic_order",
    "truncate",
    "validate_mf",
    "mf_diff",
    "mf_compose",
    "identity_morphism",
    "mf_ainfty_category",
    "critical_direct_sum",
    "is_numeric_point",
    "local_potential",
    "koszul_mf",
    "critical_mf_category",
    "hessian",
    "gamma",
    "jacobian_primitive",
    "check_gamma",
]

LOGGER = logging.getLogger(__name__)

NUMERIC_TOLERANCE = 1e-9


# region Rings


def mf_ring(variables: Sequence[str], domain: Any = FIELD):
    """Polynomial ring over Q(s), or over CC for numeric local analysis, in the given (local) coordinates."""
    return domain.poly_ring(*[Symbol(name) for name in variables])


def poly_from_laurent(f: LaurentPoly, ring) -> Any:
    """
    Convert a Laurent polynomial without negative exponents into ``ring``.

    Raises:
        InputError: On negative exponents or a variable mismatch.
    """
    names = tuple(str(sym) for sym in ring.symbols)
    if f.variables != names:
        raise RingMismatch(f"polynomial in {f.variables}, ring in {names}")
    if any(e < 0 for exp in f.terms for e in exp):
        raise InputError("matrix factorization entries must be polynomials")
    return ring.ring.from_dict(dict(f.terms))


def adic_order(poly) -> Union[int, float]:
    """Lowest total degree of a polynomial; inf for zero."""
    return min((sum(monom) for monom in poly.itermonoms()), default=float("inf"))


def truncate(poly, order: int):
    """Drop every term of total degree >= order."""
    return poly.ring.from_dict({monom: coeff for monom, coeff in poly.items() if sum(monom) < order})


# endregion

# region Factorizations


class MatrixFactorization:
    """
    A Z/2-graded free module E = E^0 + E^1 with an odd endomorphism Q.

    Args:
        ring: polynomial ring domain (see mf_ring).
        W: the potential, an element of ring.
        Q01: r0 x r1 matrix, the component E^1 -> E^0.
        Q10: r1 x r0 matrix, the component E^0 -> E^1.
        ranks: (r0, r1); inferred from the blocks when omitted.
        adic (int, optional): truncation order d; None for exact factorizations.
        N (int): root denominator of the Novikov coefficients.
        name (str): object label.
        tolerance (float, optional): coefficients of absolute value at most this count
            as zero; set for factorizations over CC.
    """

    def __init__(
        self,
        ring: Any,
        W: Any,
        Q01: Sequence[Sequence[Any]],
        Q10: Sequence[Sequence[Any]],
        ranks: Optional[tuple[int, int]] = None,
        adic: Optional[int] = None,
        N: int = 1,
        name: str = "E",
        tolerance: Optional[float] = None,
    ):
        if adic is not None and adic < 1:
            raise ValueError("adic order must be a positive integer")
        if tolerance is not None and tolerance <= 0:
            raise ValueError("tolerance must be positive")
        self.tolerance = tolerance
        self.ring = ring
        self.name = name
        self.N = N
        self.adic = adic
        self.W = ring.convert(W)
        if ranks is None:
            ranks = (len(Q01), len(Q10))
        self._ranks = (int(ranks[0]), int(ranks[1]))
        r0, r1 = self._ranks
        self.Q01 = self._block(Q01, r0, r1, "Q01")
        self.Q10 = self._block(Q10, r1, r0, "Q10")

    def _block(self, rows, m: int, n: int, label: str) -> DomainMatrix:
        rows = [list(row) for row in rows]
        if m == 0 or n == 0:
            if any(rows_ for rows_ in rows):
                raise InputError(f"{label} must be empty for ranks {self._ranks}")
            return DomainMatrix.zeros((m, n), self.ring)
        if len(rows) != m or any(len(row) != n for row in rows):
            raise InputError(f"{label} must be a {m}x{n} matrix for ranks {self._ranks}")
        return DomainMatrix([[self.ring.convert(value) for value in row] for row in rows], (m, n), self.ring)

    # region Properties

    @property
    def ranks(self) -> tuple[int, int]:
        return self._ranks

    @property
    def size(self) -> int:
        return sum(self._ranks)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(str(sym) for sym in self.ring.symbols)

    @property
    def mode(self) -> Union[str, dict]:
        return "exact" if self.adic is None else {"adic": self.adic}

    @property
    def Q(self) -> DomainMatrix:
        """The full odd matrix [[0, Q01], [Q10, 0]]."""
        r0 = self._ranks[0]
        dok = {(i, r0 + j): value for (i, j), value in self.Q01.to_dok().items()}
        dok.update({(r0 + i, j): value for (i, j), value in self.Q10.to_dok().items()})
        return DomainMatrix.from_dok(dok, (self.size, self.size), self.ring)

    @property
    def curvature(self) -> Any:
        """The scalar Q^2 actually realised (W itself for exact factorizations)."""
        if self.adic is None or not self.size:
            return self.W
        square = self.Q.matmul(self.Q).to_dok()
        return square.get((0, 0), self.ring.zero)

    # endregion

    def degree(self, index: int) -> int:
        """Degree of the index-th basis vector: E^0 first, then E^1."""
        return 0 if index < self._ranks[0] else 1

    def entries(self) -> dict[tuple[int, int], Any]:
        return dict(self.Q.to_dok())

    def derivative(self, index: int) -> dict[tuple[int, int], Any]:
        """Entries of dQ/dx_index."""
        gen = self.ring.gens[index]
        result = {}
        for pos, value in self.entries().items():
            value = value.diff(gen)
            if value:
                result[pos] = value
        return result

    def __repr__(self) -> str:
        return f"MatrixFactorization({self.name!r}, ranks={self._ranks}, mode={self.mode})"


def validate_mf(M: MatrixFactorization) -> Report:
    """
    Residual Q^2 - W * Id, with an exact-zero or adic-order verdict.

    Numeric factorizations drop residual coefficients within their tolerance first.
    """
    parameters = {"ranks": list(M.ranks), "mode": M.mode}
    if M.tolerance is not None:
        parameters["tolerance"] = M.tolerance
    report = Report(f"matrix factorization {M.name}", parameters)
    if not M.size:
        report.add("square", True, "zero module")
        return report
    identity = DomainMatrix.eye(M.size, M.ring).mul(M.W)
    residual = {}
    for pos, value in M.Q.matmul(M.Q).sub(identity).to_dok().items():
        if M.tolerance is not None:
            value = value.ring.from_dict({monom: c for monom, c in value.items() if abs(c) > M.tolerance})
        if value:
            residual[pos] = value
    order = min((adic_order(value) for value in residual.values()), default=float("inf"))
    witness = None
    if residual:
        pos = min(residual)
        witness = {"entry": list(pos), "residual": str(residual[pos])}
    if M.adic is None:
        report.add("square", not residual, "Q^2 = W*Id exactly" if not residual else "Q^2 != W*Id", witness)
    else:
        passed = order >= M.adic
        report.add("square", passed, f"residual of adic order {order} (required {M.adic})", witness)
    report.data["order"] = order
    return report


class MFMorphism:
    """
    A homogeneous R-linear map between factorizations, as a target.size x source.size matrix.

    Raises:
        RingMismatch: When source and target live over different rings.
        InputError: When the shape or the block parity is wrong.
    """

    def __init__(self, source: MatrixFactorization, target: MatrixFactorization, matrix: Any, degree: int):
        if source.ring != target.ring:
            raise RingMismatch(f"{source.name} and {target.name} live over different rings")
        self.source = source
        self.target = target
        self.degree = degree % 2
        if isinstance(matrix, DomainMatrix):
            dok = matrix.to_dok()
            shape = matrix.shape
        else:
            rows = [list(row) for row in matrix]
            shape = (len(rows), len(rows[0]) if rows else source.size)
            dok = {(i, j): source.ring.convert(value) for i, row in enumerate(rows) for j, value in enumerate(row)}
        if shape != (target.size, source.size):
            raise InputError(f"morphism matrix must be {target.size}x{source.size}, got {shape[0]}x{shape[1]}")
        dok = {pos: value for pos, value in dok.items() if value}
        for i, j in dok:
            if (target.degree(i) + source.degree(j)) % 2 != self.degree:
                raise InputError(f"entry ({i}, {j}) breaks the parity of a degree-{self.degree} morphism")
        self.matrix = DomainMatrix.from_dok(dok, shape, source.ring)

    @property
    def is_zero(self) -> bool:
        return self.matrix.is_zero_matrix

    def entries(self) -> dict[tuple[int, int], Any]:
        return {pos: value for pos, value in self.matrix.to_dok().items() if value}

    def __sub__(self, other: "MFMorphism") -> "MFMorphism":
        return MFMorphism(self.source, self.target, self.matrix.sub(other.matrix), self.degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MFMorphism):
            return NotImplemented
        return self.degree == other.degree and self.entries() == other.entries()

    def __repr__(self) -> str:
        return f"MFMorphism({self.source.name} -> {self.target.name}, degree={self.degree})"


def mf_diff(phi: MFMorphism) -> MFMorphism:
    """delta(phi) = Q_F phi - (-1)^|phi| phi Q_E for phi: E -> F."""
    left = phi.target.Q.matmul(phi.matrix)
    right = phi.matrix.matmul(phi.source.Q).mul(phi.source.ring.convert(sign(phi.degree)))
    return MFMorphism(phi.source, phi.target, left.sub(right), phi.degree + 1)


def mf_compose(phi: MFMorphism, psi: MFMorphism) -> MFMorphism:
    """phi o psi (psi first)."""
    if psi.target is not phi.source:
        raise InputError(f"cannot compose {phi} after {psi}")
    return MFMorphism(psi.source, phi.target, phi.matrix.matmul(psi.matrix), phi.degree + psi.degree)


def identity_morphism(M: MatrixFactorization) -> MFMorphism:
    return MFMorphism(M, M, DomainMatrix.eye(M.size, M.ring), 0)


# endregion

# region A-infinity category


class MFOperations(MultilinearMap):
    """m_1 = delta and m_2(P, R) = (-1)^|P| P R on matrix units; every other m_k vanishes."""

    def __init__(self, factorizations: Mapping[Hashable, MatrixFactorization], domain: Any):
        super().__init__(1, domain)
        self.factorizations = dict(factorizations)
        self.matrices = {X: M.entries() for X, M in self.factorizations.items()}

    def unit(self, X: Hashable, Y: Hashable, a: int, b: int) -> Gen:
        """Matrix unit E_ab in hom(X, Y) = Hom(Y, X)."""
        deg = self.factorizations[X].degree(a) + self.factorizations[Y].degree(b)
        return Gen((a, b), X, Y, deg % 2)

    def differential(self, gen: Gen) -> Vector:
        X, Y = gen.source, gen.target
        a, b = gen.name
        result = Vector()
        for (row, col), value in self.matrices[X].items():
            if col == a:
                result.add_term(self.unit(X, Y, row, b), value)
        twist = -sign(gen.deg)
        for (row, col), value in self.matrices[Y].items():
            if row == b:
                result.add_term(self.unit(X, Y, a, col), value * twist)
        return result

    def product(self, left: Gen, right: Gen) -> Vector:
        a, b = left.name
        c, d = right.name
        if b != c:
            return Vector()
        return Vector({self.unit(left.source, right.target, a, d): self.domain.one * sign(left.deg)})

    def _evaluate(self, gens, start):
        if len(gens) == 1:
            return self.differential(gens[0])
        if len(gens) == 2:
            return self.product(*gens)
        return Vector()


class MFCategory(AInfCategory):
    """
    The A-infinity category of factorizations grouped into summands.

    Objects of different summands have no morphisms between them. Within a
    summand every factorization must realise the same Q^2.

    Args:
        name (str): label.
        summands: {summand label: {object label: MatrixFactorization}}.

    Raises:
        InputError: When empty or given a numeric factorization.
        RingMismatch: When the factorizations do not share a ring and root of T.
        PotentialMismatch: When a summand realises two potentials.
    """

    def __init__(self, name: str, summands: Mapping[Hashable, Mapping[Hashable, MatrixFactorization]]):
        factorizations = {X: M for objects in summands.values() for X, M in objects.items()}
        if not factorizations:
            raise InputError("an MF category needs at least one factorization")
        if any(M.tolerance is not None for M in factorizations.values()):
            raise InputError("numeric factorizations over CC are validated with validate_mf, not assembled")
        rings = {M.ring for M in factorizations.values()}
        if len(rings) != 1:
            raise RingMismatch("factorizations live over different rings")
        if len({M.N for M in factorizations.values()}) != 1:
            raise RingMismatch("factorizations use different roots of T")
        ring = next(iter(rings))
        ops = MFOperations(factorizations, ring)
        homs, units = {}, {}
        for objects in summands.values():
            for X in objects:
                for Y in objects:
                    homs[(X, Y)] = [
                        ops.unit(X, Y, a, b) for a in range(objects[X].size) for b in range(objects[Y].size)
                    ]
                size = objects[X].size
                units[X] = Vector({ops.unit(X, X, a, a): ring.one for a in range(size)})
        super().__init__(name, list(factorizations), homs, ring, ops, units, 2, True)
        self.factorizations = factorizations
        self.summands = {label: list(objects) for label, objects in summands.items()}
        self.curvatures = {}
        for label, objects in summands.items():
            values = {X: M.curvature for X, M in objects.items()}
            distinct = set(values.values())
            if len(distinct) > 1:
                raise PotentialMismatch([[str(X), str(W)] for X, W in values.items()])
            self.curvatures[label] = distinct.pop() if distinct else ring.zero
        self.potentials = {X: M.W for X, M in factorizations.items()}
        self.N = next(iter(factorizations.values())).N

    @property
    def ring(self):
        return self.domain

    def summand_of(self, X: Hashable) -> Hashable:
        for label, objects in self.summands.items():
            if X in objects:
                return label
        raise KeyError(X)

    def to_vector(self, phi: MFMorphism) -> Vector:
        """A morphism E -> F as an element of hom(F, E)."""
        X = self._label(phi.target)
        Y = self._label(phi.source)
        return Vector({self.ops.unit(X, Y, i, j): value for (i, j), value in phi.entries().items()})

    def to_morphism(self, vec: Vector, X: Hashable, Y: Hashable, degree: int) -> MFMorphism:
        """An element of hom(X, Y) as a morphism Y -> X."""
        source, target = self.factorizations[Y], self.factorizations[X]
        dok = {gen.name: value for gen, value in vec.items()}
        return MFMorphism(source, target, DomainMatrix.from_dok(dok, (target.size, source.size), self.domain), degree)

    def _label(self, M: MatrixFactorization) -> Hashable:
        for X, candidate in self.factorizations.items():
            if candidate is M:
                return X
        raise InputError(f"{M.name} is not an object of {self.name}")


def mf_ainfty_category(
    factorizations: Union[Mapping[Hashable, MatrixFactorization], Sequence[MatrixFactorization]], name: str = "MF"
) -> MFCategory:
    """
    The dg category of factorizations over a common ring and potential.

    Raises:
        PotentialMismatch: When the factorizations realise different potentials.
    """
    if not isinstance(factorizations, Mapping):
        factorizations = {M.name: M for M in factorizations}
    return MFCategory(name, {name: factorizations})


def critical_direct_sum(summands: Mapping[Hashable, MFCategory], name: str = "MF") -> MFCategory:
    """Direct sum over critical points; objects become (summand label, object)."""
    parts = {
        label: {(label, X): C.factorizations[X] for X in C.objects} for label, C in summands.items()
    }
    return MFCategory(name, parts)


# endregion

# region Koszul factorizations


def _point_value(value: Any, N: int):
    if isinstance(value, NovScalar):
        return value.with_N(N).value
    if FIELD.of_type(value):
        return value
    return FIELD.convert(parse_rational(value))


def _numeric_value(value: Any, t0: Any, N: int) -> complex:
    if isinstance(value, NovScalar):
        return as_complex(specialize_T(value, t0))
    if FIELD.of_type(value):
        return as_complex(specialize_T(value, t0, N))
    if isinstance(value, Complex):
        return complex(value)
    return as_complex(parse_rational(value))


def _point_N(value: Any) -> int:
    return value.N if isinstance(value, NovScalar) else 1


def _binomial_series(x, eta, power: int, order: int):
    """(eta + x)^power truncated below total degree ``order``."""
    ring = x.ring
    if not eta:
        if power < 0:
            raise InputError("a negative power is singular at a zero coordinate")
        return x**power if power < order else ring.zero
    terms = ring.zero
    top = order if power < 0 else min(order, power + 1)
    for k in range(top):
        terms += x**k * (ring.domain.convert(int(binomial(power, k))) * eta ** (power - k))
    return terms


def is_numeric_point(eta: Sequence[Any]) -> bool:
    """True when some coordinate is a float or complex number rather than an exact value."""
    return any(isinstance(value, Complex) and not isinstance(value, Rational) for value in eta)


def local_potential(W: LaurentPoly, eta: Sequence[Any], order: int, t0: Any = None) -> tuple[Any, Any, int]:
    """
    Taylor expansion of W at eta in local coordinates x = y - eta, below total degree ``order``.

    Exact points expand over Q(s). With ``t0`` the coefficients are specialised at
    T = t0 and the expansion runs over CC; a float or complex coordinate requires it.

    Args:
        W: Laurent polynomial.
        eta: coordinates of the point (rationals, "p/q" strings, NovScalar or Q(s)
            elements; complex numbers in numeric mode).
        order: truncation order.
        t0 (optional): value of T for numeric local analysis.

    Returns:
        tuple: (ring, expansion, N), the ring named after W's variables.

    Raises:
        InputError: When the point has the wrong arity, or is numeric without t0.
    """
    if len(eta) != W.arity:
        raise InputError(f"point has {len(eta)} coordinates, potential has {W.arity} variables")
    if t0 is None and is_numeric_point(eta):
        raise InputError("a numeric point needs a value of T for local analysis")
    N = lcm(W.N, *(_point_N(value) for value in eta))
    W = W.with_N(N)
    if t0 is None:
        ring = mf_ring(W.variables)
        values = [_point_value(value, N) for value in eta]
        coefficients = dict(W.terms)
    else:
        ring = mf_ring(W.variables, CC)
        values = [CC.convert(_numeric_value(value, t0, N)) for value in eta]
        coefficients = {exp: CC.convert(as_complex(specialize_T(c, t0, N))) for exp, c in W.terms.items()}
    gens = ring.ring.gens
    expansion = ring.ring.zero
    for exp, coeff in coefficients.items():
        term = ring.ring.from_dict({(0,) * W.arity: coeff})
        for x, value, power in zip(gens, values, exp):
            if power:
                term = truncate(term * _binomial_series(x, value, power, order), order)
        expansion += term
    return ring, expansion, N


def _exterior_basis(n: int) -> list[tuple[int, ...]]:
    subsets = [subset for size in range(n + 1) for subset in combinations(range(n), size)]
    return [s for s in subsets if len(s) % 2 == 0] + [s for s in subsets if len(s) % 2 == 1]


def koszul_mf(
    W: LaurentPoly,
    eta: Sequence[Any],
    dmax: int,
    name: Optional[str] = None,
    t0: Any = None,
    tolerance: float = NUMERIC_TOLERANCE,
) -> MatrixFactorization:
    """
    Koszul factorization of W - W(eta) at a critical point.

    W - W(eta) is truncated below total degree dmax and divided sequentially in
    variable order, f = sum_i x_i W_i; then Q = sum_i (W_i wedge_i + x_i contract_i)
    on the exterior algebra, so Q^2 = f * Id.

    With ``t0`` (required for numeric points) the factorization lives over CC:
    gradient entries within ``tolerance`` count as zero and are dropped, and the
    result carries the tolerance for validate_mf.

    Raises:
        NotCritical: When the gradient at eta is nonzero (beyond tolerance in numeric mode).
    """
    if dmax < 2:
        raise ValueError("dmax must be at least 2")
    ring, local, N = local_potential(W, eta, 2 * dmax, t0)
    numeric = t0 is not None
    n = W.arity
    domain = ring.ring.domain
    gradient = [local.get(tuple(int(i == j) for j in range(n)), domain.zero) for i in range(n)]
    if any(abs(g) > tolerance for g in gradient) if numeric else any(gradient):
        raise NotCritical(f"gradient at {list(map(str, eta))} is {[str(g) for g in gradient]}")
    if numeric:
        LOGGER.debug("numeric Koszul factorization at %s, |gradient| <= %g", list(map(str, eta)), tolerance)
    f = ring.ring.from_dict({monom: coeff for monom, coeff in local.items() if sum(monom) >= 2})
    f_trunc = truncate(f, dmax)
    exact = all(e >= 0 for exp in W.terms for e in exp) and adic_order(f - f_trunc) == float("inf")
    if not exact:
        LOGGER.info("truncating the local potential at total degree %d", dmax)
    parts = [dict() for _ in range(n)]
    for monom, coeff in f_trunc.items():
        i = next(pos for pos, e in enumerate(monom) if e)
        parts[i][tuple(e - (pos == i) for pos, e in enumerate(monom))] = coeff
    quotients = [ring.ring.from_dict(part) for part in parts]
    basis = _exterior_basis(n)
    index = {subset: pos for pos, subset in enumerate(basis)}
    size = len(basis)
    full = [[ring.ring.zero] * size for _ in range(size)]
    for subset in basis:
        col = index[subset]
        for i in range(n):
            before = sum(1 for j in subset if j < i)
            if i in subset:
                row = index[tuple(j for j in subset if j != i)]
                full[row][col] += ring.ring.gens[i] * sign(before)
            else:
                row = index[tuple(sorted(subset + (i,)))]
                full[row][col] += quotients[i] * sign(before)
    r0 = size // 2 if n else 1
    Q01 = [row[r0:] for row in full[:r0]]
    Q10 = [row[:r0] for row in full[r0:]]
    label = name or "K(" + ", ".join(str(value) for value in eta) + ")"
    return MatrixFactorization(
        ring, f, Q01, Q10, (r0, size - r0), None if exact else dmax, N, label, tolerance if numeric else None
    )


def critical_mf_category(
    W: LaurentPoly, points: Mapping[Hashable, Sequence[Any]], dmax: int, name: str = "MF"
) -> MFCategory:
    """Direct sum over the given exact critical points of their Koszul factorizations."""
    summands = {}
    for label, eta in points.items():
        M = koszul_mf(W, eta, dmax, name=f"K[{label}]")
        summands[label] = {(label, "K"): M}
    return MFCategory(name, summands)


def hessian(f, ring) -> DomainMatrix:
    """Hessian of a polynomial at the origin of its coordinates."""
    domain = f.ring.domain
    n = len(ring.symbols)
    dok = {}
    for i in range(n):
        for j in range(n):
            monom = tuple((k == i) + (k == j) for k in range(n))
            value = f.get(monom, domain.zero)
            if value:
                dok[(i, j)] = value * 2 if i == j else value
    return DomainMatrix.from_dok(dok, (n, n), domain)


# endregion

# region Gamma


def gamma(C: MFCategory, rs: Union[Mapping[Hashable, Any], Any]) -> HochschildCochain:
    """
    Length-zero cochain X -> r_eta * id_X on the objects of summand eta.

    Args:
        C: MF category.
        rs: {summand label: ring element}; a single element applies to every summand.
    """
    if not isinstance(rs, Mapping):
        rs = {label: rs for label in C.summands}
    scalars = {}
    for label, r in rs.items():
        if label not in C.summands:
            raise InputError(f"unknown summand {label!r}")
        for X in C.summands[label]:
            scalars[X] = C.domain.convert(r)
    return scalar_cochain(C, scalars, "gamma")


class Derivation(MultilinearMap):
    """Length-one cochain P -> factor * dP/dx applied entrywise on the given objects; not ring-linear."""

    def __init__(self, C: MFCategory, index: int, factor: Any, objects: Sequence[Hashable]):
        super().__init__(0, C.domain, False)
        self.gen = C.domain.gens[index]
        self.factor = C.domain.convert(factor)
        self.objects = set(objects)

    def _evaluate_vectors(self, vectors, start):
        if len(vectors) != 1 or vectors[0].ends()[0] not in self.objects:
            return Vector()
        return vectors[0].map_coefficients(lambda value: self.factor * value.diff(self.gen))


def jacobian_primitive(C: MFCategory, label: Hashable, index: int, factor: Any = 1) -> tuple[HochschildCochain, Any]:
    """
    A cochain H with b*H = gamma(factor * dW/dx_index) on summand ``label``.

    H is factor * dQ/dx_index at length zero minus factor * d/dx_index at length one.

    Returns:
        tuple: (H, the Jacobian element factor * dW/dx_index).
    """
    factor = C.domain.convert(factor)
    objects = C.summands[label]
    curvature = {}
    for X in objects:
        values = C.factorizations[X].derivative(index)
        curvature[X] = Vector({C.ops.unit(X, X, a, b): factor * value for (a, b), value in values.items()})
    length_zero = TableMap({}, curvature, 0, C.domain)
    length_one = Derivation(C, index, -factor, objects)
    H = HochschildCochain(C, LinearCombination([(1, length_zero), (1, length_one)], C.domain, 0), "H")
    element = factor * C.curvatures[label].diff(C.domain.gens[index])
    return H, element


def _samples(C: MFCategory, objects: Sequence[Hashable], length: int):
    """Basis tuples inside a summand, plus copies with the first input multiplied by each coordinate."""
    allowed = set(objects)
    one = C.domain.one
    for X, gens in C.basis_tuples(length):
        if X not in allowed:
            continue
        vectors = [Vector.basis(g, one) for g in gens]
        yield X, gens, vectors
        if vectors:
            for x in C.domain.gens:
                yield X, gens, [vectors[0].scale(x)] + vectors[1:]


def _sampled_residual(theta: HochschildCochain, C: MFCategory, objects: Sequence[Hashable], lmax: int):
    for k in range(lmax + 1):
        for X, gens, vectors in _samples(C, objects, k):
            value = theta.map(vectors, X)
            if value:
                return {"inputs": [str(g) for g in gens], "object": str(X), "value": repr(value)}
    return None


def check_gamma(
    C: MFCategory,
    elements: Optional[Mapping[Hashable, Sequence[Any]]] = None,
    lmax: int = 2,
) -> Report:
    """
    Checks of the map gamma on every summand.

    (a) b*gamma(r) = 0; (b) gamma(r) cup gamma(r') = gamma(r r'); (c) gamma of every
    generator of the Jacobian ideal (times 1 and each coordinate) is b* of an explicit
    primitive; (d) at Morse summands the identity of some factorization stays
    nonzero in End(E) reduced to the residue field, so gamma(1) is not a coboundary
    and gamma is injective on the one-dimensional local ring.
    """
    elements = elements or {}
    report = Report(f"gamma on {C.name}", {"lmax": lmax})
    for label, objects in C.summands.items():
        rs = [C.domain.one] + [C.domain.convert(r) for r in elements.get(label, [])]
        for r in rs:
            witness = _sampled_residual(hochschild_diff(gamma(C, {label: r})), C, objects, lmax)
            report.add(f"{label}:cocycle[{r}]", witness is None, "b*gamma(r) = 0", witness)
        for r in rs:
            for r2 in rs:
                difference = cup(gamma(C, {label: r}), gamma(C, {label: r2})) - gamma(C, {label: r * r2})
                witness = _sampled_residual(difference, C, objects, lmax)
                detail = "gamma(r) cup gamma(r') = gamma(rr')"
                report.add(f"{label}:product[{r},{r2}]", witness is None, detail, witness)
        factors = [C.domain.one] + list(C.domain.gens)
        for index in range(len(C.domain.gens)):
            for factor in factors:
                H, element = jacobian_primitive(C, label, index, factor)
                difference = hochschild_diff(H) - gamma(C, {label: element})
                witness = _sampled_residual(difference, C, objects, lmax)
                report.add(
                    f"{label}:ideal[{factor}*d{index}W]", witness is None, f"gamma({element}) = b*H", witness
                )
        _check_morse(report, C, label)
    return report


def _reduced_endomorphisms(E: MatrixFactorization) -> tuple[int, int, bool]:
    """
    Cohomology of End(E) tensored down to the residue field, Q reduced at the origin.

    Returns:
        tuple: (even dimension, odd dimension, whether the identity survives).
    """
    domain = E.ring.domain
    origin = (0,) * len(E.ring.symbols)
    Q0 = {pos: value.get(origin, domain.zero) for pos, value in E.entries().items()}
    Q0 = {pos: value for pos, value in Q0.items() if value}
    size = E.size
    units = {
        parity: [Gen((a, b), E.name, E.name, parity) for a in range(size) for b in range(size)
                 if (E.degree(a) + E.degree(b)) % 2 == parity]
        for parity in (0, 1)
    }

    def differential(unit: Gen) -> Vector:
        a, b = unit.name
        image = Vector()
        for (r, c), value in Q0.items():
            if c == a:
                image.add_term(Gen((r, b), E.name, E.name, 1 - unit.deg), value)
            if r == b:
                image.add_term(Gen((a, c), E.name, E.name, 1 - unit.deg), -sign(unit.deg) * value)
        return image

    images = {parity: [differential(unit) for unit in units[parity]] for parity in (0, 1)}
    ranks = {
        parity: rank(images[parity], CoordinateSpace(units[1 - parity]), domain) if units[0] and units[1] else 0
        for parity in (0, 1)
    }
    dims = tuple(len(units[parity]) - ranks[parity] - ranks[1 - parity] for parity in (0, 1))
    identity = Vector({Gen((a, a), E.name, E.name, 0): domain.one for a in range(size)})
    survives = bool(size) and solve(images[1], identity, CoordinateSpace(units[0]), domain) is None
    return dims[0], dims[1], survives


def _check_morse(report: Report, C: MFCategory, label: Hashable):
    W = C.curvatures[label]
    n = len(C.domain.gens)
    determinant = hessian(W, C.domain).det() if n else FIELD.one
    if not determinant:
        report.warnings.append(f"summand {label} is not Morse; injectivity not checked")
        return
    critical = not any(W.get(tuple(int(i == j) for j in range(n)), FIELD.zero) for i in range(n))
    reduced = {str(X): _reduced_endomorphisms(C.factorizations[X]) for X in C.summands[label]}
    survives = [X for X, (_, _, alive) in reduced.items() if alive]
    passed = critical and bool(survives)
    dims = ", ".join(f"{X}: {even}|{odd}" for X, (even, odd, _) in reduced.items())
    detail = f"det Hess = {determinant}; reduced End cohomology {dims}; identity survives on {survives or 'no object'}"
    report.add(
        f"{label}:injective",
        passed,
        detail,
        None if passed else {"critical": critical, "objects": sorted(reduced)},
        reduced={X: list(value[:2]) for X, value in reduced.items()},
    )


# endregion
