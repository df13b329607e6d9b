"""Mirrorforge Laurent Polynomials

Sparse multivariate Laurent polynomials over the rational Novikov model and
the Groebner machinery behind quotient-ring dimensions.

Coefficients live in Q(s), s = T^(1/N); the root denominator N travels with
each polynomial and is unified (lcm) whenever two polynomials meet.

Features:
    - LaurentPoly: ring arithmetic, log-derivatives, substitution, numeric evaluation
    - parse_expr: recursive-descent parser for the expression grammar
      (rationals, T^(p/q), variables with integer powers, + - * /, parentheses)
    - groebner_basis: torus-saturated Buchberger bases with the standard-monomial staircase
    - normal_form, quotient_dimension, multiplication_matrix

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import logging
import re
from dataclasses import dataclass, field
from itertools import product
from math import lcm
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from sympy import Symbol
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import ProductOrder, grevlex
from sympy.polys.rings import PolyRing

from mirrorforge.core.coeff import FIELD, QQ, NovScalar, as_complex, rational_to_str, rescale_fraction, specialize_T
from mirrorforge.core.exceptions import NotZeroDimensional, ParseError, RingMismatch, UnknownVariable

__all__ = [
    "LaurentPoly",
    "Ideal",
    "QuotientBasis",
    "parse_expr",
    "log_derivative",
    "groebner_basis",
    "normal_form",
    "quotient_dimension",
    "multiplication_matrix",
    "standard_coordinates",
]

LOGGER = logging.getLogger(__name__)

Exponent = tuple[int, ...]


def _as_field(value: Any):
    return value if FIELD.of_type(value) else FIELD.convert(value)


class LaurentPoly:
    """
    Laurent polynomial sum c_a y^a with c_a in Q(s), s = T^(1/N).

    Args:
        variables: ordered variable names.
        terms: {exponent tuple: coefficient}; coefficients are converted into Q(s).
        N (int): root denominator of the coefficients.
    """

    __slots__ = ("variables", "terms", "N")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exponent, Any]] = None, N: int = 1):
        if N < 1:
            raise ValueError("Root denominator must be a positive integer")
        self.variables = tuple(variables)
        self.N = int(N)
        self.terms: dict[Exponent, Any] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.variables):
                raise ValueError(f"Exponent {exp} does not match variables {self.variables}")
            self._add(exp, _as_field(coeff))

    def _add(self, exp: Exponent, coeff):
        value = self.terms.get(exp)
        value = coeff if value is None else value + coeff
        if value:
            self.terms[exp] = value
        else:
            self.terms.pop(exp, None)

    # region Constructors

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value: Any = 1) -> "LaurentPoly":
        if isinstance(value, NovScalar):
            return cls(variables, {(0,) * len(variables): value.value}, value.N)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Sequence[int], coeff: Any = 1) -> "LaurentPoly":
        if isinstance(coeff, NovScalar):
            return cls(variables, {tuple(exp): coeff.value}, coeff.N)
        return cls(variables, {tuple(exp): coeff})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "LaurentPoly":
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = 1
        return cls.monomial(variables, exp)

    @classmethod
    def T_monomial(cls, variables: Sequence[str], exp: Sequence[int], t_exponent, coeff: Any = 1) -> "LaurentPoly":
        """coeff * T^t_exponent * y^exp."""
        scalar = NovScalar.T_power(t_exponent) * NovScalar(_as_field(coeff))
        return cls.monomial(variables, exp, scalar)

    # endregion

    # region Properties

    @property
    def arity(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self.terms)

    def constant_coefficient(self) -> NovScalar:
        return NovScalar(self.terms.get((0,) * self.arity, FIELD.zero), self.N)

    def coefficient(self, exp: Sequence[int]) -> NovScalar:
        return NovScalar(self.terms.get(tuple(exp), FIELD.zero), self.N)

    # endregion

    def with_N(self, N: int) -> "LaurentPoly":
        if N == self.N:
            return self
        if N % self.N:
            raise RingMismatch(f"cannot rewrite coefficients over T^(1/{N}) from T^(1/{self.N})")
        factor = N // self.N
        return LaurentPoly(self.variables, {e: rescale_fraction(c, factor) for e, c in self.terms.items()}, N)

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise RingMismatch(f"variables {other.variables} differ from {self.variables}")
            return other
        return LaurentPoly.constant(self.variables, other)

    def _unify(self, other) -> tuple["LaurentPoly", "LaurentPoly"]:
        other = self._lift(other)
        N = lcm(self.N, other.N)
        return self.with_N(N), other.with_N(N)

    # region Arithmetic

    def __add__(self, other):
        a, b = self._unify(other)
        result = LaurentPoly(a.variables, a.terms, a.N)
        for exp, coeff in b.terms.items():
            result._add(exp, coeff)
        return result

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()}, self.N)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        a, b = self._unify(other)
        result = LaurentPoly(a.variables, N=a.N)
        for (e1, c1), (e2, c2) in product(a.terms.items(), b.terms.items()):
            result._add(tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
        return result

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if not other.is_constant() or other.is_zero():
            raise ZeroDivisionError("division only by nonzero constants")
        return self * other.inverse_monomial()

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse of a monomial c y^a, namely c^-1 y^-a."""
        if not self.is_monomial():
            raise ValueError("only monomials are invertible")
        ((exp, coeff),) = self.terms.items()
        return LaurentPoly(self.variables, {tuple(-e for e in exp): 1 / coeff}, self.N)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse_monomial() ** (-exponent)
        result = LaurentPoly.constant(self.variables).with_N(self.N)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            a, b = self._unify(other)
        except (RingMismatch, TypeError, ValueError):
            return NotImplemented
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms)))

    def __bool__(self):
        return bool(self.terms)

    # endregion

    def log_derivative(self, index: Union[int, str]) -> "LaurentPoly":
        """y_i d/dy_i: every term c y^a becomes c a_i y^a."""
        i = self.variables.index(index) if isinstance(index, str) else index
        if not 0 <= i < self.arity:
            raise IndexError(f"variable index {index} out of range")
        return LaurentPoly(self.variables, {e: c * e[i] for e, c in self.terms.items() if e[i]}, self.N)

    def substitute(self, mapping: Mapping[str, "LaurentPoly"], variables: Sequence[str]) -> "LaurentPoly":
        """
        Replace variables by Laurent polynomials in a new variable set.

        Negative powers require the substituted value to be a monomial.
        """
        variables = tuple(variables)
        images = {
            name: mapping[name] if name in mapping else LaurentPoly.variable(variables, name) for name in self.variables
        }
        result = LaurentPoly(variables)
        for exp, coeff in self.terms.items():
            term = LaurentPoly(variables, {(0,) * len(variables): coeff}, self.N)
            for name, power in zip(self.variables, exp):
                if power:
                    term = term * images[name] ** power
            result = result + term
        return result

    def clear_denominators(self) -> tuple["LaurentPoly", Exponent]:
        """Multiply by the smallest monomial y^c making every exponent nonnegative."""
        shift = tuple(max(0, -min((e[i] for e in self.terms), default=0)) for i in range(self.arity))
        terms = {tuple(x + c for x, c in zip(e, shift)): v for e, v in self.terms.items()}
        return LaurentPoly(self.variables, terms, self.N), shift

    def numeric_terms(self, t0) -> list[tuple[Exponent, complex]]:
        """Terms with coefficients specialised at T = t0."""
        return [(exp, as_complex(specialize_T(coeff, t0, self.N))) for exp, coeff in self.terms.items()]

    def evaluate(self, point: Sequence[complex], t0) -> complex:
        total = 0j
        for exp, coeff in self.numeric_terms(t0):
            value = coeff
            for y, e in zip(point, exp):
                value *= complex(y) ** e
            total += value
        return total

    def t_valuation(self):
        """Minimal T-valuation among the coefficients."""
        return min((NovScalar(c, self.N).t_valuation() for c in self.terms.values()), default=float("inf"))

    # region Serialization

    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [
                {"exp": list(exp), "coeff": NovScalar(self.terms[exp], self.N).to_json()} for exp in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        variables = tuple(data["vars"])
        result = cls(variables)
        for term in data.get("terms", []):
            result = result + cls.monomial(variables, term["exp"], NovScalar.from_json(term["coeff"]))
        return result

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r}, vars={self.variables})"

    # endregion


# region Printing


def _s_monomial(coeff) -> Optional[tuple[Any, int]]:
    """(a, k) when coeff = a s^k, else None."""
    numer, denom = coeff.numer, coeff.denom
    if len(numer) != 1 or len(denom) != 1:
        return None
    ((e1,), a), ((e2,), b) = next(iter(numer.items())), next(iter(denom.items()))
    return QQ.convert(a) / QQ.convert(b), e1 - e2


def _t_power(k: int, N: int) -> str:
    if not k:
        return ""
    q = QQ(k, N)
    num, den = QQ.numer(q), QQ.denom(q)
    if den == 1:
        return "T" if num == 1 else f"T^{num}"
    return f"T^({num}/{den})"


def _join(pieces: list[tuple[bool, str]]) -> str:
    if not pieces:
        return "0"
    text = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, body in pieces[1:]:
        text += (" - " if negative else " + ") + body
    return text


def _format_s_poly(poly, N: int) -> str:
    pieces = []
    for (k,), a in sorted(poly.items(), key=lambda item: item[0], reverse=True):
        a = QQ.convert(a)
        body = [rational_to_str(abs(a))] if abs(a) != 1 or not k else []
        if k:
            body.append(_t_power(k, N))
        pieces.append((a < 0, "*".join(body)))
    return _join(pieces)


def _format_term(exp: Exponent, coeff, N: int, variables: Sequence[str], drop_power: int = 0):
    pieces: list[str] = []
    negative = False
    mono = _s_monomial(coeff)
    if mono is not None:
        a, k = mono
        negative = a < 0
        if abs(a) != 1:
            pieces.append(rational_to_str(abs(a)))
        if k - drop_power:
            pieces.append(_t_power(k - drop_power, N))
    else:
        text = f"({_format_s_poly(coeff.numer, N)})"
        if coeff.denom != 1:
            text += f"/({_format_s_poly(coeff.denom, N)})"
        pieces.append(text)
    for name, e in zip(variables, exp):
        if e == 1:
            pieces.append(name)
        elif e:
            pieces.append(f"{name}^{e}")
    return negative, "*".join(pieces) or "1"


def format_poly(poly: LaurentPoly) -> str:
    """
    Print in descending lexicographic term order, factoring a common T-power.

    The output parses back to the same polynomial with parse_expr.
    """
    if not poly.terms:
        return "0"
    order = sorted(poly.terms, reverse=True)
    powers = {m[1] if m else None for m in (_s_monomial(poly.terms[e]) for e in order)}
    common = next(iter(powers)) if len(powers) == 1 else None
    if common and len(order) > 1:
        inner = [_format_term(e, poly.terms[e], poly.N, poly.variables, common) for e in order]
        return f"{_t_power(common, poly.N)}*({_join(inner)})"
    return _join([_format_term(e, poly.terms[e], poly.N, poly.variables) for e in order])


# endregion

# region Parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])|(?P<bad>\S))")


class _Parser:
    """Recursive descent over the token stream of one expression."""

    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens: list[tuple[str, str, int]] = []
        for match in _TOKEN.finditer(text):
            kind = match.lastgroup
            if kind is None:
                continue
            if kind == "bad":
                raise ParseError(f"unexpected character {match.group(kind)!r}", match.start(kind), text)
            self.tokens.append((kind, match.group(kind), match.start(kind)))
        self.tokens.append(("end", "", len(text)))
        self.pos = 0

    @property
    def current(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def accept(self, op: str) -> bool:
        kind, value, _ = self.current
        if kind == "op" and value == op:
            self.pos += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            kind, value, where = self.current
            raise ParseError(f"expected {op!r}, found {value or 'end of input'!r}", where, self.text)

    def parse(self) -> LaurentPoly:
        if self.current[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        result = self.expression()
        kind, value, where = self.current
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", where, self.text)
        return result

    def expression(self) -> LaurentPoly:
        negative = False
        if self.accept("-"):
            negative = True
        else:
            self.accept("+")
        result = self.term()
        if negative:
            result = -result
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> LaurentPoly:
        result = self.factor()
        while True:
            if self.accept("*"):
                result = result * self.factor()
            elif self.current[:2] == ("op", "/"):
                where = self.advance()[2]
                divisor = self.factor()
                if divisor.is_zero() or not divisor.is_constant():
                    raise ParseError("division by zero or by a non-constant", where, self.text)
                result = result / divisor
            else:
                return result

    def factor(self) -> LaurentPoly:
        kind, value, where = self.current
        base = self.primary()
        if not self.accept("^"):
            return base
        exp_at = self.current[2]
        exponent = self.exponent()
        if kind == "name" and value == "T":
            return LaurentPoly.T_monomial(self.variables, (0,) * len(self.variables), exponent)
        if QQ.denom(exponent) != 1:
            raise ParseError("fractional powers are only allowed on T", exp_at, self.text)
        power = int(QQ.numer(exponent))
        if power < 0 and not base.is_monomial():
            raise ParseError("negative powers are only allowed on monomials", exp_at, self.text)
        return base**power

    def exponent(self):
        if self.accept("("):
            negative = self.accept("-")
            num = self.integer()
            den = 1
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator in exponent", self.tokens[self.pos - 1][2], self.text)
            self.expect(")")
            return QQ(-num if negative else num, den)
        negative = self.accept("-")
        num = self.integer()
        return QQ(-num if negative else num)

    def integer(self) -> int:
        kind, value, where = self.current
        if kind != "num":
            raise ParseError(f"expected an integer, found {value or 'end of input'!r}", where, self.text)
        self.pos += 1
        return int(value)

    def primary(self) -> LaurentPoly:
        kind, value, where = self.advance()
        if kind == "num":
            return LaurentPoly.constant(self.variables, QQ(int(value)))
        if kind == "name":
            if value == "T":
                return LaurentPoly.T_monomial(self.variables, (0,) * len(self.variables), 1)
            if value not in self.variables:
                raise UnknownVariable(value, where)
            return LaurentPoly.variable(self.variables, value)
        if kind == "op" and value == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {value or 'end of input'!r}", where, self.text)


def parse_expr(text: str, variables: Sequence[str]) -> LaurentPoly:
    """
    Parse an expression into a LaurentPoly in the given variables.

    Args:
        text (str): expression such as "T^(1/2)*(y1 + y1^-1)".
        variables: admissible variable names; "T" is reserved for the Novikov parameter.

    Raises:
        ParseError: With the offending position.
        UnknownVariable: For names outside ``variables``.
    """
    if "T" in variables:
        raise ValueError("'T' is reserved for the Novikov parameter")
    return _Parser(text, variables).parse()


# endregion

# region Groebner bases


def log_derivative(f: LaurentPoly, index: Union[int, str]) -> LaurentPoly:
    return f.log_derivative(index)


@dataclass
class Ideal:
    """Ideal of a Laurent (or polynomial) ring given by generators."""

    variables: tuple
    generators: list = field(default_factory=list)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        for gen in self.generators:
            if gen.variables != self.variables:
                raise RingMismatch(f"generator in {gen.variables}, ideal in {self.variables}")
        self.generators = [gen for gen in self.generators if gen]

    @property
    def N(self) -> int:
        return lcm(*(gen.N for gen in self.generators)) if self.generators else 1


def _saturation_block(monomial):
    return monomial[:1]


def _variable_block(monomial):
    return monomial[1:]


ELIMINATION_ORDER = ProductOrder((grevlex, _saturation_block), (grevlex, _variable_block))
"""Saturation variable first, degrevlex inside each block: an elimination order for t."""


@dataclass
class QuotientBasis:
    """
    Groebner data of an ideal.

    Attributes:
        variables: ring variables (without the saturation variable).
        N (int): root denominator of the coefficients.
        ring: sympy PolyRing of the computation (leading saturation variable when saturated).
        basis (list): reduced Groebner basis (PolyElements, monic).
        staircase (list or None): standard monomials, None when not zero-dimensional.
        saturated (bool): whether the Laurent ring (torus) is modelled.
    """

    variables: tuple
    N: int
    ring: Any
    basis: list
    staircase: Optional[list]
    saturated: bool = True

    @property
    def zero_dimensional(self) -> bool:
        return self.staircase is not None

    @property
    def dimension(self) -> Union[int, float]:
        return len(self.staircase) if self.staircase is not None else float("inf")

    @property
    def is_unit_ideal(self) -> bool:
        return any(g.is_ground and g for g in self.basis)

    def variable_basis(self) -> list:
        """Groebner basis elements free of the saturation variable."""
        if not self.saturated:
            return list(self.basis)
        return [g for g in self.basis if all(m[0] == 0 for m in g.itermonoms())]


def _staircase(leading: list[Exponent], arity: int) -> Optional[list[Exponent]]:
    if any(not any(m) for m in leading):
        return []
    bounds = []
    for i in range(arity):
        pure = [m[i] for m in leading if m[i] and not any(m[j] for j in range(arity) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    monomials = [
        exp
        for exp in product(*(range(b) for b in bounds))
        if not any(all(e >= l for e, l in zip(exp, lead)) for lead in leading)
    ]
    return sorted(monomials, key=lambda exp: (sum(exp), exp))


def _ring(variables: Sequence[str], saturate: bool) -> PolyRing:
    symbols = [Symbol(name) for name in variables]
    if saturate:
        return PolyRing([Symbol("_sat")] + symbols, FIELD, ELIMINATION_ORDER)
    return PolyRing(symbols, FIELD, grevlex)


def _to_ring(f: LaurentPoly, ring: PolyRing, saturate: bool, lift: int = 0):
    head = (lift,) if saturate else ()
    return ring.from_dict({head + tuple(e + lift for e in exp): c for exp, c in f.terms.items()})


def groebner_basis(ideal: Union[Ideal, Iterable[LaurentPoly]], saturate: bool = True) -> QuotientBasis:
    """
    Reduced Groebner basis and staircase of a Laurent ideal.

    Generators are cleared to polynomials by their minimal monomial, and when
    ``saturate`` is set the relation t*y_1*...*y_n - 1 is added so that the
    quotient models the Laurent ring.

    Returns:
        QuotientBasis: with ``staircase`` None when the quotient is not zero-dimensional.
    """
    if not isinstance(ideal, Ideal):
        gens = list(ideal)
        ideal = Ideal(gens[0].variables if gens else (), gens)
    N = ideal.N
    ring = _ring(ideal.variables, saturate)
    polys = []
    for gen in ideal.generators:
        cleared, _ = gen.with_N(N).clear_denominators()
        if not saturate and cleared.terms.keys() != gen.terms.keys():
            raise RingMismatch("negative exponents need the saturated (Laurent) ring")
        polys.append(_to_ring(cleared, ring, saturate))
    if saturate:
        polys.append(ring.gens[0] * _prod(ring.gens[1:], ring.one) - ring.one)
    LOGGER.info("Groebner basis of %d generators in %s", len(polys), ", ".join(ideal.variables) or "no variables")
    basis = [g.monic() for g in groebner(polys, ring, method="buchberger")] if polys else []
    result = QuotientBasis(ideal.variables, N, ring, basis, None, saturate)
    offset = 1 if saturate else 0
    leading = [g.LM[offset:] for g in result.variable_basis()]
    result.staircase = _staircase(leading, len(ideal.variables))
    if result.staircase is None:
        LOGGER.warning("quotient by %s is not zero-dimensional", [str(g) for g in ideal.generators])
    return result


def _prod(items, one):
    value = one
    for item in items:
        value = value * item
    return value


def normal_form(f: LaurentPoly, Q: QuotientBasis) -> LaurentPoly:
    """
    Remainder of f modulo the Groebner basis, supported on standard monomials.

    Raises:
        RingMismatch: When f lives in another ring than Q.
        NotZeroDimensional: When the remainder cannot be written without the saturation variable.
    """
    if f.variables != Q.variables:
        raise RingMismatch(f"polynomial in {f.variables}, quotient basis in {Q.variables}")
    if Q.N % f.N:
        raise RingMismatch(f"coefficients over T^(1/{f.N}) do not embed into T^(1/{Q.N})")
    f = f.with_N(Q.N)
    if not f.terms:
        return f
    if Q.saturated:
        lift = max(0, -min(min(exp, default=0) for exp in f.terms))
        poly = _to_ring(f, Q.ring, True, lift)
    else:
        if any(e < 0 for exp in f.terms for e in exp):
            raise RingMismatch("negative exponents in a polynomial quotient")
        poly = _to_ring(f, Q.ring, False)
    remainder = poly.rem(Q.basis) if Q.basis else poly
    terms = {}
    for monom, coeff in remainder.items():
        if Q.saturated:
            if monom[0]:
                raise NotZeroDimensional("remainder keeps the saturation variable")
            monom = monom[1:]
        terms[monom] = coeff
    return LaurentPoly(Q.variables, terms, Q.N)


def quotient_dimension(Q: QuotientBasis) -> Union[int, float]:
    return Q.dimension


def standard_coordinates(f: LaurentPoly, Q: QuotientBasis) -> list:
    """Coordinates of normal_form(f) over the staircase (elements of Q(s))."""
    if Q.staircase is None:
        raise NotZeroDimensional("no finite staircase")
    reduced = normal_form(f, Q)
    return [reduced.terms.get(exp, FIELD.zero) for exp in Q.staircase]


def multiplication_matrix(f: LaurentPoly, Q: QuotientBasis) -> list[list]:
    """
    Matrix of multiplication by f on the quotient, in the staircase basis.

    Column j holds the coordinates of f * y^(staircase[j]).
    """
    if Q.staircase is None:
        raise NotZeroDimensional("no finite staircase")
    size = len(Q.staircase)
    matrix = [[FIELD.zero] * size for _ in range(size)]
    for col, exp in enumerate(Q.staircase):
        coords = standard_coordinates(f * LaurentPoly.monomial(Q.variables, exp), Q)
        for row, value in enumerate(coords):
            matrix[row][col] = value
    return matrix


# endregion
