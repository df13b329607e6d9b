"""Mirrorforge Coefficients

Exact coefficient arithmetic used throughout mirrorforge.

The Novikov field is modelled by the rational function field Q(s) where
s = T^(1/N) for a root denominator N fixed per computation. Elements are
wrapped by NovScalar, which keeps the underlying sympy fraction and N together.

Features:
    - Rationals through sympy's QQ domain, serialised as "p/q"
    - NovScalar: field arithmetic, T-valuation, rescaling to a common N
    - specialize_T: exact rational value when an exact root exists, float or complex otherwise

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

from math import lcm
from numbers import Complex
from typing import Any, Union

from sympy import Symbol, integer_nthroot
from sympy.polys.domains import QQ

from mirrorforge.core.exceptions import InputError, PoleAtSpecialization, ZeroInverse

__all__ = [
    "QQ",
    "S",
    "FIELD",
    "NovScalar",
    "parse_rational",
    "rational_to_str",
    "nov_add",
    "nov_mul_inv",
    "t_valuation",
    "specialize_T",
    "frac_valuation",
    "rescale_fraction",
    "as_complex",
]

S = Symbol("s")
FIELD = QQ.frac_field(S)
"""Q(s), the rational model of the Novikov field."""

_SRING = FIELD.field.ring
_SGEN = _SRING.gens[0]


def parse_rational(text: Union[str, int, Any]):
    """
    Parse "p/q", an integer, or a QQ element into a reduced QQ element.

    Raises:
        InputError: When the text is not a rational literal.
    """
    if isinstance(text, int):
        return QQ(text)
    if QQ.of_type(text):
        return text
    try:
        if isinstance(text, str) and "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise InputError(f"zero denominator in rational {text!r}")
            return QQ(int(num), int(den))
        return QQ(int(str(text)))
    except ValueError as exc:
        raise InputError(f"not a rational literal: {text!r}") from exc


def rational_to_str(value) -> str:
    """Canonical "p/q" form (q > 0, reduced); integers print without a denominator."""
    value = QQ.convert(value)
    num, den = QQ.numer(value), QQ.denom(value)
    return f"{num}" if den == 1 else f"{num}/{den}"


def rescale_fraction(value, factor: int):
    """Substitute s -> s^factor in an element of FIELD."""
    if factor == 1:
        return value

    def stretch(poly):
        return _SRING.from_dict({(exp * factor,): c for (exp,), c in poly.items()})

    return FIELD.field.new(stretch(value.numer), stretch(value.denom))


def frac_valuation(value):
    """Lowest s-exponent of an element of FIELD, or +inf for zero."""
    if not value:
        return float("inf")
    return value.numer.tail_degree() - value.denom.tail_degree()


def as_complex(value) -> complex:
    """Convert a QQ element, int, float or complex into a Python complex."""
    if isinstance(value, Complex):
        return complex(value)
    return complex(QQ.numer(value)) / complex(QQ.denom(value))


class NovScalar:
    """
    Exact element of Q(s), s = T^(1/N).

    Attributes:
        value: sympy fraction in FIELD (numerator and denominator kept reduced by sympy).
        N (int): root denominator.
    """

    __slots__ = ("_value", "_N")

    def __init__(self, value: Any = 0, N: int = 1):
        if N < 1:
            raise ValueError("Root denominator must be a positive integer")
        self._N = int(N)
        self._value = value if FIELD.of_type(value) else FIELD.convert(value)

    # region Properties

    @property
    def value(self):
        """Underlying element of FIELD."""
        return self._value

    @property
    def N(self) -> int:
        """Root denominator, s = T^(1/N)."""
        return self._N

    @property
    def numer(self):
        return self._value.numer

    @property
    def denom(self):
        return self._value.denom

    # endregion

    # region Constructors

    @classmethod
    def T_power(cls, exponent, N: int = None) -> "NovScalar":
        """T^exponent for a rational exponent; N defaults to its denominator."""
        exponent = QQ.convert(exponent)
        den = QQ.denom(exponent)
        N = int(den) if N is None else N
        scaled = exponent * N
        if QQ.denom(scaled) != 1:
            raise InputError(f"T^{exponent} is not a power of T^(1/{N})")
        return cls(FIELD.field.gens[0] ** int(QQ.numer(scaled)), N)

    # endregion

    def with_N(self, N: int) -> "NovScalar":
        """The same scalar written over the root denominator N (a multiple of the current one)."""
        if N % self._N:
            raise ValueError(f"Cannot rewrite over N={N}: not a multiple of {self._N}")
        return NovScalar(rescale_fraction(self._value, N // self._N), N)

    def unify(self, other: "NovScalar") -> tuple["NovScalar", "NovScalar"]:
        """Rewrite both scalars over the lcm of their root denominators."""
        N = lcm(self._N, other._N)
        return self.with_N(N), other.with_N(N)

    def _coerce(self, other) -> "NovScalar":
        if isinstance(other, NovScalar):
            return other
        return NovScalar(FIELD.convert(other), self._N)

    def __add__(self, other):
        a, b = self.unify(self._coerce(other))
        return NovScalar(a._value + b._value, a._N)

    __radd__ = __add__

    def __neg__(self):
        return NovScalar(-self._value, self._N)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        a, b = self.unify(self._coerce(other))
        return NovScalar(a._value * b._value, a._N)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return NovScalar(self._value**exponent, self._N)

    def __bool__(self):
        return bool(self._value)

    def __eq__(self, other):
        if not isinstance(other, NovScalar):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        a, b = self.unify(other)
        return a._value == b._value

    def __hash__(self):
        return hash((self.t_valuation(), bool(self)))

    def inverse(self) -> "NovScalar":
        if not self._value:
            raise ZeroInverse("zero has no multiplicative inverse")
        return NovScalar(1 / self._value, self._N)

    def t_valuation(self):
        """Minimal T-exponent as a QQ element, float('inf') for zero."""
        order = frac_valuation(self._value)
        if order == float("inf"):
            return order
        return QQ(int(order), self._N)

    def specialize(self, t0):
        return specialize_T(self, t0)

    def to_json(self) -> dict:
        def terms(poly):
            return [[exp, rational_to_str(c)] for (exp,), c in sorted(poly.items())]

        return {"N": self._N, "numer": terms(self.numer), "denom": terms(self.denom)}

    @classmethod
    def from_json(cls, data: dict) -> "NovScalar":
        def poly(pairs):
            return _SRING.from_dict({(int(e),): parse_rational(c) for e, c in pairs})

        denom = poly(data.get("denom", [[0, "1"]]))
        if not denom:
            raise InputError("zero denominator in Novikov scalar")
        return cls(FIELD.field.new(poly(data["numer"]), denom), int(data.get("N", 1)))

    def __repr__(self) -> str:
        return f"NovScalar({self._value}, N={self._N})"


def nov_add(a: NovScalar, b: NovScalar) -> NovScalar:
    return a + b


def nov_mul_inv(a: NovScalar) -> NovScalar:
    return a.inverse()


def t_valuation(a: NovScalar):
    return a.t_valuation()


def _exact_root(t0, N: int):
    """Exact positive N-th root of a positive rational, or None."""
    num, den = int(QQ.numer(t0)), int(QQ.denom(t0))
    rnum, exact_num = integer_nthroot(num, N)
    rden, exact_den = integer_nthroot(den, N)
    if exact_num and exact_den:
        return QQ(int(rnum), int(rden))
    return None


def _evaluate_float(poly, s0: complex) -> complex:
    return sum(as_complex(c) * s0**exp for (exp,), c in poly.items())


def specialize_T(a: Union[NovScalar, Any], t0, N: int = None):
    """
    Evaluate a Novikov scalar at T = t0.

    Args:
        a: NovScalar, or a bare FIELD element together with N.
        t0: positive rational (QQ, int or "p/q") or a Python complex number.
        N (int, optional): root denominator when a is a bare FIELD element.

    Returns:
        A QQ element when t0 is rational with an exact N-th root; a float when
        t0 is rational otherwise (principal real root); a complex for complex t0.

    Raises:
        PoleAtSpecialization: When the denominator vanishes at t0^(1/N).
    """
    if isinstance(a, NovScalar):
        value, N = a.value, a.N
    else:
        value, N = (a if FIELD.of_type(a) else FIELD.convert(a)), (N or 1)

    if isinstance(t0, complex):
        s0 = t0 ** (1.0 / N)
    else:
        t0 = parse_rational(t0) if isinstance(t0, str) else QQ.convert(t0)
        if t0 <= 0:
            raise InputError("T must be specialised at a positive rational")
        root = _exact_root(t0, N)
        if root is not None:
            den = value.denom.evaluate(_SGEN, root)
            if not den:
                raise PoleAtSpecialization(f"denominator {value.denom} vanishes at s={root}")
            return value.numer.evaluate(_SGEN, root) / den
        s0 = float(t0) ** (1.0 / N)

    den = _evaluate_float(value.denom, s0)
    if abs(den) < 1e-300:
        raise PoleAtSpecialization(f"denominator {value.denom} vanishes at s={s0}")
    result = _evaluate_float(value.numer, s0) / den
    return result if isinstance(t0, complex) else result.real
