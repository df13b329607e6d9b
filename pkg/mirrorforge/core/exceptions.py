"""Mirrorforge Exceptions

Every error raised by mirrorforge derives from MirrorforgeError. Errors are split
into two families so that callers (the command line in particular) can tell a bad
input apart from a verification that ran and failed.

Features:
    - InputError: malformed or invalid input (exit code 2)
    - CheckError: a computed identity or consistency check failed (exit code 1)
    - NotStabilized: warning category for truncated computations that did not settle

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

from typing import Any, Optional

__all__ = [
    "MirrorforgeError",
    "InputError",
    "CheckError",
    "ZeroInverse",
    "PoleAtSpecialization",
    "ParseError",
    "UnknownVariable",
    "NotZeroDimensional",
    "RingMismatch",
    "InvalidFan",
    "NewtonDivergence",
    "MultiplicityMismatch",
    "UnknownBuiltin",
    "RelationNotKilled",
    "RankMismatch",
    "NonConvergent",
    "PotentialMismatch",
    "ArityOverflow",
    "CoefficientNotField",
    "TruncationOverflow",
    "NotCritical",
    "MCInvalid",
    "FamilyNotAInfty",
    "NotStabilized",
]


class MirrorforgeError(Exception):
    """Base class for all mirrorforge errors."""

    exit_code = 1


class InputError(MirrorforgeError):
    """The input handed to an operation is malformed or violates a precondition."""

    exit_code = 2


class CheckError(MirrorforgeError):
    """A verification ran to completion and found a nonzero residual."""

    exit_code = 1


# region Coefficients


class ZeroInverse(InputError, ZeroDivisionError):
    """Inverse of the zero Novikov scalar requested."""


class PoleAtSpecialization(InputError):
    """The denominator vanishes at the requested value of T."""


# endregion

# region Polynomials


class ParseError(InputError):
    """Expression text outside the accepted grammar."""

    def __init__(self, message: str, position: int, text: Optional[str] = None):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class UnknownVariable(InputError):
    """An identifier that is neither T nor a declared variable."""

    def __init__(self, name: str, position: Optional[int] = None):
        self.name = name
        self.position = position
        where = "" if position is None else f" (at position {position})"
        super().__init__(f"unknown variable {name!r}{where}")


class NotZeroDimensional(CheckError):
    """The quotient ring is infinite dimensional."""


class RingMismatch(InputError):
    """Operands live in different rings."""


# endregion

# region Toric


class InvalidFan(InputError):
    """Toric input data violating primitivity, spanning or interior conditions."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"invalid fan: {reason}")


class NewtonDivergence(CheckError):
    """Newton refinement did not converge."""

    def __init__(self, message: str, restarts: int = 0):
        self.restarts = restarts
        super().__init__(f"{message} after {restarts} restart(s)")


class MultiplicityMismatch(CheckError):
    """Numeric root count disagrees with the exact quotient dimension."""


class UnknownBuiltin(InputError):
    """No built-in data under this name."""


class RelationNotKilled(CheckError):
    """A presentation relation survives in the Jacobian ring."""

    def __init__(self, relation: Any, witness: Any):
        self.relation = relation
        self.witness = witness
        super().__init__(f"relation {relation} maps to nonzero {witness}")


class RankMismatch(CheckError):
    """Ranks that must agree do not."""


# endregion

# region Algebraic structures


class NonConvergent(InputError):
    """A Maurer-Cartan series is neither finite nor positively filtered."""


class PotentialMismatch(InputError):
    """Deformation requested for objects with different potential values."""

    def __init__(self, pairs: list):
        self.pairs = pairs
        listing = ", ".join(f"{a} vs {b}" for a, b in pairs)
        super().__init__(f"potential values differ: {listing}")


class ArityOverflow(CheckError):
    """A structure map is needed beyond the arity its source supplies."""


class CoefficientNotField(InputError):
    """Linear algebra requested over a coefficient ring that is not a field."""


class TruncationOverflow(InputError):
    """The requested computation does not fit the stated truncation window."""


class NotCritical(InputError):
    """The point handed to a Koszul construction is not critical."""


class MCInvalid(InputError):
    """Weak Maurer-Cartan data is not weakly unobstructed."""


class FamilyNotAInfty(CheckError):
    """A one-parameter family fails the A-infinity relation."""


# endregion


class NotStabilized(UserWarning):
    """Truncated invariants differ between consecutive truncation levels."""
