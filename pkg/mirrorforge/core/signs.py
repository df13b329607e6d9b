"""Mirrorforge Sign Conventions

Every Koszul sign in mirrorforge is computed from the helpers below.

Conventions:
    - Degrees are Z/2-valued. A generator of degree |x| has shifted degree
      p(x) = |x| + 1 (mod 2); all operations are written in shifted degrees.
    - The A-infinity operations m_k have shifted degree 1 for every k.
    - Insertion of an operation g of shifted degree |g| into a slot preceded
      by inputs x_1, ..., x_i picks up (-1)^(|g| * (p(x_1) + ... + p(x_i))).
    - Bimodule generators use the same shift, so a module element m̄ has
      p(m̄) = |m̄| + 1 as well.
    - A matrix unit E_ab between two Z/2-graded free modules has degree
      deg(a) + deg(b) (mod 2).

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

from typing import Iterable, Literal

__all__ = ["Parity", "shifted", "parity", "sign", "koszul", "bubble_sign"]

Parity = Literal[0, 1]


def shifted(deg: int) -> Parity:
    """Shifted degree p = deg + 1 (mod 2)."""
    return (deg + 1) % 2


def parity(items: Iterable) -> Parity:
    """
    Sum of shifted degrees of generators (anything with a ``deg`` attribute).

    Args:
        items: generators or homogeneous vectors.

    Returns:
        int: 0 or 1.
    """
    return sum(shifted(item.deg) for item in items) % 2


def sign(exponent: int) -> int:
    """(-1)^exponent."""
    return -1 if exponent % 2 else 1


def koszul(a: int, b: int) -> int:
    """(-1)^(a*b)."""
    return sign(a * b)


def bubble_sign(indices: list[int]) -> tuple[int, list[int]]:
    """
    Sort a word of distinct-or-repeated indices by adjacent swaps.

    Returns:
        tuple: the sign (-1)^(number of swaps of unequal letters) and the sorted word.
    """
    word = list(indices)
    swaps = 0
    for end in range(len(word) - 1, 0, -1):
        for pos in range(end):
            if word[pos] > word[pos + 1]:
                word[pos], word[pos + 1] = word[pos + 1], word[pos]
                swaps += 1
    return sign(swaps), word
