"""Mirrorforge Configuration

Run parameters shared by the library entry points and the command line.

Features:
    - RunConfig dataclass with validation on construction
    - MIRRORFORGE_SEED environment variable for reproducible sampling

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import os
from dataclasses import asdict, dataclass, field
from typing import Literal, Optional, get_args

import numpy as np

from mirrorforge.core.coeff import QQ, parse_rational

__all__ = ["RunConfig", "OutputFormat", "SEED_VARIABLE", "default_seed", "rng"]

OutputFormat = Literal["json", "markdown"]

SEED_VARIABLE = "MIRRORFORGE_SEED"


def default_seed() -> int:
    """Seed from MIRRORFORGE_SEED, 0 when unset."""
    raw = os.environ.get(SEED_VARIABLE, "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{SEED_VARIABLE} must be an integer, got {raw!r}") from exc


def rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(default_seed() if seed is None else seed)


@dataclass
class RunConfig:
    """
    Truncation and output parameters of a run.

    Attributes:
        kmax (int): highest arity of operations checked.
        lmax (int): Hochschild length bound.
        bar (int): bar-length bound of tensor products.
        dmax (int): adic truncation order of local matrix factorizations.
        rmax (int): highest number of category inputs in premorphism checks.
        t0 (str): numeric value of T for critical points, a rational in (0, 1).
        tolerance (float): Newton tolerance.
        fmt (str): "json" or "markdown".
        out (str, optional): output path, stdout when None.
        seed (int): sampling seed.
    """

    kmax: int = 4
    lmax: int = 4
    bar: int = 2
    dmax: int = 4
    rmax: int = 2
    t0: str = "1/4"
    tolerance: float = 1e-12
    fmt: OutputFormat = "json"
    out: Optional[str] = None
    seed: int = field(default_factory=default_seed)

    def __post_init__(self):
        for name in ("kmax", "lmax", "bar", "dmax"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.rmax < 0:
            raise ValueError("rmax must be nonnegative")
        value = parse_rational(self.t0)
        if not QQ.zero < value < QQ.one:
            raise ValueError("t0 must lie strictly between 0 and 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.fmt not in get_args(OutputFormat):
            raise ValueError(f"fmt must be one of {get_args(OutputFormat)}")

    @property
    def t0_value(self):
        return parse_rational(self.t0)

    def rng(self) -> np.random.Generator:
        return rng(self.seed)

    def header(self) -> dict:
        """Parameters echoed into every report."""
        values = asdict(self)
        values.pop("out")
        values.pop("fmt")
        return values
