"""Mirrorforge Command Line

Batch verification pipelines over polytope, category, factorization and setup
documents. Every command prints one report (JSON or markdown) whose header
carries the truncation parameters of the run.

Exit codes:
    0   every check passed
    1   a check failed (the report names it and carries a witness)
    2   invalid input
    3   a truncated computation did not stabilize

Usage:
    mirrorforge potential CP1
    mirrorforge mirror-check CP2 --t0 1/4
    mirrorforge theorem clifford-u --rmax 3
    mirrorforge hochschild category.json --lmax 5
    mirrorforge mf factorization.json
    mirrorforge gamma bundle.json
    mirrorforge examples

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import functools
import logging
import sys
import warnings
from dataclasses import replace
from pathlib import Path
from typing import Callable, Optional

import click

from mirrorforge.core.config import RunConfig
from mirrorforge.core.exceptions import CheckError, InputError, NotStabilized
from mirrorforge.core.laurent import parse_expr
from mirrorforge.core.report import Report
from mirrorforge.core.serialize import bundle_from_json, category_from_json, load_json, mf_from_json, setup_from_json
from mirrorforge.mirror.bulk import corrupt_datum
from mirrorforge.mirror.examples import SETUPS, catalogue, shipped
from mirrorforge.mirror.lmfunctor import check_lm_functor
from mirrorforge.mirror.theorem import check_cap_scalar, check_main_theorem
from mirrorforge.mirror.toric import (
    BUILTINS,
    ToricFanoData,
    builtin,
    critical_points,
    jacobian_ring,
    ks_divisor_check,
    potential,
    qh_presentation,
    validate,
)
from mirrorforge.structures.hoch import hh_cohomology
from mirrorforge.structures.mf import check_gamma, validate_mf
from mirrorforge.version import vernum

__all__ = ["main", "EXIT_OK", "EXIT_FAILED", "EXIT_INPUT", "EXIT_UNSTABLE"]

LOGGER = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_UNSTABLE = 0, 1, 2, 3


# region Plumbing


def run_options(command: Callable) -> Callable:
    """Shared truncation and output flags; the wrapped command receives a RunConfig."""

    @click.option("--kmax", type=int, default=4, show_default=True, help="Highest arity of checked operations.")
    @click.option("--lmax", type=int, default=4, show_default=True, help="Hochschild length bound.")
    @click.option("--dmax", type=int, default=4, show_default=True, help="Adic truncation order.")
    @click.option("--rmax", type=int, default=2, show_default=True, help="Category inputs in premorphism checks.")
    @click.option("--t0", default="1/4", show_default=True, help="Value of T for numeric critical points.")
    @click.option("--seed", type=int, default=None, help="Sampling seed (default: MIRRORFORGE_SEED or 0).")
    @click.option("--format", "fmt", type=click.Choice(["json", "markdown"]), default="json", show_default=True)
    @click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here.")
    @click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
    @functools.wraps(command)
    def wrapper(kmax, lmax, dmax, rmax, t0, seed, fmt, out, verbose, **kwargs):
        logging.basicConfig(
            level=logging.DEBUG if verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        try:
            values = dict(kmax=kmax, lmax=lmax, dmax=dmax, rmax=rmax, t0=t0, fmt=fmt, out=out)
            config = RunConfig(**values) if seed is None else RunConfig(seed=seed, **values)
        except (ValueError, InputError) as exc:
            raise click.BadParameter(str(exc)) from exc
        _run(command, config, kwargs)

    return wrapper


def _emit(report: Report, config: RunConfig):
    report.parameters.update({key: value for key, value in config.header().items() if key not in report.parameters})
    text = report.render(config.fmt)
    if config.out:
        Path(config.out).write_text(text)
    else:
        click.echo(text, nl=False)


def _run(command: Callable, config: RunConfig, kwargs: dict):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NotStabilized)
        try:
            report = command(config, **kwargs)
        except InputError as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(exc.exit_code)
        except CheckError as exc:
            report = Report(f"{command.__name__.replace('_', '-')} failed")
            report.add(type(exc).__name__, False, str(exc), getattr(exc, "witness", None))
    unstable = [w for w in caught if issubclass(w.category, NotStabilized)]
    for warning in unstable:
        report.warnings.append(str(warning.message))
    _emit(report, config)
    failed = [check for check in report.failures() if not (unstable and check.name == "stable")]
    if failed:
        sys.exit(EXIT_FAILED)
    if unstable:
        sys.exit(EXIT_UNSTABLE)
    sys.exit(EXIT_OK)


def _polytope(source: str) -> ToricFanoData:
    if source in BUILTINS:
        return builtin(source)
    return ToricFanoData.from_json(load_json(source))


# endregion

# region Commands


@click.group()
@click.version_option(str(vernum), prog_name="mirrorforge")
def main():
    """Exact verification of the closed-string mirror pipeline on desk-scale data."""


@main.command("potential")
@click.argument("polytope")
@run_options
def potential_command(config: RunConfig, polytope: str) -> Report:
    """Validate POLYTOPE (a built-in name or a JSON file) and print its potential."""
    data = _polytope(polytope)
    report = validate(data)
    P = potential(data)
    report.data["potential"] = str(P.poly)
    report.data["monomials"] = [str(z) for z in P.monomials]
    return report


@main.command("mirror-check")
@click.argument("polytope")
@click.option("--relation", "relations", multiple=True, help="Extra relation in z1..zm added to the presentation.")
@run_options
def mirror_check(config: RunConfig, polytope: str, relations: tuple) -> Report:
    """Jacobian ring, critical points and the divisor-level ks map of POLYTOPE."""
    data = _polytope(polytope)
    report = Report(f"mirror check {data.name}")
    report.extend(validate(data))
    P = potential(data)
    _, dimension = jacobian_ring(P)
    report.add("jacobian", True, f"dim Jac = {dimension}")
    points = critical_points(P, config.t0, config.tolerance, seed=config.seed)
    total = sum(point.local_multiplicity for point in points)
    report.add("critical_points", total == dimension, f"{len(points)} point(s), multiplicity {total}")
    morse = all(point.morse for point in points)
    report.add("morse", True, "all points Morse" if morse else "degenerate points present")
    if not morse:
        report.warnings.append("degenerate critical points")
    report.data.update({"dimension": dimension, "critical_points": [point.to_json() for point in points]})
    if data.name not in BUILTINS or data.to_json() != builtin(data.name).to_json():
        report.warnings.append(f"no shipped quantum cohomology presentation for {data.name}; ks not checked")
        return report
    presentation = qh_presentation(data.name)
    if relations:
        extra = [parse_expr(text, presentation.variables) for text in relations]
        presentation = replace(presentation, quantum=presentation.quantum + extra)
    report.extend(ks_divisor_check(presentation, P), "ks:")
    return report


@main.command("theorem")
@click.argument("setup")
@click.option("-n", "generators", type=int, default=1, show_default=True, help="Clifford generators of a shipped setup.")
@click.option("--corrupt", is_flag=True, help="Run the negative control with q_1(e) altered.")
@run_options
def theorem(config: RunConfig, setup: str, generators: int, corrupt: bool) -> Report:
    """G - F = delta(xi) and its intermediate identities for SETUP (shipped name or JSON file)."""
    if setup in SETUPS:
        mirror, datum = shipped(setup, generators)
    else:
        mirror, datum = setup_from_json(setup)
    if corrupt:
        datum = corrupt_datum(datum)
    report = check_main_theorem(mirror, datum, rmax=config.rmax, lmax=config.lmax)
    report.extend(check_lm_functor(mirror, config.kmax), "lm:")
    return report


@main.command("hochschild")
@click.argument("category")
@run_options
def hochschild(config: RunConfig, category: str) -> Report:
    """Hochschild cohomology of CATEGORY up to --lmax, with a stabilization check."""
    C = category_from_json(category)
    return hh_cohomology(C, config.lmax).to_report(C.name)


@main.command("mf")
@click.argument("factorization")
@run_options
def mf(config: RunConfig, factorization: str) -> Report:
    """Q^2 = W * Id for FACTORIZATION."""
    return validate_mf(mf_from_json(factorization))


@main.command("gamma")
@click.argument("bundle")
@run_options
def gamma_command(config: RunConfig, bundle: str) -> Report:
    """Cocycle, product, ideal and injectivity checks of gamma on BUNDLE, plus gamma(r) cap psi = r psi."""
    C, elements = bundle_from_json(bundle)
    report = check_gamma(C, elements, lmax=min(config.lmax, 3))
    report.extend(check_cap_scalar(C, seed=config.seed), "cap:")
    return report


@main.command("examples")
def examples():
    """List built-in polytopes and shipped setups."""
    click.echo("polytopes:")
    for name in BUILTINS:
        click.echo(f"  {name}")
    click.echo("setups:")
    for name, description in catalogue().items():
        click.echo(f"  {name}: {description}")


# endregion


def run(argv: Optional[list] = None):
    main(args=argv, prog_name="mirrorforge")
