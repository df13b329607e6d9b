import json

import pytest

from mirrorforge.core.coeff import FIELD
from mirrorforge.core.multilinear import Gen, TableMap, Vector
from mirrorforge.mirror.examples import shipped
from mirrorforge.mirror.toric import builtin, potential
from mirrorforge.structures.ainfty import AInfCategory, curved_clifford


def pytest_report_header(config):

    if config.get_verbosity() > 0:
        return ["coefficients: Q(s) with s = T^(1/N)", "seed: MIRRORFORGE_SEED or 0"]
    else:
        return "project deps: sympy, numpy, click"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: mark test as slow to run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="module")
def cp1():
    """Potential of CP1 at its monotone basepoint."""
    return potential(builtin("CP1"))


@pytest.fixture(scope="module")
def cp2():
    return potential(builtin("CP2"))


@pytest.fixture
def clifford():
    """Uncurved Clifford algebra e^2 = 1 over Q(s)."""
    return curved_clifford(0, [1], FIELD)


@pytest.fixture
def dual_numbers():
    """Q(s)[eps]/(eps^2) on one object X: every HH^k with k >= 1 is one-dimensional."""
    one = FIELD.one
    unit, eps = Gen("1", "X", "X", 0), Gen("eps", "X", "X", 0)
    table = {
        (unit, unit): Vector({unit: one}),
        (unit, eps): Vector({eps: one}),
        (eps, unit): Vector({eps: one}),
    }
    ops = TableMap(table, None, 1, FIELD)
    return AInfCategory("D", ["X"], {("X", "X"): [unit, eps]}, FIELD, ops, {"X": Vector({unit: one})}, 2, True)


@pytest.fixture(scope="module")
def u_setup():
    """Cl_1 mirror setup with the bulk class deforming e^2."""
    return shipped("clifford-u")


@pytest.fixture(scope="module")
def w_setup():
    """Cl_1 mirror setup with the bulk class deforming the curvature."""
    return shipped("clifford-w")


@pytest.fixture
def write_json(tmp_path):
    """Write a document to a temporary file and return its path as a string."""

    def write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)

    return write
