import json
from typing import get_args

import pytest
from click.testing import CliRunner

from mirrorforge.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_UNSTABLE, main
from mirrorforge.core.config import OutputFormat, RunConfig
from mirrorforge.core.signs import Parity
from mirrorforge.version import vernum

SQUARE = {"ring": {"vars": ["x"]}, "W": "x**2", "Q01": [["x"]], "Q10": [["x"]]}

DUAL_NUMBERS = {
    "kind": "table",
    "name": "D",
    "objects": ["X"],
    "homs": {"X|X": [{"name": "1", "deg": 0}, {"name": "eps", "deg": 0}]},
    "m": [
        {"k": 2, "inputs": ["X|X/1", "X|X/1"], "output": [["X|X/1", "1"]]},
        {"k": 2, "inputs": ["X|X/1", "X|X/eps"], "output": [["X|X/eps", "1"]]},
        {"k": 2, "inputs": ["X|X/eps", "X|X/1"], "output": [["X|X/eps", "1"]]},
    ],
    "units": {"X": [["X|X/1", "1"]]},
}


@pytest.fixture
def runner():
    return CliRunner()


def report_of(result) -> dict:
    return json.loads(result.stdout)


class TestPotential:

    def test_cp1(self, runner):
        result = runner.invoke(main, ["potential", "CP1"])
        assert result.exit_code == EXIT_OK
        report = report_of(result)
        assert report["passed"]
        assert report["data"]["potential"] == "T^(1/2)*(y + y^-1)"
        assert report["parameters"]["lmax"] == 4

    def test_malformed_json(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"dim": 1, "facets": [')
        result = runner.invoke(main, ["potential", str(path)])
        assert result.exit_code == EXIT_INPUT

    def test_non_primitive_normal(self, runner, write_json):
        """Test if a polytope with a non-primitive facet normal is rejected as invalid input."""
        path = write_json("bad.json", {
            "name": "bad",
            "dim": 1,
            "facets": [{"normal": [2], "constant": "-1"}, {"normal": [-1], "constant": "-1"}],
            "basepoint": [0],
        })
        result = runner.invoke(main, ["potential", path])
        assert result.exit_code == EXIT_INPUT
        assert "non-primitive" in result.output

    def test_unknown_builtin(self, runner):
        assert runner.invoke(main, ["potential", "CP9"]).exit_code == EXIT_INPUT

    def test_bad_t0(self, runner):
        assert runner.invoke(main, ["potential", "CP1", "--t0", "2"]).exit_code == EXIT_INPUT

    def test_markdown(self, runner):
        result = runner.invoke(main, ["potential", "CP1", "--format", "markdown"])
        assert result.exit_code == EXIT_OK
        assert result.stdout.startswith("# validate CP1")
        assert "| primitive | pass |" in result.stdout

    def test_out(self, runner, tmp_path):
        path = tmp_path / "report.json"
        result = runner.invoke(main, ["potential", "CP2", "--out", str(path)])
        assert result.exit_code == EXIT_OK
        assert result.stdout == ""
        assert json.loads(path.read_text())["passed"]


class TestMirrorCheck:

    def test_cp1(self, runner):
        result = runner.invoke(main, ["mirror-check", "CP1"])
        assert result.exit_code == EXIT_OK
        report = report_of(result)
        assert report["data"]["dimension"] == 2
        assert len(report["data"]["critical_points"]) == 2

    def test_extra_relation(self, runner):
        """Test if a relation the Jacobian ring does not kill fails the run."""
        result = runner.invoke(main, ["mirror-check", "CP1", "--relation", "z1"])
        assert result.exit_code == EXIT_FAILED
        report = report_of(result)
        assert report["checks"][0]["name"] == "RelationNotKilled"


class TestTheorem:

    def test_u_family(self, runner):
        result = runner.invoke(main, ["theorem", "clifford-u", "--rmax", "1", "--kmax", "3"])
        assert result.exit_code == EXIT_OK
        report = report_of(result)
        assert report["data"]["ks"] == "x**2"
        assert any(check["name"].startswith("lm:") for check in report["checks"])

    def test_corrupted(self, runner):
        result = runner.invoke(main, ["theorem", "clifford-u", "--rmax", "1", "--kmax", "3", "--corrupt"])
        assert result.exit_code == EXIT_FAILED
        assert report_of(result)["warnings"]

    def test_unknown_setup(self, runner):
        assert runner.invoke(main, ["theorem", "clifford-v"]).exit_code == EXIT_INPUT


class TestHochschild:

    def test_clifford(self, runner, write_json):
        path = write_json("cl1.json", {"kind": "clifford", "n": 1})
        result = runner.invoke(main, ["hochschild", path])
        assert result.exit_code == EXIT_OK
        assert report_of(result)["data"]["HH"] == {"HH^0": 1, "HH^1": 0}

    def test_not_stabilized(self, runner, write_json):
        """Test if cohomology that keeps growing exits with the stabilization code."""
        path = write_json("dual.json", DUAL_NUMBERS)
        result = runner.invoke(main, ["hochschild", path, "--lmax", "3"])
        assert result.exit_code == EXIT_UNSTABLE
        assert report_of(result)["warnings"]

    def test_curved(self, runner, write_json):
        path = write_json("curved.json", {"kind": "clifford", "n": 1, "w": "1"})
        assert runner.invoke(main, ["hochschild", path]).exit_code == EXIT_INPUT


class TestFactorizations:

    def test_mf(self, runner, write_json):
        result = runner.invoke(main, ["mf", write_json("square.json", SQUARE)])
        assert result.exit_code == EXIT_OK

    def test_bad_mf(self, runner, write_json):
        path = write_json("bad.json", dict(SQUARE, Q10=[["x + 1"]]))
        result = runner.invoke(main, ["mf", path])
        assert result.exit_code == EXIT_FAILED
        assert report_of(result)["checks"][0]["witness"]["entry"] == [0, 0]

    def test_gamma(self, runner, write_json):
        path = write_json("bundle.json", {"summands": {"P": {"E": SQUARE}}, "elements": {"P": ["x"]}})
        result = runner.invoke(main, ["gamma", path])
        assert result.exit_code == EXIT_OK
        names = [check["name"] for check in report_of(result)["checks"]]
        assert "P:injective" in names
        assert "cap:cap[x]" in names


class TestMisc:

    def test_examples(self, runner):
        result = runner.invoke(main, ["examples"])
        assert result.exit_code == EXIT_OK
        assert "CP1xCP1" in result.output
        assert "clifford-u" in result.output

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == EXIT_OK
        assert str(vernum) in result.output


class TestConfig:

    def test_literal_aliases(self):
        """Test if the output formats and parities are plain Literal aliases."""
        assert get_args(OutputFormat) == ("json", "markdown")
        assert get_args(Parity) == (0, 1)

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="fmt"):
            RunConfig(fmt="xml")
        assert RunConfig(fmt="markdown").fmt == "markdown"
