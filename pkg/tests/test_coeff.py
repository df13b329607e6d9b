import json

import pytest
from sympy.polys.domains import QQ

from mirrorforge.core.coeff import FIELD, S, NovScalar, parse_rational, rational_to_str, specialize_T
from mirrorforge.core.config import RunConfig
from mirrorforge.core.exceptions import InputError, PoleAtSpecialization, ZeroInverse
from mirrorforge.core.report import Report


class TestRationals:

    def test_parse_reduces(self):
        """Test if "p/q" literals come back reduced."""
        assert parse_rational("2/4") == QQ(1, 2)
        assert parse_rational(3) == QQ(3)
        assert parse_rational("-6") == QQ(-6)

    def test_parse_rejects_garbage(self):
        """Test if malformed literals raise InputError."""
        with pytest.raises(InputError):
            parse_rational("x")
        with pytest.raises(InputError):
            parse_rational("1/0")

    def test_canonical_form(self):
        """Test the canonical string of a rational."""
        assert rational_to_str(QQ(-3, 6)) == "-1/2"
        assert rational_to_str(QQ(4)) == "4"


class TestNovScalar:

    def test_t_power(self):
        """Test if T^(1/2) picks N = 2 and has valuation 1/2."""
        half = NovScalar.T_power(QQ(1, 2))
        assert half.N == 2
        assert half.value == FIELD.from_sympy(S)
        assert half.t_valuation() == QQ(1, 2)

    def test_unify_on_addition(self):
        """Test if mixed root denominators meet at their lcm."""
        total = NovScalar(1) + NovScalar.T_power(QQ(1, 2)) + NovScalar.T_power(QQ(1, 3))
        assert total.N == 6
        assert total.t_valuation() == 0

    def test_equality_ignores_representation(self):
        """Test if the same scalar written over different N compares equal."""
        half = NovScalar.T_power(QQ(1, 2))
        assert half == half.with_N(4)
        assert half.with_N(4).value == FIELD.from_sympy(S**2)

    def test_with_n_requires_multiple(self):
        with pytest.raises(ValueError):
            NovScalar.T_power(QQ(1, 2)).with_N(3)

    def test_zero_inverse(self):
        """Test if inverting zero raises ZeroInverse."""
        with pytest.raises(ZeroInverse):
            NovScalar(0).inverse()
        with pytest.raises(ZeroDivisionError):
            NovScalar(0).inverse()

    def test_field_arithmetic(self):
        """Test division and negative powers."""
        x = NovScalar.T_power(QQ(1, 2)) + 1
        assert x / x == NovScalar(1)
        assert (x**-2) * x * x == NovScalar(1)
        assert not (x - x)

    def test_json(self):
        """Test if a scalar survives its JSON form."""
        x = NovScalar(FIELD.from_sympy((1 + S) / (2 - S**3)), 3)
        again = NovScalar.from_json(json.loads(json.dumps(x.to_json())))
        assert again == x
        assert again.N == 3


class TestSpecialize:

    def test_exact_root(self):
        """Test if T^(1/2) at T = 1/4 is exactly 1/2."""
        assert specialize_T(NovScalar.T_power(QQ(1, 2)), "1/4") == QQ(1, 2)

    def test_inexact_root(self):
        """Test if an inexact root falls back to a float."""
        value = specialize_T(NovScalar.T_power(QQ(1, 2)), "1/2")
        assert value == pytest.approx(0.5**0.5)

    def test_pole(self):
        """Test if a vanishing denominator raises PoleAtSpecialization."""
        with pytest.raises(PoleAtSpecialization):
            specialize_T(NovScalar(FIELD.from_sympy(1 / (S - 1))), 1)

    def test_nonpositive_t(self):
        with pytest.raises(InputError):
            specialize_T(NovScalar(1), "-1/2")


class TestRunConfig:

    def test_defaults(self):
        """Test the default truncation parameters."""
        config = RunConfig(seed=0)
        assert (config.kmax, config.lmax, config.rmax, config.dmax) == (4, 4, 2, 4)
        assert config.t0_value == QQ(1, 4)

    def test_header_drops_output_settings(self):
        header = RunConfig(seed=0, out="report.json").header()
        assert "out" not in header
        assert "fmt" not in header
        assert header["kmax"] == 4

    @pytest.mark.parametrize("values", [{"kmax": 0}, {"lmax": -1}, {"rmax": -1}, {"t0": "2"}, {"fmt": "xml"}])
    def test_rejects_bad_values(self, values):
        """Test if out of range parameters raise ValueError."""
        with pytest.raises(ValueError):
            RunConfig(seed=0, **values)

    def test_seed_from_environment(self, monkeypatch):
        """Test if MIRRORFORGE_SEED drives the default seed."""
        monkeypatch.setenv("MIRRORFORGE_SEED", "7")
        assert RunConfig().seed == 7


class TestReport:

    def test_verdict_and_failures(self):
        """Test if one failing check fails the report."""
        report = Report("demo")
        report.add("first", True)
        assert report.passed
        report.add("second", False, "broken", {"at": 3})
        assert not report.passed
        assert [check.name for check in report.failures()] == ["second"]

    def test_extend_prefixes(self):
        """Test if extended checks keep their verdicts under a prefix."""
        inner = Report("inner")
        inner.add("check", True)
        inner.warnings.append("careful")
        outer = Report("outer")
        outer.extend(inner, "sub:")
        assert outer.check("sub:check").passed
        assert outer.warnings == ["careful"]

    def test_json_rendering(self):
        """Test if exact values render into parsable JSON."""
        report = Report("demo", {"t0": QQ(1, 4)})
        report.add("value", True, witness=complex(1, 2))
        document = json.loads(report.render("json"))
        assert document["passed"] is True
        assert document["parameters"]["t0"] == "1/4"
        assert document["checks"][0]["witness"] == {"re": 1.0, "im": 2.0}

    def test_markdown_rendering(self):
        report = Report("demo")
        report.add("value", False, "nonzero")
        text = report.render("markdown")
        assert text.startswith("# demo")
        assert "| value | FAIL | nonzero |" in text
