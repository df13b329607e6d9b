from dataclasses import replace

import pytest
from sympy.polys.domains import QQ

from mirrorforge.core.exceptions import InvalidFan, RelationNotKilled, UnknownBuiltin
from mirrorforge.core.laurent import parse_expr
from mirrorforge.mirror.toric import (
    ToricFanoData,
    basepoint_independence,
    builtin,
    critical_points,
    jacobian_ring,
    ks_divisor_check,
    potential,
    qh_presentation,
    validate,
)


class TestToricData:

    def test_builtin_validates(self):
        """Test if every built-in polytope passes validation."""
        for name in ("CP1", "CP2", "CP3", "CP1xCP1"):
            assert validate(builtin(name)).passed

    def test_unknown_builtin(self):
        with pytest.raises(UnknownBuiltin):
            builtin("CP9")

    def test_monotone_basepoint_from_json(self):
        """Test if a polytope without basepoint gets the monotone one."""
        data = ToricFanoData.from_json(
            {"name": "P2", "dim": 2, "facets": [
                {"normal": [1, 0], "constant": "0"},
                {"normal": [0, 1], "constant": "0"},
                {"normal": [-1, -1], "constant": "-1"},
            ]}
        )
        assert data.basepoint == (QQ(1, 3), QQ(1, 3))
        assert data.l_values() == [QQ(1, 3)] * 3

    def test_basepoint_of_a_box(self):
        """Test if a non-monotone box gets an interior max-min basepoint."""
        data = ToricFanoData.from_json(
            {"name": "box", "dim": 2, "facets": [
                {"normal": [1, 0], "constant": "0"},
                {"normal": [-1, 0], "constant": "-1"},
                {"normal": [0, 1], "constant": "0"},
                {"normal": [0, -1], "constant": "-2"},
            ]}
        )
        assert data.basepoint[0] == QQ(1, 2)
        assert min(data.l_values()) == QQ(1, 2)
        assert validate(data).passed

    def test_builtin_basepoint_is_max_min(self):
        """Test if dropping the basepoint of a built-in recovers it."""
        for name in ("CP2", "CP1xCP1"):
            document = builtin(name).to_json()
            del document["basepoint"]
            assert ToricFanoData.from_json(document).basepoint == builtin(name).basepoint

    def test_unbounded_polytope(self):
        with pytest.raises(InvalidFan, match="unbounded"):
            ToricFanoData.from_json({"dim": 2, "facets": [
                {"normal": [1, 0], "constant": "0"},
                {"normal": [-1, 0], "constant": "-1"},
            ]})

    def test_non_primitive_normal(self):
        """Test if a non-primitive normal is rejected."""
        data = ToricFanoData(1, [((2,), 0), ((-1,), -1)], ("1/3",), "bad")
        with pytest.raises(InvalidFan, match="non-primitive"):
            validate(data)

    def test_boundary_basepoint(self):
        """Test if a basepoint on a facet is rejected."""
        with pytest.raises(InvalidFan, match="boundary"):
            validate(builtin("CP1").with_basepoint(("0",)))

    def test_not_spanning(self):
        data = ToricFanoData(2, [((1, 0), 0), ((-1, 0), -1)], ("1/2", "0"), "strip")
        with pytest.raises(InvalidFan):
            validate(data)


class TestPotential:

    def test_cp1(self, cp1):
        """Test the CP1 potential T^(1/2)(y + 1/y)."""
        assert cp1.variables == ("y",)
        assert cp1.N == 2
        assert cp1.poly == parse_expr("T^(1/2)*y + T^(1/2)*y^-1", ("y",))

    def test_cp2_monomials(self, cp2):
        """Test if CP2 has one monomial T^(1/3) y^v per facet."""
        assert cp2.variables == ("y1", "y2")
        expected = ["T^(1/3)*y1", "T^(1/3)*y2", "T^(1/3)*y1^-1*y2^-1"]
        assert cp2.monomials == [parse_expr(text, cp2.variables) for text in expected]

    @pytest.mark.parametrize("name, dimension", [("CP1", 2), ("CP2", 3), ("CP1xCP1", 4), ("CP3", 4)])
    def test_jacobian_dimension(self, name, dimension):
        """Test if dim Jac equals the Euler characteristic."""
        _, value = jacobian_ring(potential(builtin(name)))
        assert value == dimension

    def test_basepoint_independence(self):
        """Test if moving the basepoint keeps Jacobian dimension and critical values."""
        report = basepoint_independence(builtin("CP1"), ("1/3",), seed=0)
        assert report.passed


class TestCriticalPoints:

    def test_cp1_at_quarter(self, cp1):
        """Test if CP1 has Morse critical points y = -1 and y = 1 at T = 1/4."""
        points = critical_points(cp1, "1/4", seed=0)
        assert len(points) == 2
        assert points[0].coordinates[0] == pytest.approx(-1)
        assert points[1].coordinates[0] == pytest.approx(1)
        assert all(point.morse and point.local_multiplicity == 1 for point in points)
        assert sorted(point.value.real for point in points) == pytest.approx([-1, 1])

    def test_cp2_count(self, cp2):
        """Test if CP2 has three critical points, all Morse."""
        points = critical_points(cp2, "1/4", seed=0)
        assert len(points) == 3
        assert all(point.morse for point in points)
        assert all(point.residual < 1e-9 for point in points)


class TestQuantumCohomology:

    @pytest.mark.parametrize("name", ["CP1", "CP2", "CP1xCP1"])
    def test_ks_divisor_map(self, name):
        """Test if z_j -> z_j(y) is a ring isomorphism onto the Jacobian ring."""
        presentation = qh_presentation(name)
        report = ks_divisor_check(presentation, potential(builtin(name)))
        assert report.passed
        assert report.data["rank"] == presentation.rank

    def test_cp1_presentation(self):
        presentation = qh_presentation("CP1")
        assert presentation.variables == ("z1", "z2")
        assert presentation.quantum == [parse_expr("z1*z2 - T", presentation.variables)]

    def test_extra_relation_survives(self, cp1):
        """Test if a relation that is not killed raises with a witness."""
        presentation = qh_presentation("CP1")
        corrupted = replace(presentation, quantum=presentation.quantum + [parse_expr("z1", presentation.variables)])
        with pytest.raises(RelationNotKilled) as excinfo:
            ks_divisor_check(corrupted, cp1)
        assert excinfo.value.witness
