import pytest

from mirrorforge.core.exceptions import InputError, ParseError, UnknownBuiltin, UnknownVariable
from mirrorforge.core.multilinear import Vector
from mirrorforge.core.serialize import (
    bundle_from_json,
    category_from_json,
    category_to_json,
    load_json,
    mf_from_json,
    setup_from_json,
)
from mirrorforge.mirror.bulk import (
    bulk_from_family,
    check_co_cocycle,
    corrupt_datum,
    kodaira_spencer,
    potential_derivative,
)
from mirrorforge.mirror.examples import clifford_category, clifford_setup, shipped
from mirrorforge.mirror.lmfunctor import MirrorSetup, check_lm_functor, check_lm_object, lm_morphisms
from mirrorforge.mirror.theorem import check_cap_scalar, check_main_theorem
from mirrorforge.structures.ainfty import check_ainfty
from mirrorforge.structures.mf import check_gamma, identity_morphism, mf_diff, validate_mf


class TestLocalizedMirror:

    def test_factorization(self, u_setup):
        """Test if the image of (L, 0) is Q = [[0, -x], [-x, 0]] factorizing x^2."""
        setup, _ = u_setup
        x = setup.ring.gens[0]
        M = setup.factorization("L0")
        assert M.ranks == (1, 1)
        assert M.Q01.to_list() == [[-x]]
        assert M.Q10.to_list() == [[-x]]
        assert M.W == x**2
        assert validate_mf(M).passed

    def test_two_generators(self):
        setup = clifford_setup(2)
        x1, x2 = setup.ring.gens
        assert setup.W == x1**2 + x2**2
        assert setup.factorization("L0").ranks == (2, 2)
        assert validate_mf(setup.factorization("L0")).passed

    def test_functor(self, u_setup):
        setup, _ = u_setup
        report = check_lm_functor(setup, 3)
        assert report.passed
        assert report.data["W"] == "x**2"

    def test_object(self, u_setup):
        setup, _ = u_setup
        report = check_lm_object(setup, "L", Vector())
        assert report.passed
        assert report.data["W-lambda"] == "x**2"

    def test_unit_goes_to_identity(self, u_setup):
        """Test if LM_1 sends the unit of L0 to the identity of its factorization."""
        setup, _ = u_setup
        phi = lm_morphisms(setup, [setup.source.units["L0"]])
        assert phi == identity_morphism(setup.factorization("L0"))

    def test_odd_morphism_is_closed(self, u_setup):
        """Test if LM_1 of the odd generator of L0 is an odd closed morphism."""
        setup, _ = u_setup
        odd = next(gen for gen in setup.source.hom("L0", "L0") if gen.deg == 1)
        phi = lm_morphisms(setup, [Vector.basis(odd, setup.ring.one)])
        assert phi.degree == 1
        assert not phi.is_zero
        assert mf_diff(phi).is_zero

    def test_empty_input(self, u_setup):
        setup, _ = u_setup
        with pytest.raises(InputError):
            lm_morphisms(setup, [])

    def test_setup_errors(self):
        """Test if an empty setup and a clash with the reference label are refused."""
        C = clifford_category(1)
        reference = ("L", Vector())
        with pytest.raises(InputError):
            MirrorSetup(C, reference, {})
        with pytest.raises(InputError):
            MirrorSetup(C, reference, {"LL": ("L", Vector())})


class TestBulk:

    def test_w_family(self, w_setup):
        """Test if deforming the curvature gives q_0 = e and ks = 1."""
        setup, datum = w_setup
        assert datum.q0("L") == datum.category.units["L"]
        assert kodaira_spencer(datum, setup) == setup.ring.one

    def test_u_family(self, u_setup):
        """Test if deforming e^2 gives ks = x^2, matching d/dt of the potential."""
        setup, datum = u_setup
        x = setup.ring.gens[0]
        assert kodaira_spencer(datum, setup) == x**2
        assert potential_derivative(datum, setup.reference) == x**2

    def test_cocycle(self, u_setup):
        setup, datum = u_setup
        assert check_co_cocycle(datum).passed
        assert check_co_cocycle(datum, setup).passed

    def test_missing_parameter(self):
        with pytest.raises(InputError):
            bulk_from_family(clifford_category(1), "t")

    def test_corrupted(self, u_setup):
        _, datum = u_setup
        corrupted = corrupt_datum(datum)
        assert corrupted.family is None
        assert corrupted.report.warnings
        assert potential_derivative(corrupted, ("L", Vector())) is None

    def test_unknown_setup(self):
        with pytest.raises(UnknownBuiltin):
            shipped("clifford-v")


class TestMainTheorem:

    def test_u_family(self, u_setup):
        """Test G - F = delta(xi) for the class deforming e^2."""
        report = check_main_theorem(*u_setup, rmax=2)
        assert report.passed, [check.name for check in report.failures()]
        assert report.check("main").passed
        assert report.data["ks"] == "x**2"

    def test_w_family(self, w_setup):
        report = check_main_theorem(*w_setup, rmax=2)
        assert report.passed, [check.name for check in report.failures()]
        assert report.data["ks"] == "1"

    def test_corrupted(self, u_setup):
        """Test if a datum violating the q-relation yields a failing report."""
        setup, datum = u_setup
        report = check_main_theorem(setup, corrupt_datum(datum), rmax=1)
        assert not report.passed
        assert not report.check("qinfty").passed

    @pytest.mark.slow
    def test_two_generators(self):
        report = check_main_theorem(*shipped("clifford-u", 2), rmax=2)
        assert report.passed, [check.name for check in report.failures()]

    def test_cap_scalar(self, u_setup):
        setup, _ = u_setup
        report = check_cap_scalar(setup, seed=0)
        assert report.passed
        assert report.check("cap[x]").passed


class TestSerialize:

    def test_shipped_setup(self):
        setup, datum = setup_from_json({"shipped": "clifford-u", "n": 1})
        assert kodaira_spencer(datum, setup) == setup.ring.gens[0] ** 2

    def test_clifford_category(self):
        C = category_from_json({"kind": "clifford", "n": 1, "u": ["1"]})
        assert [str(g) for g in C.generators] == ["L|L/1", "L|L/e1"]
        assert check_ainfty(C).passed

    def test_table_category(self, clifford):
        """Test if a tabulated Clifford algebra reads back as an A-infinity category."""
        C = category_from_json(category_to_json(clifford))
        assert check_ainfty(C).passed
        assert len(C.generators) == 2

    def test_unknown_kind(self):
        with pytest.raises(InputError):
            category_from_json({"kind": "sheaf"})

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            mf_from_json({"ring": {"vars": ["x"]}, "W": "y**2", "Q01": [["x"]], "Q10": [["x"]]})

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"kind": ')
        with pytest.raises(ParseError):
            load_json(str(path))

    def test_bundle(self):
        factorization = {"ring": {"vars": ["x"]}, "W": "x**2", "Q01": [["x"]], "Q10": [["x"]]}
        C, elements = bundle_from_json({"summands": {"P": {"E": factorization}}, "elements": {"P": ["x"]}})
        assert list(C.summands) == ["P"]
        assert check_gamma(C, elements).passed
