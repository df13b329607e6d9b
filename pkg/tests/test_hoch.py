import pytest

from mirrorforge.core.coeff import FIELD
from mirrorforge.core.exceptions import CoefficientNotField, NotStabilized, TruncationOverflow
from mirrorforge.core.multilinear import Gen
from mirrorforge.mirror.examples import clifford_category
from mirrorforge.structures.ainfty import curved_clifford
from mirrorforge.structures.bimod import diagonal, identity_premorphism, premorphism_diff, premorphism_residual
from mirrorforge.structures.hoch import (
    HochschildChain,
    HochschildCochain,
    L_M1,
    R_M1,
    basis_cochain,
    brace,
    cap,
    chain_diff,
    cochain_basis,
    cochain_residual,
    cup,
    gerstenhaber_Mk,
    hh_cohomology,
    hochschild_diff,
    is_boundary,
    scalar_cochain,
    unit_cochain,
)


class TestCochains:

    def test_differential_squares_to_zero(self, clifford):
        """Test if b*b* vanishes on basis cochains of length one."""
        for element in cochain_basis(clifford, 1):
            phi = basis_cochain(clifford, element)
            assert cochain_residual(hochschild_diff(hochschild_diff(phi)), 3) is None

    def test_unit_is_cocycle(self, clifford):
        assert cochain_residual(hochschild_diff(unit_cochain(clifford)), 3) is None

    def test_cup_with_unit(self, clifford):
        """Test if the unit cochain is a left unit for cup at length zero."""
        r = scalar_cochain(clifford, {"L": 3})
        assert cochain_residual(cup(unit_cochain(clifford), r) - r, 2) is None

    def test_cochain_basis_size(self, clifford):
        assert len(cochain_basis(clifford, 0)) == 2
        assert len(cochain_basis(clifford, 2)) == 8


class TestBraces:

    @pytest.mark.parametrize("name", ["clifford", "dual_numbers"])
    def test_ainfty_relation(self, name, request):
        """Test if m{m} vanishes on an uncurved category."""
        C = request.getfixturevalue(name)
        assert cochain_residual(HochschildCochain(C, brace(C.ops, C.ops)), 3) is None

    def test_empty_brace(self, clifford):
        """Test if a brace with no inner cochains is the outer cochain."""
        phi = basis_cochain(clifford, cochain_basis(clifford, 1)[0])
        assert cochain_residual(HochschildCochain(clifford, brace(phi.map)) - phi, 2) is None

    def test_low_gerstenhaber_operations(self, clifford):
        """Test if M^0 vanishes and M^1 is the Hochschild differential."""
        assert cochain_residual(gerstenhaber_Mk(category=clifford), 3) is None
        r = scalar_cochain(clifford, {"L": 3})
        assert cochain_residual(gerstenhaber_Mk(r) - hochschild_diff(r), 3) is None

    def test_unit_is_idempotent(self, clifford):
        """Test if M^2(e, e) = e for the unit cochain."""
        e = unit_cochain(clifford)
        assert cochain_residual(gerstenhaber_Mk(e, e) - e, 2) is None


class TestActions:

    def test_unit_acts_as_identity(self, clifford):
        """Test if the left action of the unit cochain is the identity premorphism."""
        diag = diagonal(clifford)
        action = L_M1(unit_cochain(clifford), diag)
        assert premorphism_residual(action - identity_premorphism(diag), 2, 2).passed
        assert premorphism_residual(premorphism_diff(action), 2, 2).passed

    def test_scalar_acts_the_same_on_both_sides(self, clifford):
        """Test if a scalar cochain acts on the diagonal alike from the left and from the right."""
        diag = diagonal(clifford)
        r = scalar_cochain(clifford, {"L": 3})
        left, right = L_M1(r, diag), R_M1(r, diag)
        assert not premorphism_residual(left, 0, 0).passed
        assert premorphism_residual(left - right, 2, 2).passed

    def test_wrong_category(self, clifford, dual_numbers):
        with pytest.raises(ValueError):
            L_M1(unit_cochain(dual_numbers), diagonal(clifford))
        with pytest.raises(ValueError):
            R_M1(unit_cochain(dual_numbers), diagonal(clifford))


class TestCohomology:

    def test_clifford(self, clifford):
        """Test if HH of the Clifford algebra on one generator is the ground field, in even degree."""
        result = hh_cohomology(clifford, 4)
        assert result.stable
        assert result.dims == {0: 1, 1: 0}
        report = result.to_report("Cl1")
        assert report.passed
        assert report.data["HH"] == {"HH^0": 1, "HH^1": 0}
        assert report.data["representatives"]["HH^0"]

    def test_not_stabilized(self, dual_numbers):
        """Test if growing cohomology warns and fails the stability check."""
        with pytest.warns(NotStabilized):
            result = hh_cohomology(dual_numbers, 3)
        assert not result.stable
        assert result.dims != result.previous
        report = result.to_report("D")
        assert not report.check("stable").passed
        assert report.warnings

    def test_curved(self):
        with pytest.raises(TruncationOverflow):
            hh_cohomology(curved_clifford(1, [1], FIELD), 3)

    def test_polynomial_coefficients(self):
        """Test if cohomology over a polynomial ring is refused."""
        with pytest.raises(CoefficientNotField):
            hh_cohomology(clifford_category(1), 3)

    def test_lmax(self, clifford):
        with pytest.raises(ValueError):
            hh_cohomology(clifford, 0)


class TestChains:

    def test_cap_with_unit(self, clifford):
        """Test if capping with the unit cochain fixes length-zero chains."""
        e = unit_cochain(clifford)
        for gen in clifford.hom("L", "L"):
            chain = HochschildChain.word([gen], FIELD.one)
            assert cap(e, chain) == chain

    def test_boundaries(self, clifford):
        """Test if the unit chain is a boundary and the odd generator is not."""
        one, odd = clifford.hom("L", "L")
        assert is_boundary(clifford, HochschildChain.word([one], FIELD.one))
        assert not is_boundary(clifford, HochschildChain.word([odd], FIELD.one))

    def test_boundary_of_a_chain(self, clifford):
        one, odd = clifford.hom("L", "L")
        boundary = chain_diff(clifford, HochschildChain.word([odd, one, odd], FIELD.one))
        assert is_boundary(clifford, boundary)

    def test_open_word(self):
        """Test if a word that does not close up is rejected."""
        a = Gen("a", "X", "Y", 0)
        with pytest.raises(ValueError):
            HochschildChain.word([a], FIELD.one)

    def test_curved_chains(self):
        C = curved_clifford(1, [1], FIELD)
        with pytest.raises(TruncationOverflow):
            chain_diff(C, HochschildChain.word([C.hom("L", "L")[0]], FIELD.one))
