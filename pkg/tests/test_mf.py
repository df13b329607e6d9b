import pytest

from mirrorforge.core.exceptions import InputError, NotCritical, PotentialMismatch
from mirrorforge.mirror.theorem import check_cap_scalar
from mirrorforge.mirror.toric import critical_points
from mirrorforge.structures.mf import (
    NUMERIC_TOLERANCE,
    MatrixFactorization,
    MFCategory,
    MFMorphism,
    check_gamma,
    critical_mf_category,
    gamma,
    hessian,
    identity_morphism,
    jacobian_primitive,
    koszul_mf,
    local_potential,
    mf_ainfty_category,
    mf_compose,
    mf_diff,
    mf_ring,
    validate_mf,
)
from mirrorforge.structures.hoch import cochain_residual, hochschild_diff


@pytest.fixture(scope="module")
def ring():
    return mf_ring(("x",))


@pytest.fixture(scope="module")
def square(ring):
    """MF(x^2) with Q01 = Q10 = x."""
    x = ring.gens[0]
    return MatrixFactorization(ring, x**2, [[x]], [[x]], name="E")


class TestFactorizations:

    def test_validate(self, square):
        report = validate_mf(square)
        assert report.passed
        assert report.check("square").passed
        assert square.ranks == (1, 1)

    def test_wrong_square(self, ring):
        """Test if a factorization of the wrong potential fails with a witness entry."""
        x = ring.gens[0]
        report = validate_mf(MatrixFactorization(ring, x**2, [[x]], [[x + 1]]))
        assert not report.passed
        assert report.check("square").witness["entry"] == [0, 0]
        assert report.data["order"] == 1

    def test_adic(self, ring):
        """Test if an adic factorization passes up to its order and no further."""
        x = ring.gens[0]
        Q10 = [[x + x**3]]
        assert validate_mf(MatrixFactorization(ring, x**2, [[x]], Q10, adic=4)).passed
        assert not validate_mf(MatrixFactorization(ring, x**2, [[x]], Q10, adic=5)).passed
        assert MatrixFactorization(ring, x**2, [[x]], Q10, adic=4).mode == {"adic": 4}

    def test_shapes(self, ring):
        x = ring.gens[0]
        with pytest.raises(InputError):
            MatrixFactorization(ring, x**2, [[x, x]], [[x]])
        with pytest.raises(ValueError):
            MatrixFactorization(ring, x**2, [[x]], [[x]], adic=0)


class TestMorphisms:

    def test_identity_is_closed(self, square):
        assert mf_diff(identity_morphism(square)).is_zero

    def test_differential_squares_to_zero(self, square):
        phi = MFMorphism(square, square, [[1, 0], [0, 0]], 0)
        assert mf_diff(mf_diff(phi)).is_zero

    def test_compose(self, square):
        identity = identity_morphism(square)
        phi = MFMorphism(square, square, [[0, 1], [0, 0]], 1)
        assert mf_compose(identity, phi) == phi

    def test_parity(self, square):
        """Test if an odd entry in an even morphism is refused."""
        with pytest.raises(InputError):
            MFMorphism(square, square, [[0, 1], [0, 0]], 0)


class TestCategory:

    def test_relations(self, square):
        C = mf_ainfty_category([square])
        assert C.objects == ["E"]
        assert len(C.hom("E", "E")) == 4
        assert C.curvatures["MF"] == square.W

    def test_potential_mismatch(self, ring, square):
        """Test if a summand realising two potentials is refused."""
        x = ring.gens[0]
        other = MatrixFactorization(ring, x**3, [[x]], [[x**2]], name="F")
        with pytest.raises(PotentialMismatch):
            MFCategory("MF", {"MF": {"E": square, "F": other}})

    def test_gamma_is_scalar(self, square):
        C = mf_ainfty_category([square])
        x = C.domain.gens[0]
        value = gamma(C, x)([], "E")
        assert value == C.units["E"].scale(x)

    def test_jacobian_primitive(self, square):
        """Test if gamma(dW/dx) is the differential of the explicit primitive."""
        C = mf_ainfty_category([square])
        H, element = jacobian_primitive(C, "MF", 0)
        assert element == 2 * C.domain.gens[0]
        assert cochain_residual(hochschild_diff(H) - gamma(C, {"MF": element}), 2) is None

    def test_check_gamma(self, square):
        C = mf_ainfty_category([square])
        x = C.domain.gens[0]
        report = check_gamma(C, {"MF": [x]})
        assert report.passed
        assert report.check("MF:injective").passed
        assert report.check("MF:injective").data["reduced"] == {"E": [2, 2]}

    def test_contractible_is_not_injective(self, ring):
        """Test if a contractible factorization fails the injectivity check."""
        x = ring.gens[0]
        C = mf_ainfty_category([MatrixFactorization(ring, x**2, [[1]], [[x**2]], name="E")])
        report = check_gamma(C)
        check = report.check("MF:injective")
        assert not check.passed
        assert check.data["reduced"] == {"E": [0, 0]}
        assert report.failures() == [check]

    def test_non_morse_summand(self, ring):
        """Test if a cubic summand warns and skips the injectivity check."""
        x = ring.gens[0]
        C = mf_ainfty_category([MatrixFactorization(ring, x**3, [[x]], [[x**2]], name="E")])
        report = check_gamma(C, {"MF": [x]})
        assert report.passed
        assert report.warnings
        with pytest.raises(KeyError):
            report.check("MF:injective")

    def test_non_morse_cap_action(self, ring):
        """Test if gamma(x) caps as the scalar x on a cubic summand."""
        x = ring.gens[0]
        C = mf_ainfty_category([MatrixFactorization(ring, x**3, [[x]], [[x**2]], name="E")])
        report = check_cap_scalar(C, rs=[x], seed=0)
        assert report.passed
        assert report.check("cap[x]").passed


class TestKoszul:

    def test_cp1_critical_point(self, cp1):
        """Test the Koszul factorization of the CP1 potential at y = 1."""
        M = koszul_mf(cp1.poly, ["1"], 4)
        assert M.ranks == (1, 1)
        assert M.mode == {"adic": 4}
        assert validate_mf(M).passed

    def test_not_critical(self, cp1):
        with pytest.raises(NotCritical):
            koszul_mf(cp1.poly, ["2"], 4)

    def test_critical_category(self, cp1):
        """Test if the direct sum over both critical points is Morse at each summand."""
        C = critical_mf_category(cp1.poly, {"+": ["1"], "-": ["-1"]}, 4)
        assert set(C.summands) == {"+", "-"}
        assert not C.hom(("+", "K"), ("-", "K"))
        for label in C.summands:
            assert hessian(C.curvatures[label], C.domain).det()

    def test_local_potential(self, cp1):
        """Test the expansion of the CP1 potential at y = 1."""
        ring, expansion, N = local_potential(cp1.poly, ["1"], 3)
        assert N == 2
        assert expansion.get((1,), ring.domain.zero) == ring.domain.zero
        assert expansion.get((0,)) == 2 * expansion.get((2,))

    def test_numeric_point_needs_t0(self, cp1):
        with pytest.raises(InputError):
            local_potential(cp1.poly, [1.0 + 0j], 3)


class TestNumericKoszul:

    def test_cp2_at_t0(self, cp2):
        """Test if the Koszul factorizations at the CP2 critical points validate over CC at T = 1/64."""
        points = critical_points(cp2, "1/64", seed=0)
        assert len(points) == 3
        for point in points:
            M = koszul_mf(cp2.poly, point.coordinates, 3, t0="1/64")
            report = validate_mf(M)
            assert report.passed
            assert report.parameters["tolerance"] == NUMERIC_TOLERANCE
            assert M.mode == {"adic": 3}
            assert abs(complex(hessian(M.W, M.ring).det())) == pytest.approx(3 / 16)

    def test_numeric_not_critical(self, cp2):
        with pytest.raises(NotCritical):
            koszul_mf(cp2.poly, (1 + 0j, 2 + 0j), 3, t0="1/64")

    def test_numeric_category_refused(self, cp2):
        """Test if a numeric factorization cannot be assembled into an MF category."""
        M = koszul_mf(cp2.poly, ["1", "1"], 3, t0="1/64")
        assert M.tolerance == NUMERIC_TOLERANCE
        with pytest.raises(InputError):
            MFCategory("MF", {"+": {"K": M}})
