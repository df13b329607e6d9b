import numpy as np
import pytest

from mirrorforge.core.coeff import FIELD
from mirrorforge.core.exceptions import InputError, TruncationOverflow
from mirrorforge.structures.ainfty import curved_clifford, identity_functor
from mirrorforge.structures.bimod import (
    base_change,
    check_bimodule,
    compose,
    diagonal,
    h0_is_quasi_iso,
    identity_premorphism,
    multiplication_premorphism,
    premorphism_diff,
    premorphism_residual,
    random_premorphism,
    tensor,
)


@pytest.fixture
def diag(clifford):
    return diagonal(clifford)


class TestBimodules:

    def test_diagonal(self, diag):
        """Test the bimodule relation of the diagonal bimodule."""
        report = check_bimodule(diag)
        assert report.passed
        assert report.check("bimodule[0|1|0]").passed

    def test_base_change_by_identity(self, clifford, diag):
        """Test if pulling the diagonal back along identity functors keeps the relation."""
        F = identity_functor(clifford)
        pulled = base_change(F, F, diag)
        assert len(pulled.generators) == len(diag.generators)
        assert check_bimodule(pulled).passed

    def test_tensor_product(self, diag):
        """Test the bimodule relation of a bar-truncated tensor product."""
        product = tensor(diag, diag, 2)
        assert check_bimodule(product).passed

    def test_tensor_over_curved_category(self):
        """Test if a tensor product over a curved category is refused."""
        curved = diagonal(curved_clifford(1, [1], FIELD))
        with pytest.raises(TruncationOverflow):
            tensor(curved, curved, 2)

    def test_tensor_mismatch(self, clifford, dual_numbers):
        with pytest.raises(InputError):
            tensor(diagonal(clifford), diagonal(dual_numbers), 2)


class TestPremorphisms:

    def test_identity_is_closed(self, diag):
        """Test if delta(id) vanishes."""
        assert premorphism_residual(premorphism_diff(identity_premorphism(diag)), 2, 2).passed

    def test_differential_squares_to_zero(self, diag):
        """Test if delta(delta(R)) vanishes for a random premorphism."""
        R = random_premorphism(diag, diag, 0, 2, np.random.default_rng(7))
        assert premorphism_residual(premorphism_diff(premorphism_diff(R)), 1, 1).passed

    def test_compose_with_identity(self, diag):
        R = random_premorphism(diag, diag, 1, 2, np.random.default_rng(3))
        assert premorphism_residual(compose(identity_premorphism(diag), R) - R, 2, 2).passed

    def test_compose_mismatch(self, clifford, diag):
        """Test if composing premorphisms of unrelated bimodules is refused."""
        other = diagonal(clifford)
        with pytest.raises(InputError):
            compose(identity_premorphism(diag), identity_premorphism(other))


class TestCohomology:

    def test_identity_is_quasi_iso(self, diag):
        assert h0_is_quasi_iso(identity_premorphism(diag))

    def test_zero_is_not_quasi_iso(self, diag):
        assert not h0_is_quasi_iso(identity_premorphism(diag).scale(0))

    def test_multiplication_is_quasi_iso(self, diag):
        """Test if C (x)_C M -> M is a quasi-isomorphism below the bar bound."""
        product = tensor(diag, diag, 2)
        assert h0_is_quasi_iso(multiplication_premorphism(product, diag))

    def test_multiplication_over_dual_numbers(self, dual_numbers):
        """Test if D (x)_D D_diag -> D_diag is a quasi-isomorphism for the dual numbers."""
        M = diagonal(dual_numbers)
        product = tensor(M, M, 2)
        assert check_bimodule(product).passed
        assert h0_is_quasi_iso(multiplication_premorphism(product, M))
