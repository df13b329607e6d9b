import pytest

from mirrorforge.core.coeff import FIELD
from mirrorforge.core.exceptions import MCInvalid, NonConvergent, PotentialMismatch
from mirrorforge.core.multilinear import Gen, TableMap, Vector
from mirrorforge.mirror.examples import clifford_category
from mirrorforge.structures.ainfty import (
    AInfCategory,
    check_ainfty,
    check_functor,
    check_unit,
    curved_clifford,
    deform,
    identity_functor,
    is_weak_mc,
    m_exp_b,
    unit_multiple,
)

ONE = Gen("1", "X", "X", 0)
A = Gen("a", "X", "X", 0)


def two_dimensional(square_fixes_unit: bool = True) -> AInfCategory:
    """The algebra Q(s)[a]/(a^2 - 1) as a one-object category, optionally with m_2(a, 1) dropped."""
    one = FIELD.one
    table = {
        (ONE, ONE): Vector({ONE: one}),
        (ONE, A): Vector({A: one}),
        (A, A): Vector({ONE: one}),
    }
    if square_fixes_unit:
        table[(A, ONE)] = Vector({A: one})
    ops = TableMap(table, None, 1, FIELD)
    return AInfCategory("A2", ["X"], {("X", "X"): [ONE, A]}, FIELD, ops, {"X": Vector({ONE: one})}, 2, True)


class TestRelations:

    def test_clifford(self, clifford):
        """Test the A-infinity relation of the Clifford algebra."""
        assert check_ainfty(clifford).passed
        assert not clifford.curved

    def test_curved_clifford(self):
        """Test if a central curvature keeps the relation."""
        C = curved_clifford(3, [1, 2], FIELD)
        assert C.curved
        assert check_ainfty(C).passed

    def test_clifford_square(self):
        """Test if m_2(e1, e1) = u * 1."""
        C = curved_clifford(0, [5], FIELD)
        odd, unit = C.hom("L", "L")[1], C.units["L"]
        assert C.ops([C.basis(odd), C.basis(odd)]) == unit.scale(FIELD.convert(5))

    def test_table_category(self):
        """Test an associative table category."""
        report = check_ainfty(two_dimensional())
        assert report.passed
        assert check_unit(two_dimensional()).passed

    def test_broken_table_witness(self):
        """Test if a non-associative table fails with the offending inputs."""
        report = check_ainfty(two_dimensional(square_fixes_unit=False))
        assert not report.passed
        failure = report.failures()[0]
        assert failure.name.startswith("ainfty[k=3]")
        assert len(failure.witness["inputs"]) == 3

    def test_unit(self, clifford):
        """Test the strict unit axioms on the Clifford algebra."""
        report = check_unit(clifford)
        assert report.passed
        assert report.check("unit[L]").passed

    def test_identity_functor(self, clifford):
        assert check_functor(identity_functor(clifford)).passed


class TestWeakMaurerCartan:

    def test_reference_cochain(self):
        """Test if b = x e1 is weakly unobstructed with potential x^2."""
        C = clifford_category(1)
        x = C.domain.gens[0]
        odd = C.hom("L", "L")[1]
        ok, value = is_weak_mc(C, "L", Vector({odd: x}))
        assert ok
        assert value == x**2

    def test_mixed_cochain_is_obstructed(self):
        """Test if mixing odd and even directions breaks the weak Maurer-Cartan equation."""
        C = clifford_category(2)
        x1, x2 = C.domain.gens
        gens = {gen.name: gen for gen in C.hom("L", "L")}
        b = Vector({gens["e1"]: x1, gens["e1e2"]: x2})
        assert not is_weak_mc(C, "L", b)[0]
        with pytest.raises(MCInvalid):
            deform(C, {"A": ("L", b)})

    def test_potential_mismatch(self):
        """Test if deforming objects of different potentials is refused."""
        C = clifford_category(1)
        odd = C.hom("L", "L")[1]
        assignments = {"A": ("L", Vector({odd: C.domain.gens[0]})), "B": ("L", Vector())}
        with pytest.raises(PotentialMismatch):
            deform(C, assignments)
        deformed = deform(C, assignments, require_common=False)
        assert deformed.potentials["B"] == C.domain.zero

    def test_deformed_category(self):
        """Test if the deformed category is again an A-infinity category."""
        C = clifford_category(1)
        odd = C.hom("L", "L")[1]
        deformed = deform(C, {"A": ("L", Vector({odd: C.domain.gens[0]}))})
        assert deformed.objects == ["A"]
        assert check_ainfty(deformed).passed

    def test_unit_multiple(self, clifford):
        odd = clifford.hom("L", "L")[1]
        assert unit_multiple(clifford, "L", clifford.basis(odd)) is None
        assert unit_multiple(clifford, "L", Vector()) == FIELD.zero

    def test_unfiltered_series(self):
        """Test if an unfiltered cochain on an incomplete category does not converge."""
        C = two_dimensional()
        C.complete = False
        with pytest.raises(NonConvergent):
            m_exp_b(C, "X", Vector({A: FIELD.one}))
