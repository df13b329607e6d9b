import pytest
from sympy.polys.domains import QQ

from mirrorforge.core.exceptions import ParseError, RingMismatch, UnknownVariable
from mirrorforge.core.laurent import Ideal, LaurentPoly, groebner_basis, multiplication_matrix, normal_form, parse_expr

Y = ("y",)
XY = ("y1", "y2")


class TestParsing:

    def test_cp1_potential_text(self, cp1):
        """Test if the CP1 potential prints and parses in the expression grammar."""
        assert str(cp1.poly) == "T^(1/2)*(y + y^-1)"
        assert parse_expr("T^(1/2)*(y + y^-1)", Y) == cp1.poly

    def test_print_parse_identity(self, cp2):
        """Test if printing then parsing gives the same polynomial."""
        assert parse_expr(str(cp2.poly), cp2.variables) == cp2.poly

    def test_arithmetic(self):
        f = parse_expr("(y1 + 2*y2)^2 - 4*y2^2 - 3/6*y1*y1", XY)
        assert f == parse_expr("1/2*y1^2 + 4*y1*y2", XY)

    def test_parse_error_position(self):
        """Test if a misplaced operator reports its offset."""
        with pytest.raises(ParseError) as excinfo:
            parse_expr("y + * y", Y)
        assert excinfo.value.position == 4

    def test_unknown_variable(self):
        """Test if undeclared names raise UnknownVariable with a position."""
        with pytest.raises(UnknownVariable) as excinfo:
            parse_expr("y + z", Y)
        assert excinfo.value.name == "z"
        assert excinfo.value.position == 4

    @pytest.mark.parametrize("text", ["", "y^(1/2)", "(y + 1)^-1", "y / y", "(y", "y $ 2"])
    def test_rejected(self, text):
        """Test expressions outside the grammar."""
        with pytest.raises(ParseError):
            parse_expr(text, Y)

    def test_reserved_t(self):
        with pytest.raises(ValueError):
            parse_expr("T", ("T",))


class TestLaurentPoly:

    def test_root_denominators_unify(self):
        """Test if T^(1/2) and T^(1/3) terms meet over N = 6."""
        f = parse_expr("T^(1/2)*y + T^(1/3)", Y)
        assert f.N == 6
        assert f.t_valuation() == QQ(1, 3)

    def test_log_derivative(self):
        """Test y d/dy on a Laurent polynomial."""
        f = parse_expr("y + y^-1 + 5", Y)
        assert f.log_derivative(0) == parse_expr("y - y^-1", Y)
        assert f.log_derivative("y") == f.log_derivative(0)

    def test_substitute(self):
        """Test substitution of monomials into a Laurent polynomial."""
        f = parse_expr("z1 + z2", ("z1", "z2"))
        image = f.substitute({"z1": parse_expr("y", Y), "z2": parse_expr("T*y^-1", Y)}, Y)
        assert image == parse_expr("y + T*y^-1", Y)

    def test_evaluate(self):
        """Test numeric evaluation at T = 1/4."""
        f = parse_expr("T^(1/2)*(y + y^-1)", Y)
        assert f.evaluate([2], "1/4") == pytest.approx(1.25)

    def test_variable_mismatch(self):
        with pytest.raises(RingMismatch):
            parse_expr("y", Y) + parse_expr("y1", XY)

    def test_monomial_inverse_only(self):
        with pytest.raises(ValueError):
            parse_expr("y + 1", Y).inverse_monomial()


class TestGroebner:

    def test_laurent_quotient(self):
        """Test the quotient of the Laurent ring by y^2 - 1."""
        Q = groebner_basis(Ideal(Y, [parse_expr("y^2 - 1", Y)]))
        assert Q.dimension == 2
        assert normal_form(parse_expr("y^3", Y), Q) == parse_expr("y", Y)
        assert normal_form(parse_expr("y^-1", Y), Q) == parse_expr("y", Y)

    def test_saturation_removes_torus_boundary(self):
        """Test if y*(y - 1) has a one dimensional Laurent quotient."""
        Q = groebner_basis([parse_expr("y^2 - y", Y)])
        assert Q.dimension == 1
        assert normal_form(parse_expr("y^5", Y), Q) == LaurentPoly.constant(Y)

    def test_infinite_quotient(self):
        Q = groebner_basis([parse_expr("y1 - y2", XY)])
        assert not Q.zero_dimensional
        assert Q.dimension == float("inf")

    def test_multiplication_matrix(self):
        """Test if multiplication by y squares to the identity modulo y^2 - 1."""
        Q = groebner_basis([parse_expr("y^2 - 1", Y)])
        matrix = multiplication_matrix(parse_expr("y", Y), Q)
        square = [[sum(matrix[i][k] * matrix[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        assert square == [[1, 0], [0, 1]]
