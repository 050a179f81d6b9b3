import pytest
from plane_matroids.core.gf import (
    arith, element_of_order, is_irreducible, make_field,
    multiplicative_order, parse_element, render_element
)

class TestFieldConstruction:
    def test_prime_field_order(self):
        """GF(7) has seven elements and modulus x"""
        spec = make_field(7)
        assert spec.q == 7
        assert len(list(spec.elements())) == 7

    def test_composite_characteristic_rejected(self):
        """Characteristic must be prime"""
        with pytest.raises(ValueError, match="not prime: 4"):
            make_field(4)

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError, match="extension degree"):
            make_field(2, 0)

    def test_gf4_modulus_is_smallest_irreducible(self):
        """x^2 + x + 1 is the only irreducible quadratic over Z_2"""
        assert make_field(2, 2).modulus == (1, 1, 1)

    def test_gf9_modulus(self):
        """x^2 + 1 has no root mod 3 and comes first in enumeration order"""
        assert make_field(3, 2).modulus == (1, 0, 1)

    def test_construction_is_reproducible(self):
        assert make_field(5, 2) == make_field(5, 2)

class TestIrreducibility:
    def test_irreducible_quadratic(self):
        assert is_irreducible(2, (1, 1, 1)) == True

    def test_square_is_reducible(self):
        """x^2 + 1 = (x + 1)^2 over Z_2"""
        assert is_irreducible(2, (1, 0, 1)) == False

    def test_quartic_without_roots_can_be_reducible(self):
        """(x^2 + x + 1)^2 = x^4 + x^2 + 1 has no roots over Z_2 but factors"""
        assert is_irreducible(2, (1, 0, 1, 0, 1)) == False

class TestArithmetic:
    def test_generator_squared_in_gf4(self):
        """w^2 = w + 1 in GF(4)"""
        spec = make_field(2, 2)
        w = spec.generator
        assert w * w == w + spec.one
        assert render_element(w * w) == "w+1"

    def test_integer_operands_are_reduced(self):
        spec = make_field(5)
        assert spec.scalar(3) + 4 == spec.scalar(2)
        assert 2 * spec.scalar(3) == spec.one

    def test_inverse_and_division(self):
        spec = make_field(3, 2)
        for x in spec.nonzero_elements():
            assert x * x.inverse() == spec.one
            assert x / x == spec.one

    def test_negative_exponent(self):
        spec = make_field(7)
        assert spec.scalar(3) ** -1 == spec.scalar(5)

    def test_zero_has_no_inverse(self):
        spec = make_field(5)
        with pytest.raises(ValueError, match="zero has no inverse"):
            arith("inv", spec.zero)
        with pytest.raises(ZeroDivisionError):
            spec.zero.inverse()

    def test_field_mismatch(self):
        with pytest.raises(ValueError, match="field mismatch"):
            arith("add", make_field(5).one, make_field(7).one)
        with pytest.raises(ValueError, match="field mismatch"):
            make_field(5).one * make_field(7).one

    def test_arith_by_name(self):
        spec = make_field(5)
        two, three = spec.scalar(2), spec.scalar(3)
        assert arith("add", two, three) == spec.zero
        assert arith("mul", two, three) == spec.one
        assert arith("neg", two) == three
        assert arith("inv", two) == three

    def test_characteristic_two_negation_is_identity(self):
        spec = make_field(2, 3)
        for x in spec.elements():
            assert -x == x

class TestMultiplicativeOrder:
    def test_order_of_two_mod_five(self):
        assert multiplicative_order(make_field(5).scalar(2)) == 4

    def test_zero_has_no_order(self):
        with pytest.raises(ValueError, match="zero has no order"):
            multiplicative_order(make_field(5).zero)

    def test_first_element_of_order(self):
        """Enumeration order is 0, 1, 2, ... so 2 is the first generator of GF(5)*"""
        spec = make_field(5)
        assert element_of_order(spec, 4) == spec.scalar(2)

    def test_order_three_in_gf4(self):
        spec = make_field(2, 2)
        assert element_of_order(spec, 3) == spec.generator

    def test_order_must_divide_group_order(self):
        with pytest.raises(ValueError, match="order unavailable"):
            element_of_order(make_field(5), 3)

class TestRendering:
    def test_prime_field_decimal(self):
        assert render_element(make_field(7).scalar(5)) == "5"

    def test_zero_renders_as_zero(self):
        assert render_element(make_field(3, 2).zero) == "0"

    def test_parse_inverts_render(self):
        spec = make_field(3, 3)
        for x in spec.elements():
            assert parse_element(spec, render_element(x)) == x

    def test_parse_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            parse_element(make_field(5), "7")
        with pytest.raises(ValueError):
            parse_element(make_field(2, 2), "w^2")
