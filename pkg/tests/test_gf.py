"""Tests for GF(q) arithmetic."""

import pytest

from app.algebra.gf import PRIME_POWERS, fe_add, fe_inv, fe_mul, get_field
from app.utils.constants import SUPPORTED_ORDERS
from app.utils.errors import FieldDivisionError, FieldMismatchError, UnsupportedFieldError


class TestFieldConstruction:
    """Test field construction and lookup."""

    @pytest.mark.parametrize("q", SUPPORTED_ORDERS)
    def test_supported_orders_build(self, q):
        """Test that every supported order builds and passes its own audit."""
        field = get_field(q)
        field.audit()
        assert field.q == q
        assert field.p ** field.n == q

    @pytest.mark.parametrize("q", [0, 1, 6, 10, 16])
    def test_unsupported_order_rejected(self, q):
        """Test that orders outside the supported set raise UnsupportedFieldError."""
        with pytest.raises(UnsupportedFieldError, match="unsupported field order"):
            get_field(q)

    def test_fields_are_shared(self):
        """Test that get_field returns one instance per order."""
        assert get_field(9) is get_field(9)

    def test_characteristic(self):
        """Test characteristic and parity for prime and extension fields."""
        assert get_field(4).characteristic == 2 and get_field(4).is_even
        assert get_field(8).is_even
        assert get_field(9).characteristic == 3 and not get_field(9).is_even
        assert set(PRIME_POWERS) == set(SUPPORTED_ORDERS)


class TestFieldArithmetic:
    """Test the scalar operations on canonical indices."""

    @pytest.mark.parametrize("q", SUPPORTED_ORDERS)
    def test_inverses(self, q):
        """Test that x * x^-1 = 1 for every non-zero x."""
        field = get_field(q)
        for x in range(1, q):
            assert field.mul(x, field.inv(x)) == 1

    @pytest.mark.parametrize("q", SUPPORTED_ORDERS)
    def test_negation(self, q):
        """Test that x + (-x) = 0 and x - y = x + (-y)."""
        field = get_field(q)
        for x in range(q):
            assert field.add(x, field.neg(x)) == 0
            for y in range(q):
                assert field.sub(x, y) == field.add(x, field.neg(y))

    def test_gf4_one_plus_one(self):
        """Test that 1 + 1 = 0 in GF(4) and the prime subfield keeps indices 0 and 1."""
        field = get_field(4)
        assert field.add(1, 1) == 0
        assert field.mul(1, 3) == 3

    def test_gf9_minus_one_is_a_square(self):
        """Test that -1 is a square in GF(9) but not in GF(3)."""
        f9, f3 = get_field(9), get_field(3)
        assert any(f9.mul(x, x) == f9.neg(1) for x in range(9))
        assert not any(f3.mul(x, x) == f3.neg(1) for x in range(3))

    @pytest.mark.parametrize("q", [4, 8, 9])
    def test_frobenius_is_additive(self, q):
        """Test that x -> x^p is additive on extension fields."""
        field = get_field(q)
        frob = field.frobenius_table()
        for x in range(q):
            for y in range(q):
                assert frob[field.add(x, y)] == field.add(frob[x], frob[y])

    @pytest.mark.parametrize("q", SUPPORTED_ORDERS)
    def test_multiplicative_group_is_cyclic(self, q):
        """Test that the recorded generator has order q - 1."""
        field = get_field(q)
        assert len(set(field.exp_table)) == q - 1

    def test_negative_power_uses_inverse(self):
        """Test that x^-k = (x^-1)^k."""
        field = get_field(7)
        assert field.pow(3, -2) == field.pow(field.inv(3), 2)


class TestFieldElement:
    """Test the FieldElement wrapper and the fe_* operations."""

    def test_operations(self):
        """Test that the wrapper delegates to the tables."""
        field = get_field(5)
        x, y = field.element(2), field.element(4)
        assert fe_add(x, y).value == 1
        assert fe_mul(x, y).value == 3
        assert fe_inv(x).value == 3
        assert (x / y * y) == x

    def test_inverse_of_zero(self):
        """Test that inverting zero raises FieldDivisionError."""
        with pytest.raises(FieldDivisionError):
            fe_inv(get_field(8).zero)

    def test_mixed_fields(self):
        """Test that operands from different fields raise FieldMismatchError."""
        with pytest.raises(FieldMismatchError):
            fe_add(get_field(2).one, get_field(3).one)

    def test_index_out_of_range(self):
        """Test that an index outside 0..q-1 is refused."""
        with pytest.raises(ValueError):
            get_field(3).element(3)
