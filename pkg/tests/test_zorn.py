"""Tests for the split octonion algebra (Zorn vector matrices)."""

import random

import numpy as np
import pytest

from app.algebra.batch import ZornBatch
from app.algebra.element_text import format_coords, parse_element
from app.algebra.gf import get_field
from app.algebra.vectors import Vec3
from app.algebra.zorn import (
    Octonion,
    moufang_residuals,
    norm_index,
    oct_bilinear,
    oct_inverse,
    oct_minimal_eq_residual,
    oct_norm,
    oct_order,
    oct_power,
    oct_trace,
    order_predicate_classify,
    order_predicates,
)
from app.utils.constants import OrderTag
from app.utils.errors import ElementParseError, FieldMismatchError, PreconditionError, SingularElementError


def random_element(field, rng):
    return Octonion(field, tuple(rng.randrange(field.q) for _ in range(8)))


class TestProduct:
    """Test the Zorn product and norm."""

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_identity(self, q):
        """Test that e is a two-sided identity."""
        field = get_field(q)
        rng = random.Random(q)
        e = Octonion.identity(field)
        for _ in range(50):
            x = random_element(field, rng)
            assert e * x == x and x * e == x

    @pytest.mark.parametrize("q", [3, 4, 5, 9])
    def test_composition_law(self, q):
        """Test that N(xy) = N(x)N(y) on random pairs."""
        field = get_field(q)
        rng = random.Random(100 + q)
        for _ in range(200):
            x, y = random_element(field, rng), random_element(field, rng)
            assert oct_norm(x * y) == oct_norm(x) * oct_norm(y)

    def test_product_formula(self):
        """Test one product against the vector-matrix formula by hand over GF(2)."""
        field = get_field(2)
        x = parse_element("0;(1,1,1);(1,1,1);0", field)
        # x² = (α·β, 0 + 0 - β×β, 0 + α×α, β·α + 0) = (1, 0, 0, 1) = e
        assert x * x == Octonion.identity(field)

    def test_product_of_doubling_members(self):
        """Test a product with both cross terms non-zero over GF(2)."""
        field = get_field(2)
        x = Octonion.from_parts(field, 0, (1, 0, 0), (1, 0, 0), 1)
        y = Octonion.from_parts(field, 0, (0, 1, 0), (0, 1, 0), 0)
        assert x * y == Octonion.from_parts(field, 0, (0, 0, 1), (0, 1, 1), 0)

    def test_basis_vectors_multiply_through_cross_product(self):
        """Test that (0,α,0,0)(0,0,δ,0) = (α·δ, 0, 0, 0)."""
        field = get_field(5)
        x = Octonion.from_parts(field, 0, (1, 2, 0), (0, 0, 0), 0)
        y = Octonion.from_parts(field, 0, (0, 0, 0), (3, 2, 0), 0)
        assert x * y == Octonion.from_parts(field, 2, (0, 0, 0), (0, 0, 0), 0)

    def test_moufang_identities(self):
        """Test that all three Moufang residuals vanish on random triples over GF(7)."""
        field = get_field(7)
        rng = random.Random(7)
        zero = Octonion.zero(field)
        for _ in range(100):
            x, y, z = (random_element(field, rng) for _ in range(3))
            assert moufang_residuals(x, y, z) == (zero, zero, zero)

    def test_mixed_fields(self):
        """Test that mixing fields raises FieldMismatchError."""
        with pytest.raises(FieldMismatchError):
            Octonion.identity(get_field(2)) * Octonion.identity(get_field(4))


class TestBilinearAndInverse:
    """Test the polar form, trace, inverse and minimal equation."""

    @pytest.mark.parametrize("q", [2, 3, 8])
    def test_bilinear_closed_form(self, q):
        """Test that ⟨x,y⟩ = N(x+y) − N(x) − N(y)."""
        field = get_field(q)
        rng = random.Random(q)
        for _ in range(200):
            x, y = random_element(field, rng), random_element(field, rng)
            assert oct_bilinear(x, y) == oct_norm(x + y) - oct_norm(x) - oct_norm(y)

    def test_trace_is_bilinear_with_identity(self):
        """Test that ⟨x,e⟩ = a + b."""
        field = get_field(9)
        rng = random.Random(9)
        e = Octonion.identity(field)
        for _ in range(50):
            x = random_element(field, rng)
            assert oct_bilinear(x, e) == oct_trace(x)

    @pytest.mark.parametrize("q", [2, 5])
    def test_inverse(self, q):
        """Test that x x⁻¹ = e for invertible x."""
        field = get_field(q)
        rng = random.Random(q)
        e = Octonion.identity(field)
        for _ in range(100):
            x = random_element(field, rng)
            if norm_index(field, x.coords) == 0:
                continue
            assert x * oct_inverse(x) == e and oct_inverse(x) * x == e

    def test_inverse_of_zero_divisor(self):
        """Test that a norm-zero element has no inverse."""
        field = get_field(3)
        with pytest.raises(SingularElementError):
            oct_inverse(Octonion.from_parts(field, 1, (0, 0, 0), (0, 0, 0), 0))

    @pytest.mark.parametrize("q", [3, 4, 7])
    def test_minimal_equation(self, q):
        """Test that x² − ⟨x,e⟩x + N(x)e = 0."""
        field = get_field(q)
        rng = random.Random(q)
        for _ in range(100):
            assert oct_minimal_eq_residual(random_element(field, rng)).is_zero

    def test_power_associativity(self):
        """Test that x^5 = x^2 x^3 and negative powers invert."""
        field = get_field(5)
        x = Octonion.from_parts(field, 2, (1, 0, 3), (0, 4, 1), 1)
        assert oct_power(x, 5) == oct_power(x, 2) * oct_power(x, 3)
        assert oct_power(x, -1) == oct_inverse(x)


class TestOrders:
    """Test element orders and the closed-form order predicates."""

    def test_identity_and_minus_identity(self):
        """Test orders of ±e over GF(3)."""
        field = get_field(3)
        e = Octonion.identity(field)
        assert oct_order(e) == 1
        assert oct_order(-e) == 2

    def test_minus_identity_predicates(self):
        """Test that −e over GF(3) satisfies both x² = e and x³ = −e, classified as x² = e."""
        minus_e = -Octonion.identity(get_field(3))
        assert order_predicates(minus_e) == frozenset({OrderTag.SQ_ID, OrderTag.CUBE_NEG})
        assert order_predicate_classify(minus_e) is OrderTag.SQ_ID

    def test_involution_at_q2(self, named):
        """Test that x0 squares to e and is classified accordingly."""
        assert order_predicate_classify(named.x0) is OrderTag.SQ_ID
        assert oct_order(named.x0) == 2

    def test_order_three_at_q2(self, named):
        """Test that the shift a has order three and a cube predicate."""
        assert oct_order(named.a_shift1) == 3
        assert OrderTag.CUBE_ID in order_predicates(named.a_shift1)

    def test_predicates_match_powers(self):
        """Test every predicate against direct powers on random units over GF(5)."""
        field = get_field(5)
        batch = ZornBatch(field)
        e = Octonion.identity(field)
        for row in batch.random_units(np.random.default_rng(5), 300):
            x = Octonion(field, tuple(int(c) for c in row))
            tags = order_predicates(x)
            square, cube = x * x, x * x * x
            assert (OrderTag.SQ_ID in tags) == (square == e)
            assert (OrderTag.SQ_NEG in tags) == (square == -e)
            assert (OrderTag.CUBE_ID in tags) == (cube == e)
            assert (OrderTag.CUBE_NEG in tags) == (cube == -e)

    def test_predicates_need_norm_one(self):
        """Test that a non-unit is refused."""
        with pytest.raises(PreconditionError):
            order_predicates(Octonion.zero(get_field(2)))


class TestElementText:
    """Test the canonical element text format."""

    def test_round_trip(self):
        """Test that parsing and formatting agree."""
        field = get_field(9)
        text = "8;(0,1,2);(3,4,5);6"
        assert str(parse_element(text, field)) == text

    def test_whitespace_tolerated(self):
        """Test that spaces around numbers are accepted."""
        x = parse_element(" 1; (0, 0, 0) ; (0,0,0); 1 ", get_field(2))
        assert x == Octonion.identity(get_field(2))

    @pytest.mark.parametrize("text", ["1;(0,0);(0,0,0);1", "1,(0,0,0),(0,0,0),1", "", "a;(0,0,0);(0,0,0);1"])
    def test_malformed(self, text):
        """Test that malformed text raises ElementParseError."""
        with pytest.raises(ElementParseError):
            parse_element(text, get_field(2))

    def test_index_outside_field(self):
        """Test that an index ≥ q raises ElementParseError."""
        with pytest.raises(ElementParseError):
            parse_element("2;(0,0,0);(0,0,0);1", get_field(2))

    def test_format_coords(self):
        """Test formatting of a raw coordinate row."""
        assert format_coords(np.array([1, 0, 1, 1, 0, 1, 0, 0])) == "1;(0,1,1);(0,1,0);0"


class TestVec3:
    """Test 3-vectors."""

    def test_cross_is_orthogonal(self):
        """Test that u·(u×v) = 0."""
        field = get_field(7)
        u, v = Vec3(field, (1, 2, 3)), Vec3(field, (4, 5, 6))
        assert u.dot(u.cross(v)) == 0
        assert v.dot(u.cross(v)) == 0

    def test_weight(self):
        """Test the number of non-zero coordinates."""
        assert Vec3(get_field(3), (0, 2, 1)).weight == 2
        assert Vec3.zero(get_field(3)).is_zero
