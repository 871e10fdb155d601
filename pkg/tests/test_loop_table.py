"""Tests for the enumerated loops M(q) and M*(q)."""

import numpy as np
import pytest

from app.algebra.gf import get_field
from app.algebra.zorn import Octonion
from app.loops.subgroups import census
from app.loops.table import FULL_TABLE_LIMIT, enumerate_loop, loop_mul
from app.utils.constants import LOOP_ORDER_Q2, ORDER_CENSUS_Q2
from app.utils.errors import UnsupportedFieldError


class TestEnumeration:
    """Test loop enumeration."""

    def test_order_q2(self, loop2):
        """Test that M(2) has 120 elements, identity first."""
        assert len(loop2) == LOOP_ORDER_Q2
        assert loop2.rep(0) == Octonion.identity(get_field(2))
        assert not loop2.is_quotient
        assert loop2.sphere_order == 120

    def test_census_q2(self, loop2):
        """Test the order census {1: 1, 2: 63, 3: 56}."""
        assert census(loop2) == ORDER_CENSUS_Q2

    def test_order_q3(self, loop3):
        """Test that M*(3) has q³(q⁴−1)/2 = 1080 classes from 2160 norm-one elements."""
        assert len(loop3) == 1080
        assert loop3.sphere_order == 2160
        assert loop3.is_quotient
        assert loop3.algebra_order == 6561

    def test_full_table_only_for_small_loops(self, loop2, loop3):
        """Test that the product table is kept up to the size limit."""
        assert len(loop2) <= FULL_TABLE_LIMIT and loop2.table is not None
        assert len(loop3) > FULL_TABLE_LIMIT and loop3.table is None

    def test_every_element_has_norm_one(self, loop2, loop3):
        """Test that representatives lie on the unit sphere."""
        for t in (loop2, loop3):
            assert np.all(t.in_loop(t.coords))

    def test_export_lines(self, loop2):
        """Test that the listing has one canonical line per element."""
        lines = loop2.export_lines()
        assert len(lines) == 120
        assert lines[0] == "1;(0,0,0);(0,0,0);1"
        assert len(set(lines)) == 120

    def test_unsupported_order(self):
        """Test that q = 6 raises UnsupportedFieldError."""
        with pytest.raises(UnsupportedFieldError):
            enumerate_loop(6)

    def test_enumeration_is_cached(self):
        """Test that enumerate_loop returns the shared table."""
        assert enumerate_loop(2) is enumerate_loop(2)


class TestProducts:
    """Test loop multiplication."""

    def test_identity(self, loop2):
        """Test that index 0 is a two-sided identity."""
        for i in range(len(loop2)):
            assert loop_mul(loop2, 0, i) == i
            assert loop_mul(loop2, i, 0) == i

    def test_matches_algebra_product(self, loop2):
        """Test that the table agrees with the octonion product."""
        for i in range(0, 120, 7):
            for j in range(0, 120, 11):
                assert loop2.rep(loop_mul(loop2, i, j)) == loop2.rep(i) * loop2.rep(j)

    def test_quotient_product_up_to_sign(self, loop3):
        """Test that over GF(3) the product class contains ±xy."""
        rng = np.random.default_rng(3)
        for i, j in rng.integers(0, len(loop3), size=(50, 2)):
            product = loop3.rep(int(i)) * loop3.rep(int(j))
            assert loop3.rep(loop_mul(loop3, int(i), int(j))) in (product, -product)

    def test_minus_identity_is_identity_class(self, loop3):
        """Test that −e lies in the class of e."""
        minus_e = -Octonion.identity(get_field(3))
        assert loop3.index_of(minus_e) == 0

    def test_inverses(self, loop2, loop3):
        """Test that x x⁻¹ = e in both loops."""
        for t in (loop2, loop3):
            everything = np.arange(len(t))
            assert np.all(t.mul_many(everything, t.inverses()) == 0)

    def test_mul_many_matches_mul(self, loop3):
        """Test that the batch product agrees with the cached scalar product."""
        i = np.arange(0, 1080, 37)
        j = np.arange(5, 1080, 37)[: len(i)]
        batch = loop3.mul_many(i[: len(j)], j)
        assert [loop3.mul(int(a), int(b)) for a, b in zip(i, j)] == list(batch)

    def test_powers(self, loop2, idx):
        """Test that x0² = e and a³ = e."""
        assert loop2.power(idx["x0"], 2) == 0
        assert loop2.power(idx["a_shift1"], 3) == 0
        assert loop2.power(idx["a_shift1"], -1) == loop2.inverse(idx["a_shift1"])

    def test_index_out_of_range(self, loop2):
        """Test that an index outside the table raises IndexError."""
        with pytest.raises(IndexError):
            loop_mul(loop2, 120, 0)

    def test_lookup_of_non_member(self, loop2):
        """Test that looking up a norm-zero element raises KeyError."""
        with pytest.raises(KeyError):
            loop2.index_of(Octonion.zero(get_field(2)))
