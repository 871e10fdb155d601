"""Tests for splitting elements into two elements of norm one."""

import random

import pytest

from app.algebra.decompose import decompose_norm_one, is_valid_decomposition, smallest_solution
from app.algebra.element_text import parse_element
from app.algebra.gf import get_field
from app.algebra.zorn import Octonion, iter_algebra, norm_index


class TestDecompose:
    """Test decompose_norm_one on each branch."""

    def test_every_element_over_gf2(self):
        """Test that all 256 elements over GF(2) split correctly."""
        field = get_field(2)
        for x in iter_algebra(field):
            u, v = decompose_norm_one(x)
            assert is_valid_decomposition(x, u, v), str(x)

    def test_identity(self):
        """Test that e splits into two norm-one summands."""
        field = get_field(2)
        e = Octonion.identity(field)
        u, v = decompose_norm_one(e)
        assert u + v == e
        assert norm_index(field, u.coords) == 1 and norm_index(field, v.coords) == 1

    def test_diagonal_case_gf2(self):
        """Test the diagonal split of (1, 0, 0, 0)."""
        field = get_field(2)
        x = parse_element("1;(0,0,0);(0,0,0);0", field)
        u, v = decompose_norm_one(x)
        assert str(u) == "1;(1,0,0);(1,0,0);0"
        assert str(v) == "0;(1,0,0);(1,0,0);0"

    def test_diagonal_case_odd(self):
        """Test the signed diagonal split (a,(1,0,0),(−1,0,0),0) + (0,(−1,0,0),(1,0,0),b) over GF(5)."""
        field = get_field(5)
        x = parse_element("3;(0,0,0);(0,0,0);2", field)
        u, v = decompose_norm_one(x)
        assert str(u) == "3;(1,0,0);(4,0,0);0"
        assert str(v) == "0;(4,0,0);(1,0,0);2"
        assert is_valid_decomposition(x, u, v)

    def test_beta_branch_uses_smallest_gamma(self):
        """Test that with β ≠ 0 the first summand is (1, γ, 0, 1)."""
        field = get_field(3)
        x = parse_element("2;(1,0,1);(0,1,0);1", field)
        u, v = decompose_norm_one(x)
        assert u.coords[0] == 1 and u.coords[7] == 1 and not any(u.coords[4:7])
        assert is_valid_decomposition(x, u, v)

    def test_alpha_branch_takes_zero_gamma(self):
        """Test that with β = 0 and α ≠ 0 the first summand is (1, 0, δ, 1)."""
        field = get_field(7)
        x = parse_element("4;(2,0,5);(0,0,0);6", field)
        u, v = decompose_norm_one(x)
        assert not any(u.coords[1:4])
        assert is_valid_decomposition(x, u, v)

    @pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
    def test_random_elements(self, q):
        """Test random elements under a fixed seed."""
        field = get_field(q)
        rng = random.Random(q)
        for _ in range(300):
            x = Octonion(field, tuple(rng.randrange(q) for _ in range(8)))
            assert is_valid_decomposition(x, *decompose_norm_one(x))

    def test_deterministic(self):
        """Test that repeated calls give the same split."""
        field = get_field(9)
        x = parse_element("5;(1,2,3);(4,5,6);7", field)
        assert decompose_norm_one(x) == decompose_norm_one(x)

    def test_smallest_solution(self):
        """Test the lexicographically smallest solution of g·w = t."""
        field = get_field(3)
        assert smallest_solution(field, (0, 0, 1), 2) == (0, 0, 2)
        assert smallest_solution(field, (0, 0, 0), 1) is None
