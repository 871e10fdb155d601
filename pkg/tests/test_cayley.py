"""Tests for the Cayley construction in odd characteristic."""

import numpy as np
import pytest

from app.algebra.cayley import CayleyBackend, cayley_mul, get_backend, structure_constants
from app.algebra.gf import get_field
from app.utils.errors import SingularElementError, UnsupportedConstructionError


class TestStructureConstants:
    """Test the multiplication table on the basis."""

    def test_every_product_is_a_signed_basis_vector(self):
        """Test that each e_i e_j has exactly one non-zero coefficient ±1."""
        gamma = structure_constants()
        assert np.all(np.count_nonzero(gamma, axis=2) == 1)
        assert set(np.unique(gamma)) == {-1, 0, 1}

    def test_anticommuting_units(self):
        """Test that e_i e_j = −e_j e_i for distinct imaginary units."""
        gamma = structure_constants()
        for i in range(1, 8):
            for j in range(1, 8):
                if i != j:
                    assert np.array_equal(gamma[i, j], -gamma[j, i])

    def test_line_rule(self):
        """Test e1 e3 = e7 and e3 e1 = −e7 over GF(3)."""
        field = get_field(3)
        e1 = (0, 1, 0, 0, 0, 0, 0, 0)
        e3 = (0, 0, 0, 1, 0, 0, 0, 0)
        assert cayley_mul(field, e1, e3) == (0, 0, 0, 0, 0, 0, 0, 1)
        assert cayley_mul(field, e3, e1) == (0, 0, 0, 0, 0, 0, 0, 2)


class TestCayleyBackend:
    """Test the odd-characteristic backend."""

    def test_even_characteristic_refused(self):
        """Test that GF(2) and GF(4) raise UnsupportedConstructionError."""
        for q in (2, 4):
            with pytest.raises(UnsupportedConstructionError):
                CayleyBackend(get_field(q))

    @pytest.mark.parametrize("q", [3, 5, 7, 9])
    def test_composition_law(self, q):
        """Test N(uv) = N(u)N(v) on random pairs."""
        backend = get_backend(q)
        rng = np.random.default_rng(q)
        u = rng.integers(0, q, size=(500, 8))
        v = rng.integers(0, q, size=(500, 8))
        lhs = backend.norm_batch(backend.mul_batch(u, v))
        rhs = backend.field.mul_table[backend.norm_batch(u), backend.norm_batch(v)]
        assert np.array_equal(lhs, rhs)

    def test_batch_matches_scalar(self):
        """Test that mul_batch agrees with mul."""
        backend = get_backend(5)
        rng = np.random.default_rng(0)
        u = rng.integers(0, 5, size=(20, 8))
        v = rng.integers(0, 5, size=(20, 8))
        batch = backend.mul_batch(u, v)
        for k in range(20):
            assert tuple(int(c) for c in batch[k]) == backend.mul(u[k], v[k])

    def test_inverse(self):
        """Test u u⁻¹ = e0 and the zero-norm refusal."""
        backend = get_backend(7)
        u = (1, 2, 0, 0, 3, 0, 0, 1)
        assert backend.mul(u, backend.inverse(u)) == backend.identity
        with pytest.raises(SingularElementError):
            backend.inverse((0,) * 8)

    def test_unit_sphere_q3(self):
        """Test that the unit sphere over GF(3) has q^7 − q^3 = 2160 vectors, all of norm one."""
        backend = get_backend(3)
        sphere = backend.unit_sphere()
        assert len(sphere) == 3**7 - 3**3
        assert np.all(backend.norm_batch(backend.decode(sphere)) == 1)

    def test_unit_sphere_bound(self):
        """Test that enumeration is refused above q = 7."""
        with pytest.raises(UnsupportedConstructionError):
            get_backend(9).unit_sphere()

    def test_conjugation_by_order_three_element(self):
        """Test that y -> x⁻¹yx is multiplicative for x = e0 + e1 + e2 + e3 over GF(3)."""
        backend = get_backend(3)
        x = (1, 1, 1, 1, 0, 0, 0, 0)
        assert backend.order(x) == 3
        g = backend.conjugation(x)
        rng = np.random.default_rng(3)
        u = rng.integers(0, 3, size=(300, 8))
        v = rng.integers(0, 3, size=(300, 8))
        assert np.array_equal(g(backend.mul_batch(u, v)), backend.mul_batch(g(u), g(v)))
