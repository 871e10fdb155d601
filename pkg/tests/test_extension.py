"""Tests for extending loop and sphere automorphisms to the algebra."""

import numpy as np
import pytest

from app.algebra.cayley import get_backend
from app.autos.extension import extend_loop_automorphism, linear_extension_odd
from app.autos.permutation import LoopAutomorphism, restrict
from app.utils.errors import AutomorphismRejected, PreconditionError, UnsupportedConstructionError


class TestLoopExtension:
    """Test the extension of M*(2) automorphisms."""

    def test_identity(self, loop2):
        """Test that the identity extends to the identity matrix."""
        assert extend_loop_automorphism(LoopAutomorphism.identity(loop2)).is_identity

    def test_sampled_elements(self, group2):
        """Test that sampled group elements extend and restrict back to themselves."""
        rng = np.random.default_rng(11)
        for k in group2.sample(rng, 30):
            g = group2.element(k)
            h = extend_loop_automorphism(g)
            assert h.multiplicativity_witness(samples=2000) is None
            assert np.array_equal(restrict(h, group2.table).perm, g.perm)

    def test_generators_match_their_matrices(self, ctx2):
        """Test that each generator's own matrix is its extension."""
        for g in ctx2.generators[:10]:
            assert extend_loop_automorphism(g).same_matrix(g.linear)

    def test_odd_field_refused(self, loop3):
        """Test that extension is refused outside GF(2)."""
        with pytest.raises(PreconditionError):
            extend_loop_automorphism(LoopAutomorphism.identity(loop3))


class TestOddExtension:
    """Test basis extension of Cayley sphere maps."""

    def test_conjugation_extends(self):
        """Test that conjugation by an element of order three extends linearly."""
        backend = get_backend(3)
        g = backend.conjugation((1, 1, 1, 1, 0, 0, 0, 0))
        h = linear_extension_odd(g, 3, audit_samples=2000)
        coords = backend.decode(backend.unit_sphere()[:200])
        assert coords.shape == (200, 8)
        assert np.array_equal(h.apply_coords(coords), g(coords))

    def test_sign_flip_rejected(self):
        """Test that negating a single basis coordinate is refused with a witness."""
        field = get_backend(3).field

        def flip(y):
            out = np.array(y)
            out[..., 1] = field.neg_table[out[..., 1]]
            return out

        with pytest.raises(AutomorphismRejected) as info:
            linear_extension_odd(flip, 3, audit_samples=2000)
        assert info.value.witness is not None

    @pytest.mark.parametrize("q", [2, 4, 8])
    def test_even_field_refused(self, q):
        """Test that the Cayley construction refuses even characteristic."""
        with pytest.raises(UnsupportedConstructionError):
            linear_extension_odd(lambda y: y, q)
