"""Tests for doubling triples and the ψ extension."""

import pytest

from app.algebra.gf import get_field
from app.algebra.zorn import Octonion
from app.autos.triples import (
    DoublingTriple,
    PsiExtender,
    basis_coordinates,
    canonical_triple_indices,
    doubling_triple_census,
    is_doubling_triple,
    multiplicative_triple_test,
    psi_extension,
    triple_from_indices,
)
from app.utils.constants import G2_2_ORDER
from app.utils.errors import InvalidTripleError, PreconditionError


class TestCanonicalTriple:
    """Test the fixed triple in each characteristic."""

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_is_doubling_triple(self, q):
        """Test that the canonical triple satisfies the predicate and has unit norms."""
        triple = DoublingTriple.canonical(get_field(q))
        assert is_doubling_triple(triple.a, triple.b, triple.c)
        assert triple.norms() == (1, 1, 1)

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_multiplicative_form_agrees(self, q):
        """Test that the product-only rewriting accepts the canonical triple."""
        triple = DoublingTriple.canonical(get_field(q))
        assert multiplicative_triple_test(triple.a, triple.b, triple.c)

    def test_basis_coordinates(self):
        """Test that e has coordinates (1, 0, ..., 0) in the induced basis."""
        field = get_field(3)
        triple = DoublingTriple.canonical(field)
        assert basis_coordinates(triple, Octonion.identity(field)) == [1, 0, 0, 0, 0, 0, 0, 0]
        assert basis_coordinates(triple, triple.c) == [0, 0, 0, 0, 1, 0, 0, 0]


class TestPredicate:
    """Test rejections of the doubling-triple predicate."""

    def test_repeated_member(self):
        """Test that (a, a, c) is not a doubling triple."""
        t = DoublingTriple.canonical(get_field(5))
        assert not is_doubling_triple(t.a, t.a, t.c)

    def test_zero_norm_member(self):
        """Test that a norm-zero member is rejected."""
        field = get_field(2)
        t = DoublingTriple.canonical(field)
        assert not is_doubling_triple(t.a, Octonion.zero(field), t.c)

    def test_wrong_trace_parity(self):
        """Test that a trace-zero first member is rejected in characteristic 2."""
        field = get_field(2)
        t = DoublingTriple.canonical(field)
        assert not is_doubling_triple(t.b, t.a, t.c)


class TestPsiExtension:
    """Test the linear maps between doubling triples."""

    @pytest.mark.parametrize("q", [2, 3, 7])
    def test_identity_on_canonical_triple(self, q):
        """Test that ψ from a triple to itself is the identity."""
        t = DoublingTriple.canonical(get_field(q))
        assert psi_extension(t, t).is_identity

    def test_invalid_destination(self):
        """Test that a degenerate destination raises InvalidTripleError."""
        t = DoublingTriple.canonical(get_field(3))
        with pytest.raises(InvalidTripleError):
            psi_extension(t, DoublingTriple(t.a, t.a, t.c))

    def test_norm_mismatch(self):
        """Test that destinations with different norms raise PreconditionError."""
        field = get_field(3)
        t = DoublingTriple.canonical(field)
        with pytest.raises(PreconditionError):
            psi_extension(t, DoublingTriple(t.a, Octonion.zero(field), t.c))

    def test_extension_maps_triple(self, loop2):
        """Test that ψ sends the canonical triple onto another census triple and is an automorphism."""
        extender = PsiExtender(DoublingTriple.canonical(get_field(2)))
        dst = triple_from_indices(loop2, doubling_triple_census(loop2)[-1])
        h = extender.extend(dst)
        src = extender.src
        assert (h(src.a), h(src.b), h(src.c)) == (dst.a, dst.b, dst.c)
        assert h.multiplicativity_witness() is None


class TestCensus:
    """Test the GF(2) census."""

    def test_count(self, loop2):
        """Test that M*(2) has 12096 norm-one doubling triples, the canonical one among them."""
        triples = doubling_triple_census(loop2)
        assert len(triples) == G2_2_ORDER
        assert canonical_triple_indices(loop2) in set(triples)

    def test_odd_field_refused(self, loop3):
        """Test that the census is restricted to GF(2)."""
        with pytest.raises(PreconditionError):
            doubling_triple_census(loop3)
