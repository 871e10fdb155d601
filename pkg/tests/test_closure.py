"""Tests for group closure, words and orbits."""

import numpy as np
import pytest

from app.autos.closure import act_on_set, group_closure, orbit_partition, orbit_with_words
from app.autos.constructions import named_generators, permutation_generators
from app.autos.permutation import LoopAutomorphism
from app.loops.subgroups import involutions
from app.utils.constants import G2_2_ORDER
from app.utils.errors import AutomorphismRejected


class TestClosure:
    """Test breadth-first closure."""

    def test_signed_permutations_form_s3(self, loop2):
        """Test that the six signed permutations close to a group of order six."""
        group = group_closure(permutation_generators(loop2))
        assert group.order == 6
        assert group.element(0).is_identity

    def test_empty_generating_set(self):
        """Test that closure needs at least one generator."""
        with pytest.raises(ValueError):
            group_closure([])

    def test_bad_generator_rejected(self, loop2):
        """Test that the audit refuses a non-multiplicative permutation."""
        perm = np.arange(len(loop2))
        perm[[1, 2]] = perm[[2, 1]]
        with pytest.raises(AutomorphismRejected):
            group_closure([LoopAutomorphism(loop2, perm)])

    def test_full_group_order(self, group2):
        """Test that the default generators close to a group of order 12096."""
        assert group2.order == G2_2_ORDER
        assert len(set(group2.keys())) == G2_2_ORDER

    def test_named_generators_give_whole_group(self, loop2, group2):
        """Test that the named generators alone close to all 12096 automorphisms."""
        sub = group_closure(named_generators(loop2))
        assert sub.order == G2_2_ORDER
        assert all(sub.element(k) in group2 for k in range(0, sub.order, sub.order // 50))


class TestWords:
    """Test words, evaluation and transporters."""

    def test_word_evaluates_to_element(self, group2):
        """Test that every sampled element equals the evaluation of its word."""
        rng = np.random.default_rng(3)
        for k in group2.sample(rng, 40):
            assert group2.evaluate(group2.word(k)) == group2.element(k)

    def test_identity_has_empty_word(self, group2):
        """Test that the identity is reached by the empty word."""
        assert group2.word(0) == ()

    def test_transporter(self, loop2, group2, idx):
        """Test that some element carries x0 to x1."""
        k = group2.transporter(idx["x0"], idx["x1"])
        assert k is not None
        assert group2.element(k)(idx["x0"]) == idx["x1"]

    def test_transporter_respects_orders(self, loop2, group2, idx):
        """Test that no automorphism carries an involution to an element of order three."""
        assert group2.transporter(idx["x0"], idx["a_shift1"]) is None


class TestOrbits:
    """Test orbit enumeration with words."""

    def test_orbit_words(self, loop2, group2, idx):
        """Test that each orbit word maps the root onto its point."""
        words = orbit_with_words(idx["x0"], group2.generators)
        assert len(words) == 63
        for point, word in list(words.items())[:20]:
            assert group2.evaluate(word)(idx["x0"]) == point

    def test_partition_on_involutions(self, loop2):
        """Test that the signed permutations split the involutions into several orbits."""
        orbits = orbit_partition(involutions(loop2), permutation_generators(loop2))
        assert sum(len(o) for o in orbits) == 63
        assert len(orbits) > 1
        assert [o[0] for o in orbits] == sorted(o[0] for o in orbits)

    def test_partition_needs_invariant_set(self, loop2, group2):
        """Test that a set which is not a union of orbits is refused."""
        with pytest.raises(ValueError):
            orbit_partition(involutions(loop2)[:5], group2.generators)

    def test_action_on_sets(self, group2):
        """Test that the set action returns sorted tuples."""
        g = group2.element(1)
        image = act_on_set(g, (0, 3, 5))
        assert image == tuple(sorted(image)) and image[0] == 0
