"""
Doubling triples (a, b, c) and the automorphisms they induce.

A triple of invertible elements is a doubling triple when b ⊥ e, a and
c ⊥ e, a, b, ab, with a ⊥ e in odd characteristic and a not ⊥ e in even
characteristic. Its basis is {e, a, b, ab, c, ac, bc, (ab)c}.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from app.algebra import linalg
from app.algebra.gf import Field
from app.algebra.zorn import Octonion, norm_index, oct_bilinear, oct_inverse, oct_mul, oct_trace
from app.autos.linear import LinearMap
from app.loops.table import LoopTable
from app.utils.constants import Provenance
from app.utils.errors import (
    InternalConsistencyError,
    InvalidTripleError,
    PreconditionError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DoublingTriple:
    a: Octonion
    b: Octonion
    c: Octonion

    @property
    def field(self) -> Field:
        return self.a.field

    @classmethod
    def canonical(cls, field: Field) -> "DoublingTriple":
        """
        A fixed norm-one doubling triple.

        In even characteristic a has trace one; in odd characteristic a and b
        square to −e and c = (c0, (0,0,s), (0,0,s), −c0) with c0² + s² = −1.
        """
        if field.is_even:
            return cls(
                Octonion.from_parts(field, 0, (1, 0, 0), (1, 0, 0), 1),
                Octonion.from_parts(field, 0, (0, 1, 0), (0, 1, 0), 0),
                Octonion.from_parts(field, 0, (0, 0, 1), (0, 0, 1), 0),
            )
        minus_one = field.neg(1)
        c0, s = next(
            (c0, s)
            for c0 in range(field.q)
            for s in range(field.q)
            if field.add(field.mul(c0, c0), field.mul(s, s)) == minus_one
        )
        return cls(
            Octonion.from_parts(field, 0, (1, 0, 0), (minus_one, 0, 0), 0),
            Octonion.from_parts(field, 0, (0, 1, 0), (0, minus_one, 0), 0),
            Octonion.from_parts(field, c0, (0, 0, s), (0, 0, s), field.neg(c0)),
        )

    def basis(self) -> List[Octonion]:
        a, b, c = self.a, self.b, self.c
        ab = oct_mul(a, b)
        return [Octonion.identity(self.field), a, b, ab, c, oct_mul(a, c), oct_mul(b, c), oct_mul(ab, c)]

    def basis_matrix(self) -> List[List[int]]:
        """Basis vectors as matrix columns."""
        return [list(col) for col in zip(*(x.coords for x in self.basis()))]

    def norms(self) -> Tuple[int, int, int]:
        return tuple(norm_index(self.field, x.coords) for x in (self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def is_doubling_triple(a: Octonion, b: Octonion, c: Octonion) -> bool:
    """
    Evaluate the doubling-triple conditions.

    Raises:
        FieldMismatchError: mixed fields
        InternalConsistencyError: the conditions hold but the induced basis is dependent
    """
    a._same_field(b)
    a._same_field(c)
    f = a.field
    if 0 in (norm_index(f, a.coords), norm_index(f, b.coords), norm_index(f, c.coords)):
        return False
    e = Octonion.identity(f)
    ab = oct_mul(a, b)

    def perp(x: Octonion, y: Octonion) -> bool:
        return oct_bilinear(x, y).value == 0

    a_in_e_perp = oct_trace(a).value == 0
    if a_in_e_perp == f.is_even:
        return False
    if not (perp(b, e) and perp(b, a)):
        return False
    if not (perp(c, e) and perp(c, a) and perp(c, b) and perp(c, ab)):
        return False
    triple = DoublingTriple(a, b, c)
    if linalg.rank(f, triple.basis_matrix()) != 8:
        raise InternalConsistencyError(f"doubling triple {triple} induces a dependent basis", witness=str(triple))
    return True


def multiplicative_triple_test(a: Octonion, b: Octonion, c: Octonion) -> bool:
    """
    The doubling-triple conditions rewritten with products only, for norm-one
    inputs: b² = c² = (ab⁻¹)² = (ac⁻¹)² = (bc⁻¹)² = ((ab)c⁻¹)² = −e, together
    with a² = −e (odd characteristic) or |a| = 3 (even characteristic).

    Raises:
        PreconditionError: some input does not have norm one
    """
    f = a.field
    for x in (a, b, c):
        if norm_index(f, x.coords) != 1:
            raise PreconditionError(f"{x} does not have norm one")
    e = Octonion.identity(f)
    minus_e = -e

    def squares_to_minus_e(x: Octonion) -> bool:
        return oct_mul(x, x) == minus_e

    b_inv, c_inv = oct_inverse(b), oct_inverse(c)
    if f.is_even:
        a_ok = a != e and oct_mul(oct_mul(a, a), a) == e
    else:
        a_ok = squares_to_minus_e(a)
    return (
        a_ok
        and squares_to_minus_e(b)
        and squares_to_minus_e(c)
        and squares_to_minus_e(oct_mul(a, b_inv))
        and squares_to_minus_e(oct_mul(a, c_inv))
        and squares_to_minus_e(oct_mul(b, c_inv))
        and squares_to_minus_e(oct_mul(oct_mul(a, b), c_inv))
    )


class PsiExtender:
    """Builds the linear maps sending one fixed doubling triple onto others."""

    def __init__(self, src: DoublingTriple):
        self.src = src
        self.field = src.field
        self._src_inverse = linalg.inverse(self.field, src.basis_matrix())

    def extend(self, dst: DoublingTriple, check: bool = True) -> LinearMap:
        """
        The linear map h with h(B) = B' for the induced bases.

        Raises:
            PreconditionError: N(x) != N(x') for some x in the triple
            InvalidTripleError: dst is not a doubling triple
        """
        if self.src.norms() != dst.norms():
            raise PreconditionError(f"norms {self.src.norms()} and {dst.norms()} differ")
        if check and not is_doubling_triple(dst.a, dst.b, dst.c):
            raise InvalidTripleError(f"{dst} is not a doubling triple")
        matrix = linalg.matmul(self.field, dst.basis_matrix(), self._src_inverse)
        return LinearMap.from_array(self.field, matrix, Provenance.PSI)


def psi_extension(src: DoublingTriple, dst: DoublingTriple) -> LinearMap:
    """
    The automorphism mapping (a, b, c) onto (a', b', c').

    Raises:
        PreconditionError: norms differ
        InvalidTripleError: dst fails the triple predicate
    """
    return PsiExtender(src).extend(dst)


def basis_coordinates(triple: DoublingTriple, x: Octonion) -> List[int]:
    """Coordinates of x in the basis induced by the triple."""
    return linalg.solve(triple.field, triple.basis_matrix(), list(x.coords))


def doubling_triple_census(t: LoopTable) -> List[Tuple[int, int, int]]:
    """
    All norm-one doubling triples of the algebra over GF(2), as loop indices.

    a runs over elements with ⟨a, e⟩ != 0 (the elements of order 3); b and c are
    then restricted to traceless elements orthogonal to the earlier members.

    Raises:
        PreconditionError: q != 2
    """
    if t.q != 2:
        raise PreconditionError("the doubling-triple census runs over GF(2)")
    batch = t.batch
    gram = batch.bilinear(t.coords[:, None, :], t.coords[None, :, :])
    traceless = batch.trace(t.coords) == 0
    triples = []
    for a in np.flatnonzero(~traceless):
        b_mask = traceless & (gram[a] == 0)
        for b in np.flatnonzero(b_mask):
            ab = t.mul(int(a), int(b))
            c_mask = b_mask & (gram[b] == 0) & (gram[ab] == 0)
            triples.extend((int(a), int(b), int(c)) for c in np.flatnonzero(c_mask))
    logger.info(f"Doubling-triple census over GF(2): {len(triples)} norm-one triples")
    return triples


def triple_from_indices(t: LoopTable, indices: Tuple[int, int, int]) -> DoublingTriple:
    return DoublingTriple(*(t.rep(i) for i in indices))


def canonical_triple_indices(t: LoopTable) -> Tuple[int, int, int]:
    triple = DoublingTriple.canonical(t.field)
    return t.index_of(triple.a), t.index_of(triple.b), t.index_of(triple.c)
