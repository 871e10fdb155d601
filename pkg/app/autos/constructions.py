"""
Explicit automorphism constructions: diag(f), signed coordinate permutations,
the diagonal switch and conjugations by elements of order three.
"""

import logging
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.algebra import linalg
from app.algebra.batch import ZornBatch
from app.algebra.gf import Field, get_field
from app.algebra.zorn import Octonion, oct_inverse
from app.autos.linear import DEFAULT_AUDIT_SAMPLES, LinearMap, block_diagonal
from app.autos.permutation import LoopAutomorphism, require_automorphism, restrict
from app.loops.named import NamedElements
from app.loops.subgroups import elements_of_order
from app.loops.table import LoopTable
from app.utils.constants import EXHAUSTIVE_ORDERS, Provenance
from app.utils.errors import AutomorphismRejected, InternalConsistencyError, PreconditionError

logger = logging.getLogger(__name__)

# Images (pi(1), pi(2), pi(3)) of all permutations of {1, 2, 3}.
S3_PERMUTATIONS: Tuple[Tuple[int, int, int], ...] = tuple(permutations((1, 2, 3)))


def apply3(field: Field, f: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Apply a 3x3 matrix to an (..., 3) index array."""
    A, M = field.add_table, field.mul_table
    out = np.zeros(vectors.shape, dtype=np.int64)
    for i in range(3):
        for k in range(3):
            out[..., i] = A[out[..., i], M[f[i, k], vectors[..., k]]]
    return out


def lie_witness(
    field: Field, f: Sequence[Sequence[int]], samples: int = DEFAULT_AUDIT_SAMPLES, rng=None
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    A pair (α, β) where f breaks the dot or the cross product, or None.

    Exhaustive over all q^6 pairs for small fields, sampled otherwise.
    """
    f = np.asarray(f, dtype=np.int64)
    batch = ZornBatch(field)
    q = field.q
    if q in EXHAUSTIVE_ORDERS:
        vecs = (np.arange(q**3)[:, None] // q ** np.arange(2, -1, -1)) % q
        u = np.repeat(vecs, len(vecs), axis=0)
        v = np.tile(vecs, (len(vecs), 1))
    else:
        rng = rng or np.random.default_rng(0)
        u = rng.integers(0, q, size=(samples, 3), dtype=np.int64)
        v = rng.integers(0, q, size=(samples, 3), dtype=np.int64)
    fu, fv = apply3(field, f, u), apply3(field, f, v)
    dot_ok = batch.dot(fu, fv) == batch.dot(u, v)
    cross_ok = np.all(apply3(field, f, batch.cross(u, v)) == batch.cross(fu, fv), axis=-1)
    bad = np.flatnonzero(~(dot_ok & cross_ok))
    if bad.size:
        k = bad[0]
        return tuple(int(c) for c in u[k]), tuple(int(c) for c in v[k])
    return None


def diag_automorphism(field: Field, f: Sequence[Sequence[int]], provenance: Provenance = Provenance.DIAG) -> LinearMap:
    """
    The map (a, α, β, b) -> (a, f(α), f(β), b).

    Raises:
        AutomorphismRejected: f is singular, not orthogonal or does not
            preserve cross products; the witness is the failing pair (α, β)
    """
    if linalg.rank(field, f) < 3:
        raise AutomorphismRejected(f"{[list(r) for r in f]} is singular over GF({field.q})")
    witness = lie_witness(field, f)
    if witness is not None:
        raise AutomorphismRejected(
            f"{[list(r) for r in f]} breaks dot or cross product at {witness}", witness=witness
        )
    return block_diagonal(field, f, provenance)


def permutation_matrix(field: Field, pi: Sequence[int], negate: bool = False) -> np.ndarray:
    """Matrix of α -> (α_pi(1), α_pi(2), α_pi(3)), optionally negated."""
    value = field.neg(1) if negate else 1
    matrix = np.zeros((3, 3), dtype=np.int64)
    for i, image in enumerate(pi):
        matrix[i, image - 1] = value
    return matrix


def permutation_sign(pi: Sequence[int]) -> int:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if pi[i] > pi[j])
    return -1 if inversions % 2 else 1


def opposite_permutation(field: Field, pi: Sequence[int]) -> LinearMap:
    """
    diag(−pi), audited.

    Raises:
        AutomorphismRejected: pi is even and the characteristic is odd
    """
    return diag_automorphism(field, permutation_matrix(field, pi, negate=True), Provenance.PERM)


def perm_automorphism(pi: Sequence[int], q: int) -> LinearMap:
    """
    diag(sgn(pi)·pi), which is diag(−pi) for odd pi or even q.

    Args:
        pi: Images (pi(1), pi(2), pi(3)) of a permutation of {1, 2, 3}
        q: Field order
    """
    if sorted(pi) != [1, 2, 3]:
        raise PreconditionError(f"{tuple(pi)} is not a permutation of (1, 2, 3)")
    field = get_field(q)
    negate = permutation_sign(pi) < 0
    return diag_automorphism(field, permutation_matrix(field, pi, negate=negate), Provenance.PERM)


def switch_map(field: Field) -> LinearMap:
    """(a, α, β, b) -> (b, β, α, a), unaudited."""
    array = np.zeros((8, 8), dtype=np.int64)
    array[0, 7] = array[7, 0] = 1
    for k in range(3):
        array[1 + k, 4 + k] = array[4 + k, 1 + k] = 1
    return LinearMap.from_array(field, array, Provenance.SWITCH)


def diagonal_switch(q: int) -> LinearMap:
    """
    The diagonal switch, an automorphism exactly when q is even.

    Raises:
        AutomorphismRejected: q is odd; the witness is a pair (x, y) with
            σ(xy) != σ(x)σ(y)
    """
    field = get_field(q)
    sigma = switch_map(field)
    witness = sigma.multiplicativity_witness()
    if field.is_even:
        if witness is not None:
            raise InternalConsistencyError(f"diagonal switch fails over GF({q}) at {witness}", witness)
        return sigma
    raise AutomorphismRejected(f"diagonal switch is not multiplicative over GF({q}) at {witness}", witness=witness)


def conjugation_linear(x: Octonion) -> LinearMap:
    """The linear map y -> x⁻¹ y x of the algebra."""
    batch = ZornBatch(x.field)
    basis = np.eye(8, dtype=np.int64)
    x_arr = np.array(x.coords, dtype=np.int64)
    x_inv = np.array(oct_inverse(x).coords, dtype=np.int64)
    images = batch.mul(batch.mul(x_inv, basis), x_arr)
    return LinearMap.from_images(x.field, images, provenance=Provenance.CONJ)


def conjugation_permutation(t: LoopTable, x: int) -> LoopAutomorphism:
    """T_x(y) = x⁻¹ y x as a permutation, without any audit."""
    everything = np.arange(len(t))
    perm = t.mul_many(t.mul_many(t.inverse(x), everything), x)
    return LoopAutomorphism(t, perm, Provenance.CONJ, label=f"T[{t.rep(x)}]")


def conjugation(t: LoopTable, x: int, **audit_kwargs) -> LoopAutomorphism:
    """
    The automorphism T_x for x with x³ = e (in the loop).

    Keyword arguments go to the multiplicativity audit.

    Raises:
        PreconditionError: x³ != e
        AutomorphismRejected: the audit fails
    """
    if t.order(x) not in (1, 3):
        raise PreconditionError(f"T_x needs x^3 = e; {t.rep(x)} has order {t.order(x)}")
    g = conjugation_permutation(t, x)
    linear = conjugation_linear(t.rep(x))
    g = LoopAutomorphism(t, g.perm, Provenance.CONJ, linear, g.label)
    return require_automorphism(g, **audit_kwargs)


def perm_label(pi: Sequence[int]) -> str:
    sign = "-" if permutation_sign(pi) < 0 else "+"
    return f"{sign}pi{''.join(map(str, pi))}"


def permutation_generators(t: LoopTable) -> List[LoopAutomorphism]:
    return [restrict(perm_automorphism(pi, t.q), t).with_label(perm_label(pi)) for pi in S3_PERMUTATIONS]


def default_generators(t: LoopTable) -> List[LoopAutomorphism]:
    """
    Generators of Aut(M*(2)): the six signed permutations, the diagonal switch
    and T_x for every element x of order three.
    """
    gens = permutation_generators(t)
    gens.append(restrict(diagonal_switch(t.q), t).with_label("sigma"))
    gens.extend(conjugation(t, x) for x in elements_of_order(t, 3))
    logger.debug(f"{len(gens)} default generators over GF({t.q})")
    return gens


def named_generators(t: LoopTable) -> List[LoopAutomorphism]:
    """The signed permutations, the switch, and T_v1, T_v2, T_y from the involution arguments."""
    named = NamedElements.q2()
    gens = permutation_generators(t)
    gens.append(restrict(diagonal_switch(t.q), t).with_label("sigma"))
    for name in ("v1", "v2", "y"):
        gens.append(conjugation(t, t.index_of(getattr(named, name))).with_label(f"T_{name}"))
    return gens
