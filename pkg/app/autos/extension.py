"""Extending loop automorphisms to linear automorphisms of the algebra."""

import logging
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from app.algebra.cayley import DIMENSION, get_backend
from app.algebra.gf import get_field
from app.autos.linear import CAYLEY, DEFAULT_AUDIT_SAMPLES, LinearMap
from app.autos.permutation import LoopAutomorphism, restrict
from app.autos.triples import DoublingTriple, PsiExtender, is_doubling_triple
from app.loops.table import LoopTable
from app.utils.constants import MAIN_THEOREM_ORDER, Provenance
from app.utils.errors import (
    AutomorphismRejected,
    InternalConsistencyError,
    PreconditionError,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _canonical_extender(q: int) -> PsiExtender:
    return PsiExtender(DoublingTriple.canonical(get_field(q)))


def extend_loop_automorphism(g: LoopAutomorphism, t: Optional[LoopTable] = None, check: bool = True) -> LinearMap:
    """
    The unique linear automorphism h with h restricted to the loop equal to g.

    h is the psi extension carrying the canonical triple onto its image under g.

    Raises:
        PreconditionError: the loop is not M*(2)
        InternalConsistencyError: the image triple is not a doubling triple or
            h disagrees with g somewhere on the loop
    """
    t = t or g.table
    if t.q != MAIN_THEOREM_ORDER:
        raise PreconditionError(f"loop automorphisms are extended over GF({MAIN_THEOREM_ORDER}) only")
    extender = _canonical_extender(t.q)
    src = extender.src
    image = DoublingTriple(*(t.rep(g(t.index_of(x))) for x in (src.a, src.b, src.c)))
    if not is_doubling_triple(image.a, image.b, image.c):
        raise InternalConsistencyError(f"image triple {image} is not a doubling triple", witness=str(image))
    h = extender.extend(image, check=False)
    if check:
        try:
            restricted = restrict(h, t)
        except AutomorphismRejected as exc:
            raise InternalConsistencyError(f"extension leaves the loop: {exc}", witness=exc.witness) from exc
        differs = np.flatnonzero(restricted.perm != g.perm)
        if differs.size:
            x = t.rep(int(differs[0]))
            raise InternalConsistencyError(f"extension disagrees with the loop map at {x}", witness=str(x))
    return h


SphereMap = Callable[[np.ndarray], np.ndarray]


def linear_extension_odd(g: SphereMap, q: int, audit_samples: int = DEFAULT_AUDIT_SAMPLES) -> LinearMap:
    """
    h(sum a_i e_i) = sum a_i g(e_i) over the Cayley basis.

    Args:
        g: Automorphism of the Cayley unit sphere acting on (..., 8) arrays
        q: Odd field order
        audit_samples: Pairs sampled by the multiplicativity audit

    Raises:
        UnsupportedConstructionError: q is even
        AutomorphismRejected: the audit finds a failing pair
    """
    backend = get_backend(q)
    images = g(np.eye(DIMENSION, dtype=np.int64))
    h = LinearMap.from_images(backend.field, images, provenance=Provenance.PSI, algebra=CAYLEY)
    witness = h.multiplicativity_witness(samples=audit_samples)
    if witness is not None:
        raise AutomorphismRejected(f"basis extension is not multiplicative at {witness}", witness=witness)
    return h
