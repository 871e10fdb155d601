"""Loop automorphisms as index permutations of an enumerated LoopTable."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from app.autos.linear import ZORN, LinearMap
from app.loops.table import LoopTable
from app.utils.constants import Provenance
from app.utils.errors import AutomorphismRejected

logger = logging.getLogger(__name__)

DEFAULT_PAIR_SAMPLES = 100_000


@dataclass(frozen=True, eq=False)
class LoopAutomorphism:
    """
    A bijection of the loop stored as perm[i] = image index of i.

    Composition is right to left: (g ∘ h)(i) = g(h(i)).
    """

    table: LoopTable
    perm: np.ndarray
    provenance: Provenance = Provenance.COMPOSITE
    linear: Optional[LinearMap] = None
    label: str = ""

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64)
        if perm.shape != (len(self.table),):
            raise ValueError(f"permutation of length {perm.shape} does not match {self.table!r}")
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, table: LoopTable) -> "LoopAutomorphism":
        return cls(table, np.arange(len(table)), Provenance.IDENTITY, label="id")

    @property
    def key(self) -> bytes:
        return self.perm.astype(np.int32).tobytes()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LoopAutomorphism) and self.table is other.table and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __call__(self, i: int) -> int:
        return int(self.perm[i])

    def compose(self, other: "LoopAutomorphism") -> "LoopAutomorphism":
        """self ∘ other."""
        linear = self.linear.compose(other.linear) if self.linear and other.linear else None
        return LoopAutomorphism(self.table, self.perm[other.perm], Provenance.COMPOSITE, linear)

    def inverse(self) -> "LoopAutomorphism":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        linear = self.linear.inverse() if self.linear else None
        return LoopAutomorphism(self.table, inv, self.provenance, linear, self.label and f"{self.label}^-1")

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(len(self.perm))))

    def with_label(self, label: str) -> "LoopAutomorphism":
        return LoopAutomorphism(self.table, self.perm, self.provenance, self.linear, label)


def audit_multiplicative(
    g: LoopAutomorphism, samples: int = DEFAULT_PAIR_SAMPLES, rng: Optional[np.random.Generator] = None
) -> Optional[Tuple[int, int]]:
    """
    A pair (i, j) with g(ij) != g(i)g(j), or None.

    Also rejects non-bijections and g(e) != e (witness (i, i)). Exhaustive when
    the table keeps its full product table, sampled otherwise.
    """
    t, perm = g.table, g.perm
    if int(perm[0]) != 0:
        return (0, 0)
    if len(np.unique(perm)) != len(perm):
        values, counts = np.unique(perm, return_counts=True)
        clash = int(np.flatnonzero(perm == values[counts > 1][0])[0])
        return (clash, clash)
    if t.table is not None:
        bad = np.argwhere(perm[t.table] != t.table[perm[:, None], perm[None, :]])
        return (int(bad[0][0]), int(bad[0][1])) if bad.size else None
    rng = rng or np.random.default_rng(0)
    i = rng.integers(0, len(t), size=samples)
    j = rng.integers(0, len(t), size=samples)
    bad = np.flatnonzero(perm[t.mul_many(i, j)] != t.mul_many(perm[i], perm[j]))
    return (int(i[bad[0]]), int(j[bad[0]])) if bad.size else None


def require_automorphism(g: LoopAutomorphism, **audit_kwargs) -> LoopAutomorphism:
    """
    Raises:
        AutomorphismRejected: the audit finds a failing pair
    """
    witness = audit_multiplicative(g, **audit_kwargs)
    if witness is not None:
        t = g.table
        i, j = witness
        raise AutomorphismRejected(
            f"{g.label or g.provenance.value} is not multiplicative at ({t.rep(i)}, {t.rep(j)})",
            witness=(str(t.rep(i)), str(t.rep(j))),
        )
    return g


def restrict(h: LinearMap, t: LoopTable) -> LoopAutomorphism:
    """
    The permutation of the loop induced by a norm-preserving linear map.

    Raises:
        AutomorphismRejected: h moves some loop element off the unit sphere
    """
    if h.algebra != ZORN or h.field != t.field:
        raise AutomorphismRejected(f"cannot restrict a {h.algebra} map over {h.field!r} to {t!r}")
    images = h.apply_coords(t.coords)
    off_sphere = np.flatnonzero(~t.in_loop(images))
    if off_sphere.size:
        x = t.rep(int(off_sphere[0]))
        raise AutomorphismRejected(f"map does not preserve the norm of {x}", witness=str(x))
    perm = t.index_of_coords(images)
    return LoopAutomorphism(t, perm, h.provenance, h)
