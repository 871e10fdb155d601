"""
The compact Cayley construction of the octonions on the basis e0..e7.

e0 is the identity, e_i e_i = −e0 for i >= 1, and for every r in 1..7

    e_{r+1} e_{r+3} = e_{r+2} e_{r+6} = e_{r+4} e_{r+5} = e_r

with indices read in 1..7 and the reversed products negated. The norm is the
sum of squared coordinates. Only odd characteristic yields a composition
algebra.
"""

import logging
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from app.algebra.gf import Field, get_field
from app.utils.errors import InternalConsistencyError, SingularElementError, UnsupportedConstructionError

logger = logging.getLogger(__name__)

DIMENSION = 8
LINE_OFFSETS = ((1, 3), (2, 6), (4, 5))
MAX_SPHERE_ORDER = 7

CoordVector = Tuple[int, ...]


def _wrap(n: int) -> int:
    return (n - 1) % 7 + 1


def structure_constants() -> np.ndarray:
    """
    gamma[i, j, k] with e_i e_j = sum_k gamma[i, j, k] e_k.

    Raises:
        InternalConsistencyError: two rules disagree or some product is unset
    """
    gamma = np.zeros((DIMENSION,) * 3, dtype=np.int64)
    assigned: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def assign(i: int, j: int, k: int, sign: int) -> None:
        if assigned.get((i, j), (k, sign)) != (k, sign):
            raise InternalConsistencyError(f"conflicting products for e{i}e{j}")
        assigned[(i, j)] = (k, sign)
        gamma[i, j, k] = sign

    for i in range(DIMENSION):
        assign(0, i, i, 1)
        assign(i, 0, i, 1)
    for i in range(1, DIMENSION):
        assign(i, i, 0, -1)
    for r in range(1, DIMENSION):
        for s, t in LINE_OFFSETS:
            i, j = _wrap(r + s), _wrap(r + t)
            assign(i, j, r, 1)
            assign(j, i, r, -1)

    if len(assigned) != DIMENSION * DIMENSION:
        raise InternalConsistencyError(f"only {len(assigned)} of 64 basis products defined")
    return gamma


class CayleyBackend:
    """Octonions over an odd-characteristic GF(q) in the e0..e7 basis."""

    def __init__(self, field: Field):
        if field.is_even:
            raise UnsupportedConstructionError(
                f"the Cayley construction over GF({field.q}) does not yield a composition algebra"
            )
        self.field = field
        self.gamma = structure_constants()
        self.target = np.argmax(np.abs(self.gamma), axis=2)
        self.sign = self.gamma[np.arange(DIMENSION)[:, None], np.arange(DIMENSION)[None, :], self.target]
        self._sphere: Optional[np.ndarray] = None
        self.weights = field.q ** np.arange(DIMENSION - 1, -1, -1, dtype=np.int64)

    def __repr__(self) -> str:
        return f"CayleyBackend(GF({self.field.q}))"

    def basis(self, i: int) -> CoordVector:
        return tuple(1 if k == i else 0 for k in range(DIMENSION))

    @property
    def identity(self) -> CoordVector:
        return self.basis(0)

    def mul(self, u: Sequence[int], v: Sequence[int]) -> CoordVector:
        f = self.field
        A, M, N = f._add, f._mul, f._neg
        out = [0] * DIMENSION
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                term = M[ui][vj]
                if self.sign[i, j] < 0:
                    term = N[term]
                k = self.target[i, j]
                out[k] = A[out[k]][term]
        return tuple(out)

    def mul_batch(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Product of (..., 8) index arrays."""
        f = self.field
        u, v = np.broadcast_arrays(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64))
        out = np.zeros(u.shape, dtype=np.int64)
        for i in range(DIMENSION):
            for j in range(DIMENSION):
                term = f.mul_table[u[..., i], v[..., j]]
                if self.sign[i, j] < 0:
                    term = f.neg_table[term]
                k = self.target[i, j]
                out[..., k] = f.add_table[out[..., k], term]
        return out

    def norm(self, u: Sequence[int]) -> int:
        f = self.field
        total = 0
        for x in u:
            total = f._add[total][f._mul[x][x]]
        return total

    def norm_batch(self, u: np.ndarray) -> np.ndarray:
        f = self.field
        squares = f.mul_table[u, u]
        total = np.zeros(u.shape[:-1], dtype=np.int64)
        for k in range(DIMENSION):
            total = f.add_table[total, squares[..., k]]
        return total

    def add(self, u: Sequence[int], v: Sequence[int]) -> CoordVector:
        return tuple(self.field._add[x][y] for x, y in zip(u, v))

    def neg(self, u: Sequence[int]) -> CoordVector:
        return tuple(self.field._neg[x] for x in u)

    def inverse(self, u: Sequence[int]) -> CoordVector:
        """u⁻¹ = N(u)⁻¹ (u0, −u1, ..., −u7)."""
        n = self.norm(u)
        if n == 0:
            raise SingularElementError(f"{tuple(u)} has norm zero")
        f = self.field
        scale = f.inv(n)
        conj = (u[0],) + tuple(f._neg[x] for x in u[1:])
        return tuple(f._mul[scale][x] for x in conj)

    def encode(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self.weights

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.weights) % self.field.q

    def unit_sphere(self) -> np.ndarray:
        """
        Sorted codes of all norm-one vectors.

        Raises:
            UnsupportedConstructionError: q exceeds the enumeration bound
        """
        q = self.field.q
        if q > MAX_SPHERE_ORDER:
            raise UnsupportedConstructionError(f"unit sphere enumeration is limited to q <= {MAX_SPHERE_ORDER}")
        if self._sphere is None:
            half = np.arange(q**4, dtype=np.int64)
            digits = (half[:, None] // q ** np.arange(3, -1, -1, dtype=np.int64)) % q
            squares = self.field.mul_table[digits, digits]
            sums = np.zeros(len(half), dtype=np.int64)
            for k in range(4):
                sums = self.field.add_table[sums, squares[:, k]]
            chunks = []
            for t in range(q):
                high = half[sums == t]
                low = half[sums == self.field.sub(1, t)]
                chunks.append((high[:, None] * q**4 + low[None, :]).ravel())
            self._sphere = np.sort(np.concatenate(chunks))
            logger.debug(f"Cayley sphere over GF({q}): {len(self._sphere)} vectors")
        return self._sphere

    def conjugation(self, x: Sequence[int]) -> Callable[[np.ndarray], np.ndarray]:
        """The map y -> x⁻¹ y x on (..., 8) arrays."""
        x_arr = np.asarray(x, dtype=np.int64)
        x_inv = np.asarray(self.inverse(x), dtype=np.int64)
        return lambda y: self.mul_batch(self.mul_batch(x_inv, y), x_arr)

    def order(self, x: Sequence[int]) -> int:
        if self.norm(x) == 0:
            raise SingularElementError(f"{tuple(x)} has norm zero")
        power, m = tuple(x), 1
        while power != self.identity:
            power = self.mul(power, x)
            m += 1
        return m


@lru_cache(maxsize=None)
def get_backend(q: int) -> CayleyBackend:
    return CayleyBackend(get_field(q))


def cayley_mul(field: Field, u: Sequence[int], v: Sequence[int]) -> CoordVector:
    """
    Product of two coordinate vectors in the Cayley basis.

    Raises:
        UnsupportedConstructionError: even characteristic
    """
    return get_backend(field.q).mul(u, v)
