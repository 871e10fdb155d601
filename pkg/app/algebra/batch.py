"""
Vectorized Zorn arithmetic on numpy index arrays.

Elements are arrays whose last axis holds the eight canonical coordinates in
scan order; any leading shape broadcasts. Integer codes (base-q digits, a most
significant) are used wherever elements must be hashed, sorted or looked up.
"""

import logging
from typing import Dict

import numpy as np

from app.algebra.gf import Field
from app.utils.errors import SingularElementError

logger = logging.getLogger(__name__)

# Shared across instances; keyed by q.
_ALGEBRA_TABLES: Dict[int, np.ndarray] = {}


class ZornBatch:
    """Batch operations over one field's tables."""

    def __init__(self, field: Field):
        self.field = field
        self.q = field.q
        self.A = field.add_table
        self.S = field.sub_table
        self.M = field.mul_table
        self.N = field.neg_table
        self.weights = self.q ** np.arange(7, -1, -1, dtype=np.int64)

    # Codes.

    def encode(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self.weights

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.weights) % self.q

    def random(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.integers(0, self.q, size=(n, 8), dtype=np.int64)

    def identity(self, shape=()) -> np.ndarray:
        e = np.zeros(tuple(shape) + (8,), dtype=np.int64)
        e[..., 0] = 1
        e[..., 7] = 1
        return e

    # Vector pieces.

    def dot(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        A, M = self.A, self.M
        return A[A[M[u[..., 0], v[..., 0]], M[u[..., 1], v[..., 1]]], M[u[..., 2], v[..., 2]]]

    def cross(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        S, M = self.S, self.M
        return np.stack(
            [
                S[M[u[..., 1], v[..., 2]], M[u[..., 2], v[..., 1]]],
                S[M[u[..., 2], v[..., 0]], M[u[..., 0], v[..., 2]]],
                S[M[u[..., 0], v[..., 1]], M[u[..., 1], v[..., 0]]],
            ],
            axis=-1,
        )

    # Algebra operations.

    def add(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.A[x, y]

    def sub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.S[x, y]

    def neg(self, x: np.ndarray) -> np.ndarray:
        return self.N[x]

    def scale(self, c, x: np.ndarray) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        return self.M[c[..., None] if c.ndim else c, x]

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        A, S, M = self.A, self.S, self.M
        x, y = np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
        a, alpha, beta, b = x[..., 0], x[..., 1:4], x[..., 4:7], x[..., 7]
        c, gamma, delta, d = y[..., 0], y[..., 1:4], y[..., 4:7], y[..., 7]
        out = np.empty(x.shape, dtype=np.int64)
        out[..., 0] = A[M[a, c], self.dot(alpha, delta)]
        out[..., 1:4] = S[A[M[a[..., None], gamma], M[d[..., None], alpha]], self.cross(beta, delta)]
        out[..., 4:7] = A[A[M[c[..., None], beta], M[b[..., None], delta]], self.cross(alpha, gamma)]
        out[..., 7] = A[self.dot(beta, gamma), M[b, d]]
        return out

    def norm(self, x: np.ndarray) -> np.ndarray:
        return self.S[self.M[x[..., 0], x[..., 7]], self.dot(x[..., 1:4], x[..., 4:7])]

    def trace(self, x: np.ndarray) -> np.ndarray:
        return self.A[x[..., 0], x[..., 7]]

    def bilinear(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        A, S, M = self.A, self.S, self.M
        diagonal = A[M[x[..., 0], y[..., 7]], M[x[..., 7], y[..., 0]]]
        vectors = A[self.dot(x[..., 1:4], y[..., 4:7]), self.dot(x[..., 4:7], y[..., 1:4])]
        return S[diagonal, vectors]

    def inverse(self, x: np.ndarray) -> np.ndarray:
        """
        Elementwise inverse.

        Raises:
            SingularElementError: some element has norm zero
        """
        n = self.norm(x)
        if np.any(n == 0):
            raise SingularElementError("batch contains an element of norm zero")
        conj = np.empty_like(x)
        conj[..., 0] = x[..., 7]
        conj[..., 7] = x[..., 0]
        conj[..., 1:7] = self.N[x[..., 1:7]]
        return self.M[self.field.inv_table[n][..., None], conj]

    def power(self, x: np.ndarray, k: int) -> np.ndarray:
        result = self.identity(x.shape[:-1])
        for _ in range(k):
            result = self.mul(result, x)
        return result

    # Whole-algebra views.

    def all_elements(self) -> np.ndarray:
        """All q^8 elements in code order; intended for q <= 3."""
        return self.decode(np.arange(self.q**8, dtype=np.int64))

    def algebra_table(self) -> np.ndarray:
        """Full product table on codes, shape (q^8, q^8); only built for q = 2."""
        if self.q != 2:
            raise ValueError("the full algebra product table is only kept for q = 2")
        table = _ALGEBRA_TABLES.get(self.q)
        if table is None:
            elements = self.all_elements()
            table = self.encode(self.mul(elements[:, None, :], elements[None, :, :]))
            table.setflags(write=False)
            _ALGEBRA_TABLES[self.q] = table
            logger.debug("built 256x256 product table for GF(2)")
        return table

    def unit_codes(self) -> np.ndarray:
        """
        Sorted codes of all norm-one elements.

        Loops over the q^6 choices of (alpha, beta) once per diagonal pair (a, b)
        so memory stays proportional to the sphere, not the algebra.
        """
        q = self.q
        m = np.arange(q**6, dtype=np.int64)
        vec = (m[:, None] // q ** np.arange(5, -1, -1, dtype=np.int64)) % q
        target = self.A[1, self.dot(vec[:, 0:3], vec[:, 3:6])]
        chunks = []
        for a in range(q):
            for b in range(q):
                hits = m[target == self.M[a, b]]
                chunks.append(a * q**7 + hits * q + b)
        codes = np.sort(np.concatenate(chunks))
        logger.debug(f"GF({q}): {len(codes)} norm-one elements")
        return codes

    def random_units(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """n uniformly random norm-one elements, by rejection."""
        found, total = [], 0
        while total < n:
            draw = self.random(rng, 2 * self.q * max(n - total, 16))
            hits = draw[self.norm(draw) == 1]
            found.append(hits)
            total += len(hits)
        return np.concatenate(found)[:n]
