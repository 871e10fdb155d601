"""Linear maps of the 8-dimensional algebra and their multiplicativity audits."""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Tuple

import numpy as np

from app.algebra import linalg
from app.algebra.batch import ZornBatch
from app.algebra.cayley import get_backend
from app.algebra.gf import Field
from app.algebra.zorn import Octonion
from app.utils.constants import Provenance

logger = logging.getLogger(__name__)

ZORN = "zorn"
CAYLEY = "cayley"
DEFAULT_AUDIT_SAMPLES = 100_000

Witness = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class LinearMap:
    """
    An 8x8 matrix over GF(q) acting on coordinate columns.

    Column k is the image of the k-th coordinate basis vector, so
    h(x)_i = sum_k matrix[i][k] * x_k.
    """

    field: Field
    matrix: Tuple[Tuple[int, ...], ...]
    provenance: Provenance = Provenance.COMPOSITE
    algebra: str = ZORN
    _array: np.ndarray = dc_field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        array = np.array(self.matrix, dtype=np.int64)
        if array.shape != (8, 8):
            raise ValueError(f"linear map needs an 8x8 matrix, got {array.shape}")
        array.setflags(write=False)
        object.__setattr__(self, "_array", array)

    @classmethod
    def from_array(cls, field: Field, array, provenance: Provenance = Provenance.COMPOSITE, algebra: str = ZORN):
        return cls(field, tuple(tuple(int(v) for v in row) for row in np.asarray(array)), provenance, algebra)

    @classmethod
    def from_images(cls, field: Field, images: Sequence[Sequence[int]], **kwargs) -> "LinearMap":
        """Map sending the k-th coordinate basis vector to images[k]."""
        return cls.from_array(field, np.array(images, dtype=np.int64).T, **kwargs)

    @classmethod
    def identity(cls, field: Field, algebra: str = ZORN) -> "LinearMap":
        return cls.from_array(field, np.eye(8, dtype=np.int64), Provenance.IDENTITY, algebra)

    @property
    def array(self) -> np.ndarray:
        return self._array

    def same_matrix(self, other: "LinearMap") -> bool:
        return self.field == other.field and self.algebra == other.algebra and self.matrix == other.matrix

    def with_provenance(self, provenance: Provenance) -> "LinearMap":
        return LinearMap(self.field, self.matrix, provenance, self.algebra)

    def apply_coords(self, coords: np.ndarray) -> np.ndarray:
        """Apply to an (..., 8) index array."""
        A, M = self.field.add_table, self.field.mul_table
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros(coords.shape, dtype=np.int64)
        for i in range(8):
            acc = out[..., i]
            for k in range(8):
                coefficient = self._array[i, k]
                if coefficient:
                    acc = A[acc, M[coefficient, coords[..., k]]]
            out[..., i] = acc
        return out

    def apply(self, x: Octonion) -> Octonion:
        image = self.apply_coords(np.array(x.coords))
        return Octonion(self.field, tuple(int(c) for c in image))

    def __call__(self, x: Octonion) -> Octonion:
        return self.apply(x)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other (other is applied first)."""
        product = linalg.matmul(self.field, self.matrix, other.matrix)
        return LinearMap.from_array(self.field, product, Provenance.COMPOSITE, self.algebra)

    @property
    def is_invertible(self) -> bool:
        return linalg.rank(self.field, self.matrix) == 8

    def inverse(self) -> "LinearMap":
        """
        Raises:
            SingularMatrixError: the matrix is singular
        """
        return LinearMap.from_array(self.field, linalg.inverse(self.field, self.matrix), self.provenance, self.algebra)

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self._array, np.eye(8, dtype=np.int64)))

    # Audits.

    def _mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.algebra == CAYLEY:
            return get_backend(self.field.q).mul_batch(x, y)
        return ZornBatch(self.field).mul(x, y)

    def _norm(self, x: np.ndarray) -> np.ndarray:
        if self.algebra == CAYLEY:
            return get_backend(self.field.q).norm_batch(x)
        return ZornBatch(self.field).norm(x)

    def code_table(self) -> np.ndarray:
        """Image code of every element of the algebra, indexed by code (q = 2 Zorn only)."""
        batch = ZornBatch(self.field)
        return batch.encode(self.apply_coords(batch.all_elements()))

    def multiplicativity_witness(
        self, samples: int = DEFAULT_AUDIT_SAMPLES, rng: Optional[np.random.Generator] = None
    ) -> Optional[Witness]:
        """
        A pair (x, y) with h(xy) != h(x)h(y), or None.

        Exhaustive over all pairs for the Zorn algebra over GF(2), sampled otherwise.
        """
        if self.algebra == ZORN and self.field.q == 2:
            batch = ZornBatch(self.field)
            table = batch.algebra_table()
            image = self.code_table()
            bad = np.argwhere(image[table] != table[image[:, None], image[None, :]])
            if bad.size:
                x, y = batch.decode(bad[0])
                return tuple(int(c) for c in x), tuple(int(c) for c in y)
            return None
        rng = rng or np.random.default_rng(0)
        x = rng.integers(0, self.field.q, size=(samples, 8), dtype=np.int64)
        y = rng.integers(0, self.field.q, size=(samples, 8), dtype=np.int64)
        lhs = self.apply_coords(self._mul(x, y))
        rhs = self._mul(self.apply_coords(x), self.apply_coords(y))
        bad = np.flatnonzero(np.any(lhs != rhs, axis=-1))
        if bad.size:
            k = bad[0]
            return tuple(int(c) for c in x[k]), tuple(int(c) for c in y[k])
        return None

    def isometry_witness(
        self, samples: int = DEFAULT_AUDIT_SAMPLES, rng: Optional[np.random.Generator] = None
    ) -> Optional[Tuple[int, ...]]:
        """An x with N(h(x)) != N(x), or None; exhaustive for q <= 3."""
        q = self.field.q
        if q <= 3:
            x = ZornBatch(self.field).all_elements()
        else:
            rng = rng or np.random.default_rng(0)
            x = rng.integers(0, q, size=(samples, 8), dtype=np.int64)
        bad = np.flatnonzero(self._norm(self.apply_coords(x)) != self._norm(x))
        return tuple(int(c) for c in x[bad[0]]) if bad.size else None


def block_diagonal(field: Field, f: Sequence[Sequence[int]], provenance: Provenance) -> LinearMap:
    """(a, α, β, b) -> (a, f(α), f(β), b)."""
    array = np.zeros((8, 8), dtype=np.int64)
    array[0, 0] = array[7, 7] = 1
    f = np.asarray(f, dtype=np.int64)
    array[1:4, 1:4] = f
    array[4:7, 4:7] = f
    return LinearMap.from_array(field, array, provenance)
