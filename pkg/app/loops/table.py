"""
Enumeration of the loop of norm-one Zorn matrices.

For even q the table holds M(q) = M*(q) itself. For odd q it holds one
representative per class {x, −x}: the one with the smaller code, which for a
prime q is the one whose first non-zero coordinate lies in 1..(q−1)/2. Index 0
is the identity; the remaining elements follow in code order.
"""

import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.algebra.batch import ZornBatch
from app.algebra.gf import Field, get_field
from app.algebra.zorn import Octonion
from app.utils.errors import InternalConsistencyError

logger = logging.getLogger(__name__)

# Above this size products are memoized instead of tabulated.
FULL_TABLE_LIMIT = 512


@dataclass(frozen=True)
class LoopElement:
    index: int
    rep: Octonion

    def __str__(self) -> str:
        return str(self.rep)


class LoopTable:
    """An immutable enumerated loop with a product cache."""

    def __init__(self, field: Field, codes: np.ndarray):
        """
        Args:
            field: Field of the underlying algebra
            codes: canonical element codes in table order, identity first
        """
        self.field = field
        self.q = field.q
        self.batch = ZornBatch(field)
        self.is_quotient = not field.is_even
        self.codes = np.asarray(codes, dtype=np.int64)
        self.codes.setflags(write=False)
        self.coords = self.batch.decode(self.codes)
        self.coords.setflags(write=False)

        order = np.argsort(self.codes)
        self._sorted_codes = self.codes[order]
        self._sorted_index = order

        self._lock = threading.Lock()
        self._products: Dict[Tuple[int, int], int] = {}
        self._table: Optional[np.ndarray] = None
        self._orders: Optional[np.ndarray] = None
        self._inverses: Optional[np.ndarray] = None
        if len(self) <= FULL_TABLE_LIMIT:
            self._table = self._build_table()

    def __len__(self) -> int:
        return len(self.codes)

    def __repr__(self) -> str:
        kind = "M*" if self.is_quotient else "M"
        return f"LoopTable({kind}({self.q}), {len(self)} elements)"

    @property
    def loop_order(self) -> int:
        return len(self)

    @property
    def sphere_order(self) -> int:
        """Number of norm-one elements of the algebra."""
        return 2 * len(self) if self.is_quotient else len(self)

    @property
    def algebra_order(self) -> int:
        return self.q**8

    # Canonical forms and lookup.

    def canonical_codes(self, coords: np.ndarray) -> np.ndarray:
        codes = self.batch.encode(coords)
        if self.is_quotient:
            codes = np.minimum(codes, self.batch.encode(self.batch.neg(coords)))
        return codes

    def index_of_codes(self, codes: np.ndarray) -> np.ndarray:
        """
        Table indices of canonical codes.

        Raises:
            KeyError: some code is not in the table
        """
        codes = np.asarray(codes, dtype=np.int64)
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.clip(pos, 0, len(self) - 1)
        found = self._sorted_codes[pos] == codes
        if not np.all(found):
            missing = np.asarray(codes)[~found].ravel()[0]
            raise KeyError(f"code {int(missing)} is not an element of {self!r}")
        return self._sorted_index[pos]

    def index_of_coords(self, coords: np.ndarray) -> np.ndarray:
        return self.index_of_codes(self.canonical_codes(coords))

    def index_of(self, x: Octonion) -> int:
        return int(self.index_of_coords(np.asarray(x.coords, dtype=np.int64)))

    def in_loop(self, coords: np.ndarray) -> np.ndarray:
        """Whether each element has norm one (so its class lies in the table)."""
        return self.batch.norm(coords) == 1

    def rep(self, i: int) -> Octonion:
        return Octonion(self.field, tuple(int(c) for c in self.coords[i]))

    def element(self, i: int) -> LoopElement:
        self._check(i)
        return LoopElement(i, self.rep(i))

    def elements(self) -> List[LoopElement]:
        return [LoopElement(i, self.rep(i)) for i in range(len(self))]

    def export_lines(self) -> List[str]:
        return [str(self.rep(i)) for i in range(len(self))]

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self):
            raise IndexError(f"loop index {i} out of range for {self!r}")

    # Products.

    def _build_table(self) -> np.ndarray:
        n = len(self)
        left = np.repeat(np.arange(n), n)
        right = np.tile(np.arange(n), n)
        table = self._compute_products(left, right).reshape(n, n)
        table.setflags(write=False)
        logger.debug(f"{self!r}: full {n}x{n} product table built")
        return table

    def _compute_products(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        products = self.batch.mul(self.coords[i], self.coords[j])
        return self.index_of_coords(products)

    @property
    def table(self) -> Optional[np.ndarray]:
        """The full product table when it is kept, else None."""
        return self._table

    def mul(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        if self._table is not None:
            return int(self._table[i, j])
        key = (i, j)
        with self._lock:
            cached = self._products.get(key)
        if cached is None:
            cached = int(self._compute_products(np.array([i]), np.array([j]))[0])
            with self._lock:
                self._products[key] = cached
        return cached

    def mul_many(self, i, j) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        if self._table is not None:
            return self._table[i, j]
        i, j = np.broadcast_arrays(i, j)
        return self._compute_products(i.ravel(), j.ravel()).reshape(i.shape)

    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            inv = self.index_of_coords(self.batch.inverse(np.array(self.coords)))
            inv.setflags(write=False)
            self._inverses = inv
        return self._inverses

    def inverse(self, i: int) -> int:
        self._check(i)
        return int(self.inverses()[i])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(i), -k)
        result = 0
        for _ in range(k):
            result = self.mul(result, i)
        return result

    def orders(self) -> np.ndarray:
        """Element orders in the loop (in the quotient for odd q)."""
        if self._orders is None:
            n = len(self)
            orders = np.zeros(n, dtype=np.int64)
            pending = np.arange(n)
            power = np.array(self.coords)
            identity_code = self.codes[0]
            m = 1
            cap = self.q**8
            while pending.size:
                hit = self.canonical_codes(power) == identity_code
                orders[pending[hit]] = m
                pending, power = pending[~hit], power[~hit]
                power = self.batch.mul(power, self.coords[pending])
                m += 1
                if m > cap:
                    raise InternalConsistencyError(f"{self!r}: element orders exceed {cap}")
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def order(self, i: int) -> int:
        self._check(i)
        return int(self.orders()[i])


def loop_codes(field: Field) -> np.ndarray:
    """Canonical codes of the loop in table order (identity first)."""
    batch = ZornBatch(field)
    codes = batch.unit_codes()
    if not field.is_even:
        negated = batch.encode(batch.neg(batch.decode(codes)))
        codes = codes[codes < negated]
    identity_code = int(batch.encode(batch.identity()))
    return np.concatenate([[identity_code], codes[codes != identity_code]])


@lru_cache(maxsize=None)
def enumerate_loop(q: int) -> LoopTable:
    """
    Enumerate M(q) for even q or M*(q) for odd q.

    Raises:
        UnsupportedFieldError: q is not supported
    """
    field = get_field(q)
    table = LoopTable(field, loop_codes(field))
    logger.info(f"Enumerated {table!r}")
    return table


def loop_mul(t: LoopTable, i: int, j: int) -> int:
    """
    Index of the canonical representative of rep(i)·rep(j).

    Raises:
        IndexError: an index is out of range
    """
    return t.mul(i, j)
