"""Exact table-driven arithmetic in GF(q) for q in {2, 3, 4, 5, 7, 8, 9}.

Elements are carried as canonical indices 0..q-1. For a prime q the index is the
residue itself. For q = p^n with n > 1 the index of the class of the polynomial
c_0 + c_1 x + ... + c_{n-1} x^{n-1} is c_0 + c_1 p + ... + c_{n-1} p^{n-1}, so
0 and 1 keep their usual indices and the prime subfield occupies 0..p-1.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from app.utils.errors import (
    FieldDivisionError,
    FieldMismatchError,
    InternalConsistencyError,
    UnsupportedFieldError,
)

logger = logging.getLogger(__name__)

# q -> (p, n)
PRIME_POWERS: Dict[int, Tuple[int, int]] = {
    2: (2, 1),
    3: (3, 1),
    4: (2, 2),
    5: (5, 1),
    7: (7, 1),
    8: (2, 3),
    9: (3, 2),
}

# Monic irreducible (and primitive) polynomials, coefficients lowest degree first.
IRREDUCIBLE_POLYNOMIALS: Dict[int, Tuple[int, ...]] = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (2, 2, 1),  # x^2 + 2x + 2
}


def _digits(index: int, p: int, n: int) -> List[int]:
    return [(index // p**k) % p for k in range(n)]


def _undigits(digits: List[int], p: int) -> int:
    return sum(c * p**k for k, c in enumerate(digits))


def _poly_mul_mod(x: List[int], y: List[int], modulus: Tuple[int, ...], p: int) -> List[int]:
    n = len(modulus) - 1
    product = [0] * (2 * n - 1)
    for i, xi in enumerate(x):
        for j, yj in enumerate(y):
            product[i + j] = (product[i + j] + xi * yj) % p
    for degree in range(len(product) - 1, n - 1, -1):
        coefficient = product[degree]
        if coefficient:
            for k, m in enumerate(modulus):
                product[degree - n + k] = (product[degree - n + k] - coefficient * m) % p
    return product[:n]


class Field:
    """The finite field GF(q) with precomputed operation tables."""

    def __init__(self, q: int):
        """
        Build and audit the operation tables.

        Args:
            q: Field order, one of the supported prime powers

        Raises:
            UnsupportedFieldError: q is not a supported order
        """
        if q not in PRIME_POWERS:
            raise UnsupportedFieldError(q)
        self.q = q
        self.p, self.n = PRIME_POWERS[q]
        self.polynomial: Optional[Tuple[int, ...]] = IRREDUCIBLE_POLYNOMIALS.get(q)

        add, mul = self._build_tables()
        self._add: List[List[int]] = add
        self._mul: List[List[int]] = mul
        self._neg: List[int] = [row.index(0) for row in add]
        self._sub: List[List[int]] = [[add[i][self._neg[j]] for j in range(q)] for i in range(q)]
        self._inv: List[int] = [0] + [mul[i].index(1) for i in range(1, q)]

        self.add_table = np.array(add, dtype=np.int64)
        self.mul_table = np.array(mul, dtype=np.int64)
        self.sub_table = np.array(self._sub, dtype=np.int64)
        self.neg_table = np.array(self._neg, dtype=np.int64)
        # inv_table[0] is a placeholder; callers guard against zero.
        self.inv_table = np.array(self._inv, dtype=np.int64)

        self.generator, self.exp_table, self.log_table = self._build_exp_log()
        self.audit()
        logger.debug(f"GF({q}) constructed (p={self.p}, n={self.n})")

    def _build_tables(self) -> Tuple[List[List[int]], List[List[int]]]:
        q, p, n = self.q, self.p, self.n
        if n == 1:
            add = [[(i + j) % p for j in range(q)] for i in range(q)]
            mul = [[(i * j) % p for j in range(q)] for i in range(q)]
            return add, mul
        digits = [_digits(i, p, n) for i in range(q)]
        add = [
            [_undigits([(a + b) % p for a, b in zip(digits[i], digits[j])], p) for j in range(q)]
            for i in range(q)
        ]
        mul = [
            [_undigits(_poly_mul_mod(digits[i], digits[j], self.polynomial, p), p) for j in range(q)]
            for i in range(q)
        ]
        return add, mul

    def _build_exp_log(self) -> Tuple[int, List[int], Dict[int, int]]:
        candidates = [self.p] if self.n > 1 else list(range(1, self.q))
        for g in candidates:
            powers = [1]
            while len(powers) < self.q - 1:
                powers.append(self._mul[powers[-1]][g])
            if len(set(powers)) == self.q - 1:
                return g, powers, {value: k for k, value in enumerate(powers)}
        raise InternalConsistencyError(f"GF({self.q}): no primitive element among {candidates}")

    def audit(self) -> None:
        """
        Exhaustively verify the field axioms and the Frobenius map.

        Raises:
            InternalConsistencyError: some axiom fails on the tables
        """
        A, M = self.add_table, self.mul_table
        i = np.arange(self.q)
        x, y, z = np.meshgrid(i, i, i, indexing="ij")
        checks = {
            "additive associativity": A[A[x, y], z] == A[x, A[y, z]],
            "multiplicative associativity": M[M[x, y], z] == M[x, M[y, z]],
            "distributivity": M[x, A[y, z]] == A[M[x, y], M[x, z]],
        }
        checks["additive commutativity"] = A == A.T
        checks["multiplicative commutativity"] = M == M.T
        checks["additive identity"] = A[0] == i
        checks["multiplicative identity"] = M[1] == i
        checks["additive inverses"] = A[i, self.neg_table] == 0
        checks["multiplicative inverses"] = M[i[1:], self.inv_table[1:]] == 1
        frob = self.frobenius_table()
        checks["frobenius additivity"] = frob[A] == A[frob[:, None], frob[None, :]]
        for name, ok in checks.items():
            if not np.all(ok):
                raise InternalConsistencyError(f"GF({self.q}) fails {name}")

    def frobenius_table(self) -> np.ndarray:
        """Table of x -> x^p."""
        return np.array([self.pow(x, self.p) for x in range(self.q)], dtype=np.int64)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_even(self) -> bool:
        return self.p == 2

    # Scalar operations on canonical indices.

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._sub[x][y]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldDivisionError(f"GF({self.q}): inverse of zero")
        return self._inv[x]

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(x), -k)
        result = 1
        for _ in range(k):
            result = self._mul[result][x]
        return result

    def from_int(self, k: int) -> int:
        """Index of the image of the integer k in the prime subfield."""
        return k % self.p

    def dot3(self, u, v) -> int:
        A, M = self._add, self._mul
        return A[A[M[u[0]][v[0]]][M[u[1]][v[1]]]][M[u[2]][v[2]]]

    def cross3(self, u, v) -> Tuple[int, int, int]:
        S, M = self._sub, self._mul
        return (
            S[M[u[1]][v[2]]][M[u[2]][v[1]]],
            S[M[u[2]][v[0]]][M[u[0]][v[2]]],
            S[M[u[0]][v[1]]][M[u[1]][v[0]]],
        )

    # Element views.

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for value in range(self.q):
            yield FieldElement(self, value)


@lru_cache(maxsize=None)
def get_field(q: int) -> Field:
    """
    Shared, immutable GF(q) instance.

    Args:
        q: Field order

    Returns:
        The cached Field

    Raises:
        UnsupportedFieldError: q is not supported
    """
    return Field(q)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(q), stored by canonical index."""

    field: Field
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an index of {self.field!r}")

    def _same_field(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldMismatchError(f"operands from {self.field!r} and {getattr(other, 'field', other)!r}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def fe_add(x: FieldElement, y: FieldElement) -> FieldElement:
    """Sum in GF(q); mixed fields raise FieldMismatchError."""
    return x + y


def fe_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    """Product in GF(q); mixed fields raise FieldMismatchError."""
    return x * y


def fe_inv(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; zero raises FieldDivisionError."""
    return x.inverse()
