"""
Zorn vector matrices: the split octonion algebra over GF(q).

An element x = (a, alpha, beta, b) is stored as eight canonical field indices in
scan order (a, alpha1, alpha2, alpha3, beta1, beta2, beta3, b). The same order
defines the integer code of an element (base-q digits, a most significant), so
sorting by code is lexicographic order on coordinates.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Sequence, Tuple

from app.algebra.gf import Field, FieldElement
from app.algebra.vectors import Vec3
from app.utils.constants import OrderTag
from app.utils.errors import FieldMismatchError, PreconditionError, SingularElementError

logger = logging.getLogger(__name__)

Coords = Tuple[int, int, int, int, int, int, int, int]


@dataclass(frozen=True)
class Octonion:
    """A vector matrix over GF(q); equality is coordinate-wise on canonical indices."""

    field: Field
    coords: Coords

    def __post_init__(self):
        if len(self.coords) != 8 or any(not 0 <= c < self.field.q for c in self.coords):
            raise ValueError(f"invalid coordinates {self.coords} over {self.field!r}")

    @classmethod
    def from_parts(cls, field: Field, a: int, alpha: Sequence[int], beta: Sequence[int], b: int) -> "Octonion":
        return cls(field, (int(a), *map(int, alpha), *map(int, beta), int(b)))

    @classmethod
    def identity(cls, field: Field) -> "Octonion":
        return cls(field, (1, 0, 0, 0, 0, 0, 0, 1))

    @classmethod
    def zero(cls, field: Field) -> "Octonion":
        return cls(field, (0,) * 8)

    @classmethod
    def scalar(cls, field: Field, c: int) -> "Octonion":
        return cls(field, (c, 0, 0, 0, 0, 0, 0, c))

    @classmethod
    def from_code(cls, field: Field, code: int) -> "Octonion":
        digits = []
        for _ in range(8):
            code, digit = divmod(code, field.q)
            digits.append(digit)
        return cls(field, tuple(reversed(digits)))

    @property
    def code(self) -> int:
        value = 0
        for c in self.coords:
            value = value * self.field.q + c
        return value

    @property
    def a(self) -> FieldElement:
        return FieldElement(self.field, self.coords[0])

    @property
    def alpha(self) -> Vec3:
        return Vec3(self.field, self.coords[1:4])

    @property
    def beta(self) -> Vec3:
        return Vec3(self.field, self.coords[4:7])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.field, self.coords[7])

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_diagonal(self) -> bool:
        """True when alpha and beta both vanish."""
        return not any(self.coords[1:7])

    def _same_field(self, other: "Octonion") -> None:
        if not isinstance(other, Octonion) or other.field != self.field:
            raise FieldMismatchError(f"octonions over {self.field!r} and {getattr(other, 'field', other)!r}")

    def __add__(self, other: "Octonion") -> "Octonion":
        self._same_field(other)
        A = self.field._add
        return Octonion(self.field, tuple(A[x][y] for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        self._same_field(other)
        S = self.field._sub
        return Octonion(self.field, tuple(S[x][y] for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Octonion":
        N = self.field._neg
        return Octonion(self.field, tuple(N[x] for x in self.coords))

    def scale(self, c: int) -> "Octonion":
        M = self.field._mul
        return Octonion(self.field, tuple(M[c][x] for x in self.coords))

    def __mul__(self, other: "Octonion") -> "Octonion":
        return oct_mul(self, other)

    def __pow__(self, k: int) -> "Octonion":
        return oct_power(self, k)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __str__(self) -> str:
        a, a1, a2, a3, b1, b2, b3, b = self.coords
        return f"{a};({a1},{a2},{a3});({b1},{b2},{b3});{b}"


def _mul_coords(field: Field, x: Sequence[int], y: Sequence[int]) -> Coords:
    A, S, M = field._add, field._sub, field._mul
    a, alpha, beta, b = x[0], x[1:4], x[4:7], x[7]
    c, gamma, delta, d = y[0], y[1:4], y[4:7], y[7]
    bxd = field.cross3(beta, delta)
    axg = field.cross3(alpha, gamma)
    first = A[M[a][c]][field.dot3(alpha, delta)]
    second = tuple(S[A[M[a][g]][M[d][al]]][k] for g, al, k in zip(gamma, alpha, bxd))
    third = tuple(A[A[M[c][be]][M[b][de]]][k] for be, de, k in zip(beta, delta, axg))
    fourth = A[field.dot3(beta, gamma)][M[b][d]]
    return (first, *second, *third, fourth)


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    """
    Vector-matrix product.

    (a, α, β, b)(c, γ, δ, d) = (ac + α·δ, aγ + dα − β×δ, cβ + bδ + α×γ, β·γ + bd)

    Raises:
        FieldMismatchError: x and y live over different fields
    """
    x._same_field(y)
    return Octonion(x.field, _mul_coords(x.field, x.coords, y.coords))


def norm_index(field: Field, coords: Sequence[int]) -> int:
    """Canonical index of ab − α·β."""
    return field._sub[field._mul[coords[0]][coords[7]]][field.dot3(coords[1:4], coords[4:7])]


def oct_norm(x: Octonion) -> FieldElement:
    return FieldElement(x.field, norm_index(x.field, x.coords))


def oct_bilinear(x: Octonion, y: Octonion) -> FieldElement:
    """Polar form ⟨x,y⟩ = N(x+y) − N(x) − N(y) = ad + bc − α·δ − β·γ."""
    x._same_field(y)
    f = x.field
    A, S, M = f._add, f._sub, f._mul
    u, v = x.coords, y.coords
    diagonal = A[M[u[0]][v[7]]][M[u[7]][v[0]]]
    vectors = A[f.dot3(u[1:4], v[4:7])][f.dot3(u[4:7], v[1:4])]
    return FieldElement(f, S[diagonal][vectors])


def oct_trace(x: Octonion) -> FieldElement:
    """⟨x,e⟩ = a + b."""
    return FieldElement(x.field, x.field.add(x.coords[0], x.coords[7]))


def oct_inverse(x: Octonion) -> Octonion:
    """
    x⁻¹ = N(x)⁻¹ (b, −α, −β, a).

    Raises:
        SingularElementError: N(x) = 0
    """
    n = norm_index(x.field, x.coords)
    if n == 0:
        raise SingularElementError(f"{x} has norm zero")
    f = x.field
    a, a1, a2, a3, b1, b2, b3, b = x.coords
    conj = Octonion(f, (b, f.neg(a1), f.neg(a2), f.neg(a3), f.neg(b1), f.neg(b2), f.neg(b3), a))
    return conj.scale(f.inv(n))


def oct_power(x: Octonion, k: int) -> Octonion:
    """x^k by repeated multiplication; negative k uses the inverse (power-associativity)."""
    if k < 0:
        return oct_power(oct_inverse(x), -k)
    result = Octonion.identity(x.field)
    for _ in range(k):
        result = oct_mul(result, x)
    return result


def oct_minimal_eq_residual(x: Octonion) -> Octonion:
    """x² − ⟨x,e⟩x + N(x)e; zero for every element."""
    trace = oct_trace(x).value
    n = norm_index(x.field, x.coords)
    return oct_mul(x, x) - x.scale(trace) + Octonion.scalar(x.field, n)


def oct_order(x: Octonion) -> int:
    """
    Multiplicative order of an invertible element.

    Raises:
        SingularElementError: N(x) = 0
        PreconditionError: no power up to q^8 returns to e
    """
    if norm_index(x.field, x.coords) == 0:
        raise SingularElementError(f"{x} has norm zero and no order")
    e = Octonion.identity(x.field)
    power = x
    cap = x.field.q**8
    for m in range(1, cap + 1):
        if power == e:
            return m
        power = oct_mul(power, x)
    raise PreconditionError(f"order of {x} exceeds the cap {cap}")


def order_predicates(x: Octonion) -> FrozenSet[OrderTag]:
    """
    Closed-form tests for x² = ±e and x³ = ±e on a norm-one element.

    Only the diagonal entries and whether (α, β) vanishes are inspected. In
    characteristic 2 the two square conditions coincide.

    Raises:
        PreconditionError: N(x) ≠ 1
    """
    f = x.field
    if norm_index(f, x.coords) != 1:
        raise PreconditionError(f"{x} does not have norm one")
    a, b = x.coords[0], x.coords[7]
    one, minus_one = 1, f.neg(1)
    diagonal = x.is_diagonal
    b_is_a_inverse = a != 0 and b == f._inv[a]
    a_squared = f.mul(a, a)
    a_cubed = f.mul(a_squared, a)

    tags = set()
    sq_neg = (diagonal and b_is_a_inverse and a_squared == minus_one) or (not diagonal and b == f.neg(a))
    sq_id = diagonal and a == b and a in (one, minus_one)
    if f.is_even:
        sq_id = sq_id or sq_neg
    if sq_id:
        tags.add(OrderTag.SQ_ID)
    if sq_neg:
        tags.add(OrderTag.SQ_NEG)
    if (diagonal and b_is_a_inverse and a_cubed == one) or (not diagonal and b == f.sub(minus_one, a)):
        tags.add(OrderTag.CUBE_ID)
    if (diagonal and b_is_a_inverse and a_cubed == minus_one) or (not diagonal and b == f.sub(one, a)):
        tags.add(OrderTag.CUBE_NEG)
    return frozenset(tags)


_CLASSIFY_PRIORITY = (OrderTag.SQ_ID, OrderTag.SQ_NEG, OrderTag.CUBE_ID, OrderTag.CUBE_NEG)


def order_predicate_classify(x: Octonion) -> OrderTag:
    """First matching tag among sq_id, sq_neg, cube_id, cube_neg; otherwise OTHER."""
    tags = order_predicates(x)
    return next((tag for tag in _CLASSIFY_PRIORITY if tag in tags), OrderTag.OTHER)


def moufang_residuals(x: Octonion, y: Octonion, z: Octonion) -> Tuple[Octonion, Octonion, Octonion]:
    """
    Left-minus-right for the three Moufang identities

        (xy)(zx) = x((yz)x),  x(y(xz)) = ((xy)x)z,  x(y(zy)) = ((xy)z)y.
    """
    x._same_field(y)
    x._same_field(z)
    xy = x * y
    first = xy * (z * x) - x * ((y * z) * x)
    second = x * (y * (x * z)) - (xy * x) * z
    third = x * (y * (z * y)) - (xy * z) * y
    return first, second, third


def iter_algebra(field: Field) -> Iterator[Octonion]:
    """All q^8 elements in code order."""
    for code in range(field.q**8):
        yield Octonion.from_code(field, code)
