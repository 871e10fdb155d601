"""Length-3 vectors over GF(q) with dot and cross products."""

from dataclasses import dataclass
from typing import Iterator, Tuple

from app.algebra.gf import Field
from app.utils.errors import FieldMismatchError


@dataclass(frozen=True)
class Vec3:
    field: Field
    coords: Tuple[int, int, int]

    def _same_field(self, other: "Vec3") -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"vectors over {self.field!r} and {other.field!r}")

    def __add__(self, other: "Vec3") -> "Vec3":
        self._same_field(other)
        A = self.field._add
        return Vec3(self.field, tuple(A[x][y] for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vec3") -> "Vec3":
        self._same_field(other)
        S = self.field._sub
        return Vec3(self.field, tuple(S[x][y] for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vec3":
        return Vec3(self.field, tuple(self.field.neg(x) for x in self.coords))

    def scale(self, c: int) -> "Vec3":
        M = self.field._mul
        return Vec3(self.field, tuple(M[c][x] for x in self.coords))

    def dot(self, other: "Vec3") -> int:
        self._same_field(other)
        return self.field.dot3(self.coords, other.coords)

    def cross(self, other: "Vec3") -> "Vec3":
        self._same_field(other)
        return Vec3(self.field, self.field.cross3(self.coords, other.coords))

    @property
    def weight(self) -> int:
        """Number of non-zero coordinates."""
        return sum(1 for x in self.coords if x)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    @classmethod
    def zero(cls, field: Field) -> "Vec3":
        return cls(field, (0, 0, 0))

    @classmethod
    def basis(cls, field: Field, i: int) -> "Vec3":
        coords = [0, 0, 0]
        coords[i] = 1
        return cls(field, tuple(coords))
