"""Small dense linear algebra over GF(q) on canonical indices."""

from typing import List, Sequence

from app.algebra.gf import Field
from app.utils.errors import SingularMatrixError

Matrix = List[List[int]]


def identity(field: Field, n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(field: Field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    """Matrix product a·b."""
    A, M = field._add, field._mul
    cols = len(b[0])
    result = []
    for row in a:
        out = []
        for j in range(cols):
            acc = 0
            for k, r in enumerate(row):
                acc = A[acc][M[r][b[k][j]]]
            out.append(acc)
        result.append(out)
    return result


def matvec(field: Field, m: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    A, M = field._add, field._mul
    out = []
    for row in m:
        acc = 0
        for r, x in zip(row, v):
            acc = A[acc][M[r][x]]
        out.append(acc)
    return out


def _row_reduce(field: Field, rows: Matrix, augmented_from: int) -> int:
    """In-place Gauss-Jordan elimination on the first augmented_from columns; returns the rank."""
    M, S = field._mul, field._sub
    rank = 0
    for col in range(augmented_from):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        scale = field.inv(rows[rank][col])
        rows[rank] = [M[scale][x] for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [S[x][M[factor][y]] for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def rank(field: Field, matrix: Sequence[Sequence[int]]) -> int:
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    return _row_reduce(field, rows, len(rows[0]))


def inverse(field: Field, matrix: Sequence[Sequence[int]]) -> Matrix:
    """
    Inverse of a square matrix.

    Raises:
        SingularMatrixError: the matrix is not invertible
    """
    n = len(matrix)
    rows = [list(r) + e for r, e in zip(matrix, identity(field, n))]
    if _row_reduce(field, rows, n) < n:
        raise SingularMatrixError(f"{n}x{n} matrix over GF({field.q}) is singular")
    return [r[n:] for r in rows]


def solve(field: Field, matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> List[int]:
    """Unique solution x of matrix·x = rhs for an invertible square matrix."""
    return matvec(field, inverse(field, matrix), rhs)
