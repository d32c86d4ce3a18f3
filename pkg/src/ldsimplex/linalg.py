"""Dense exact linear algebra over :class:`fractions.Fraction`.

Matrices are plain lists of rows. Nothing here rounds; a pivot is any
nonzero entry, so there is no magnitude-based pivoting to worry about.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularMatrix(ValueError):
    pass


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    # floats convert to their exact binary value; strings like "0.1" stay decimal
    return Fraction(value)


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[to_fraction(v) for v in row] for row in rows]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Row rank by forward elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        for i in range(r + 1, len(a)):
            f = a[i][col]
            if f:
                f /= p
                row_i, row_r = a[i], a[r]
                for k in range(col, ncols):
                    row_i[k] -= f * row_r[k]
        r += 1
        if r == len(a):
            break
    return r


def solve(M: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> Matrix:
    """Solve ``M X = rhs`` for square ``M`` by Gauss-Jordan elimination.

    ``rhs`` is given row-wise (an m x k matrix) and the m x k solution is
    returned the same way. Raises :class:`SingularMatrix` if ``M`` is singular.
    """
    m = len(M)
    k = len(rhs[0]) if rhs else 0
    aug = [list(M[i]) + list(rhs[i]) for i in range(m)]
    width = m + k
    for col in range(m):
        piv = next((i for i in range(col, m) if aug[i][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"no pivot in column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        p = prow[col]
        if p != 1:
            for j in range(col, width):
                prow[j] /= p
        for i in range(m):
            if i == col:
                continue
            f = aug[i][col]
            if f:
                row = aug[i]
                for j in range(col, width):
                    row[j] -= f * prow[j]
    return [row[m:] for row in aug]


def solve_vector(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [row[0] for row in solve(M, [[x] for x in v])]


def transpose(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*rows)]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [dot(row, v) for row in M]
