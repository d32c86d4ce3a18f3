"""Standard-form LPs, bases, basic solutions and dictionaries.

The problem is ``min c^T x  s.t.  A x = b, x >= 0`` with every entry an exact
:class:`~fractions.Fraction`. Column indices are 0-based in code; files and
CLI output use 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import DimensionMismatch, RankDeficient, SingularBasis

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class StandardFormLP:
    A: tuple[Vector, ...]
    b: Vector
    c: Vector

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.c)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.A)

    def objective(self, x: Sequence[Fraction]) -> Fraction:
        return linalg.dot(self.c, x)


def make_lp(A, b, c) -> StandardFormLP:
    """Validate and freeze ``(A, b, c)``.

    Entries may be anything :class:`Fraction` accepts (ints, ``"p/q"``
    strings, Fractions). Raises :class:`DimensionMismatch` on inconsistent
    shapes or ``m >= n`` and :class:`RankDeficient` if ``rank(A) < m``.
    """
    try:
        A = tuple(tuple(linalg.to_fraction(v) for v in row) for row in A)
        b = tuple(linalg.to_fraction(v) for v in b)
        c = tuple(linalg.to_fraction(v) for v in c)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DimensionMismatch(f"non-rational entry: {exc}") from exc
    m, n = len(A), len(c)
    if m == 0:
        raise DimensionMismatch("A has no rows")
    if any(len(row) != n for row in A):
        raise DimensionMismatch(f"every row of A must have {n} entries (len(c))")
    if len(b) != m:
        raise DimensionMismatch(f"len(b)={len(b)} but A has {m} rows")
    r = linalg.rank(A)
    if r < m:
        raise RankDeficient(f"rank(A)={r} < m={m}", rank=r)
    if m >= n:
        raise DimensionMismatch(f"need m < n, got m={m}, n={n}")
    return StandardFormLP(A, b, c)


def column_norms_squared(lp: StandardFormLP) -> Vector:
    """Exact squared Euclidean norm of every column of ``A``."""
    return tuple(sum((row[j] * row[j] for row in lp.A), Fraction(0)) for j in range(lp.n))


@dataclass(frozen=True)
class Basis:
    """Ordered basic columns plus the ascending complement."""

    basic: tuple[int, ...]
    nonbasic: tuple[int, ...]

    @classmethod
    def of(cls, basic: Iterable[int], n: int) -> "Basis":
        basic = tuple(basic)
        if len(set(basic)) != len(basic):
            raise SingularBasis(f"repeated column in basis {basic}")
        if any(j < 0 or j >= n for j in basic):
            raise DimensionMismatch(f"basis {basic} has indices outside 0..{n - 1}")
        chosen = set(basic)
        return cls(basic, tuple(j for j in range(n) if j not in chosen))

    @classmethod
    def from_one_based(cls, basic: Iterable[int], n: int) -> "Basis":
        return cls.of((j - 1 for j in basic), n)

    def one_based(self) -> list[int]:
        return [j + 1 for j in self.basic]

    def key(self) -> frozenset[int]:
        return frozenset(self.basic)

    def exchange(self, leaving: int, entering: int) -> "Basis":
        """Put ``entering`` in the slot ``leaving`` occupied."""
        basic = tuple(entering if j == leaving else j for j in self.basic)
        return Basis.of(basic, len(self.basic) + len(self.nonbasic))


@dataclass(frozen=True)
class BasicSolution:
    x: Vector
    basis: Basis
    feasible: bool
    degenerate: bool
    objective: Fraction


@dataclass(frozen=True)
class SimplexDictionary:
    basis: Basis
    x_B: Vector
    reduced_costs: Vector  # aligned with basis.nonbasic
    nonbasic_matrix: tuple[Vector, ...]  # m rows x (n - m) columns, same column order
    objective: Fraction

    @property
    def feasible(self) -> bool:
        return all(v >= 0 for v in self.x_B)

    @property
    def optimal(self) -> bool:
        return all(v >= 0 for v in self.reduced_costs)

    def reduced_cost(self, j: int) -> Fraction:
        return self.reduced_costs[self.basis.nonbasic.index(j)]

    def column(self, j: int) -> Vector:
        """Column of the nonbasic matrix belonging to nonbasic variable ``j``."""
        k = self.basis.nonbasic.index(j)
        return tuple(row[k] for row in self.nonbasic_matrix)

    def solution(self) -> Vector:
        n = len(self.basis.basic) + len(self.basis.nonbasic)
        x = [Fraction(0)] * n
        for j, v in zip(self.basis.basic, self.x_B):
            x[j] = v
        return tuple(x)


def _check_basis(lp: StandardFormLP, basis: Basis) -> None:
    if len(basis.basic) != lp.m or len(basis.basic) + len(basis.nonbasic) != lp.n:
        raise DimensionMismatch(f"basis must have {lp.m} of {lp.n} columns")


def _basis_matrix(lp: StandardFormLP, basis: Basis) -> list[list[Fraction]]:
    return [[row[j] for j in basis.basic] for row in lp.A]


def basis_solve(lp: StandardFormLP, basis: Basis) -> BasicSolution:
    """Basic solution ``x_B = A_B^{-1} b, x_N = 0``."""
    _check_basis(lp, basis)
    try:
        x_B = linalg.solve_vector(_basis_matrix(lp, basis), lp.b)
    except linalg.SingularMatrix:
        raise SingularBasis(f"A_B is singular for basis {basis.one_based()}") from None
    x = [Fraction(0)] * lp.n
    for j, v in zip(basis.basic, x_B):
        x[j] = v
    return BasicSolution(
        x=tuple(x),
        basis=basis,
        feasible=all(v >= 0 for v in x_B),
        degenerate=any(v == 0 for v in x_B),
        objective=linalg.dot(lp.c, x),
    )


def build_dictionary(lp: StandardFormLP, basis: Basis) -> SimplexDictionary:
    _check_basis(lp, basis)
    A_N = [[row[j] for j in basis.nonbasic] for row in lp.A]
    rhs = [[lp.b[i]] + A_N[i] for i in range(lp.m)]
    try:
        sol = linalg.solve(_basis_matrix(lp, basis), rhs)
    except linalg.SingularMatrix:
        raise SingularBasis(f"A_B is singular for basis {basis.one_based()}") from None
    x_B = tuple(row[0] for row in sol)
    abar = tuple(tuple(row[1:]) for row in sol)
    c_B = [lp.c[j] for j in basis.basic]
    # c_bar_j = c_j - c_B^T (A_B^{-1} a_j), identical to c_N - A_N^T A_B^{-T} c_B
    reduced = tuple(
        lp.c[j] - sum((c_B[i] * abar[i][k] for i in range(lp.m)), Fraction(0))
        for k, j in enumerate(basis.nonbasic)
    )
    return SimplexDictionary(
        basis=basis,
        x_B=x_B,
        reduced_costs=reduced,
        nonbasic_matrix=abar,
        objective=linalg.dot(c_B, x_B),
    )
