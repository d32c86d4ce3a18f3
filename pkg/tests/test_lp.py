from fractions import Fraction

import pytest

from ldsimplex import linalg
from ldsimplex.errors import DimensionMismatch, RankDeficient, SingularBasis
from ldsimplex.lp import basis_solve, build_dictionary, column_norms_squared, make_lp

from .conftest import B, sympy_vertices

F = Fraction


def test_make_lp_ex1(lp_ex1):
    assert (lp_ex1.m, lp_ex1.n) == (2, 4)
    assert all(isinstance(v, Fraction) for row in lp_ex1.A for v in row)


def test_make_lp_rank_deficient():
    with pytest.raises(RankDeficient):
        make_lp([[1, 1], [2, 2]], [1, 2], [0, 0])


def test_make_lp_single_row():
    lp = make_lp([[1, 1]], [1], [0, 0])
    assert (lp.m, lp.n) == (1, 2)


@pytest.mark.parametrize(
    "A,b,c",
    [
        ([[1, 0, 1], [0, 1]], [1, 1], [0, 0, 0]),
        ([[1, 0, 1]], [1, 1], [0, 0, 0]),
        ([[1, 0], [0, 1]], [1, 1], [0, 0]),  # m == n
    ],
)
def test_make_lp_dimension_mismatch(A, b, c):
    with pytest.raises(DimensionMismatch):
        make_lp(A, b, c)


def test_rational_strings_are_parsed_exactly():
    lp = make_lp([["1/3", "2/4"]], ["1/6"], ["0.1", 0])
    assert lp.A[0] == (F(1, 3), F(1, 2))
    assert lp.c[0] == F(1, 10)


def test_column_norms_squared(lp_ex1):
    assert column_norms_squared(lp_ex1) == (1, 1, 1, 1)
    # a lone (3, 4) column cannot form an LP with m < n, so embed it
    lp = make_lp([[3, 0, 1], [4, 1, 0]], [1, 1], [0, 0, 0])
    assert column_norms_squared(lp)[0] == 25


def test_column_norms_zero_column_is_legal():
    lp = make_lp([[1, 0, 0], [0, 1, 0]], [1, 1], [0, 0, 0])
    assert column_norms_squared(lp)[2] == 0


def test_basis_solve_identity_basis(lp_ex1):
    sol = basis_solve(lp_ex1, B(3, 4))
    assert sol.x == (0, 0, 1, 1)
    assert sol.feasible and not sol.degenerate
    assert sol.objective == 0


def test_basis_solve_optimal_vertex(lp_ex1):
    sol = basis_solve(lp_ex1, B(1, 2))
    assert sol.x == (1, 1, 0, 0)
    assert sol.feasible
    assert sol.objective == -3


def test_basis_solve_singular(lp_ex1):
    with pytest.raises(SingularBasis):
        basis_solve(lp_ex1, B(1, 3))


def test_dictionary_identity_basis(lp_ex1):
    d = build_dictionary(lp_ex1, B(3, 4))
    assert d.basis.nonbasic == (0, 1)
    assert d.reduced_costs == (-1, -2)
    assert d.nonbasic_matrix == ((1, 0), (0, 1))
    assert d.objective == 0


def test_dictionary_optimal_basis(lp_ex1):
    d = build_dictionary(lp_ex1, B(1, 2))
    # y = (-1, -2), cbar_j = c_j - a_j . y
    assert d.reduced_costs == (1, 2)
    assert d.optimal


def test_dictionary_identity_basis_with_zero_costs_gives_cbar_equal_c():
    lp = make_lp([[2, 5, 1, 0], [7, -3, 0, 1]], [4, 4], [3, -8, 0, 0])
    d = build_dictionary(lp, B(3, 4))
    assert d.reduced_costs == (3, -8)


def test_dictionary_agrees_with_sympy_oracle():
    A = [[2, 1, 1, 0, 3], [1, 3, 0, 1, -1]]
    b = [6, 9]
    lp = make_lp(A, b, [1, -1, 0, 2, 1])
    for cols, x in sympy_vertices(A, b).items():
        sol = basis_solve(lp, B(*(j + 1 for j in cols), n=5))
        assert sol.x == x
        d = build_dictionary(lp, sol.basis)
        assert d.solution() == x
        assert d.objective == lp.objective(x)


def test_dictionary_reduced_costs_match_dual_formula():
    # cbar_N = c_N - A_N^T (A_B^T)^{-1} c_B, computed the long way
    A = [[2, 1, 1, 0, 3], [1, 3, 0, 1, -1]]
    lp = make_lp(A, [6, 9], [1, -1, 0, 2, 1])
    basis = B(2, 5, n=5)
    d = build_dictionary(lp, basis)
    AtB = [[lp.A[i][j] for i in range(2)] for j in basis.basic]
    y = linalg.solve_vector(AtB, [lp.c[j] for j in basis.basic])
    expected = tuple(lp.c[j] - sum(lp.A[i][j] * y[i] for i in range(2)) for j in basis.nonbasic)
    assert d.reduced_costs == expected


def test_rank_helper():
    assert linalg.rank([[1, 2, 3], [2, 4, 6]]) == 1
    assert linalg.rank([[0, 0], [0, 1]]) == 1
    assert linalg.rank([[F(1, 3), 1], [1, 3]]) == 1
