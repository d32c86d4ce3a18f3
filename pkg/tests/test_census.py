from fractions import Fraction

import pytest

from ldsimplex.census import census, check_nondegenerate, dual_certificate, enumerate_feasible_bases
from ldsimplex.errors import Infeasible, NoSecondValue, UnboundedLP
from ldsimplex.lp import make_lp

from .conftest import LP_EX1, sympy_vertices

F = Fraction

# m < n analogue of the 2x2 identity: the third column is zero, so {1,2} is the only basis
IDENTITY_PLUS_ZERO = ([[1, 0, 0], [0, 1, 0]], [1, 1], [1, 1, 0])


def test_enumerate_ex1(lp_ex1):
    got = enumerate_feasible_bases(lp_ex1)
    assert [b.one_based() for b, _ in got] == [[1, 2], [1, 4], [2, 3], [3, 4]]
    assert [s.x for _, s in got] == [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)]


def test_enumerate_matches_sympy_oracle(lp_ex1):
    oracle = sympy_vertices(*LP_EX1[:2])
    assert {b.basic: s.x for b, s in enumerate_feasible_bases(lp_ex1)} == oracle


def test_enumerate_infeasible():
    assert enumerate_feasible_bases(make_lp([[1, 1]], [-1], [0, 0])) == []


def test_enumerate_single_basis():
    got = enumerate_feasible_bases(make_lp(*IDENTITY_PLUS_ZERO))
    assert [b.one_based() for b, _ in got] == [[1, 2]]


def test_census_ex1(lp_ex1):
    vc = census(lp_ex1)
    assert (vc.delta, vc.gamma, vc.z_star, vc.z_bar) == (1, 1, -3, -2)
    assert (vc.gamma_prime, vc.delta_prime) == (2, 1)
    assert not vc.is_degenerate
    assert vc.bfs_count == 4
    assert vc.optimal_basis.one_based() == [1, 2]


def test_census_scaled_rhs():
    vc = census(make_lp(LP_EX1[0], [2, 2], LP_EX1[2]))
    assert (vc.delta, vc.gamma, vc.z_star) == (2, 2, -6)


def test_census_single_value():
    lp = make_lp(*IDENTITY_PLUS_ZERO)
    with pytest.raises(NoSecondValue):
        census(lp)
    vc = census(lp, strict=False)
    assert (vc.delta, vc.gamma, vc.z_star, vc.z_bar) == (1, 1, 2, None)


def test_census_errors():
    with pytest.raises(Infeasible):
        census(make_lp([[1, 1]], [-1], [0, 0]))
    with pytest.raises(UnboundedLP):
        census(make_lp([[1, -1]], [1], [-1, -1]))


def test_census_against_sympy_oracle():
    A = [[2, 1, 1, 0, 3], [1, 3, 0, 1, -1]]
    b = [6, 9]
    c = [1, -1, 0, 2, 1]
    verts = sympy_vertices(A, b)
    entries = [v for x in verts.values() for v in x if v > 0]
    values = sorted({sum(F(ci) * xi for ci, xi in zip(c, x)) for x in verts.values()})
    vc = census(make_lp(A, b, c))
    assert (vc.delta, vc.gamma) == (min(entries), max(entries))
    assert (vc.z_star, vc.z_bar) == (values[0], values[1])
    assert vc.bfs_count == len(set(verts.values()))


def test_dual_certificate_ex1(lp_ex1):
    cert = dual_certificate(lp_ex1, census(lp_ex1))
    assert cert.y_star == (-1, -2)
    assert cert.s_star == (0, 0, 1, 2)


def test_dual_certificate_identity():
    lp = make_lp(*IDENTITY_PLUS_ZERO)
    cert = dual_certificate(lp, census(lp, strict=False))
    assert cert.y_star == (1, 1)
    assert cert.s_star == (0, 0, 0)


def test_dual_certificate_zero_objective():
    lp = make_lp(LP_EX1[0], LP_EX1[1], [0, 0, 0, 0])
    cert = dual_certificate(lp, census(lp, strict=False))
    assert cert.y_star == (0, 0)
    assert cert.s_star == (0, 0, 0, 0)


def test_check_nondegenerate(lp_ex1):
    assert check_nondegenerate(census(lp_ex1))
    assert check_nondegenerate(census(make_lp([[1, 1]], [1], [0, -1])))
    assert not check_nondegenerate(census(make_lp(LP_EX1[0], [1, 0], LP_EX1[2])))


def test_delta_gamma_are_realized_and_bracket_every_entry(lp_ex1):
    lp = make_lp([[2, 1, 1, 0, 3], [1, 3, 0, 1, -1]], [6, 9], [1, -1, 0, 2, 1])
    vc = census(lp)
    entries = [v for _, s in enumerate_feasible_bases(lp) for v in s.x if v > 0]
    assert vc.delta in entries and vc.gamma in entries
    assert all(vc.delta <= v <= vc.gamma for v in entries)
