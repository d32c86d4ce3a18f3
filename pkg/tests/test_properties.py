"""Hypothesis checks of the structural invariants over small random LPs."""

from itertools import combinations

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from ldsimplex.bounds import bound_inputs, bound_km1, bound_km2, bound_thm1, bound_thm2
from ldsimplex.census import census, dual_certificate, enumerate_feasible_bases
from ldsimplex.engine import Status, solve
from ldsimplex.errors import LPError, SingularBasis
from ldsimplex.instances import dumps_instance, gen_random_lp, loads_instance
from ldsimplex.lp import Basis, basis_solve, build_dictionary, column_norms_squared, make_lp
from ldsimplex.rules import PivotRule, dantzig_select, largest_distance_select, select

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

shapes = st.integers(1, 3).flatmap(lambda m: st.tuples(st.just(m), st.integers(m + 1, m + 3)))


@st.composite
def random_instances(draw, **kw):
    m, n = draw(shapes)
    seed = draw(st.integers(0, 2**32))
    return gen_random_lp(m, n, seed, **kw)


@st.composite
def raw_lps(draw):
    m, n = draw(shapes)
    ent = st.integers(-4, 4)
    A = draw(st.lists(st.lists(ent, min_size=n, max_size=n), min_size=m, max_size=m))
    b = draw(st.lists(ent, min_size=m, max_size=m))
    c = draw(st.lists(ent, min_size=n, max_size=n))
    try:
        return make_lp(A, b, c)
    except LPError:
        assume(False)


@SETTINGS
@given(raw_lps())
def test_dictionary_and_basic_solution_agree(lp):
    norms = column_norms_squared(lp)
    for j in range(lp.n):
        assert norms[j] >= max(row[j] for row in lp.A) ** 2
    for cols in combinations(range(lp.n), lp.m):
        basis = Basis.of(cols, lp.n)
        try:
            d = build_dictionary(lp, basis)
        except SingularBasis:
            continue
        sol = basis_solve(lp, basis)
        assert tuple(sol.x[j] for j in cols) == d.x_B
        assert sol.objective == d.objective
        assert all(sum(a * x for a, x in zip(row, sol.x)) == bi for row, bi in zip(lp.A, lp.b))
        # optimality is rule-independent
        picks = {select(r, d, norms) is None for r in PivotRule if min(norms) > 0 or r is not PivotRule.LARGEST_DISTANCE}
        assert len(picks) == 1


@given(st.fractions(), st.fractions().filter(lambda q: q != 0))
def test_rational_exactness(a, b):
    assert (a + b) - b == a
    assert (a * b) / b == a


@SETTINGS
@given(random_instances())
def test_instance_roundtrip(inst):
    text = dumps_instance(inst)
    assert loads_instance(text) == inst
    assert dumps_instance(loads_instance(text)) == text


@SETTINGS
@given(random_instances(), st.sampled_from(list(PivotRule)))
def test_trace_invariants(inst, rule):
    lp = inst.lp
    vc = census(lp)
    tr = solve(lp, inst.initial_basis, rule)
    assert tr.status is Status.OPTIMAL or tr.status is Status.CYCLE_DETECTED
    for s in tr.steps:
        assert s.objective_after <= s.objective_before
        assert (s.objective_after < s.objective_before) == s.solution_changed
        assert s.objective_before - s.objective_after == -s.entering_reduced_cost * s.step_length
    if tr.status is Status.OPTIMAL:
        assert tr.final_solution.objective == vc.z_star
    if not vc.is_degenerate:
        assert all(s.solution_changed for s in tr.steps)
        assert tr.distinct_bfs == tr.t_tilde + 1


@SETTINGS
@given(random_instances(require_nondegenerate=True))
def test_optimum_is_rule_independent(inst):
    finals = {solve(inst.lp, inst.initial_basis, r).final_solution.objective for r in PivotRule}
    assert len(finals) == 1


@SETTINGS
@given(random_instances())
def test_census_brackets_and_duality(inst):
    lp = inst.lp
    vc = census(lp)
    entries = [v for _, s in enumerate_feasible_bases(lp) for v in s.x if v > 0]
    assert vc.delta in entries and vc.gamma in entries
    assert all(vc.delta <= v <= vc.gamma for v in entries)
    cert = dual_certificate(lp, vc)
    assert sum(bi * yi for bi, yi in zip(lp.b, cert.y_star)) == vc.z_star
    for j in range(lp.n):
        assert sum(lp.A[i][j] * cert.y_star[i] for i in range(lp.m)) + cert.s_star[j] == lp.c[j]
        assert cert.s_star[j] >= 0


@SETTINGS
@given(random_instances(equal_norms=True))
def test_equal_norms_collapse(inst):
    lp = inst.lp
    norms = column_norms_squared(lp)
    d = build_dictionary(lp, inst.initial_basis)
    assert largest_distance_select(d, norms) == dantzig_select(d)


@SETTINGS
@given(random_instances(require_nondegenerate=True), st.integers(2, 7))
def test_rhs_scaling_leaves_bounds_unchanged(inst, k):
    lp = inst.lp
    scaled = make_lp(lp.A, [k * v for v in lp.b], lp.c)
    x0 = basis_solve(lp, inst.initial_basis).objective
    x0s = basis_solve(scaled, inst.initial_basis).objective
    assert x0s == k * x0
    vc, vcs = census(lp), census(scaled)
    assert (vcs.delta, vcs.gamma) == (k * vc.delta, k * vc.gamma)
    a, b = bound_inputs(lp, vc, x0), bound_inputs(scaled, vcs, x0s)
    assert bound_thm2(a) == bound_thm2(b) and bound_km2(a) == bound_km2(b)
    if x0 > vc.z_bar:
        assert bound_thm1(a) == bound_thm1(b) and bound_km1(a) == bound_km1(b)
