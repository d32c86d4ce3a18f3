"""Brute-force census of every feasible basis.

This is the ground truth the bounds and lemma checks consume: the smallest
and largest positive BFS entries, the optimal and second-best objective
values, the extreme negative reduced costs and an optimal dual solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from . import linalg
from .errors import DualCertificateError, Infeasible, NoSecondValue, SingularBasis, TooLarge, UnboundedLP
from .lp import Basis, BasicSolution, SimplexDictionary, StandardFormLP, build_dictionary

MAX_SUBSETS = 10**6


@dataclass(frozen=True)
class VertexCensus:
    delta: Fraction
    gamma: Fraction
    z_star: Fraction
    z_bar: Optional[Fraction]  # None only from census(..., strict=False) on a one-value LP
    gamma_prime: Optional[Fraction]
    delta_prime: Optional[Fraction]
    is_degenerate: bool
    bfs_count: int
    feasible_basis_count: int
    optimal_basis: Basis


@dataclass(frozen=True)
class DualCertificate:
    y_star: tuple[Fraction, ...]
    s_star: tuple[Fraction, ...]
    basis: Basis


def _feasible_dictionaries(lp: StandardFormLP) -> list[SimplexDictionary]:
    total = comb(lp.n, lp.m)
    if total > MAX_SUBSETS:
        raise TooLarge(f"C({lp.n},{lp.m}) = {total} bases exceeds {MAX_SUBSETS}")
    out = []
    for cols in combinations(range(lp.n), lp.m):
        try:
            d = build_dictionary(lp, Basis.of(cols, lp.n))
        except SingularBasis:
            continue
        if d.feasible:
            out.append(d)
    return out


def _as_solution(lp: StandardFormLP, d: SimplexDictionary) -> BasicSolution:
    return BasicSolution(
        x=d.solution(),
        basis=d.basis,
        feasible=True,
        degenerate=any(v == 0 for v in d.x_B),
        objective=d.objective,
    )


def enumerate_feasible_bases(lp: StandardFormLP) -> list[tuple[Basis, BasicSolution]]:
    """All feasible bases in lexicographic order of their (sorted) columns."""
    return [(d.basis, _as_solution(lp, d)) for d in _feasible_dictionaries(lp)]


def census(lp: StandardFormLP, strict: bool = True) -> VertexCensus:
    """Exact instance parameters over the full basis enumeration.

    With ``strict=False`` an LP whose BFSs all share one objective value is
    reported with ``z_bar=None`` instead of raising :class:`NoSecondValue`.
    """
    dicts = _feasible_dictionaries(lp)
    if not dicts:
        raise Infeasible("no feasible basis")

    optimal_basis = None
    neg_costs: list[Fraction] = []
    for d in dicts:
        for j, cb in zip(d.basis.nonbasic, d.reduced_costs):
            if cb < 0:
                neg_costs.append(-cb)
                if all(a <= 0 for a in d.column(j)):
                    raise UnboundedLP(
                        f"column {j + 1} is a recession direction at basis {d.basis.one_based()}",
                        basis=d.basis.one_based(),
                        column=j + 1,
                    )
        if optimal_basis is None and d.optimal:
            optimal_basis = d.basis
    # bounded and feasible, so some feasible basis has cbar_N >= 0
    assert optimal_basis is not None

    values = sorted({d.objective for d in dicts})
    if len(values) < 2 and strict:
        raise NoSecondValue(f"every BFS has objective {values[0]}")

    positives = [v for d in dicts for v in d.x_B if v > 0]
    return VertexCensus(
        delta=min(positives),
        gamma=max(positives),
        z_star=values[0],
        z_bar=values[1] if len(values) > 1 else None,
        gamma_prime=max(neg_costs) if neg_costs else None,
        delta_prime=min(neg_costs) if neg_costs else None,
        is_degenerate=any(v == 0 for d in dicts for v in d.x_B),
        bfs_count=len({d.solution() for d in dicts}),
        feasible_basis_count=len(dicts),
        optimal_basis=optimal_basis,
    )


def dual_certificate(lp: StandardFormLP, vc: VertexCensus) -> DualCertificate:
    """``y* = A_B^{-T} c_B`` and ``s* = c - A^T y*`` at the census optimum."""
    B = vc.optimal_basis
    AtB = [[lp.A[i][j] for i in range(lp.m)] for j in B.basic]
    y = linalg.solve_vector(AtB, [lp.c[j] for j in B.basic])
    s = tuple(lp.c[j] - sum((lp.A[i][j] * y[i] for i in range(lp.m)), Fraction(0)) for j in range(lp.n))
    if any(v < 0 for v in s):
        raise DualCertificateError(f"s* has a negative entry at basis {B.one_based()}")
    return DualCertificate(y_star=tuple(y), s_star=s, basis=B)


def check_nondegenerate(vc: VertexCensus) -> bool:
    return not vc.is_degenerate
