"""Primal simplex pivot loop with full tracing.

The dictionary is rebuilt from scratch at every basis; instances are small
and exactness matters more than speed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from .errors import InfeasibleStart, ZeroColumn
from .lp import Basis, BasicSolution, SimplexDictionary, StandardFormLP, basis_solve, build_dictionary, column_norms_squared
from .rules import PivotRule, compute_deltas, select


class Status(str, enum.Enum):
    OPTIMAL = "OPTIMAL"
    UNBOUNDED = "UNBOUNDED"
    CYCLE_DETECTED = "CYCLE_DETECTED"
    ITERATION_LIMIT = "ITERATION_LIMIT"


@dataclass(frozen=True)
class StepRecord:
    iteration: int
    basis_before: Basis
    entering: int
    leaving: int
    objective_before: Fraction
    objective_after: Fraction
    delta_d: Fraction
    delta_l: Optional[Fraction]  # None only when some improving column of A is zero
    step_length: Fraction
    solution_changed: bool
    x_before: tuple[Fraction, ...]
    x_after: tuple[Fraction, ...]
    entering_reduced_cost: Fraction


@dataclass(frozen=True)
class SolveTrace:
    rule: PivotRule
    status: Status
    steps: tuple[StepRecord, ...]
    initial_solution: BasicSolution
    final_solution: BasicSolution
    t_tilde: int
    distinct_bfs: int
    unbounded_column: Optional[int] = None

    @property
    def iterations(self) -> int:
        return len(self.steps)

    def solutions(self) -> list[tuple[Fraction, ...]]:
        """x^0, x^1, ... including the final solution."""
        return [s.x_before for s in self.steps] + [self.final_solution.x]

    def objectives(self) -> list[Fraction]:
        return [s.objective_before for s in self.steps] + [self.final_solution.objective]

    def bases(self) -> list[Basis]:
        return [s.basis_before for s in self.steps] + [self.final_solution.basis]


def ratio_test(d: SimplexDictionary, entering: int) -> Optional[tuple[int, Fraction]]:
    """Minimum ratio ``x_Bi / abar_i`` over rows with ``abar_i > 0``.

    Returns ``(leaving column, step length)``; ties go to the smallest
    column index. ``None`` means the entering column never blocks.
    """
    col = d.column(entering)
    best = None
    for j, xb, a in zip(d.basis.basic, d.x_B, col):
        if a > 0:
            cand = (xb / a, j)
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    step, leaving = best
    return leaving, step


def pivot_step(
    lp: StandardFormLP,
    basis: Basis,
    rule: PivotRule,
    norms_sq: Sequence[Fraction],
    iteration: int = 0,
) -> Union[tuple[Basis, StepRecord], Status]:
    """One pivot. Returns the new basis and its record, or a terminal status."""
    d = build_dictionary(lp, basis)
    entering = select(rule, d, norms_sq)
    if entering is None:
        return Status.OPTIMAL
    hit = ratio_test(d, entering)
    if hit is None:
        return Status.UNBOUNDED
    leaving, step = hit

    try:
        deltas = compute_deltas(d, norms_sq)
        delta_d, delta_l = deltas.delta_d, deltas.delta_l
    except ZeroColumn:
        delta_d, delta_l = -min(d.reduced_costs), None

    x = d.solution()
    col = d.column(entering)
    x_after = list(x)
    for j, a in zip(d.basis.basic, col):
        x_after[j] = x[j] - step * a
    x_after[entering] = step
    x_after[leaving] = Fraction(0)
    cbar = d.reduced_cost(entering)

    record = StepRecord(
        iteration=iteration,
        basis_before=basis,
        entering=entering,
        leaving=leaving,
        objective_before=d.objective,
        objective_after=d.objective + cbar * step,
        delta_d=delta_d,
        delta_l=delta_l,
        step_length=step,
        solution_changed=step > 0,
        x_before=x,
        x_after=tuple(x_after),
        entering_reduced_cost=cbar,
    )
    return basis.exchange(leaving, entering), record


def default_max_iterations(lp: StandardFormLP) -> int:
    return comb(lp.n, lp.m) + 1


def solve(
    lp: StandardFormLP,
    initial_basis: Basis,
    rule: PivotRule = PivotRule.LARGEST_DISTANCE,
    max_iterations: Optional[int] = None,
) -> SolveTrace:
    """Run the simplex method from a feasible basis until it stops.

    Stops with ``CYCLE_DETECTED`` as soon as a basis repeats, so a pure rule
    is never silently swapped for an anti-cycling one.
    """
    start = basis_solve(lp, initial_basis)
    if not start.feasible:
        raise InfeasibleStart(f"basis {initial_basis.one_based()} is not feasible")
    if max_iterations is None:
        max_iterations = default_max_iterations(lp)
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")

    norms_sq = column_norms_squared(lp)
    basis = initial_basis
    visited = {basis.key()}
    steps: list[StepRecord] = []
    status = Status.ITERATION_LIMIT
    unbounded_column = None

    while len(steps) < max_iterations:
        outcome = pivot_step(lp, basis, rule, norms_sq, iteration=len(steps))
        if outcome is Status.OPTIMAL:
            status = outcome
            break
        if outcome is Status.UNBOUNDED:
            status = outcome
            unbounded_column = select(rule, build_dictionary(lp, basis), norms_sq)
            break
        basis, record = outcome
        steps.append(record)
        if basis.key() in visited:
            status = Status.CYCLE_DETECTED
            break
        visited.add(basis.key())

    final = basis_solve(lp, basis)
    seen = {s.x_before for s in steps}
    seen.add(final.x)
    return SolveTrace(
        rule=rule,
        status=status,
        steps=tuple(steps),
        initial_solution=start,
        final_solution=final,
        t_tilde=sum(1 for s in steps if s.solution_changed),
        distinct_bfs=len(seen),
        unbounded_column=unbounded_column,
    )
