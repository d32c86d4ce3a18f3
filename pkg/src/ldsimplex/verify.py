"""Exact per-iteration checks of the inequalities behind the bounds.

Each check returns a list of :class:`CheckOutcome`. A pass is an exact
rational comparison, so it proves the inequality for that step; a failure
carries the witness values that violate it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .census import DualCertificate, VertexCensus
from .engine import SolveTrace
from .rules import PivotRule

ALL_CHECKS = ("lemma1", "ineq7", "lemma2", "lemma3")


@dataclass(frozen=True)
class CheckOutcome:
    check: str
    step: int
    passed: bool
    witness: dict = field(default_factory=dict, compare=False)


@dataclass
class VerificationReport:
    outcomes: dict[str, list[CheckOutcome]]
    # None marks a check that does not apply to this trace (lemma2 off the largest distance rule)
    status: dict[str, Optional[bool]]

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.status.values())

    def failures(self) -> list[CheckOutcome]:
        return [o for outs in self.outcomes.values() for o in outs if not o.passed]


def _gaps(trace: SolveTrace, z_star: Fraction) -> list[Fraction]:
    return [v - z_star for v in trace.objectives()]


def verify_lemma1(trace: SolveTrace, census: VertexCensus) -> list[CheckOutcome]:
    """``z* >= c^T x^t - m gamma Delta_d`` at every non-optimal step."""
    out = []
    for s in trace.steps:
        m = len(s.basis_before.basic)
        rhs = s.objective_before - m * census.gamma * s.delta_d
        out.append(
            CheckOutcome("lemma1", s.iteration, census.z_star >= rhs,
                         {"z_star": census.z_star, "rhs": rhs, "delta_d": s.delta_d})
        )
    return out


def verify_ineq7(trace: SolveTrace, beta_sq: Fraction) -> list[CheckOutcome]:
    """``Delta_l >= beta Delta_d``, compared as ``Delta_l^2 >= beta^2 Delta_d^2``."""
    out = []
    for s in trace.steps:
        if s.delta_l is None:
            continue
        lhs = s.delta_l * s.delta_l
        rhs = beta_sq * s.delta_d * s.delta_d
        out.append(
            CheckOutcome("ineq7", s.iteration, lhs >= rhs,
                         {"delta_l": s.delta_l, "delta_d": s.delta_d, "beta_sq": beta_sq})
        )
    return out


def verify_lemma2(trace: SolveTrace, census: VertexCensus, beta_sq: Fraction) -> list[CheckOutcome]:
    """Geometric decrease of the optimality gap on solution-changing steps.

    ``gap' <= (1 - beta delta / (m gamma)) gap`` is rearranged to
    ``beta * (delta gap) <= m gamma (gap - gap')``. The right side must be
    nonnegative, after which both sides are squared.
    """
    out = []
    for s in trace.steps:
        if not s.solution_changed:
            continue
        m = len(s.basis_before.basic)
        gap, gap_next = s.objective_before - census.z_star, s.objective_after - census.z_star
        left = census.delta * gap
        right = m * census.gamma * (gap - gap_next)
        ok = right >= 0 and beta_sq * left * left <= right * right
        out.append(
            CheckOutcome("lemma2", s.iteration, ok,
                         {"gap": gap, "gap_next": gap_next, "beta_sq": beta_sq,
                          "delta": census.delta, "gamma": census.gamma, "m": m})
        )
    return out


def verify_lemma3(trace: SolveTrace, census: VertexCensus, cert: DualCertificate) -> list[CheckOutcome]:
    """Existence of a basic index with a large optimal dual slack, and its decay.

    At every non-optimal solution ``x^t`` some basic ``j`` must have
    ``x_j > 0`` and ``m x_j s*_j >= c^T x^t - z*``. For every such ``j`` and
    every later solution ``x^k``: ``x^k_j (c^T x^t - z*) <= m x^t_j (c^T x^k - z*)``.
    """
    xs = trace.solutions()
    gaps = _gaps(trace, census.z_star)
    bases = trace.bases()
    s_star = cert.s_star
    out = []
    for t, (x, gap, basis) in enumerate(zip(xs, gaps, bases)):
        if gap <= 0:
            continue
        m = len(basis.basic)
        found = [j for j in basis.basic if x[j] > 0 and m * x[j] * s_star[j] >= gap]
        out.append(
            CheckOutcome("lemma3_exist", t, bool(found),
                         {"gap": gap, "candidates": [j + 1 for j in found],
                          "basis": basis.one_based()})
        )
        for j in found:
            for k in range(t + 1, len(xs)):
                lhs = xs[k][j] * gap
                rhs = m * x[j] * gaps[k]
                out.append(
                    CheckOutcome("lemma3_decay", t, lhs <= rhs,
                                 {"j": j + 1, "k": k, "x_k_j": xs[k][j], "x_t_j": x[j],
                                  "gap_t": gap, "gap_k": gaps[k]})
                )
    return out


def verify_trace(
    trace: SolveTrace,
    census: VertexCensus,
    cert: DualCertificate,
    beta_sq: Fraction,
    checks: Iterable[str] = ALL_CHECKS,
) -> VerificationReport:
    """Run the selected checks.

    The lemma2 check is specific to the largest distance rule; on any other trace it
    is reported as not applicable.
    """
    checks = tuple(checks)
    outcomes: dict[str, list[CheckOutcome]] = {}
    status: dict[str, Optional[bool]] = {}
    for name in ALL_CHECKS:
        if name not in checks:
            continue
        if name == "lemma1":
            outs = verify_lemma1(trace, census)
        elif name == "ineq7":
            outs = verify_ineq7(trace, beta_sq)
        elif name == "lemma2":
            if trace.rule is not PivotRule.LARGEST_DISTANCE:
                outcomes[name], status[name] = [], None
                continue
            outs = verify_lemma2(trace, census, beta_sq)
        else:
            outs = verify_lemma3(trace, census, cert)
        outcomes[name] = outs
        status[name] = all(o.passed for o in outs)
    return VerificationReport(outcomes=outcomes, status=status)
