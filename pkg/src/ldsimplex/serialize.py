"""JSON-ready views of solver, census, bound and verification objects.

Rationals become canonical strings and column indices become 1-based.
"""

from __future__ import annotations

import enum
import json
from fractions import Fraction
from typing import Any

from .bounds import BoundReport
from .census import DualCertificate, VertexCensus
from .engine import SolveTrace
from .verify import VerificationReport


def jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def trace_to_dict(trace: SolveTrace, with_steps: bool = True) -> dict:
    out = {
        "rule": trace.rule,
        "status": trace.status,
        "iterations": trace.iterations,
        "t_tilde": trace.t_tilde,
        "distinct_bfs": trace.distinct_bfs,
        "initial_basis": trace.initial_solution.basis.one_based(),
        "initial_objective": trace.initial_solution.objective,
        "final_basis": trace.final_solution.basis.one_based(),
        "final_objective": trace.final_solution.objective,
        "final_x": trace.final_solution.x,
    }
    if trace.unbounded_column is not None:
        out["unbounded_column"] = trace.unbounded_column + 1
    if with_steps:
        out["steps"] = [
            {
                "t": s.iteration,
                "basis": s.basis_before.one_based(),
                "entering": s.entering + 1,
                "leaving": s.leaving + 1,
                "objective_before": s.objective_before,
                "objective_after": s.objective_after,
                "delta_d": s.delta_d,
                "delta_l": s.delta_l,
                "step_length": s.step_length,
                "solution_changed": s.solution_changed,
            }
            for s in trace.steps
        ]
    return jsonable(out)


def census_to_dict(vc: VertexCensus) -> dict:
    return jsonable(
        {
            "delta": vc.delta,
            "gamma": vc.gamma,
            "z_star": vc.z_star,
            "z_bar": vc.z_bar,
            "gamma_prime": vc.gamma_prime,
            "delta_prime": vc.delta_prime,
            "is_degenerate": vc.is_degenerate,
            "bfs_count": vc.bfs_count,
            "feasible_basis_count": vc.feasible_basis_count,
            "optimal_basis": vc.optimal_basis.one_based(),
        }
    )


def certificate_to_dict(cert: DualCertificate) -> dict:
    return jsonable({"y_star": cert.y_star, "s_star": cert.s_star, "basis": cert.basis.one_based()})


def bound_report_to_dict(rep: BoundReport) -> dict:
    return jsonable(
        {
            "thm1": rep.thm1,
            "thm2": rep.thm2,
            "corollary_min": rep.corollary_min,
            "km1": rep.km1,
            "km2": rep.km2,
            "km_monotone": rep.km_monotone,
            "tano1": rep.tano1,
            "tano2": rep.tano2,
            "observed_t_tilde": rep.observed_t_tilde,
            "observed_distinct_bfs": rep.observed_distinct_bfs,
            "all_checks_passed": rep.all_checks_passed,
            "flags": rep.flags,
        }
    )


def verification_to_dict(rep: VerificationReport, full: bool = False) -> dict:
    """Per-check summary; every outcome is listed only with ``full=True``."""
    out = {}
    for name, status in rep.status.items():
        outs = rep.outcomes[name]
        shown = outs if full else [o for o in outs if not o.passed]
        out[name] = {
            "status": "n/a" if status is None else ("pass" if status else "fail"),
            "checked": len(outs),
            "failed": sum(1 for o in outs if not o.passed),
            "outcomes" if full else "failures": [
                {"check": o.check, "step": o.step, "passed": o.passed, "witness": o.witness} for o in shown
            ],
        }
    return jsonable(out)
