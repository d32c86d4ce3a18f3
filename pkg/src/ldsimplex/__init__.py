"""Exact simplex method with pluggable pivoting rules and a harness that checks
iteration bounds for the largest distance rule against brute-force ground truth."""

from .bounds import BoundInputs, BoundReport, beta_lower_bound, beta_squared, bound_report
from .census import DualCertificate, VertexCensus, census, check_nondegenerate, dual_certificate, enumerate_feasible_bases
from .engine import SolveTrace, Status, StepRecord, pivot_step, ratio_test, solve
from .errors import LPError
from .lp import Basis, BasicSolution, SimplexDictionary, StandardFormLP, basis_solve, build_dictionary, column_norms_squared, make_lp
from .rules import DeltaPair, PivotRule, compute_deltas

__version__ = "0.1.0"

__all__ = [
    "Basis", "BasicSolution", "BoundInputs", "BoundReport", "DeltaPair", "DualCertificate",
    "LPError", "PivotRule", "SimplexDictionary", "SolveTrace", "StandardFormLP", "Status",
    "StepRecord", "VertexCensus", "basis_solve", "beta_lower_bound", "beta_squared",
    "bound_report", "build_dictionary", "census", "check_nondegenerate", "column_norms_squared",
    "compute_deltas", "dual_certificate", "enumerate_feasible_bases", "make_lp", "pivot_step",
    "ratio_test", "solve",
]
