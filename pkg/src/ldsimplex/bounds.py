"""Closed-form bounds on the number of distinct BFSs / iterations.

Everything upstream is exact; this is the only module that touches
irrational numbers (square roots and logarithms). Those are evaluated in
mpmath interval arithmetic so each ceiling is taken of a rigorous lower and
upper enclosure. When the two ceilings disagree the larger one is reported
and a ``PRECISION_WARNING`` flag is attached, so a bound is never
under-reported.

Ceilings of a log term are clamped to at least 1. The log argument is
always >= 1, and when it equals 1 exactly the smallest count that makes the
strict termination inequality hold is 1, not 0 (``EDGE_LOG_ONE`` flag).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional

from mpmath import iv

from .census import VertexCensus
from .errors import NoNegativeCosts, PreconditionError, ZeroColumn
from .lp import StandardFormLP, column_norms_squared

PRECISION_BITS = 128


@dataclass(frozen=True)
class BoundInputs:
    m: int
    n: int
    delta: Fraction
    gamma: Fraction
    z_star: Fraction
    z_bar: Optional[Fraction]
    c_x0: Fraction
    gamma_prime: Optional[Fraction]
    delta_prime: Optional[Fraction]
    beta_sq: Fraction
    nondegenerate: bool = False

    def __post_init__(self):
        if not self.m < self.n:
            raise PreconditionError("need m < n")
        if not 0 < self.delta <= self.gamma:
            raise PreconditionError("need 0 < delta <= gamma")
        if not 0 < self.beta_sq <= 1:
            raise PreconditionError("need 0 < beta^2 <= 1")


@dataclass
class BoundReport:
    thm1: Optional[int]
    thm2: int
    corollary_min: int
    km1: Optional[int]
    km2: int
    km_monotone: Optional[int]
    tano1: Optional[int]
    tano2: Optional[int]
    observed_t_tilde: dict[str, int] = field(default_factory=dict)
    observed_distinct_bfs: dict[str, int] = field(default_factory=dict)
    all_checks_passed: bool = True
    flags: list[str] = field(default_factory=list)


def beta_squared(lp: StandardFormLP) -> Fraction:
    norms = column_norms_squared(lp)
    if min(norms) == 0:
        raise ZeroColumn(f"column {norms.index(0) + 1} of A is zero")
    return min(norms) / max(norms)


def beta_lower_bound(lp: StandardFormLP) -> float:
    """``min|a_ij| / (sqrt(n) max|a_ij|)`` over all entries, zeros included."""
    entries = [abs(v) for row in lp.A for v in row]
    return float(min(entries) / max(entries)) / math.sqrt(lp.n)


def bound_inputs(lp: StandardFormLP, vc: VertexCensus, c_x0: Fraction) -> BoundInputs:
    return BoundInputs(
        m=lp.m,
        n=lp.n,
        delta=vc.delta,
        gamma=vc.gamma,
        z_star=vc.z_star,
        z_bar=vc.z_bar,
        c_x0=Fraction(c_x0),
        gamma_prime=vc.gamma_prime,
        delta_prime=vc.delta_prime,
        beta_sq=beta_squared(lp),
        nondegenerate=not vc.is_degenerate,
    )


def _iv(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _ceil_times_log(
    name: str,
    coeff: Callable[[], object],
    log_arg: Fraction,
    flags: Optional[list],
) -> int:
    """``max(1, ceil(coeff * ln(log_arg)))`` from an interval enclosure."""
    if log_arg == 1:
        if flags is not None:
            flags.append(f"EDGE_LOG_ONE:{name}")
        return 1
    saved = iv.prec
    iv.prec = PRECISION_BITS
    try:
        val = coeff() * iv.log(_iv(log_arg))
        lo, hi = math.ceil(val.a), math.ceil(val.b)
    finally:
        iv.prec = saved
    if lo != hi and flags is not None:
        flags.append(f"PRECISION_WARNING:{name}")
    return max(1, hi)


def _gap_ratio(inp: BoundInputs) -> Fraction:
    if inp.z_bar is None or inp.z_bar <= inp.z_star:
        raise PreconditionError("need a second objective value z_bar > z_star")
    if inp.c_x0 <= inp.z_star:
        raise PreconditionError("initial objective must exceed z_star")
    return (inp.c_x0 - inp.z_star) / (inp.z_bar - inp.z_star)


def _ld_coeff(inp: BoundInputs):
    return lambda: iv.mpf(inp.m) * _iv(inp.gamma) / (_iv(inp.delta) * iv.sqrt(_iv(inp.beta_sq)))


def _km_coeff(inp: BoundInputs):
    return lambda: _iv(inp.m * inp.gamma / inp.delta)


def _tano_coeff(inp: BoundInputs):
    return lambda: iv.mpf(inp.m) ** iv.mpf(1.5) * _iv((inp.gamma / inp.delta) ** 2)


def _periods(inp: BoundInputs, flags: Optional[list]) -> tuple[int, Fraction]:
    arg = inp.m * inp.gamma / inp.delta
    if arg <= 1 and flags is not None:
        flags.append("DEGENERATE_BOUND")
    return inp.n - inp.m, arg


def bound_thm1(inp: BoundInputs, flags: Optional[list] = None) -> int:
    """Largest distance rule, objective-gap form."""
    ratio = _gap_ratio(inp)
    if ratio == 1 and flags is not None:
        flags.append("START_AT_SECOND_BEST")
    return _ceil_times_log("thm1", _ld_coeff(inp), ratio, flags)


def bound_thm2(inp: BoundInputs, flags: Optional[list] = None) -> int:
    """Largest distance rule, objective-free form."""
    periods, arg = _periods(inp, flags)
    return periods * _ceil_times_log("thm2", _ld_coeff(inp), arg, flags)


def bound_km1(inp: BoundInputs, flags: Optional[list] = None) -> int:
    """Dantzig's rule, objective-gap form."""
    return _ceil_times_log("km1", _km_coeff(inp), _gap_ratio(inp), flags)


def bound_km2(inp: BoundInputs, flags: Optional[list] = None) -> int:
    periods, arg = _periods(inp, flags)
    return periods * _ceil_times_log("km2", _km_coeff(inp), arg, flags)


def bound_km_monotone(inp: BoundInputs, flags: Optional[list] = None) -> int:
    """Rules that never increase the objective; exact rational ceiling."""
    if inp.gamma_prime is None or inp.delta_prime is None:
        raise NoNegativeCosts("no feasible basis has a negative reduced cost")
    val = min(inp.m, inp.n - inp.m) * inp.gamma * inp.gamma_prime / (inp.delta * inp.delta_prime)
    return math.ceil(val)


def bound_tano1(inp: BoundInputs, flags: Optional[list] = None) -> Optional[int]:
    """Steepest edge rule; ``None`` unless the instance is nondegenerate."""
    if not inp.nondegenerate:
        return None
    return _ceil_times_log("tano1", _tano_coeff(inp), _gap_ratio(inp), flags)


def bound_tano2(inp: BoundInputs, flags: Optional[list] = None) -> Optional[int]:
    if not inp.nondegenerate:
        return None
    periods, arg = _periods(inp, flags)
    return periods * _ceil_times_log("tano2", _tano_coeff(inp), arg, flags)


def _optional(fn, inp, flags, name):
    try:
        return fn(inp, flags)
    except (PreconditionError, NoNegativeCosts) as exc:
        flags.append(f"{exc.code}:{name}")
        return None


def bound_report(
    lp: StandardFormLP,
    vc: VertexCensus,
    traces: Mapping,
    x0_objective: Fraction,
    lemma_checks_passed: bool = True,
) -> BoundReport:
    """Evaluate every bound and compare with the observed counts.

    ``traces`` maps a rule (or its name) to a :class:`~ldsimplex.engine.SolveTrace`.
    The largest distance run is checked against both new bounds and a Dantzig
    run, if present, against the two Dantzig bounds.
    """
    flags: list[str] = []
    inp = bound_inputs(lp, vc, x0_objective)
    thm1 = _optional(bound_thm1, inp, flags, "thm1")
    thm2 = bound_thm2(inp, flags)
    km1 = _optional(bound_km1, inp, flags, "km1")
    km2 = bound_km2(inp, flags)
    tano1 = _optional(bound_tano1, inp, flags, "tano1")
    report = BoundReport(
        thm1=thm1,
        thm2=thm2,
        corollary_min=min(thm2, thm1) if thm1 is not None else thm2,
        km1=km1,
        km2=km2,
        km_monotone=_optional(bound_km_monotone, inp, flags, "km_monotone"),
        tano1=tano1,
        tano2=bound_tano2(inp, flags),
        flags=flags,
    )

    by_name = {getattr(rule, "value", rule): tr for rule, tr in traces.items()}
    if "largest_distance" not in by_name:
        raise PreconditionError("bound_report needs the largest_distance trace")
    for name, tr in sorted(by_name.items()):
        report.observed_t_tilde[name] = tr.t_tilde
        report.observed_distinct_bfs[name] = tr.distinct_bfs

    ok = lemma_checks_passed
    ok &= bound_holds(by_name["largest_distance"].t_tilde, thm1, thm2)
    if "dantzig" in by_name:
        ok &= bound_holds(by_name["dantzig"].t_tilde, km1, km2)
    report.all_checks_passed = bool(ok)
    return report


def bound_holds(observed: int, *bounds: Optional[int]) -> bool:
    """``observed <= b`` for every defined bound; an undefined bound needs ``observed == 0``."""
    return all(observed <= (0 if b is None else b) for b in bounds)
