"""Experiment orchestration: solve, census, verify and compare with the bounds.

Output is deterministic for a given config: instances are processed in a
fixed order, every number is exact or an integer bound, and no timestamps
are written.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import serialize
from .bounds import BoundReport, beta_squared, bound_holds, bound_report
from .census import census, dual_certificate, enumerate_feasible_bases
from .engine import SolveTrace, Status, solve
from .errors import ConfigError, Infeasible, LPError
from .instances import Instance, gen_klee_minty, gen_random_lp, load_instance
from .rules import PivotRule
from .verify import ALL_CHECKS, VerificationReport, verify_trace

log = logging.getLogger(__name__)

CSV_COLUMNS = [
    "instance", "rule", "status", "iterations", "t_tilde", "distinct_bfs",
    "delta", "gamma", "beta_sq", "z_star", "z_bar",
    "thm1", "thm2", "km1", "km2", "km_monotone", "tano1", "tano2",
    "lemma1_pass", "ineq7_pass", "lemma2_pass", "lemma3_pass",
]
CHECK_NAMES = ALL_CHECKS + ("bounds",)
BOUND_NAMES = ("thm1", "thm2", "km1", "km2", "km_monotone", "tano1", "tano2")


@dataclass
class ExperimentConfig:
    instance_paths: list[str] = field(default_factory=list)
    instances: list[Instance] = field(default_factory=list)
    generators: list[dict] = field(default_factory=list)
    rules: tuple[PivotRule, ...] = tuple(PivotRule)
    seed: int = 0
    max_iterations: Optional[int] = None
    checks: tuple[str, ...] = CHECK_NAMES
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        self.rules = tuple(PivotRule.parse(r) if isinstance(r, str) else r for r in self.rules)
        if not self.rules:
            raise ConfigError("at least one rule is required")
        unknown = set(self.checks) - set(CHECK_NAMES)
        if unknown:
            raise ConfigError(f"unknown checks: {sorted(unknown)}")
        for g in self.generators:
            if g.get("family") not in ("random", "klee_minty"):
                raise ConfigError(f"unknown generator family {g.get('family')!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {"instance_paths", "generators", "rules", "seed", "max_iterations", "checks",
                 "csv_path", "json_path", "jobs"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        kwargs = dict(data)
        if "rules" in kwargs:
            try:
                kwargs["rules"] = tuple(PivotRule.parse(r) for r in kwargs["rules"])
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if "checks" in kwargs:
            kwargs["checks"] = tuple(kwargs["checks"])
        return cls(**kwargs)


@dataclass
class RunResult:
    rule: PivotRule
    trace: Optional[SolveTrace]
    verification: Optional[VerificationReport]
    oracle_agreement: Optional[bool]
    error: Optional[str] = None


@dataclass
class InstanceResult:
    name: str
    runs: list[RunResult] = field(default_factory=list)
    census: Any = None
    certificate: Any = None
    beta_sq: Optional[Fraction] = None
    bounds: Optional[BoundReport] = None
    bounds_ok: Optional[bool] = None
    error: Optional[str] = None

    @property
    def all_checks_passed(self) -> bool:
        if self.error:
            return False
        for r in self.runs:
            if r.error or r.oracle_agreement is False:
                return False
            if r.verification is not None and not r.verification.passed:
                return False
        return self.bounds_ok is not False


@dataclass
class ExperimentResult:
    results: list[InstanceResult]
    csv_text: str
    json_text: str

    @property
    def all_checks_passed(self) -> bool:
        return all(r.all_checks_passed for r in self.results)

    @property
    def bound_reports(self) -> dict[str, BoundReport]:
        return {r.name: r.bounds for r in self.results if r.bounds is not None}

    @property
    def verification_reports(self) -> dict[tuple[str, str], VerificationReport]:
        return {(r.name, run.rule.value): run.verification
                for r in self.results for run in r.runs if run.verification is not None}


# -- instance sources ---------------------------------------------------------


def _pick(rng: random.Random, spec, default=None):
    if spec is None:
        return default
    if isinstance(spec, list):
        return rng.choice(spec)
    return spec


def generate_instances(generators: Sequence[dict], seed: int) -> list[Instance]:
    """Expand generator specs into instances, deterministically in ``seed``.

    ``{"family": "random", "count": 100, "m": [2, 3], "n": null, "n_max": 8,
    "n_min_offset": 2, "entry_range": [-3, 3], "require_nondegenerate": true}``
    draws ``m`` from the list and ``n`` uniformly from ``m + n_min_offset .. n_max``
    unless ``n`` is given. ``{"family": "klee_minty", "m": [1, 2, 3]}`` emits
    one cube per size.
    """
    out = []
    for gi, g in enumerate(generators):
        family = g.get("family")
        if family == "klee_minty":
            sizes = g.get("m", [3])
            for m in sizes if isinstance(sizes, list) else [sizes]:
                out.append(gen_klee_minty(int(m), Fraction(str(g.get("scale", "1")))))
            continue
        rng = random.Random(f"{seed}:{gi}")
        for k in range(int(g.get("count", 1))):
            m = int(_pick(rng, g.get("m"), 2))
            n = _pick(rng, g.get("n"))
            if n is None:
                n = rng.randint(m + int(g.get("n_min_offset", 2)), int(g.get("n_max", 8)))
            inst_seed = rng.getrandbits(63)
            lo, hi = g.get("entry_range", [-3, 3])
            prefix = g.get("name", f"g{gi}")
            out.append(
                gen_random_lp(
                    m, int(n), inst_seed, (int(lo), int(hi)),
                    require_nondegenerate=bool(g.get("require_nondegenerate", False)),
                    require_degenerate=bool(g.get("require_degenerate", False)),
                    equal_norms=bool(g.get("equal_norms", False)),
                    name=f"{prefix}-{k:04d}",
                )
            )
    return out


def collect_instances(config: ExperimentConfig) -> list[Instance]:
    insts = list(config.instances)
    insts += [load_instance(p) for p in config.instance_paths]
    insts += generate_instances(config.generators, config.seed)
    return insts


# -- per-instance work --------------------------------------------------------


def start_basis(inst: Instance):
    """The instance's own starting basis, else the first feasible one found."""
    if inst.initial_basis is not None:
        return inst.initial_basis
    feasible = enumerate_feasible_bases(inst.lp)
    if not feasible:
        raise Infeasible("no feasible basis to start from")
    return feasible[0][0]


def process_instance(inst: Instance, rules, checks, max_iterations) -> InstanceResult:
    res = InstanceResult(name=inst.name)
    lp = inst.lp
    try:
        vc = census(lp)
        cert = dual_certificate(lp, vc)
        beta_sq = beta_squared(lp)
        basis = start_basis(inst)
    except LPError as exc:
        res.error = f"{exc.code}: {exc}"
        return res
    res.census, res.certificate, res.beta_sq = vc, cert, beta_sq
    lemma_checks = [c for c in checks if c in ALL_CHECKS]

    traces = {}
    for rule in rules:
        try:
            tr = solve(lp, basis, rule, max_iterations)
        except LPError as exc:
            res.runs.append(RunResult(rule, None, None, None, error=f"{exc.code}: {exc}"))
            continue
        traces[rule] = tr
        agree = tr.final_solution.objective == vc.z_star if tr.status is Status.OPTIMAL else None
        ver = verify_trace(tr, vc, cert, beta_sq, lemma_checks) if lemma_checks else None
        res.runs.append(RunResult(rule, tr, ver, agree))

    if PivotRule.LARGEST_DISTANCE not in traces:
        try:
            traces[PivotRule.LARGEST_DISTANCE] = solve(lp, basis, PivotRule.LARGEST_DISTANCE, max_iterations)
        except LPError as exc:
            res.error = f"{exc.code}: {exc}"
            return res
    x0 = traces[PivotRule.LARGEST_DISTANCE].initial_solution.objective
    rep = bound_report(lp, vc, {r: traces[r] for r in traces}, x0)
    res.bounds = rep
    if "bounds" in checks:
        ok = bound_holds(traces[PivotRule.LARGEST_DISTANCE].t_tilde, rep.thm1, rep.thm2)
        if PivotRule.DANTZIG in traces:
            ok = ok and bound_holds(traces[PivotRule.DANTZIG].t_tilde, rep.km1, rep.km2)
        res.bounds_ok = ok
    rep.all_checks_passed = res.all_checks_passed
    return res


# -- output -------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _check_cell(run: RunResult, name: str) -> str:
    if run.verification is None or name not in run.verification.status:
        return ""
    st = run.verification.status[name]
    return "n/a" if st is None else _cell(st)


def csv_rows(results: Sequence[InstanceResult]) -> list[dict]:
    rows = []
    for res in results:
        vc, rep = res.census, res.bounds
        base = {
            "instance": res.name,
            "delta": vc.delta if vc else None,
            "gamma": vc.gamma if vc else None,
            "beta_sq": res.beta_sq,
            "z_star": vc.z_star if vc else None,
            "z_bar": vc.z_bar if vc else None,
        }
        if rep is not None:
            for k in BOUND_NAMES:
                base[k] = getattr(rep, k)
        if res.error:
            rows.append({**base, "rule": "", "status": res.error.split(":")[0]})
            continue
        for run in res.runs:
            row = {**base, "rule": run.rule.value}
            if run.trace is None:
                row["status"] = (run.error or "").split(":")[0]
            else:
                tr = run.trace
                row.update(status=tr.status.value, iterations=tr.iterations,
                           t_tilde=tr.t_tilde, distinct_bfs=tr.distinct_bfs)
            for name in ALL_CHECKS:
                row[f"{name}_pass"] = _check_cell(run, name) or None
            rows.append(row)
    return [{c: _cell(r.get(c)) for c in CSV_COLUMNS} for r in rows]


def render_csv(results: Sequence[InstanceResult]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(csv_rows(results))
    return buf.getvalue()


def bound_ratios(run: RunResult, rep: Optional[BoundReport]) -> Optional[dict]:
    """Exact ``t_tilde / bound`` per defined bound, for judging tightness."""
    if rep is None or run.trace is None or run.trace.status is not Status.OPTIMAL:
        return None
    out = {}
    for name in BOUND_NAMES:
        v = getattr(rep, name)
        if v:
            out[name] = str(Fraction(run.trace.t_tilde, v))
    return out


def result_to_dict(res: InstanceResult) -> dict:
    out: dict[str, Any] = {"name": res.name, "error": res.error, "all_checks_passed": res.all_checks_passed}
    if res.census is not None:
        out["census"] = serialize.census_to_dict(res.census)
        out["dual_certificate"] = serialize.certificate_to_dict(res.certificate)
        out["beta_sq"] = str(res.beta_sq)
    if res.bounds is not None:
        out["bounds"] = serialize.bound_report_to_dict(res.bounds)
        out["bounds_hold"] = res.bounds_ok
    out["runs"] = [
        {
            "rule": run.rule.value,
            "error": run.error,
            "oracle_agreement": run.oracle_agreement,
            "bound_ratios": bound_ratios(run, res.bounds),
            "trace": serialize.trace_to_dict(run.trace, with_steps=False) if run.trace else None,
            "checks": serialize.verification_to_dict(run.verification) if run.verification else None,
        }
        for run in res.runs
    ]
    return out


def render_json(config: ExperimentConfig, results: Sequence[InstanceResult]) -> str:
    doc = {
        "config": {
            "seed": config.seed,
            "rules": [r.value for r in config.rules],
            "checks": list(config.checks),
            "max_iterations": config.max_iterations,
            "generators": config.generators,
            "instance_paths": list(config.instance_paths),
        },
        "instances": [result_to_dict(r) for r in results],
        "summary": {
            "instances": len(results),
            "errors": sum(1 for r in results if r.error),
            "failed": sum(1 for r in results if not r.all_checks_passed),
            "all_checks_passed": all(r.all_checks_passed for r in results),
        },
    }
    return serialize.dumps(doc)


def _process(args):
    return process_instance(*args)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    instances = collect_instances(config)
    jobs = [(inst, config.rules, config.checks, config.max_iterations) for inst in instances]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_process, jobs))
    else:
        results = [_process(j) for j in jobs]
    for r in results:
        if not r.all_checks_passed:
            log.warning("instance %s failed: %s", r.name, r.error or "check failure")

    out = ExperimentResult(results, render_csv(results), render_json(config, results))
    if config.csv_path:
        Path(config.csv_path).write_text(out.csv_text, encoding="utf-8")
    if config.json_path:
        Path(config.json_path).write_text(out.json_text, encoding="utf-8")
    return out


def load_config(path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return ExperimentConfig.from_dict(data)
