"""Command line interface.

Exit codes: 0 when every check passes, 1 when a check fails (or the
instance itself is unsolvable for the command), 2 on bad input or config.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import serialize
from .bounds import beta_squared, bound_report
from .census import census, dual_certificate
from .engine import solve
from .errors import ConfigError, DimensionMismatch, InfeasibleStart, LPError, ParseError, RankDeficient, SingularBasis
from .experiment import CHECK_NAMES, ExperimentConfig, load_config, run_experiment, start_basis
from .instances import Instance, dumps_instance, gen_klee_minty, gen_random_lp, load_instance, save_instance
from .lp import Basis
from .rules import PivotRule
from .verify import verify_trace

INPUT_ERRORS = (ParseError, ConfigError, DimensionMismatch, RankDeficient, SingularBasis, InfeasibleStart)


def _rule(name: str) -> PivotRule:
    try:
        return PivotRule.parse(name)
    except ValueError:
        choices = ", ".join(r.value for r in PivotRule)
        raise argparse.ArgumentTypeError(f"unknown rule {name!r} (choose from {choices})") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(args) -> tuple[Instance, Basis]:
    inst = load_instance(args.instance)
    if getattr(args, "basis", None):
        basis = Basis.from_one_based(args.basis, inst.lp.n)
    else:
        basis = start_basis(inst)
    return inst, basis


def cmd_solve(args) -> int:
    inst, basis = _load(args)
    tr = solve(inst.lp, basis, args.rule, args.max_iter)
    _emit(serialize.dumps(serialize.trace_to_dict(tr)), args.out)
    return 0


def cmd_census(args) -> int:
    inst = load_instance(args.instance)
    vc = census(inst.lp, strict=not args.allow_single_value)
    doc = serialize.census_to_dict(vc)
    doc["dual_certificate"] = serialize.certificate_to_dict(dual_certificate(inst.lp, vc))
    doc["beta_sq"] = str(beta_squared(inst.lp))
    _emit(serialize.dumps(doc), args.out)
    return 0


def cmd_bounds(args) -> int:
    inst, basis = _load(args)
    vc = census(inst.lp)
    rules = set(args.rule or []) | {PivotRule.LARGEST_DISTANCE}
    traces = {r: solve(inst.lp, basis, r, args.max_iter) for r in sorted(rules, key=lambda r: r.value)}
    x0 = traces[PivotRule.LARGEST_DISTANCE].initial_solution.objective
    rep = bound_report(inst.lp, vc, traces, x0)
    _emit(serialize.dumps(serialize.bound_report_to_dict(rep)), args.out)
    return 0 if rep.all_checks_passed else 1


def cmd_verify(args) -> int:
    inst, basis = _load(args)
    vc = census(inst.lp)
    cert = dual_certificate(inst.lp, vc)
    beta_sq = beta_squared(inst.lp)
    rules = args.rule or list(PivotRule)
    doc, ok = {}, True
    for rule in rules:
        tr = solve(inst.lp, basis, rule, args.max_iter)
        rep = verify_trace(tr, vc, cert, beta_sq)
        ok = ok and rep.passed
        doc[rule.value] = {
            "status": tr.status.value,
            "passed": rep.passed,
            "checks": serialize.verification_to_dict(rep, full=args.full),
        }
    _emit(serialize.dumps(doc), args.out)
    return 0 if ok else 1


def cmd_generate(args) -> int:
    if args.family == "klee-minty":
        insts = [gen_klee_minty(m, Fraction(args.scale)) for m in args.m]
    else:
        if args.n is None:
            raise ConfigError("--n is required for random instances")
        insts = []
        for k in range(args.count):
            seed = args.seed + k
            insts.append(
                gen_random_lp(
                    args.m[0], args.n, seed, tuple(args.entry_range),
                    require_nondegenerate=args.nondegenerate,
                    require_degenerate=args.degenerate,
                    equal_norms=args.equal_norms,
                )
            )
    if len(insts) == 1 and not (args.out and Path(args.out).is_dir()):
        _emit(dumps_instance(insts[0]), args.out)
        return 0
    if not args.out:
        raise ConfigError("--out DIR is required when generating several instances")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for inst in insts:
        save_instance(inst, outdir / f"{inst.name}.json")
    return 0


def cmd_experiment(args) -> int:
    if args.config:
        config = load_config(args.config)
    else:
        config = ExperimentConfig()
    config.instance_paths = list(config.instance_paths) + list(args.instances)
    if args.rule:
        config.rules = tuple(args.rule)
    if args.seed is not None:
        config.seed = args.seed
    if args.max_iter is not None:
        config.max_iterations = args.max_iter
    if args.checks:
        config.checks = tuple(args.checks)
    if args.jobs:
        config.jobs = args.jobs
    if args.random:
        config.generators = list(config.generators) + [{
            "family": "random",
            "count": args.random,
            "m": args.m,
            "n": args.n,
            "n_max": args.n_max,
            "entry_range": list(args.entry_range),
            "require_nondegenerate": args.nondegenerate,
            "require_degenerate": args.degenerate,
        }]
    if args.klee_minty:
        config.generators = list(config.generators) + [{"family": "klee_minty", "m": args.klee_minty}]
    if args.out:
        config.csv_path = args.out
    if args.report:
        config.json_path = args.report
    config.__post_init__()

    result = run_experiment(config)
    if not config.csv_path:
        sys.stdout.write(result.csv_text)
    n_fail = sum(1 for r in result.results if not r.all_checks_passed)
    print(f"{len(result.results)} instances, {n_fail} failing", file=sys.stderr)
    return 0 if result.all_checks_passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ldsimplex", description="Exact simplex solver and bound verification harness.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_, fn):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("instance", help="instance JSON file")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = instance_cmd("solve", "run the simplex method and print the trace", cmd_solve)
    sp.add_argument("--rule", type=_rule, default=PivotRule.LARGEST_DISTANCE)
    sp.add_argument("--max-iter", type=int, default=None)
    sp.add_argument("--basis", type=_int_list, help="1-based starting basis, e.g. 3,4")

    sp = instance_cmd("census", "enumerate all feasible bases and print the instance parameters", cmd_census)
    sp.add_argument("--allow-single-value", action="store_true", help="do not fail when all BFSs tie")

    sp = instance_cmd("bounds", "evaluate every bound and compare with observed counts", cmd_bounds)
    sp.add_argument("--rule", type=_rule, action="append", help="extra rules to observe (repeatable)")
    sp.add_argument("--max-iter", type=int, default=None)
    sp.add_argument("--basis", type=_int_list)

    sp = instance_cmd("verify", "run the per-iteration lemma checks", cmd_verify)
    sp.add_argument("--rule", type=_rule, action="append", help="rules to verify (default: all)")
    sp.add_argument("--max-iter", type=int, default=None)
    sp.add_argument("--basis", type=_int_list)
    sp.add_argument("--full", action="store_true", help="list passing outcomes too")

    sp = sub.add_parser("generate", help="write generated instance file(s)")
    sp.add_argument("family", choices=["random", "klee-minty"])
    sp.add_argument("--m", type=_int_list, default=[2], help="row count (comma list for klee-minty)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1, help="random: instances with seeds seed..seed+count-1")
    sp.add_argument("--entry-range", type=_int_list, default=[-3, 3])
    sp.add_argument("--nondegenerate", action="store_true")
    sp.add_argument("--degenerate", action="store_true")
    sp.add_argument("--equal-norms", action="store_true")
    sp.add_argument("--scale", default="1", help="klee-minty: right-hand side multiplier")
    sp.add_argument("--out", help="file, or directory for several instances")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("experiment", help="batch run: CSV rows plus a JSON verification report")
    sp.add_argument("instances", nargs="*", help="instance files")
    sp.add_argument("--config", help="JSON experiment config")
    sp.add_argument("--rule", type=_rule, action="append")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--max-iter", type=int)
    sp.add_argument("--checks", nargs="+", choices=CHECK_NAMES)
    sp.add_argument("--random", type=int, metavar="COUNT", help="add COUNT random instances")
    sp.add_argument("--m", type=_int_list, default=[2, 3, 4])
    sp.add_argument("--n", type=int)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--entry-range", type=_int_list, default=[-3, 3])
    sp.add_argument("--nondegenerate", action="store_true")
    sp.add_argument("--degenerate", action="store_true")
    sp.add_argument("--klee-minty", type=_int_list, metavar="M,M,...")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--out", help="CSV output path (default: stdout)")
    sp.add_argument("--report", help="JSON verification report path")
    sp.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except LPError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
