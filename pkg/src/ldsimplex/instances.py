"""Instance files and instance generators.

An instance file is JSON with rationals written as strings::

    {
      "A": [["1", "0", "1", "0"], ["0", "1", "0", "1"]],
      "b": ["1", "1"],
      "c": ["-1", "-2", "0", "0"],
      "initial_basis": [3, 4],
      "metadata": {"family": "fixture"},
      "name": "lp-ex1"
    }

``initial_basis`` holds 1-based column indices. Saving always writes
canonical ``p/q`` strings with sorted keys, so save(load(f)) is stable.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from .census import census
from .errors import GenerationExhausted, LPError, ParseError
from .lp import Basis, StandardFormLP, basis_solve, build_dictionary, column_norms_squared, make_lp

MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class Instance:
    name: str
    lp: StandardFormLP
    initial_basis: Optional[Basis] = None
    metadata: dict = field(default_factory=dict, compare=False)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: {value!r} is not an exact rational (use a string like \"1/3\")", field=where)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational string, got {type(value).__name__}", field=where)
    try:
        return Fraction(value.strip())
    except ZeroDivisionError:
        raise ParseError(f"{where}: zero denominator in {value!r}", field=where) from None
    except ValueError:
        raise ParseError(f"{where}: cannot parse {value!r} as a rational", field=where) from None


def _parse_vector(raw: Any, where: str) -> list[Fraction]:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: expected a list", field=where)
    return [_parse_rational(v, f"{where}[{i}]") for i, v in enumerate(raw)]


def instance_from_dict(data: dict, default_name: str = "instance") -> Instance:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for key in ("A", "b", "c"):
        if key not in data:
            raise ParseError(f"missing field {key!r}", field=key)
    if not isinstance(data["A"], list):
        raise ParseError("A: expected a list of rows", field="A")
    A = [_parse_vector(row, f"A[{i}]") for i, row in enumerate(data["A"])]
    b = _parse_vector(data["b"], "b")
    c = _parse_vector(data["c"], "c")
    lp = make_lp(A, b, c)
    basis = None
    if data.get("initial_basis") is not None:
        raw = data["initial_basis"]
        if not isinstance(raw, list) or not all(isinstance(j, int) and not isinstance(j, bool) for j in raw):
            raise ParseError("initial_basis: expected a list of 1-based column indices", field="initial_basis")
        basis = Basis.from_one_based(raw, lp.n)
    return Instance(
        name=str(data.get("name", default_name)),
        lp=lp,
        initial_basis=basis,
        metadata=dict(data.get("metadata") or {}),
    )


def instance_to_dict(inst: Instance) -> dict:
    out: dict[str, Any] = {
        "name": inst.name,
        "A": [[format_rational(v) for v in row] for row in inst.lp.A],
        "b": [format_rational(v) for v in inst.lp.b],
        "c": [format_rational(v) for v in inst.lp.c],
    }
    if inst.initial_basis is not None:
        out["initial_basis"] = inst.initial_basis.one_based()
    if inst.metadata:
        out["metadata"] = inst.metadata
    return out


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), sort_keys=True, indent=2) + "\n"


def loads_instance(text: str, default_name: str = "instance") -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", line=exc.lineno) from None
    return instance_from_dict(data, default_name)


def load_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return loads_instance(text, default_name=path.stem)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}", **exc.details) from None


def save_instance(inst: Instance, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_instance(inst), encoding="utf-8")


# -- generators ---------------------------------------------------------------


def gen_klee_minty(m: int, scale: Fraction = Fraction(1)) -> Instance:
    """Classical Klee-Minty cube in standard minimisation form.

    max sum_j 10^(m-j) x_j  s.t.  2 sum_{j<i} 10^(i-j) x_j + x_i <= 100^(i-1)
    becomes ``min -sum_j 10^(m-j) x_j`` with one slack per row. ``scale``
    multiplies the right-hand side. The slack basis is the initial basis.
    """
    if not 1 <= m <= 12:
        raise ValueError("m must be in 1..12")
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    n = 2 * m
    A = []
    for i in range(1, m + 1):
        row = [Fraction(0)] * n
        for j in range(1, i):
            row[j - 1] = Fraction(2 * 10 ** (i - j))
        row[i - 1] = Fraction(1)
        row[m + i - 1] = Fraction(1)
        A.append(row)
    b = [scale * 100 ** (i - 1) for i in range(1, m + 1)]
    c = [Fraction(-(10 ** (m - j))) for j in range(1, m + 1)] + [Fraction(0)] * m
    return Instance(
        name=f"klee-minty-m{m}",
        lp=make_lp(A, b, c),
        initial_basis=Basis.of(range(m, n), n),
        metadata={"family": "klee_minty", "m": m, "scale": format_rational(scale)},
    )


def _acceptable(lp: StandardFormLP, basis: Basis, require_nondegenerate: bool, require_degenerate: bool) -> bool:
    try:
        vc = census(lp)
    except LPError:
        return False
    if require_nondegenerate and vc.is_degenerate:
        return False
    if require_degenerate and not vc.is_degenerate:
        return False
    # the start must not already be optimal
    return basis_solve(lp, basis).objective > vc.z_star


def gen_random_lp(
    m: int,
    n: int,
    seed: int,
    entry_range: tuple[int, int] = (-3, 3),
    require_nondegenerate: bool = False,
    *,
    require_degenerate: bool = False,
    equal_norms: bool = False,
    name: Optional[str] = None,
) -> Instance:
    """Seeded random instance with a known feasible starting basis.

    ``A`` has integer entries in ``entry_range`` (or random signs of the
    largest magnitude when ``equal_norms``), ``b = A_B v`` for a random
    basis ``B`` and a positive integer vector ``v`` (with some zeros when
    ``require_degenerate``), and ``c`` is random. Candidates are rejected
    until the census succeeds (feasible, bounded, two objective values), the
    degeneracy requirement holds, and the start is not optimal.
    """
    if not 1 <= m < n <= 12:
        raise ValueError("need 1 <= m < n <= 12")
    lo, hi = entry_range
    if lo > hi:
        raise ValueError("entry_range must be (low, high) with low <= high")
    rng = random.Random(seed)
    mag = max(abs(lo), abs(hi))
    if equal_norms and mag == 0:
        raise ValueError("equal_norms needs a nonzero entry range")

    for _ in range(MAX_REJECTIONS):
        if equal_norms:
            A = [[rng.choice((-mag, mag)) for _ in range(n)] for _ in range(m)]
        else:
            A = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
        basic = sorted(rng.sample(range(n), m))
        v = [rng.randint(1, 3) for _ in range(m)]
        if require_degenerate:
            v[rng.randrange(m)] = 0
        c = [rng.randint(-5, 5) for _ in range(n)]
        b = [sum(A[i][basic[k]] * v[k] for k in range(m)) for i in range(m)]
        try:
            lp = make_lp(A, b, c)
        except LPError:
            continue
        if min(column_norms_squared(lp)) == 0:
            continue
        basis = Basis.of(basic, n)
        try:
            build_dictionary(lp, basis)
        except LPError:
            continue
        if not _acceptable(lp, basis, require_nondegenerate, require_degenerate):
            continue
        return Instance(
            name=name or f"random-m{m}-n{n}-s{seed}",
            lp=lp,
            initial_basis=basis,
            metadata={
                "family": "random",
                "seed": seed,
                "generator": "gen_random_lp",
                "entry_range": [lo, hi],
                "nondegenerate": bool(require_nondegenerate),
                "degenerate": bool(require_degenerate),
                "equal_norms": bool(equal_norms),
            },
        )
    raise GenerationExhausted(f"no acceptable instance after {MAX_REJECTIONS} draws (seed={seed})")
