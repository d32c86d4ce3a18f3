"""Entering-variable selection.

Every selector looks only at nonbasic columns with a negative reduced cost
and returns ``None`` when there are none (the dictionary is optimal). Ties go
to the smallest column index.

The steepest edge and largest distance scores divide by a square root. To
stay exact, both compare ``cbar_j**2 / w_j`` instead: over negative
``cbar_j`` the most negative ``cbar_j / sqrt(w_j)`` is the largest square.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import OptimalDictionary, ZeroColumn
from .lp import SimplexDictionary


class PivotRule(str, enum.Enum):
    DANTZIG = "dantzig"
    BLAND = "bland"
    STEEPEST_EDGE = "steepest_edge"
    LARGEST_DISTANCE = "largest_distance"

    @classmethod
    def parse(cls, name: str) -> "PivotRule":
        key = name.strip().lower().replace("-", "_")
        aliases = {"ld": cls.LARGEST_DISTANCE, "se": cls.STEEPEST_EDGE, "steepest": cls.STEEPEST_EDGE}
        if key in aliases:
            return aliases[key]
        return cls(key)


def _candidates(d: SimplexDictionary):
    return [(j, cb) for j, cb in zip(d.basis.nonbasic, d.reduced_costs) if cb < 0]


def _argmax_score(cands, score: Callable[[int, Fraction], Fraction]) -> Optional[int]:
    best_j, best = None, None
    for j, cb in sorted(cands):
        s = score(j, cb)
        if best is None or s > best:
            best_j, best = j, s
    return best_j


def dantzig_select(d: SimplexDictionary) -> Optional[int]:
    return _argmax_score(_candidates(d), lambda j, cb: -cb)


def bland_select(d: SimplexDictionary) -> Optional[int]:
    cands = _candidates(d)
    return min(j for j, _ in cands) if cands else None


def steepest_edge_select(d: SimplexDictionary) -> Optional[int]:
    def score(j, cb):
        col = d.column(j)
        return cb * cb / (1 + sum(a * a for a in col))

    return _argmax_score(_candidates(d), score)


def largest_distance_select(d: SimplexDictionary, norms_sq: Sequence[Fraction]) -> Optional[int]:
    """Argmin of ``cbar_j / ||a_j||`` over improving columns of the original ``A``."""
    cands = _candidates(d)
    for j, _ in cands:
        if norms_sq[j] == 0:
            raise ZeroColumn(f"column {j + 1} of A is zero", column=j)
    return _argmax_score(cands, lambda j, cb: cb * cb / norms_sq[j])


def select(rule: PivotRule, d: SimplexDictionary, norms_sq: Sequence[Fraction]) -> Optional[int]:
    if rule is PivotRule.DANTZIG:
        return dantzig_select(d)
    if rule is PivotRule.BLAND:
        return bland_select(d)
    if rule is PivotRule.STEEPEST_EDGE:
        return steepest_edge_select(d)
    if rule is PivotRule.LARGEST_DISTANCE:
        return largest_distance_select(d, norms_sq)
    raise ValueError(f"unknown rule {rule!r}")


@dataclass(frozen=True)
class DeltaPair:
    """Magnitudes of the Dantzig and largest-distance reduced costs.

    ``delta_d = -min cbar_j`` and ``delta_l = -cbar_{j_l}``; both are
    nonnegative and ``delta_d >= delta_l``.
    """

    delta_d: Fraction
    delta_l: Fraction


def compute_deltas(d: SimplexDictionary, norms_sq: Sequence[Fraction]) -> DeltaPair:
    j_d = dantzig_select(d)
    if j_d is None:
        raise OptimalDictionary("reduced costs are nonnegative")
    j_l = largest_distance_select(d, norms_sq)
    return DeltaPair(delta_d=-d.reduced_cost(j_d), delta_l=-d.reduced_cost(j_l))
