"""
Bound formulas for piece counts and their check against measured decompositions
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from processors.piece_counter import PieceDecomposition
from utils.exceptions import ConstructionError, InvariantViolation

logger = logging.getLogger(__name__)

CSV_FIELDS = ('n', 'd', 'pieces', 'cells', 'lemma1', 'thm2', 'ok')


def _check_sizes(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise ConstructionError(f"bounds need n >= 1 and d >= 1, got n={n}, d={d}")


def lemma1_bound(n: int, d: int) -> int:
    """min(sum_{i<=d} C((n^2-n)/2, i), n!): upper bound on a convex cover"""
    _check_sizes(n, d)
    pairs = n * (n - 1) // 2
    arrangement_cells = sum(math.comb(pairs, i) for i in range(d + 1))
    return min(arrangement_cells, math.factorial(n))


def thm2_facet_bound(n: int, d: int) -> int:
    """n * sum_{k<=min(d, n-1)} C(n-1, k): facets of the graph arrangement"""
    _check_sizes(n, d)
    return n * sum(math.comb(n - 1, k) for k in range(min(d, n - 1) + 1))


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    measured_pieces: int
    cells: int
    lemma1_bound: int
    thm2_facet_bound: int

    @property
    def lower_ok(self) -> bool:
        return self.n <= self.measured_pieces

    @property
    def thm2_ok(self) -> bool:
        return self.measured_pieces <= self.cells <= self.thm2_facet_bound

    @property
    def satisfied(self) -> bool:
        return self.lower_ok and self.thm2_ok

    def csv_row(self) -> List[str]:
        values = (self.n, self.d, self.measured_pieces, self.cells,
                  self.lemma1_bound, self.thm2_facet_bound, str(self.satisfied).lower())
        return [str(v) for v in values]

    def to_dict(self) -> dict:
        return dict(zip(CSV_FIELDS, (
            self.n, self.d, self.measured_pieces, self.cells,
            self.lemma1_bound, self.thm2_facet_bound, self.satisfied,
        )))


def check_bounds(dec: PieceDecomposition, strict: bool = True) -> BoundReport:
    """
    Compare a decomposition against both bound formulas at n = n_active.

    With strict=True an unsatisfied chain n <= pieces <= cells <= facet bound
    raises InvariantViolation instead of returning a failing report.
    """
    report = BoundReport(
        n=dec.n_active,
        d=dec.d,
        measured_pieces=dec.maximal_piece_count,
        cells=dec.cell_count,
        lemma1_bound=lemma1_bound(dec.n_active, dec.d),
        thm2_facet_bound=thm2_facet_bound(dec.n_active, dec.d),
    )
    if not report.satisfied:
        logger.error(f"bound chain violated: {report.to_dict()}")
        if strict:
            raise InvariantViolation("bound chain violated", **report.to_dict())
    return report


@dataclass(frozen=True)
class ExponentFit:
    """Log-log slope of p against n; floating point, diagnostic only"""

    slope: float
    intercept: float
    pairwise: Tuple[float, ...]
    n_range: Tuple[int, int]

    @property
    def approx(self) -> Fraction:
        return Fraction(self.slope).limit_denominator(1000)

    def to_dict(self) -> dict:
        return {
            "slope": round(self.slope, 6),
            "approx": str(self.approx),
            "pairwise": [round(s, 6) for s in self.pairwise],
            "n_range": list(self.n_range),
        }


def fit_exponent(samples: Sequence[Tuple[int, int]]) -> ExponentFit:
    if len(samples) < 3:
        raise ConstructionError(f"need at least 3 samples to fit an exponent, got {len(samples)}")
    ns = [n for n, _ in samples]
    if any(a >= b for a, b in zip(ns, ns[1:])):
        raise ConstructionError("sample sizes must be strictly increasing")
    if any(n < 1 or p < 1 for n, p in samples):
        raise ConstructionError("samples must be positive")

    log_n = np.log(np.array(ns, dtype=float))
    log_p = np.log(np.array([p for _, p in samples], dtype=float))
    slope, intercept = np.polyfit(log_n, log_p, 1)
    pairwise = tuple(float(s) for s in np.diff(log_p) / np.diff(log_n))
    return ExponentFit(float(slope), float(intercept), pairwise, (ns[0], ns[-1]))


__all__ = [
    'CSV_FIELDS',
    'BoundReport',
    'ExponentFit',
    'lemma1_bound',
    'thm2_facet_bound',
    'check_bounds',
    'fit_exponent',
]
