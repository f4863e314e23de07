"""
Lifting a CPA function on R^d to R^(d+1) by taking its minimum with a sawtooth
in the new coordinate, which multiplies the number of maximal pieces by m.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from constructions.sawtooth import Sawtooth
from cpa.expression import CpaExpr, clamp, cpa_min, embed, leaf_components
from geometry.rational import Vec
from processors.piece_counter import (
    PieceCounter, bisector_vertices, box_extrema,
)
from utils.exceptions import ConstructionError

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class LiftResult:
    """A lifted expression with the piece certificate and component budget it carries"""

    expression: CpaExpr
    base: CpaExpr
    m: int
    base_pieces: int
    clamp_range: Tuple[Fraction, Fraction]
    sawtooth_range: Tuple[Fraction, Fraction]
    certified_pieces_lower_bound: int
    component_budget: int

    @property
    def d(self) -> int:
        return self.expression.dim

    def certificate(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "clamped_base_pieces": self.base_pieces,
            "certified_pieces_lower_bound": self.certified_pieces_lower_bound,
            "component_budget": self.component_budget,
        }


def reference_box(f: CpaExpr) -> Tuple[Vec, Vec]:
    """Bounding box of all bisector vertices of f's leaves, inflated by 1"""
    d = f.dim
    vertices = bisector_vertices(leaf_components(f))
    if not vertices:
        return (Fraction(-1),) * d, (Fraction(1),) * d
    low = tuple(min(v[k] for v in vertices) - 1 for k in range(d))
    high = tuple(max(v[k] for v in vertices) + 1 for k in range(d))
    return low, high


def clamp_to_box_range(f: CpaExpr) -> Tuple[CpaExpr, Fraction, Fraction]:
    """
    Clamp f to its exact value range on the reference box. A constant range is
    widened by 1/2 on each side so the clamp levels stay distinct.
    """
    low, high = reference_box(f)
    lo, hi = box_extrema(f, low, high)
    if lo == hi:
        lo, hi = lo - HALF, hi + HALF
    return clamp(f, lo, hi), lo, hi


@dataclass(frozen=True)
class ClampedBase:
    """f clamped to its exact range on the reference box, with the counts every lift of it reuses"""

    source: CpaExpr
    expression: CpaExpr
    lo: Fraction
    hi: Fraction
    pieces: int
    source_leaves: int


def clamp_for_lift(f: CpaExpr, counter: Optional[PieceCounter] = None) -> ClampedBase:
    """Clamp f and count the maximal pieces of the result once, independent of m"""
    counter = counter or PieceCounter()
    base, lo, hi = clamp_to_box_range(f)
    pieces = counter.count(base).maximal_piece_count
    return ClampedBase(f, base, lo, hi, pieces, len(leaf_components(f)))


def _lift_clamped(base: CpaExpr, lo: Fraction, hi: Fraction, m: int) -> CpaExpr:
    d = base.dim
    teeth = Sawtooth(m, lo - 1, hi + 1).expression()
    return cpa_min(embed(base, d + 1, 0), embed(teeth, d + 1, d))


def _check_m(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ConstructionError(f"lift needs m >= 1, got {m!r}")


def lift_clamped(clamped: ClampedBase, m: int) -> LiftResult:
    """
    h(x, t) = min(clamp(f), s(t)) where the sawtooth s runs one unit beyond the
    clamp range on both sides. Certifies m times the exact maximal pieces of
    the clamped f.
    """
    _check_m(m)
    lo, hi = clamped.lo, clamped.hi
    result = LiftResult(
        expression=_lift_clamped(clamped.expression, lo, hi, m),
        base=clamped.expression,
        m=m,
        base_pieces=clamped.pieces,
        clamp_range=(lo, hi),
        sawtooth_range=(lo - 1, hi + 1),
        certified_pieces_lower_bound=m * clamped.pieces,
        component_budget=clamped.source_leaves + 2 + 2 * m,
    )
    logger.info(f"lifted d={clamped.source.dim} -> {result.d} with m={m}: "
                f"certificate {result.certified_pieces_lower_bound}, budget {result.component_budget}")
    return result


def lift_with_certificate(f: CpaExpr, m: int, counter: Optional[PieceCounter] = None) -> LiftResult:
    _check_m(m)
    return lift_clamped(clamp_for_lift(f, counter), m)


def lift(f: CpaExpr, m: int) -> CpaExpr:
    return lift_with_certificate(f, m).expression


def iterate_lift(f_1d: CpaExpr, target_dim: int, m: int,
                 counter: Optional[PieceCounter] = None) -> LiftResult:
    """
    Apply the lift target_dim - 1 times with the same m. The certificate is the
    first clamped piece count times m^(target_dim - 1); the budget grows by
    2 + 2m per lift.
    """
    if f_1d.dim != 1:
        raise ConstructionError(f"iterate_lift starts from a 1-D function, got d={f_1d.dim}")
    if target_dim < 1:
        raise ConstructionError(f"target dimension must be >= 1, got {target_dim}")
    _check_m(m)
    counter = counter or PieceCounter()
    leaves = len(leaf_components(f_1d))

    if target_dim == 1:
        pieces = counter.count(f_1d).maximal_piece_count
        return LiftResult(f_1d, f_1d, m, pieces, (Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)),
                          pieces, leaves)

    first = lift_with_certificate(f_1d, m, counter)
    current = first
    for _ in range(target_dim - 2):
        base, lo, hi = clamp_to_box_range(current.expression)
        current = LiftResult(
            expression=_lift_clamped(base, lo, hi, m),
            base=base,
            m=m,
            base_pieces=first.base_pieces,
            clamp_range=(lo, hi),
            sawtooth_range=(lo - 1, hi + 1),
            certified_pieces_lower_bound=current.certified_pieces_lower_bound * m,
            component_budget=current.component_budget + 2 + 2 * m,
        )
        logger.info(f"lifted to d={current.d}: certificate {current.certified_pieces_lower_bound}")
    return current


__all__ = [
    'LiftResult',
    'reference_box',
    'clamp_to_box_range',
    'ClampedBase',
    'clamp_for_lift',
    'lift_clamped',
    'lift',
    'lift_with_certificate',
    'iterate_lift',
]
