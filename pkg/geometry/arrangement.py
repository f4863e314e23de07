"""
Cells of a hyperplane arrangement, their adjacency and the strict LP
feasibility kernel behind both.

Cells are built by incremental insertion. Every working cell keeps a few exact
interior points; a new hyperplane splits a cell without any LP when those
points already fall on both sides, otherwise one LP started from the witness
decides whether the far side is reachable. In the plane the cells are exact
polygons clipped from a bounding square instead, which needs no LP at all.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from geometry.linalg import intersection_points
from geometry.rational import (
    AffineMap, Vec, dot, format_rational, interpolate, make_vec, vec_add, vec_scale,
)
from geometry.simplex import OPTIMAL, TARGET_REACHED, UNBOUNDED, solve_lp
from utils.exceptions import (
    ConstructionError, DimensionMismatchError, InvariantViolation, UnsupportedDimensionError,
)

logger = logging.getLogger(__name__)

EQUAL = 0
DEFAULT_WITNESS_POINTS = 8


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : normal . x = offset}"""

    normal: Vec
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'normal', make_vec(self.normal))
        object.__setattr__(self, 'offset', Fraction(self.offset))
        if not any(self.normal):
            raise ConstructionError("hyperplane normal must be nonzero")

    @classmethod
    def zero_set(cls, f: AffineMap) -> Optional['Hyperplane']:
        """{x : f(x) = 0}, or None when f is constant"""
        if f.is_constant:
            return None
        return cls(f.gradient, -f.offset)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        """normal . x - offset"""
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence[Fraction]) -> int:
        """+1, -1 or 0 (on the plane)"""
        v = self.value(x)
        return (v > 0) - (v < 0)

    def normalized(self) -> 'Hyperplane':
        """Scale so the first nonzero normal coordinate is 1"""
        lead = next(c for c in self.normal if c)
        return Hyperplane(vec_scale(self.normal, 1 / lead), self.offset / lead)


@dataclass(frozen=True)
class Cell:
    """Open cell: signs[k] in {+1, -1} per hyperplane and a strict interior witness"""

    signs: Tuple[int, ...]
    witness: Vec

    @property
    def sign_string(self) -> str:
        return "".join('+' if s > 0 else '-' for s in self.signs)

    def to_dict(self) -> dict:
        return {
            "signs": self.sign_string,
            "witness": [format_rational(c) for c in self.witness],
        }


@dataclass(frozen=True)
class Adjacency:
    a: int
    b: int
    plane: int
    facet_point: Vec


@dataclass(frozen=True)
class CellAdjacency:
    """Pairs of cells (a < b) sharing a facet carried by `plane`"""

    pairs: Tuple[Adjacency, ...]

    def neighbors(self, index: int) -> List[int]:
        """Sorted indices of the cells sharing a facet with cell index"""
        found = [p.b for p in self.pairs if p.a == index]
        found += [p.a for p in self.pairs if p.b == index]
        return sorted(found)

    def are_adjacent(self, a: int, b: int) -> bool:
        low, high = min(a, b), max(a, b)
        return any(p.a == low and p.b == high for p in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class Arrangement:
    planes: Tuple[Hyperplane, ...]
    cells: Tuple[Cell, ...]
    d: int

    @classmethod
    def build(cls, planes: Sequence[Hyperplane], d: int, witness_points: int = DEFAULT_WITNESS_POINTS,
              use_lp: bool = False) -> 'Arrangement':
        """Cells of the deduplicated planes; use_lp forces the LP insertion even in the plane"""
        normalized = normalize_planes(planes, d)
        cells = _enumerate_normalized(normalized, d, witness_points, use_lp)
        return cls(tuple(normalized), tuple(cells), d)

    def locate(self, x: Sequence[Fraction]) -> Optional[int]:
        """Index of the cell containing x, or None when x lies on a hyperplane"""
        signs = tuple(h.side(x) for h in self.planes)
        if EQUAL in signs:
            return None
        for index, cell in enumerate(self.cells):
            if cell.signs == signs:
                return index
        raise InvariantViolation("point off all hyperplanes matched no cell", point=x)


def normalize_planes(planes: Sequence[Hyperplane], d: int) -> List[Hyperplane]:
    """Deduplicate up to nonzero scaling, keeping first occurrences in order"""
    seen = set()
    result = []
    for plane in planes:
        if plane.dim != d:
            raise DimensionMismatchError(d, plane.dim, "hyperplane")
        canonical = plane.normalized()
        key = (canonical.normal, canonical.offset)
        if key not in seen:
            seen.add(key)
            result.append(canonical)
    return result


def strict_feasible(
    constraints: Sequence[Tuple[Hyperplane, int]], d: Optional[int] = None
) -> Optional[Vec]:
    """
    Exact point x with sign(normal . x - offset) = s for every (plane, s),
    where s = 0 requests equality. Returns None when no such point exists.

    Maximizes a slack t (capped at 1) over s * (normal . x - offset) >= t and
    accepts only a strictly positive optimum.
    """
    if d is None:
        if not constraints:
            raise UnsupportedDimensionError("dimension required for an empty system")
        d = constraints[0][0].dim
    if d < 1:
        raise UnsupportedDimensionError(f"dimension {d} is not supported")

    # variables: x+ (d), x- (d), t+, t-
    rows_le, rhs_le, rows_eq, rhs_eq = [], [], [], []
    for plane, sign in constraints:
        if plane.dim != d:
            raise DimensionMismatchError(d, plane.dim, "constraint")
        n = list(plane.normal)
        if sign == EQUAL:
            rows_eq.append(n + [-v for v in n] + [0, 0])
            rhs_eq.append(plane.offset)
        else:
            s = 1 if sign > 0 else -1
            rows_le.append([-s * v for v in n] + [s * v for v in n] + [1, -1])
            rhs_le.append(-s * plane.offset)
    rows_le.append([0] * (2 * d) + [1, -1])
    rhs_le.append(1)

    objective = [0] * (2 * d) + [1, -1]
    result = solve_lp(objective, rows_le, rhs_le, rows_eq, rhs_eq)
    if result.status != OPTIMAL or result.objective <= 0:
        return None

    values = result.values
    point = tuple(values[k] - values[d + k] for k in range(d))
    for plane, sign in constraints:
        if plane.side(point) != (0 if sign == EQUAL else (1 if sign > 0 else -1)):
            raise InvariantViolation("LP witness violates its own constraints", plane=plane)
    return point


def enumerate_cells(planes: Sequence[Hyperplane], d: int, witness_points: int = DEFAULT_WITNESS_POINTS) -> List[Cell]:
    """
    Nonempty open d-cells of the arrangement. Sign vectors index the
    deduplicated list returned by normalize_planes(planes, d).
    """
    return list(Arrangement.build(planes, d, witness_points).cells)


@dataclass
class _WorkingCell:
    signs: List[int]
    points: List[Vec] = field(default_factory=list)


def _enumerate_normalized(planes: Sequence[Hyperplane], d: int, witness_points: int, use_lp: bool = False) -> List[Cell]:
    if d < 1:
        raise UnsupportedDimensionError(f"dimension {d} is not supported")
    if d == 2 and planes and not use_lp:
        return _enumerate_planar(planes)

    cells = [_WorkingCell([], [(Fraction(0),) * d])]
    lp_calls = 0
    for index, plane in enumerate(planes):
        inserted_so_far = planes[:index]
        next_cells: List[_WorkingCell] = []
        for cell in cells:
            positive = [p for p in cell.points if plane.value(p) > 0]
            negative = [p for p in cell.points if plane.value(p) < 0]
            witness = cell.points[0]

            if not positive:
                lp_calls += 1
                found = _reach_side(inserted_so_far, cell.signs, plane, 1, witness)
                if found is not None:
                    positive = [found]
            if not negative:
                lp_calls += 1
                found = _reach_side(inserted_so_far, cell.signs, plane, -1, witness)
                if found is not None:
                    negative = [found]

            for sign, points in ((1, positive), (-1, negative)):
                if points:
                    next_cells.append(_WorkingCell(cell.signs + [sign], points[:witness_points]))
        cells = next_cells
        logger.debug(f"inserted plane {index + 1}/{len(planes)}: {len(cells)} cells")

    logger.debug(f"arrangement of {len(planes)} planes in R^{d}: {len(cells)} cells, {lp_calls} LPs")
    return [Cell(tuple(cell.signs), cell.points[0]) for cell in cells]


def _bounding_square(planes: Sequence[Hyperplane]) -> List[Vec]:
    """
    Counter-clockwise corners of an axis box holding every vertex of the line
    arrangement and one point of every line strictly inside. Each cell of the
    arrangement meets such a box in a region with nonempty interior.
    """
    points = [vec_scale(h.normal, h.offset / dot(h.normal, h.normal)) for h in planes]
    points += [point for _, point in intersection_points(
        [h.normal for h in planes], [h.offset for h in planes], 2)]
    low = [min(p[k] for p in points) - 1 for k in range(2)]
    high = [max(p[k] for p in points) + 1 for k in range(2)]
    return [(low[0], low[1]), (high[0], low[1]), (high[0], high[1]), (low[0], high[1])]


def _clip(polygon: Sequence[Vec], plane: Hyperplane, side: int) -> Optional[List[Vec]]:
    """Part of a convex polygon with side * plane.value >= 0, None when it has no interior"""
    values = [side * plane.value(p) for p in polygon]
    if not any(v > 0 for v in values):
        return None
    clipped = []
    for k, (p, v) in enumerate(zip(polygon, values)):
        q, w = polygon[(k + 1) % len(polygon)], values[(k + 1) % len(polygon)]
        if v >= 0:
            clipped.append(p)
        if (v > 0 > w) or (v < 0 < w):
            clipped.append(interpolate(p, q, v / (v - w)))
    return clipped


def _enumerate_planar(planes: Sequence[Hyperplane]) -> List[Cell]:
    """
    Line arrangements split exact convex polygons inside a bounding square, so
    no LP is needed. Cells come out in the same order as the general
    insertion, and each witness is the vertex average of its polygon.
    """
    cells: List[Tuple[List[int], List[Vec]]] = [([], _bounding_square(planes))]
    for plane in planes:
        next_cells = []
        for signs, polygon in cells:
            for side in (1, -1):
                part = _clip(polygon, plane, side)
                if part is not None:
                    next_cells.append((signs + [side], part))
        cells = next_cells

    logger.debug(f"planar arrangement of {len(planes)} lines: {len(cells)} cells")
    return [Cell(tuple(signs), _vertex_average(polygon)) for signs, polygon in cells]


def _vertex_average(polygon: Sequence[Vec]) -> Vec:
    count = len(polygon)
    return tuple(sum((p[k] for p in polygon), Fraction(0)) / count for k in range(2))


def _reach_side(
    planes: Sequence[Hyperplane], signs: Sequence[int], plane: Hyperplane, side: int, witness: Vec
) -> Optional[Vec]:
    """Interior point of the cell with side * plane.value > 0, if the cell reaches that side"""
    d = len(witness)
    g = lambda x: side * plane.value(x)  # noqa: E731

    # shift to z = x - witness so the slack basis is feasible
    rows, rhs = [], []
    for other, s in zip(planes, signs):
        n = other.normal
        rows.append([-s * v for v in n] + [s * v for v in n])
        rhs.append(s * other.value(witness))
    direction = [side * v for v in plane.normal]
    objective = direction + [-v for v in direction]

    result = solve_lp(objective, rows, rhs, target=-g(witness))
    if result.status == OPTIMAL:
        return None

    values = result.values
    shift = tuple(values[k] - values[d + k] for k in range(d))
    reached = vec_add(witness, shift)
    if result.status == UNBOUNDED:
        ray = tuple(result.ray[k] - result.ray[d + k] for k in range(d))
        rate = side * dot(plane.normal, ray)
        reached = vec_add(reached, vec_scale(ray, (1 - g(reached)) / rate))
    elif result.status != TARGET_REACHED:
        raise InvariantViolation("unexpected LP status", status=result.status)

    return _pull_inside(witness, reached, g)


def _pull_inside(witness: Vec, reached: Vec, g) -> Vec:
    """Point strictly between witness (interior) and reached (closure) with g > 0"""
    g_w, g_r = g(witness), g(reached)
    if g_w >= 0:
        weight = Fraction(1, 2)
    else:
        threshold = -g_w / (g_r - g_w)
        weight = (1 + threshold) / 2
    return interpolate(witness, reached, weight)


def cell_adjacency(
    planes: Sequence[Hyperplane], cells: Sequence[Cell], certify_with_lp: bool = False
) -> CellAdjacency:
    """
    All pairs of cells whose closures share a facet.

    Two cells of one arrangement whose sign vectors differ in exactly one
    position always share a facet: the segment between their witnesses crosses
    that plane inside every other open halfspace. The crossing point is checked
    exactly; with certify_with_lp the facet system is also solved by
    strict_feasible.
    """
    if not cells:
        return CellAdjacency(())
    d = len(cells[0].witness)
    normalized = normalize_planes(planes, d)
    index_of: Dict[Tuple[int, ...], int] = {cell.signs: i for i, cell in enumerate(cells)}

    pairs = []
    for a, cell in enumerate(cells):
        for k, plane in enumerate(normalized):
            flipped = cell.signs[:k] + (-cell.signs[k],) + cell.signs[k + 1:]
            b = index_of.get(flipped)
            if b is None or b < a:
                continue
            point = _facet_point(normalized, cell, cells[b], k)
            if certify_with_lp:
                constraints = [
                    (h, EQUAL if j == k else s) for j, (h, s) in enumerate(zip(normalized, cell.signs))
                ]
                if strict_feasible(constraints, d) is None:
                    raise InvariantViolation("facet system infeasible", a=a, b=b, plane=k)
            pairs.append(Adjacency(a, b, k, point))

    logger.debug(f"{len(pairs)} adjacent pairs among {len(cells)} cells")
    return CellAdjacency(tuple(pairs))


def _facet_point(planes: Sequence[Hyperplane], first: Cell, second: Cell, k: int) -> Vec:
    """Crossing of plane k by the segment between two witnesses, checked against every plane"""
    plane = planes[k]
    value_a, value_b = plane.value(first.witness), plane.value(second.witness)
    point = interpolate(first.witness, second.witness, value_a / (value_a - value_b))
    for j, (other, sign) in enumerate(zip(planes, first.signs)):
        expected = EQUAL if j == k else sign
        if other.side(point) != expected:
            raise InvariantViolation("facet crossing left the shared region", plane=j)
    return point


__all__ = [
    'Hyperplane',
    'Cell',
    'Adjacency',
    'CellAdjacency',
    'Arrangement',
    'normalize_planes',
    'strict_feasible',
    'enumerate_cells',
    'cell_adjacency',
    'EQUAL',
]
