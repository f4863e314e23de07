"""
Grid oracle for maximal pieces.

Grid cells (hypercubes between neighbouring grid points) are labeled with the
unique leaf component agreeing with the expression at all of their corners;
connected groups of equally labeled cells are counted.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from cpa.expression import CpaExpr, leaf_components
from geometry.rational import RationalLike, to_rational
from processors.piece_counter import bisector_vertices
from utils.exceptions import ConstructionError
from utils.union_find import UnionFind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampleEstimate:
    count: int
    grid_step: Fraction
    min_vertex_gap: Optional[Fraction]
    labeled_cells: int
    total_cells: int

    @property
    def resolves_features(self) -> bool:
        """Grid step below half the smallest gap between bisector vertices"""
        return self.min_vertex_gap is None or 2 * self.grid_step < self.min_vertex_gap


def min_vertex_gap(e: CpaExpr, low: Sequence[Fraction], high: Sequence[Fraction]) -> Optional[Fraction]:
    inside = [v for v in bisector_vertices(leaf_components(e))
              if all(a <= x <= b for a, x, b in zip(low, v, high))]
    gaps = [max(abs(p - q) for p, q in zip(u, v)) for u, v in combinations(inside, 2)]
    return min(gaps) if gaps else None


def sample_piece_lower_bound(e: CpaExpr, low: Sequence[RationalLike], high: Sequence[RationalLike],
                             resolution: int) -> SampleEstimate:
    d = e.dim
    lo = [to_rational(v) for v in low]
    hi = [to_rational(v) for v in high]
    if len(lo) != d or len(hi) != d:
        raise ConstructionError("box does not match the expression dimension")
    if any(a >= b for a, b in zip(lo, hi)):
        raise ConstructionError("box must be nonempty")
    if resolution < 2:
        raise ConstructionError(f"resolution must be >= 2, got {resolution}")

    steps = [(b - a) / (resolution - 1) for a, b in zip(lo, hi)]
    components = leaf_components(e)

    matching: Dict[Tuple[int, ...], FrozenSet[int]] = {}
    for index in product(range(resolution), repeat=d):
        point = tuple(a + k * s for a, k, s in zip(lo, index, steps))
        value = e.evaluate(point)
        matching[index] = frozenset(j for j, f in enumerate(components) if f(point) == value)

    corners = list(product((0, 1), repeat=d))
    cells = list(product(range(resolution - 1), repeat=d))
    position = {cell: k for k, cell in enumerate(cells)}
    labels: List[Optional[int]] = []
    for cell in cells:
        common = frozenset.intersection(*(
            matching[tuple(c + o for c, o in zip(cell, offset))] for offset in corners
        ))
        labels.append(next(iter(common)) if len(common) == 1 else None)

    groups = UnionFind(len(cells))
    for k, cell in enumerate(cells):
        if labels[k] is None:
            continue
        for axis in range(d):
            if cell[axis] + 1 >= resolution - 1:
                continue
            neighbour = position[cell[:axis] + (cell[axis] + 1,) + cell[axis + 1:]]
            if labels[neighbour] == labels[k]:
                groups.union(k, neighbour)

    labeled = [k for k, label in enumerate(labels) if label is not None]
    count = len({groups.find(k) for k in labeled})
    estimate = SampleEstimate(count, max(steps), min_vertex_gap(e, lo, hi), len(labeled), len(cells))
    logger.debug(f"grid oracle: {count} groups over {len(labeled)}/{len(cells)} labeled cells")
    return estimate


__all__ = ['SampleEstimate', 'min_vertex_gap', 'sample_piece_lower_bound']
