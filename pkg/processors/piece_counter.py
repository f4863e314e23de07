"""
Active components, convex cells and maximal pieces of a CPA expression.

For every component f_i the cells of the arrangement of its walls
{f_i = f_j : j != i} are either entirely covered by f_i or never touched by
it, so the cells carrying label i are exactly the convex pieces of the
expression. Maximal pieces are the connected groups of same-label cells that
share a facet.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from cpa.expression import ComponentSet, CpaExpr, leaf_components, map_leaves
from cpa.serialization import affine_to_dict
from geometry.arrangement import (
    DEFAULT_WITNESS_POINTS, Arrangement, Cell, Hyperplane, cell_adjacency, normalize_planes,
)
from geometry.linalg import intersection_points
from geometry.rational import AffineMap, RationalLike, Vec, affine_sub, to_rational
from utils.exceptions import ConstructionError, InvariantViolation, UnsupportedDimensionError
from utils.union_find import UnionFind


@dataclass(frozen=True)
class LabeledCell:
    """A convex piece: a cell of its component's wall arrangement"""

    component: int
    cell: Cell


@dataclass(frozen=True)
class PieceGroup:
    component: int
    cells: Tuple[int, ...]


@dataclass(frozen=True)
class PieceDecomposition:
    d: int
    components: ComponentSet
    leaf_count: int
    walls: Tuple[Tuple[Hyperplane, ...], ...]
    cells: Tuple[LabeledCell, ...]
    pieces: Tuple[PieceGroup, ...]

    @property
    def n_active(self) -> int:
        return len(self.components)

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def maximal_piece_count(self) -> int:
        return len(self.pieces)

    def locate(self, x: Sequence[Fraction]) -> Optional[int]:
        """Index of the convex piece containing x, None when x lies on a wall or on no piece"""
        for index, labeled in enumerate(self.cells):
            walls = self.walls[labeled.component]
            if all(h.side(x) == s for h, s in zip(walls, labeled.cell.signs)):
                return index
        return None

    def piece_of_cell(self, cell: int) -> int:
        """Index of the maximal piece containing the given convex piece"""
        return next(k for k, piece in enumerate(self.pieces) if cell in piece.cells)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "leaf_components": self.leaf_count,
            "n_active": self.n_active,
            "cells": self.cell_count,
            "maximal_pieces": self.maximal_piece_count,
            "components": [affine_to_dict(f) for f in self.components],
            "pieces": [{"component": p.component, "cells": list(p.cells)} for p in self.pieces],
        }

    def cells_dump(self) -> List[dict]:
        """One record per convex piece: component, sign string and witness"""
        return [dict(component=c.component, **c.cell.to_dict()) for c in self.cells]


def bisector_arrangement(components: ComponentSet) -> List[Hyperplane]:
    """Deduplicated nonempty bisectors f_i = f_j"""
    if not components:
        return []
    planes = []
    for f, g in combinations(components, 2):
        plane = Hyperplane.zero_set(affine_sub(f, g))
        if plane is not None:
            planes.append(plane)
    return normalize_planes(planes, components[0].dim)


def component_walls(components: ComponentSet, index: int) -> List[Hyperplane]:
    """Bisectors between components[index] and every other component"""
    f = components[index]
    planes = []
    for j, g in enumerate(components):
        if j == index:
            continue
        plane = Hyperplane.zero_set(affine_sub(f, g))
        if plane is not None:
            planes.append(plane)
    return normalize_planes(planes, f.dim)


def bisector_vertices(components: ComponentSet) -> List[Vec]:
    """Points where d independent bisectors meet, in a stable order"""
    if not components:
        return []
    d = components[0].dim
    planes = bisector_arrangement(components)
    points = {point for _, point in intersection_points(
        [h.normal for h in planes], [h.offset for h in planes], d)}
    return sorted(points)


def box_extrema(e: CpaExpr, low: Sequence[RationalLike], high: Sequence[RationalLike]) -> Tuple[Fraction, Fraction]:
    """Exact minimum and maximum of e over the closed box [low, high]"""
    lo = tuple(to_rational(v) for v in low)
    hi = tuple(to_rational(v) for v in high)
    d = e.dim
    if len(lo) != d or len(hi) != d or any(a > b for a, b in zip(lo, hi)):
        raise ConstructionError("box bounds must be ordered and match the dimension")

    planes = bisector_arrangement(leaf_components(e))
    for axis in range(d):
        unit = tuple(Fraction(int(k == axis)) for k in range(d))
        planes.append(Hyperplane(unit, lo[axis]))
        planes.append(Hyperplane(unit, hi[axis]))

    values = []
    for _, point in intersection_points([h.normal for h in planes], [h.offset for h in planes], d):
        if all(a <= x <= b for a, x, b in zip(lo, point, hi)):
            values.append(e.evaluate(point))
    return min(values), max(values)


def restrict_to_slice(e: CpaExpr, axis: int, value: RationalLike) -> CpaExpr:
    """Substitute x[axis] = value, giving an expression on R^(d-1)"""
    if not 0 <= axis < e.dim:
        raise ConstructionError(f"axis {axis} out of range for dimension {e.dim}")
    if e.dim == 1:
        raise UnsupportedDimensionError("slicing a 1-D expression leaves dimension 0")
    fixed = to_rational(value)

    def substitute(f: AffineMap) -> AffineMap:
        gradient = f.gradient[:axis] + f.gradient[axis + 1:]
        return AffineMap(gradient, f.offset + f.gradient[axis] * fixed)

    return map_leaves(e, substitute)


class PieceCounter:
    """Exact piece decomposition of CPA expressions"""

    def __init__(self, witness_points: int = DEFAULT_WITNESS_POINTS):
        self.witness_points = witness_points
        self.logger = logging.getLogger(__name__)

    def decompose(self, e: CpaExpr) -> PieceDecomposition:
        """
        Active components, convex pieces and maximal pieces of e in any dimension.
        Leaves that label no cell are dropped and the walls rebuilt without them,
        so every wall separates two components that are both active somewhere.
        """
        leaves = leaf_components(e)
        labeled = self._label(e, leaves)
        active_indices = [i for i, (_, cells) in enumerate(labeled) if cells]
        if len(active_indices) < len(leaves):
            self.logger.debug(f"dropping {len(leaves) - len(active_indices)} never-active leaves and rebuilding")
            components = tuple(leaves[i] for i in active_indices)
            labeled = self._label(e, components)
            if any(not cells for _, cells in labeled):
                raise InvariantViolation("component lost its cells after rebuild")
        else:
            components = leaves

        decomposition = self._merge(e.dim, components, len(leaves), labeled)
        self.logger.info(
            f"decomposed d={e.dim}: {len(leaves)} leaves, {decomposition.n_active} active, "
            f"{decomposition.cell_count} cells, {decomposition.maximal_piece_count} maximal pieces"
        )
        return decomposition

    def _label(self, e: CpaExpr, components: ComponentSet) -> List[Tuple[List[Hyperplane], List[Cell]]]:
        """Walls of each component and the cells of its wall arrangement where it is active"""
        labeled = []
        for i, f in enumerate(components):
            arrangement = Arrangement.build(component_walls(components, i), e.dim, self.witness_points)
            kept = []
            for cell in arrangement.cells:
                value = e.evaluate(cell.witness)
                if value != f(cell.witness):
                    continue
                matches = [j for j, g in enumerate(components) if g(cell.witness) == value]
                if matches != [i]:
                    raise InvariantViolation("ambiguous active component at witness",
                                             witness=cell.witness, matches=matches)
                kept.append(cell)
            labeled.append((list(arrangement.planes), kept))
        return labeled

    def _merge(self, d: int, components: ComponentSet, leaf_count: int,
               labeled: List[Tuple[List[Hyperplane], List[Cell]]]) -> PieceDecomposition:
        """Union same-component cells across shared facets into maximal pieces"""
        cells: List[LabeledCell] = []
        offsets = []
        for i, (_, kept) in enumerate(labeled):
            offsets.append(len(cells))
            cells.extend(LabeledCell(i, cell) for cell in kept)

        groups = UnionFind(len(cells))
        for i, (walls, kept) in enumerate(labeled):
            for pair in cell_adjacency(walls, kept).pairs:
                groups.union(offsets[i] + pair.a, offsets[i] + pair.b)

        pieces = tuple(
            PieceGroup(cells[group[0]].component, tuple(group)) for group in groups.groups()
        )
        return PieceDecomposition(
            d=d,
            components=components,
            leaf_count=leaf_count,
            walls=tuple(tuple(walls) for walls, _ in labeled),
            cells=tuple(cells),
            pieces=pieces,
        )

    def pieces_1d(self, e: CpaExpr) -> PieceDecomposition:
        """Interval decomposition on the line: label one sample per interval between breakpoints"""
        if e.dim != 1:
            raise UnsupportedDimensionError(f"pieces_1d needs d=1, got d={e.dim}")
        leaves = leaf_components(e)

        breakpoints = _roots(leaves, range(len(leaves)))
        samples = _interval_samples(breakpoints)
        labels = []
        for x in samples:
            value = e.evaluate((x,))
            matches = [j for j, f in enumerate(leaves) if f((x,)) == value]
            if len(matches) != 1:
                raise InvariantViolation("ambiguous active component", x=x, matches=matches)
            labels.append(matches[0])

        active_indices = sorted(set(labels))
        remap = {leaf_index: k for k, leaf_index in enumerate(active_indices)}
        components = tuple(leaves[i] for i in active_indices)
        bounds = [(breakpoints[k - 1] if k > 0 else None, breakpoints[k] if k < len(breakpoints) else None)
                  for k in range(len(samples))]

        # runs of equal labels are the maximal pieces
        runs: List[Tuple[int, Optional[Fraction], Optional[Fraction]]] = []
        for label, (low, high) in zip(labels, bounds):
            component = remap[label]
            if runs and runs[-1][0] == component:
                runs[-1] = (component, runs[-1][1], high)
            else:
                runs.append((component, low, high))

        walls = [sorted(_roots(components, [c])) for c in range(len(components))]
        cells: List[LabeledCell] = []
        pieces: List[PieceGroup] = []
        for component, low, high in runs:
            cuts = [w for w in walls[component]
                    if (low is None or w > low) and (high is None or w < high)]
            edges = [low] + cuts + [high]
            members = []
            for left, right in zip(edges, edges[1:]):
                witness = _interval_samples_between(left, right)
                signs = tuple(1 if witness > w else -1 for w in walls[component])
                members.append(len(cells))
                cells.append(LabeledCell(component, Cell(signs, (witness,))))
            pieces.append(PieceGroup(component, tuple(members)))

        wall_planes = tuple(
            tuple(Hyperplane((Fraction(1),), w) for w in component_breaks) for component_breaks in walls
        )
        self.logger.info(f"1-D pieces: {len(components)} active, {len(cells)} cells, {len(pieces)} maximal pieces")
        return PieceDecomposition(1, components, len(leaves), wall_planes, tuple(cells), tuple(pieces))

    def count(self, e: CpaExpr) -> PieceDecomposition:
        """pieces_1d for d = 1, decompose otherwise"""
        return self.pieces_1d(e) if e.dim == 1 else self.decompose(e)

    def arrangement_cell_count(self, decomposition: PieceDecomposition) -> int:
        """Cells of the full bisector arrangement of the active components"""
        planes = bisector_arrangement(decomposition.components)
        return len(Arrangement.build(planes, decomposition.d, self.witness_points).cells)


def _roots(components: ComponentSet, indices) -> List[Fraction]:
    """Sorted distinct points where components[i] (i in indices) meets another component"""
    points = set()
    for i in indices:
        f = components[i]
        for j, g in enumerate(components):
            if j == i:
                continue
            slope = f.gradient[0] - g.gradient[0]
            if slope:
                points.add((g.offset - f.offset) / slope)
    return sorted(points)


def _interval_samples(breakpoints: Sequence[Fraction]) -> List[Fraction]:
    """One point inside every open interval cut out by the breakpoints"""
    if not breakpoints:
        return [Fraction(0)]
    edges = [None] + list(breakpoints) + [None]
    return [_interval_samples_between(a, b) for a, b in zip(edges, edges[1:])]


def _interval_samples_between(low: Optional[Fraction], high: Optional[Fraction]) -> Fraction:
    if low is None and high is None:
        return Fraction(0)
    if low is None:
        return high - 1
    if high is None:
        return low + 1
    return (low + high) / 2


_default_counter = PieceCounter()


def decompose(e: CpaExpr) -> PieceDecomposition:
    return _default_counter.decompose(e)


def pieces_1d(e: CpaExpr) -> PieceDecomposition:
    return _default_counter.pieces_1d(e)


def count_pieces(e: CpaExpr) -> PieceDecomposition:
    return _default_counter.count(e)


__all__ = [
    'LabeledCell',
    'PieceGroup',
    'PieceDecomposition',
    'PieceCounter',
    'bisector_arrangement',
    'component_walls',
    'bisector_vertices',
    'box_extrema',
    'restrict_to_slice',
    'decompose',
    'pieces_1d',
    'count_pieces',
]
