"""
Longest x-monotone paths in a line arrangement and the CPA functions whose
graphs follow them.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from constructions.line_families import LineFamily
from cpa.expression import CpaExpr, spline_1d
from geometry.rational import Vec, format_rational
from utils.exceptions import ConstructionError, NoPathError

logger = logging.getLogger(__name__)


def count_runs(carriers: Tuple[int, ...]) -> int:
    """Number of maximal runs of equal consecutive carriers"""
    return sum(1 for k, line in enumerate(carriers) if k == 0 or carriers[k - 1] != line)


@dataclass(frozen=True)
class MonotonePath:
    """Vertices with strictly increasing x; carriers[k] joins vertices[k] and vertices[k+1]"""

    vertices: Tuple[Vec, ...]
    carriers: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(tuple(v) for v in self.vertices))
        object.__setattr__(self, 'carriers', tuple(self.carriers))
        if len(self.vertices) < 2:
            raise ConstructionError("a path needs at least two vertices")
        if len(self.carriers) != len(self.vertices) - 1:
            raise ConstructionError("a path needs one carrier per segment")
        if any(a[0] >= b[0] for a, b in zip(self.vertices, self.vertices[1:])):
            raise ConstructionError("path vertices must have strictly increasing x")

    @property
    def length(self) -> int:
        return count_runs(self.carriers)

    def runs(self) -> List[Tuple[int, Vec, Vec]]:
        """(carrier, first vertex, last vertex) of every maximal collinear run"""
        result: List[Tuple[int, Vec, Vec]] = []
        for k, line in enumerate(self.carriers):
            if result and result[-1][0] == line:
                result[-1] = (line, result[-1][1], self.vertices[k + 1])
            else:
                result.append((line, self.vertices[k], self.vertices[k + 1]))
        return result

    def validate(self, family: LineFamily) -> None:
        for k, line in enumerate(self.carriers):
            if not 0 <= line < len(family):
                raise ConstructionError(f"carrier {line} is not a line of the family")
            for vertex in (self.vertices[k], self.vertices[k + 1]):
                if family.lines[line](vertex[0]) != vertex[1]:
                    raise ConstructionError(f"vertex {vertex} is not on carrier line {line}")

    def to_dict(self) -> dict:
        return {
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "carriers": list(self.carriers),
            "length": self.length,
        }


# (length, vertex sequence, carriers) of the best continuation from a state
_Continuation = Tuple[int, Tuple[Vec, ...], Tuple[int, ...]]


def _better(candidate: _Continuation, incumbent: Optional[_Continuation]) -> bool:
    if incumbent is None:
        return True
    if candidate[0] != incumbent[0]:
        return candidate[0] > incumbent[0]
    return candidate[1] < incumbent[1]


def longest_monotone_path(family: LineFamily) -> MonotonePath:
    """
    Exact longest x-monotone path by dynamic programming over
    (vertex, incoming carrier) states, processed from the right. Moves go to
    the next vertex along a line; changing line costs one segment. Ties go to
    the lexicographically smallest vertex sequence.
    """
    incidences = family.incidences()
    vertices = sorted(incidences)
    if len(vertices) < 2:
        raise NoPathError(f"{len(family)} lines have {len(vertices)} vertices; a path needs two")

    on_line: Dict[int, List[Vec]] = {i: [] for i in range(len(family))}
    for vertex in vertices:
        for line in incidences[vertex]:
            on_line[line].append(vertex)
    following: Dict[Tuple[Vec, int], Vec] = {}
    for line, points in on_line.items():
        for a, b in zip(points, points[1:]):
            following[(a, line)] = b

    # best[(v, incoming)] for incoming in lines through v, or None at a start
    best: Dict[Tuple[Vec, Optional[int]], _Continuation] = {}
    for vertex in reversed(vertices):
        for incoming in (None,) + incidences[vertex]:
            choice: Optional[_Continuation] = None if incoming is None else (0, (vertex,), ())
            for line in incidences[vertex]:
                nxt = following.get((vertex, line))
                if nxt is None:
                    continue
                length, seq, carriers = best[(nxt, line)]
                candidate = (length + (line != incoming), (vertex,) + seq, (line,) + carriers)
                if _better(candidate, choice):
                    choice = candidate
            if choice is not None:
                best[(vertex, incoming)] = choice

    starts = [best[(v, None)] for v in vertices if (v, None) in best]
    if not starts:
        raise NoPathError("no two vertices share a line")
    winner: Optional[_Continuation] = None
    for candidate in starts:
        if _better(candidate, winner):
            winner = candidate
    path = MonotonePath(winner[1], winner[2])
    logger.info(f"longest monotone path over {len(family)} lines: length {path.length} "
                f"through {len(path.vertices)} vertices")
    return path


def path_to_cpa(path: MonotonePath, family: LineFamily) -> CpaExpr:
    """
    1-D CPA function following the path, its first and last carriers extended
    to infinity. Its maximal pieces are exactly the path's runs.
    """
    path.validate(family)
    runs = path.runs()
    pieces = [family.lines[line].as_affine() for line, _, _ in runs]
    breakpoints: List[Fraction] = [start[0] for _, start, _ in runs[1:]]
    if len(runs) == 1:
        logger.warning("path of length 1 gives an affine function (degenerate)")
    return spline_1d(pieces, breakpoints)


__all__ = ['MonotonePath', 'count_runs', 'longest_monotone_path', 'path_to_cpa']
