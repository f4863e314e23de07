"""Exhaustive search over all x-monotone vertex sequences of a small line family"""

from typing import Dict, Tuple

from constructions.line_families import LineFamily
from constructions.monotone_path import count_runs
from geometry.rational import Vec
from utils.exceptions import InstanceTooLargeError


def exhaustive_monotone_paths(family: LineFamily, max_n: int = 5) -> int:
    """
    Maximum segment count over every strictly x-increasing vertex sequence
    whose consecutive vertices share a line; 0 when no such sequence exists.
    """
    if len(family) > max_n:
        raise InstanceTooLargeError("too many lines for exhaustive search", len(family), max_n)

    incidences = family.incidences()
    vertices = sorted(incidences)
    shared: Dict[Tuple[Vec, Vec], int] = {}
    for i, u in enumerate(vertices):
        for v in vertices[i + 1:]:
            if u[0] >= v[0]:
                continue
            common = set(incidences[u]) & set(incidences[v])
            if common:
                shared[(u, v)] = common.pop()

    best = 0

    def extend(current: Vec, carriers: Tuple[int, ...]) -> None:
        nonlocal best
        if carriers:
            best = max(best, count_runs(carriers))
        for v in vertices:
            line = shared.get((current, v))
            if line is not None:
                extend(v, carriers + (line,))

    for start in vertices:
        extend(start, ())
    return best


__all__ = ['exhaustive_monotone_paths']
