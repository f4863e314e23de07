"""
Exact Gaussian elimination helpers
"""

from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from geometry.rational import Vec


def solve_square(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vec]:
    """Unique solution of a square system, or None when singular"""
    size = len(matrix)
    augmented: List[List[Fraction]] = [
        [Fraction(v) for v in row] + [Fraction(value)] for row, value in zip(matrix, rhs)
    ]
    for col in range(size):
        pivot = next((i for i in range(col, size) if augmented[i][col]), None)
        if pivot is None:
            return None
        augmented[col], augmented[pivot] = augmented[pivot], augmented[col]
        lead = augmented[col][col]
        augmented[col] = [v / lead for v in augmented[col]]
        for i in range(size):
            if i != col and augmented[i][col]:
                factor = augmented[i][col]
                augmented[i] = [a - factor * b for a, b in zip(augmented[i], augmented[col])]
    return tuple(row[size] for row in augmented)


def intersection_points(
    normals: Sequence[Vec], offsets: Sequence[Fraction], d: int
) -> Iterator[Tuple[Tuple[int, ...], Vec]]:
    """Every point where d of the given hyperplanes meet in a single point"""
    for subset in combinations(range(len(normals)), d):
        point = solve_square([normals[i] for i in subset], [offsets[i] for i in subset])
        if point is not None:
            yield subset, point


__all__ = ['solve_square', 'intersection_points']
