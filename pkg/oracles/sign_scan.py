"""Grid scan of the strict sign vectors realized by an arrangement inside a box"""

from fractions import Fraction
from itertools import product
from typing import Collection, Sequence, Set, Tuple

from geometry.arrangement import EQUAL, Cell, Hyperplane, normalize_planes
from geometry.rational import RationalLike, to_rational
from utils.exceptions import ConstructionError

SignVector = Tuple[int, ...]


def sign_scan(planes: Sequence[Hyperplane], low: Sequence[RationalLike], high: Sequence[RationalLike],
              resolution: int) -> Set[SignVector]:
    """
    Sign vectors (indexed like normalize_planes) of all grid points lying on
    no plane. An empty plane set yields the single empty vector.
    """
    lo = [to_rational(v) for v in low]
    hi = [to_rational(v) for v in high]
    if len(lo) != len(hi) or not lo or any(a > b for a, b in zip(lo, hi)):
        raise ConstructionError("box bounds must be ordered and of equal dimension")
    if resolution < 2:
        raise ConstructionError(f"resolution must be >= 2, got {resolution}")
    normalized = normalize_planes(planes, len(lo))
    if not normalized:
        return {()}

    steps = [(b - a) / (resolution - 1) for a, b in zip(lo, hi)]
    observed: Set[SignVector] = set()
    for index in product(range(resolution), repeat=len(lo)):
        point = tuple(a + k * s for a, k, s in zip(lo, index, steps))
        signs = tuple(h.side(point) for h in normalized)
        if EQUAL not in signs:
            observed.add(signs)
    return observed


def scan_coverage(observed: Collection[SignVector], cells: Sequence[Cell]) -> Fraction:
    """Share of the cells whose sign vector the scan observed"""
    if not cells:
        return Fraction(1)
    known = {cell.signs for cell in cells}
    return Fraction(len(known & set(observed)), len(known))


__all__ = ['SignVector', 'sign_scan', 'scan_coverage']
