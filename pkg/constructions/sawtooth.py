"""
The m-sawtooth: linear spline through (i, z_i), i = 0..2m, alternating
z_min at even knots and z_max at odd knots, extended linearly outside [0, 2m].
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from cpa.expression import CpaExpr, Leaf, cpa_max, cpa_min
from geometry.rational import AffineMap, RationalLike, to_rational
from utils.exceptions import ConstructionError, InvalidRangeError


@dataclass(frozen=True)
class Sawtooth:
    m: int
    z_min: Fraction
    z_max: Fraction

    def __post_init__(self):
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise ConstructionError(f"sawtooth needs m >= 1, got {self.m!r}")
        object.__setattr__(self, 'z_min', to_rational(self.z_min))
        object.__setattr__(self, 'z_max', to_rational(self.z_max))
        if self.z_min >= self.z_max:
            raise InvalidRangeError(self.z_min, self.z_max)

    @property
    def knots(self) -> List[Tuple[Fraction, Fraction]]:
        return [(Fraction(i), self.z_max if i % 2 else self.z_min) for i in range(2 * self.m + 1)]

    def tooth(self, j: int) -> Tuple[AffineMap, AffineMap]:
        """Rising and falling sides of the j-th tent, peaking at t = 2j + 1"""
        delta = self.z_max - self.z_min
        up = AffineMap((delta,), self.z_min - 2 * j * delta)
        down = AffineMap((-delta,), self.z_min + (2 * j + 2) * delta)
        return up, down

    def expression(self) -> CpaExpr:
        teeth = []
        for j in range(self.m):
            up, down = self.tooth(j)
            teeth.append(cpa_min(Leaf(up), Leaf(down)))
        return cpa_max(*teeth)


def sawtooth(m: int, z_min: RationalLike = 0, z_max: RationalLike = 1) -> CpaExpr:
    return Sawtooth(m, z_min, z_max).expression()


__all__ = ['Sawtooth', 'sawtooth']
