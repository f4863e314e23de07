"""
Families of non-vertical lines y = a*x + b and the generators used to feed the
monotone-path experiments.
"""

import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cpa.serialization import RationalText
from geometry.rational import AffineMap, RationalLike, Vec, format_rational, parse_rational, to_rational
from utils.exceptions import ConstructionError, CpaParseError

logger = logging.getLogger(__name__)

KINDS = ('random-generic', 'slope-graded', 'grid-like', 'convex-tangent')
DEFAULT_PALETTE: Tuple[Optional[RationalLike], ...] = (-2, -1, Fraction(-1, 2), Fraction(1, 2), 1, 2)


@dataclass(frozen=True)
class Line:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'a', to_rational(self.a))
        object.__setattr__(self, 'b', to_rational(self.b))

    def __call__(self, x: Fraction) -> Fraction:
        return self.a * x + self.b

    def as_affine(self) -> AffineMap:
        return AffineMap((self.a,), self.b)

    def meet(self, other: 'Line') -> Optional[Vec]:
        if self.a == other.a:
            return None
        x = (other.b - self.b) / (self.a - other.a)
        return x, self(x)

    def to_dict(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}


@dataclass(frozen=True)
class LineFamily:
    lines: Tuple[Line, ...]

    def __post_init__(self):
        object.__setattr__(self, 'lines', tuple(self.lines))
        if len(set(self.lines)) != len(self.lines):
            raise ConstructionError("line family contains duplicate lines")

    def __len__(self) -> int:
        return len(self.lines)

    @property
    def distinct_slopes(self) -> bool:
        return len({line.a for line in self.lines}) == len(self.lines)

    @property
    def generic_position(self) -> bool:
        """No two lines parallel and no three through one point"""
        return self.distinct_slopes and all(len(on) == 2 for on in self.incidences().values())

    def incidences(self) -> Dict[Vec, Tuple[int, ...]]:
        """Every intersection point mapped to the sorted indices of the lines through it"""
        through: Dict[Vec, set] = defaultdict(set)
        for i, j in combinations(range(len(self.lines)), 2):
            point = self.lines[i].meet(self.lines[j])
            if point is not None:
                through[point].update((i, j))
        return {point: tuple(sorted(lines)) for point, lines in through.items()}

    def vertices(self) -> List[Vec]:
        """Distinct intersection points sorted by (x, y)"""
        return sorted(self.incidences())

    def to_dict(self) -> dict:
        return {"lines": [line.to_dict() for line in self.lines]}


class _LineModel(BaseModel):
    model_config = ConfigDict(extra='forbid', strict=True)

    a: RationalText
    b: RationalText


class _FamilyModel(BaseModel):
    model_config = ConfigDict(extra='forbid', strict=True)

    lines: List[_LineModel] = Field(min_length=1)


def line_family_from_dict(data) -> LineFamily:
    try:
        model = _FamilyModel.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise CpaParseError(first['msg'], ".".join(str(p) for p in first['loc']) or "document") from exc
    return LineFamily(tuple(Line(parse_rational(line.a), parse_rational(line.b)) for line in model.lines))


def _creates_coincidence(existing: Sequence[Line], candidate: Line, vertices: set) -> bool:
    for line in existing:
        if line.a == candidate.a:
            return True
    new_points = [candidate.meet(line) for line in existing]
    if len(set(new_points)) != len(new_points):
        return True
    return any(point in vertices for point in new_points)


def random_generic(n: int, seed: int, coefficient_bound: int = 10) -> LineFamily:
    """
    Lines with small random rational coefficients in general position. Each
    new line is resampled until it is neither parallel to an earlier line nor
    through an existing vertex, so a family is a prefix of every larger family
    drawn with the same seed.
    """
    rng = random.Random(seed)
    lines: List[Line] = []
    vertices: set = set()
    while len(lines) < n:
        candidate = Line(
            Fraction(rng.randint(-coefficient_bound, coefficient_bound), rng.randint(1, 3)),
            Fraction(rng.randint(-coefficient_bound, coefficient_bound), rng.randint(1, 3)),
        )
        if _creates_coincidence(lines, candidate, vertices):
            continue
        vertices.update(candidate.meet(line) for line in lines)
        lines.append(candidate)
    return LineFamily(tuple(lines))


def slope_graded(n: int) -> LineFamily:
    """Slopes 2^i with offsets -i(i+1)/2"""
    return LineFamily(tuple(Line(Fraction(2) ** i, Fraction(-i * (i + 1), 2)) for i in range(n)))


def grid_like(n: int, palette: Sequence[Optional[RationalLike]] = DEFAULT_PALETTE) -> LineFamily:
    """
    Slopes cycle through the palette and line i has offset i, so each parallel
    class is a set of evenly spaced lines.
    """
    if not palette:
        raise ConstructionError("grid-like family needs a non-empty slope palette")
    if any(slope is None for slope in palette):
        raise ConstructionError("grid-like family cannot contain vertical lines")
    slopes = [to_rational(slope) for slope in palette]
    return LineFamily(tuple(Line(slopes[i % len(slopes)], Fraction(i)) for i in range(n)))


def convex_tangent(n: int) -> LineFamily:
    """Tangents to y = x^2 at x = 1..n"""
    return LineFamily(tuple(Line(2 * Fraction(k), -Fraction(k) ** 2) for k in range(1, n + 1)))


def line_family_generators(kind: str, n: int, seed: int = 0, coefficient_bound: int = 10) -> LineFamily:
    if n < 1:
        raise ConstructionError(f"line family needs n >= 1, got {n}")
    generators: Dict[str, Callable[[], LineFamily]] = {
        'random-generic': lambda: random_generic(n, seed, coefficient_bound),
        'slope-graded': lambda: slope_graded(n),
        'grid-like': lambda: grid_like(n),
        'convex-tangent': lambda: convex_tangent(n),
    }
    if kind not in generators:
        raise ConstructionError(f"unknown line family kind {kind!r}; expected one of {', '.join(KINDS)}")
    family = generators[kind]()
    logger.debug(f"generated {kind} family with {n} lines (seed {seed})")
    return family


__all__ = [
    'KINDS',
    'Line',
    'LineFamily',
    'line_family_from_dict',
    'random_generic',
    'slope_graded',
    'grid_like',
    'convex_tangent',
    'line_family_generators',
]
