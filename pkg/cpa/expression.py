"""
Min/max expression trees over affine leaves.

A tree is immutable; Min and Max take at least two children of one dimension.
Use cpa_min / cpa_max to build nodes: they drop unary wrappers.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from geometry.rational import AffineMap, RationalLike, Vec, affine_eval, make_vec, to_rational
from utils.exceptions import (
    ConstructionError, DimensionMismatchError, InvalidRangeError, InvariantViolation,
)

logger = logging.getLogger(__name__)

ComponentSet = Tuple[AffineMap, ...]


class CpaExpr:
    """Base class of expression nodes"""

    __slots__ = ()

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        raise NotImplementedError

    def leaves(self) -> Iterator[AffineMap]:
        raise NotImplementedError

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return cpa_eval(self, x)


@dataclass(frozen=True)
class Leaf(CpaExpr):
    map: AffineMap

    @property
    def dim(self) -> int:
        return self.map.dim

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return affine_eval(self.map, x)

    def leaves(self) -> Iterator[AffineMap]:
        yield self.map


@dataclass(frozen=True)
class _Extremum(CpaExpr):
    args: Tuple[CpaExpr, ...]

    op = ''

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))
        if len(self.args) < 2:
            raise ConstructionError(f"{self.op} node needs at least 2 children, got {len(self.args)}")
        d = self.args[0].dim
        for child in self.args[1:]:
            if child.dim != d:
                raise DimensionMismatchError(d, child.dim, f"{self.op} child")

    @property
    def dim(self) -> int:
        return self.args[0].dim

    def leaves(self) -> Iterator[AffineMap]:
        for child in self.args:
            yield from child.leaves()


@dataclass(frozen=True)
class Min(_Extremum):
    op = 'min'

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return min(child.evaluate(x) for child in self.args)


@dataclass(frozen=True)
class Max(_Extremum):
    op = 'max'

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return max(child.evaluate(x) for child in self.args)


def leaf(gradient: Sequence[RationalLike], offset: RationalLike) -> Leaf:
    return Leaf(AffineMap(make_vec(gradient), to_rational(offset)))


def constant(d: int, value: RationalLike) -> Leaf:
    return Leaf(AffineMap.constant(d, value))


def cpa_min(*args: CpaExpr) -> CpaExpr:
    if not args:
        raise ConstructionError("min of nothing")
    return args[0] if len(args) == 1 else Min(args)


def cpa_max(*args: CpaExpr) -> CpaExpr:
    if not args:
        raise ConstructionError("max of nothing")
    return args[0] if len(args) == 1 else Max(args)


def cpa_eval(e: CpaExpr, x: Sequence[Fraction]) -> Fraction:
    if len(x) != e.dim:
        raise DimensionMismatchError(e.dim, len(x), "point")
    return e.evaluate(x)


def leaf_components(e: CpaExpr) -> ComponentSet:
    """Distinct leaf maps in first-occurrence order"""
    seen = set()
    ordered = []
    for f in e.leaves():
        if f not in seen:
            seen.add(f)
            ordered.append(f)
    return tuple(ordered)


def clamp(e: CpaExpr, z_min: RationalLike, z_max: RationalLike) -> CpaExpr:
    """min(z_max, max(z_min, e))"""
    low, high = to_rational(z_min), to_rational(z_max)
    if low >= high:
        raise InvalidRangeError(low, high)
    return Min((constant(e.dim, high), Max((constant(e.dim, low), e))))


def map_leaves(e: CpaExpr, transform: Callable[[AffineMap], AffineMap]) -> CpaExpr:
    """Same tree shape with every leaf replaced"""
    if isinstance(e, Leaf):
        return Leaf(transform(e.map))
    children = tuple(map_leaves(child, transform) for child in e.args)
    return type(e)(children)


def embed(e: CpaExpr, d: int, start: int = 0) -> CpaExpr:
    """View e as a function on R^d reading coordinates start..start+dim-1"""
    return map_leaves(e, lambda f: f.embed(d, start))


def spline_1d(pieces: Sequence[AffineMap], breakpoints: Sequence[RationalLike]) -> CpaExpr:
    """
    Expression of the continuous 1-D spline equal to pieces[i] between
    breakpoints[i-1] and breakpoints[i].

    Uses the max-min lattice form: f = max_i min {g : g >= pieces[i] on interval i}.
    """
    knots = [to_rational(b) for b in breakpoints]
    if len(pieces) != len(knots) + 1:
        raise ConstructionError(f"{len(pieces)} pieces need {len(pieces) - 1} breakpoints, got {len(knots)}")
    if any(f.dim != 1 for f in pieces):
        raise DimensionMismatchError(1, max(f.dim for f in pieces), "spline piece")
    if any(a >= b for a, b in zip(knots, knots[1:])):
        raise ConstructionError("breakpoints must be strictly increasing")
    for k, knot in enumerate(knots):
        if pieces[k]((knot,)) != pieces[k + 1]((knot,)):
            raise ConstructionError(f"spline is discontinuous at {knot}")

    distinct: List[AffineMap] = []
    for f in pieces:
        if f not in distinct:
            distinct.append(f)

    bounds: List[Tuple[Optional[Fraction], Optional[Fraction]]] = [
        (knots[i - 1] if i > 0 else None, knots[i] if i < len(knots) else None)
        for i in range(len(pieces))
    ]
    terms: List[CpaExpr] = []
    seen_supports = set()
    for f, (low, high) in zip(pieces, bounds):
        support = tuple(g for g in distinct if _nonnegative_on(g - f, low, high))
        if support in seen_supports:
            continue
        seen_supports.add(support)
        terms.append(cpa_min(*(Leaf(g) for g in support)))
    expression = cpa_max(*terms)

    for f, (low, high) in zip(pieces, bounds):
        point = _interval_point(low, high)
        if expression.evaluate((point,)) != f((point,)):
            raise InvariantViolation("lattice form disagrees with spline", at=point)
    return expression


def _nonnegative_on(h: AffineMap, low: Optional[Fraction], high: Optional[Fraction]) -> bool:
    slope, offset = h.gradient[0], h.offset
    if low is None and slope > 0:
        return False
    if high is None and slope < 0:
        return False
    if low is None and high is None:
        return offset >= 0
    checks = [x for x in (low, high) if x is not None]
    return all(slope * x + offset >= 0 for x in checks)


def _interval_point(low: Optional[Fraction], high: Optional[Fraction]) -> Fraction:
    if low is None and high is None:
        return Fraction(0)
    if low is None:
        return high - 1
    if high is None:
        return low + 1
    return (low + high) / 2


__all__ = [
    'CpaExpr',
    'Leaf',
    'Min',
    'Max',
    'ComponentSet',
    'leaf',
    'constant',
    'cpa_min',
    'cpa_max',
    'cpa_eval',
    'leaf_components',
    'clamp',
    'map_leaves',
    'embed',
    'spline_1d',
]
