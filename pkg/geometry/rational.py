"""
Exact rational scalars, vectors and affine maps.

Rationals are ``fractions.Fraction`` values (always in lowest terms with a
positive denominator). Vectors are plain tuples of Fractions so they hash and
compare structurally.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from utils.exceptions import ConstructionError, DimensionMismatchError

Rational = Fraction
Vec = Tuple[Fraction, ...]
RationalLike = Union[Fraction, int, str]

_RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction"""
    match = _RATIONAL_PATTERN.match(text) if isinstance(text, str) else None
    if not match:
        raise ConstructionError(f"not a rational literal: {text!r}")

    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise ConstructionError(f"zero denominator in {text!r}")

    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and rational literals; floats are rejected"""
    if isinstance(value, bool) or isinstance(value, float):
        raise ConstructionError(f"refusing inexact value {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return parse_rational(value)


def make_vec(coords: Iterable[RationalLike]) -> Vec:
    """Tuple of exact coordinates; empty vectors are rejected"""
    vec = tuple(to_rational(c) for c in coords)
    if not vec:
        raise ConstructionError("vectors need at least one coordinate")
    return vec


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Exact inner product of two equal-length vectors"""
    if len(a) != len(b):
        raise DimensionMismatchError(len(a), len(b), "vector")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vec_sub(a: Vec, b: Vec) -> Vec:
    """a - b"""
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a: Vec, b: Vec) -> Vec:
    """a + b"""
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(a: Vec, factor: Fraction) -> Vec:
    """factor * a"""
    return tuple(x * factor for x in a)


def interpolate(a: Vec, b: Vec, weight: Fraction) -> Vec:
    """Point (1 - weight) * a + weight * b"""
    return tuple(x + weight * (y - x) for x, y in zip(a, b))


@dataclass(frozen=True)
class AffineMap:
    """x -> gradient . x + offset"""

    gradient: Vec
    offset: Fraction

    def __post_init__(self):
        if not self.gradient:
            raise ConstructionError("affine maps need dimension >= 1")
        object.__setattr__(self, 'gradient', tuple(Fraction(g) for g in self.gradient))
        object.__setattr__(self, 'offset', Fraction(self.offset))

    @classmethod
    def constant(cls, d: int, value: RationalLike) -> 'AffineMap':
        """Constant map on R^d"""
        return cls((Fraction(0),) * d, to_rational(value))

    @classmethod
    def from_coefficients(cls, gradient: Iterable[RationalLike], offset: RationalLike) -> 'AffineMap':
        return cls(make_vec(gradient), to_rational(offset))

    @property
    def dim(self) -> int:
        return len(self.gradient)

    @property
    def is_constant(self) -> bool:
        return not any(self.gradient)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return affine_eval(self, x)

    def __sub__(self, other: 'AffineMap') -> 'AffineMap':
        return affine_sub(self, other)

    def embed(self, d: int, start: int = 0) -> 'AffineMap':
        """Same map viewed in R^d, reading coordinates start..start+dim-1"""
        if start < 0 or start + self.dim > d:
            raise DimensionMismatchError(d, start + self.dim, "embedding")
        zeros = (Fraction(0),)
        gradient = zeros * start + self.gradient + zeros * (d - start - self.dim)
        return AffineMap(gradient, self.offset)

    def describe(self) -> str:
        """Compact human form such as "3 - 2*x0 + x1" """
        terms = []
        for index, coefficient in enumerate(self.gradient):
            if coefficient:
                terms.append((coefficient, f"x{index}"))
        text = ""
        for coefficient, name in terms:
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            body = name if magnitude == 1 else f"{format_rational(magnitude)}*{name}"
            text += f" {sign} {body}" if text else (f"-{body}" if sign == "-" else body)
        if self.offset or not text:
            sign = "-" if self.offset < 0 else "+"
            constant = format_rational(abs(self.offset))
            text += f" {sign} {constant}" if text else format_rational(self.offset)
        return text


def affine_eval(f: AffineMap, x: Sequence[Fraction]) -> Fraction:
    """f(x), checking that x has the dimension of f"""
    if len(x) != f.dim:
        raise DimensionMismatchError(f.dim, len(x), "point")
    return dot(f.gradient, x) + f.offset


def affine_sub(f: AffineMap, g: AffineMap) -> AffineMap:
    """The affine map f - g"""
    if f.dim != g.dim:
        raise DimensionMismatchError(f.dim, g.dim, "affine map")
    return AffineMap(vec_sub(f.gradient, g.gradient), f.offset - g.offset)


__all__ = [
    'Rational',
    'Vec',
    'AffineMap',
    'parse_rational',
    'format_rational',
    'to_rational',
    'make_vec',
    'dot',
    'vec_add',
    'vec_sub',
    'vec_scale',
    'interpolate',
    'affine_eval',
    'affine_sub',
]
