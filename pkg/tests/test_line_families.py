from fractions import Fraction

import pytest

from constructions.line_families import (
    KINDS, Line, LineFamily, convex_tangent, grid_like, line_family_from_dict, line_family_generators,
    random_generic, slope_graded,
)
from constructions.monotone_path import longest_monotone_path
from utils.exceptions import ConstructionError, CpaParseError

F = Fraction


def test_meet():
    assert Line(1, 0).meet(Line(-1, 2)) == (F(1), F(1))
    assert Line(2, 0).meet(Line(2, 5)) is None


def test_duplicates_rejected():
    with pytest.raises(ConstructionError):
        LineFamily((Line(1, 0), Line(1, 0)))


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_random_family_is_generic(seed):
    family = random_generic(6, seed)
    assert len(family) == 6
    assert family.generic_position
    assert len(family.vertices()) == 15


def test_random_family_is_prefix_stable():
    small, large = random_generic(4, 3), random_generic(7, 3)
    assert large.lines[:4] == small.lines


def test_random_family_respects_bound():
    family = random_generic(5, 11, coefficient_bound=2)
    assert all(abs(line.a) <= 2 and abs(line.b) <= 2 for line in family.lines)


def test_slope_graded_lines_are_concurrent():
    family = slope_graded(3)
    assert family.distinct_slopes
    assert family.incidences() == {(F(1), F(1)): (0, 1, 2)}


def test_grid_like_repeats_slopes():
    family = grid_like(8)
    assert not family.distinct_slopes
    assert family.lines[6] == Line(-2, 6)
    assert family.lines[0].meet(family.lines[6]) is None


def test_grid_like_small_family_has_three_vertices():
    family = grid_like(3)
    assert family.vertices() == [(F(-2), F(3)), (F(-4, 3), F(8, 3)), (F(-1), F(2))]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_grid_like_families_carry_monotone_paths(n):
    family = line_family_generators("grid-like", n)
    assert len(family.vertices()) > 1
    path = longest_monotone_path(family)
    path.validate(family)
    assert path.length >= 2


def test_grid_like_rejects_vertical_lines():
    with pytest.raises(ConstructionError):
        grid_like(3, palette=(1, None))


def test_convex_tangent_vertices():
    family = convex_tangent(3)
    assert family.vertices() == [(F(3, 2), F(2)), (F(2), F(3)), (F(5, 2), F(6))]
    assert family.generic_position


def test_generators_dispatch():
    for kind in KINDS:
        assert len(line_family_generators(kind, 4, seed=2)) == 4
    with pytest.raises(ConstructionError):
        line_family_generators("spiral", 4)
    with pytest.raises(ConstructionError):
        line_family_generators("convex-tangent", 0)


def test_dict_round_trip():
    family = convex_tangent(4)
    assert line_family_from_dict(family.to_dict()) == family


def test_malformed_family_document():
    with pytest.raises(CpaParseError):
        line_family_from_dict({"lines": [{"a": "1", "b": "x"}]})
    with pytest.raises(CpaParseError):
        line_family_from_dict({"lines": []})
