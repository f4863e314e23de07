import random
from fractions import Fraction

import pytest

from cpa.expression import (
    Leaf, Max, Min, clamp, constant, cpa_eval, cpa_max, cpa_min, embed, leaf, leaf_components, spline_1d,
)
from cpa.random_instances import random_expression, random_rational
from geometry.rational import AffineMap
from utils.exceptions import ConstructionError, DimensionMismatchError, InvalidRangeError

F = Fraction


def test_extremum_needs_two_children():
    with pytest.raises(ConstructionError):
        Min((leaf([1], 0),))


def test_children_must_share_dimension():
    with pytest.raises(DimensionMismatchError):
        Max((leaf([1], 0), leaf([1, 0], 0)))


def test_unary_builders_return_the_child():
    only = leaf([2], 1)
    assert cpa_min(only) is only
    assert cpa_max(only) is only
    with pytest.raises(ConstructionError):
        cpa_min()


def test_fig1_values(fig1):
    assert fig1.dim == 2
    assert cpa_eval(fig1, (F(0), F(0))) == 0
    assert cpa_eval(fig1, (F(1), F(5))) == -1
    assert cpa_eval(fig1, (F(1, 2), F(5))) == F(-1, 2)
    assert cpa_eval(fig1, (F(2), F(5))) == -1
    assert cpa_eval(fig1, (F(4), F(5))) == -4


def test_eval_checks_dimension(fig1):
    with pytest.raises(DimensionMismatchError):
        cpa_eval(fig1, (F(1),))


def test_leaf_components_are_distinct_in_order(fig1):
    components = leaf_components(fig1)
    assert len(components) == 4
    assert components[0] == AffineMap.from_coefficients([0, 1], 0)
    assert components[1] == AffineMap.from_coefficients([-1, 0], 0)


def test_clamp(abs_x):
    clamped = clamp(abs_x, 0, 2)
    assert clamped((F(-5),)) == 2
    assert clamped((F(1, 2),)) == F(1, 2)
    with pytest.raises(InvalidRangeError):
        clamp(abs_x, 1, 1)


def test_embed_reads_the_requested_coordinates(abs_x):
    lifted = embed(abs_x, 3, start=2)
    assert lifted.dim == 3
    assert lifted((F(9), F(9), F(-4))) == 4


def test_constant_leaf():
    c = constant(2, "5/3")
    assert isinstance(c, Leaf)
    assert c((F(1), F(2))) == F(5, 3)


def test_spline_reproduces_its_pieces():
    pieces = [
        AffineMap.from_coefficients([1], 0),
        AffineMap.from_coefficients([-1], 2),
        AffineMap.from_coefficients([1], -2),
    ]
    spline = spline_1d(pieces, [1, 2])
    assert spline((F(0),)) == 0
    assert spline((F(1),)) == 1
    assert spline((F(3, 2),)) == F(1, 2)
    assert spline((F(5),)) == 3
    assert spline((F(-4),)) == -4


def test_spline_rejects_a_jump():
    pieces = [AffineMap.from_coefficients([1], 0), AffineMap.from_coefficients([1], 1)]
    with pytest.raises(ConstructionError):
        spline_1d(pieces, [0])


def test_spline_rejects_unsorted_breakpoints():
    pieces = [AffineMap.from_coefficients([0], 0)] * 3
    with pytest.raises(ConstructionError):
        spline_1d(pieces, [2, 1])


def shuffled(e, rng):
    """Same function with every node's children in a random order"""
    if isinstance(e, Leaf):
        return e
    children = [shuffled(child, rng) for child in e.args]
    rng.shuffle(children)
    return type(e)(tuple(children))


@pytest.mark.parametrize("seed", range(10))
def test_eval_ignores_child_order_and_hits_a_leaf(seed):
    rng = random.Random(seed)
    e = random_expression(rng, 2, 6)
    reordered = shuffled(e, rng)
    for _ in range(20):
        x = (random_rational(rng, 6), random_rational(rng, 6))
        value = cpa_eval(e, x)
        assert cpa_eval(reordered, x) == value
        assert any(f(x) == value for f in leaf_components(e))


def test_wide_clamp_leaves_fig1_unchanged_on_its_box(fig1):
    clamped = clamp(fig1, -10, 10)
    for i in range(41):
        for j in range(41):
            x = (F(i, 10), F(-j, 10))
            assert clamped(x) == fig1(x)


@pytest.mark.parametrize("seed", range(50))
def test_clamp_adds_at_most_two_components(seed):
    e = random_expression(random.Random(seed), 2, 5)
    assert len(leaf_components(clamp(e, -3, 3))) <= len(leaf_components(e)) + 2
