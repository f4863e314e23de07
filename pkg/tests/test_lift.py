from fractions import Fraction

import pytest

from constructions.lift import (
    clamp_for_lift, clamp_to_box_range, iterate_lift, lift, lift_clamped, lift_with_certificate, reference_box,
)
from cpa.expression import leaf
from processors.piece_counter import PieceCounter, decompose
from utils.exceptions import ConstructionError

F = Fraction


def test_reference_box_of_abs(abs_x):
    assert reference_box(abs_x) == ((F(-1),), (F(1),))


def test_reference_box_without_vertices():
    assert reference_box(leaf([1, 1], 0)) == ((F(-1), F(-1)), (F(1), F(1)))


def test_constant_range_is_widened():
    base, lo, hi = clamp_to_box_range(leaf([0], 3))
    assert (lo, hi) == (F(5, 2), F(7, 2))
    assert base((F(100),)) == 3


def test_abs_lift_certificate(abs_x):
    result = lift_with_certificate(abs_x, 2)
    assert result.d == 2
    assert result.base_pieces == 4
    assert result.clamp_range == (F(0), F(1))
    assert result.sawtooth_range == (F(-1), F(2))
    assert result.certified_pieces_lower_bound == 8
    assert result.component_budget == 8
    dec = decompose(result.expression)
    assert dec.maximal_piece_count >= 8
    assert dec.n_active <= result.component_budget


def test_lifted_function_values(abs_x):
    h = lift(abs_x, 1)
    # min(clamp(|x|, 0, 1), s(t)) with s rising from -1 at t=0 to 2 at t=1
    assert h((F(1, 2), F(1))) == F(1, 2)
    assert h((F(1, 2), F(0))) == -1


def test_invalid_m(abs_x):
    with pytest.raises(ConstructionError):
        lift(abs_x, 0)


def test_iterate_identity(abs_x):
    result = iterate_lift(abs_x, 1, 3)
    assert result.expression is abs_x
    assert result.certified_pieces_lower_bound == 2


def test_iterate_requires_a_line_function(fig1):
    with pytest.raises(ConstructionError):
        iterate_lift(fig1, 3, 2)


def test_iterate_to_three_dimensions(abs_x):
    result = iterate_lift(abs_x, 3, 2)
    assert result.d == 3
    assert result.certified_pieces_lower_bound == 16
    assert result.component_budget == 14


@pytest.mark.slow
def test_iterated_certificate_holds(abs_x):
    result = iterate_lift(abs_x, 3, 2)
    assert decompose(result.expression).maximal_piece_count >= result.certified_pieces_lower_bound


def test_clamped_base_is_counted_once_for_every_m(abs_x, mocker):
    counter = PieceCounter()
    spy = mocker.spy(counter, "count")
    clamped = clamp_for_lift(abs_x, counter)
    results = [lift_clamped(clamped, m) for m in (1, 2, 3)]
    assert spy.call_count == 1
    assert clamped.pieces == 4
    assert [r.certified_pieces_lower_bound for r in results] == [4, 8, 12]
    assert [r.component_budget for r in results] == [6, 8, 10]
    for m, result in zip((1, 2, 3), results):
        assert result.certificate()["clamped_base_pieces"] == 4
        assert result.expression == lift_with_certificate(abs_x, m).expression
