import random
from fractions import Fraction
from itertools import combinations

import pytest

from cpa.expression import Max, Min, clamp, constant, leaf, spline_1d
from cpa.random_instances import random_expression
from geometry.rational import AffineMap, dot
from processors.piece_counter import (
    PieceCounter, bisector_arrangement, bisector_vertices, box_extrema, count_pieces, decompose,
    pieces_1d, restrict_to_slice,
)
from utils.exceptions import ConstructionError, UnsupportedDimensionError

F = Fraction


def test_single_leaf_is_one_piece():
    dec = decompose(leaf([1, -2], 3))
    assert (dec.n_active, dec.cell_count, dec.maximal_piece_count) == (1, 1, 1)


def test_abs_has_two_pieces(abs_x, counter):
    assert counter.pieces_1d(abs_x).maximal_piece_count == 2
    assert counter.decompose(abs_x).maximal_piece_count == 2


def test_clamped_abs():
    dec = pieces_1d(clamp(Max((leaf([1], 0), leaf([-1], 0))), -1, 1))
    assert dec.maximal_piece_count == 4
    assert dec.n_active == 3
    assert dec.leaf_count == 4


def test_never_active_leaf_is_dropped():
    dec = decompose(Max((leaf([1, 0], 0), leaf([1, 0], -1))))
    assert dec.leaf_count == 2
    assert dec.n_active == 1
    assert dec.maximal_piece_count == 1


def test_fig1_decomposition(fig1, counter):
    dec = counter.decompose(fig1)
    assert dec.n_active == 4
    assert dec.maximal_piece_count == 5
    assert dec.cell_count >= dec.maximal_piece_count
    minus_x = dec.components.index(AffineMap.from_coefficients([-1, 0], 0))
    assert sum(1 for piece in dec.pieces if piece.component == minus_x) == 2


def test_fig1_cells_are_labelled_consistently(fig1, counter):
    dec = counter.decompose(fig1)
    for labeled in dec.cells:
        witness = labeled.cell.witness
        assert fig1(witness) == dec.components[labeled.component](witness)
        assert dec.locate(witness) is not None


def test_pieces_partition_the_cells(fig1):
    dec = decompose(fig1)
    members = sorted(i for piece in dec.pieces for i in piece.cells)
    assert members == list(range(dec.cell_count))
    for index in range(dec.cell_count):
        assert index in dec.pieces[dec.piece_of_cell(index)].cells


def test_fig1_slice_profile(fig1):
    profile = restrict_to_slice(fig1, 1, 0)
    assert profile.dim == 1
    dec = pieces_1d(profile)
    assert dec.maximal_piece_count == 5
    assert dec.n_active == 4
    assert decompose(profile).maximal_piece_count == 5


def test_slicing_a_line_is_unsupported(abs_x):
    with pytest.raises(UnsupportedDimensionError):
        restrict_to_slice(abs_x, 0, 1)
    with pytest.raises(ConstructionError):
        restrict_to_slice(leaf([1, 1], 0), 2, 0)


def test_pieces_1d_rejects_higher_dimension(fig1):
    with pytest.raises(UnsupportedDimensionError):
        pieces_1d(fig1)


def test_count_dispatches_on_dimension(abs_x, fig1):
    assert count_pieces(abs_x).maximal_piece_count == 2
    assert count_pieces(fig1).maximal_piece_count == 5


def test_one_dimensional_paths_agree():
    pieces = [
        AffineMap.from_coefficients([2], 0),
        AffineMap.from_coefficients([-1], 3),
        AffineMap.from_coefficients([1], -1),
        AffineMap.from_coefficients([0], 3),
    ]
    spline = spline_1d(pieces, [1, 2, 4])
    assert pieces_1d(spline).maximal_piece_count == 4
    assert decompose(spline).maximal_piece_count == 4


def test_arrangement_cell_count(abs_x, counter):
    assert counter.arrangement_cell_count(counter.decompose(abs_x)) == 2
    three = Min((leaf([1, 0], 0), leaf([0, 1], 0), constant(2, 0)))
    dec = counter.decompose(three)
    assert dec.maximal_piece_count == 3
    assert counter.arrangement_cell_count(dec) == 6


def test_bisectors_and_vertices():
    components = (
        AffineMap.from_coefficients([1, 0], 0),
        AffineMap.from_coefficients([0, 1], 0),
        AffineMap.constant(2, 0),
    )
    assert len(bisector_arrangement(components)) == 3
    assert bisector_vertices(components) == [(F(0), F(0))]


def test_box_extrema(fig1):
    assert box_extrema(fig1, [0, -4], [4, 0]) == (F(-4), F(0))
    with pytest.raises(ConstructionError):
        box_extrema(fig1, [1, 0], [0, 1])


def test_to_dict_keys(fig1):
    data = decompose(fig1).to_dict()
    assert data["n_active"] == 4
    assert data["maximal_pieces"] == 5
    assert data["leaf_components"] == 4
    assert len(data["components"]) == 4


def test_one_witness_point_per_cell_gives_the_same_count(fig1):
    assert PieceCounter(witness_points=1).decompose(fig1).maximal_piece_count == 5


def interior_points(walls, cell, rng, count=5):
    """Exact points strictly inside the cell, stepped from its witness along random directions"""
    witness = cell.witness
    points = []
    for _ in range(count):
        direction = tuple(F(rng.randint(-5, 5)) for _ in witness)
        step = F(1)
        for h, s in zip(walls, cell.signs):
            rate = s * dot(h.normal, direction)
            if rate < 0:
                step = min(step, s * h.value(witness) / -rate / 2)
        points.append(tuple(c + step * r for c, r in zip(witness, direction)))
    return points


@pytest.mark.parametrize("seed", range(8))
def test_labels_hold_throughout_each_cell(seed):
    rng = random.Random(seed)
    e = random_expression(rng, 2, 5, bound=4)
    dec = decompose(e)
    for labeled in dec.cells:
        walls = dec.walls[labeled.component]
        for point in interior_points(walls, labeled.cell, rng):
            assert tuple(h.side(point) for h in walls) == labeled.cell.signs
            assert e(point) == dec.components[labeled.component](point)


@pytest.mark.parametrize("seed", range(8))
def test_merging_reaches_a_fixed_point(seed):
    dec = decompose(random_expression(random.Random(100 + seed), 2, 5, bound=4))
    for a, b in combinations(range(dec.cell_count), 2):
        first, second = dec.cells[a], dec.cells[b]
        if first.component != second.component:
            continue
        differ = sum(s != t for s, t in zip(first.cell.signs, second.cell.signs))
        if differ == 1:
            assert dec.piece_of_cell(a) == dec.piece_of_cell(b)


@pytest.mark.parametrize("seed", range(10))
def test_every_active_component_owns_a_piece(seed):
    dec = decompose(random_expression(random.Random(200 + seed), 2, 5))
    assert dec.maximal_piece_count >= dec.n_active
    assert {piece.component for piece in dec.pieces} == set(range(dec.n_active))


def test_interval_and_arrangement_counts_agree_on_random_lines():
    for seed in range(100):
        e = random_expression(random.Random(seed), 1, 6, bound=4)
        by_intervals = pieces_1d(e)
        by_cells = decompose(e)
        assert (by_intervals.n_active, by_intervals.cell_count, by_intervals.maximal_piece_count) == (
            by_cells.n_active, by_cells.cell_count, by_cells.maximal_piece_count), f"seed {seed}"
