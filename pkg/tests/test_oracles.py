import random
from fractions import Fraction

import pytest

from constructions.line_families import Line, LineFamily, convex_tangent, random_generic, slope_graded
from constructions.monotone_path import longest_monotone_path
from constructions.sawtooth import sawtooth
from cpa.expression import leaf_components
from cpa.random_instances import random_expression
from geometry.arrangement import Hyperplane, enumerate_cells
from oracles.paths import exhaustive_monotone_paths
from oracles.sampling import min_vertex_gap, sample_piece_lower_bound
from oracles.sign_scan import scan_coverage, sign_scan
from processors.piece_counter import decompose
from utils.exceptions import ConstructionError, InstanceTooLargeError

F = Fraction


def test_grid_oracle_on_abs(abs_x):
    estimate = sample_piece_lower_bound(abs_x, [-2], [2], 9)
    assert estimate.count == 2
    assert estimate.total_cells == 8
    assert estimate.resolves_features


def test_grid_oracle_on_fig1(fig1):
    estimate = sample_piece_lower_bound(fig1, [0, -4], [4, 0], 81)
    assert estimate.count == 5
    assert estimate.count <= decompose(fig1).maximal_piece_count


def test_grid_oracle_on_sawtooth():
    estimate = sample_piece_lower_bound(sawtooth(2), [-1], [5], 121)
    assert estimate.count == 4


def test_coarse_grid_undercounts(abs_x):
    # step 2 straddles the kink, the only cells carry no unique label
    estimate = sample_piece_lower_bound(abs_x, [-1], [1], 2)
    assert estimate.count == 0
    assert estimate.labeled_cells == 0


def test_grid_oracle_argument_checks(abs_x):
    with pytest.raises(ConstructionError):
        sample_piece_lower_bound(abs_x, [1], [0], 5)
    with pytest.raises(ConstructionError):
        sample_piece_lower_bound(abs_x, [0, 0], [1, 1], 5)
    with pytest.raises(ConstructionError):
        sample_piece_lower_bound(abs_x, [0], [1], 1)


def test_min_vertex_gap(abs_x):
    assert min_vertex_gap(abs_x, [F(-1)], [F(1)]) is None
    assert min_vertex_gap(sawtooth(2), [F(-1)], [F(5)]) == 1


def test_sign_scan_of_concurrent_lines():
    planes = [Hyperplane((1, 0), 0), Hyperplane((0, 1), 0), Hyperplane((1, 1), 0)]
    observed = sign_scan(planes, [-2, -2], [2, 2], 9)
    assert len(observed) == 6
    assert scan_coverage(observed, enumerate_cells(planes, 2)) == 1


def test_sign_scan_is_a_subset_of_the_cells():
    planes = [Hyperplane((1, 0), 0), Hyperplane((0, 1), 0), Hyperplane((1, 1), 5)]
    cells = enumerate_cells(planes, 2)
    observed = sign_scan(planes, [-1, -1], [1, 1], 5)
    assert observed <= {cell.signs for cell in cells}
    assert scan_coverage(observed, cells) == F(4, 7)


def test_sign_scan_without_planes():
    assert sign_scan([], [0], [1], 3) == {()}


def test_exhaustive_paths_match_known_lengths():
    assert exhaustive_monotone_paths(convex_tangent(4)) == 4
    assert exhaustive_monotone_paths(slope_graded(3)) == 0
    assert exhaustive_monotone_paths(LineFamily((Line(1, 0), Line(1, 1)))) == 0


def test_exhaustive_paths_refuse_large_families():
    with pytest.raises(InstanceTooLargeError):
        exhaustive_monotone_paths(convex_tangent(6))


@pytest.mark.parametrize("seed", range(8))
def test_dynamic_program_matches_exhaustive_search(seed):
    family = random_generic(5, seed)
    assert longest_monotone_path(family).length == exhaustive_monotone_paths(family)


def test_random_expressions_are_reproducible():
    first = random_expression(random.Random(4), 2, 5)
    second = random_expression(random.Random(4), 2, 5)
    assert first == second
    assert 1 <= len(leaf_components(first)) <= 5


@pytest.mark.parametrize("seed", range(5))
def test_random_one_dimensional_instances_agree_with_the_grid(seed):
    e = random_expression(random.Random(seed), 1, 4, bound=3)
    exact = decompose(e).maximal_piece_count
    estimate = sample_piece_lower_bound(e, [-12], [12], 241)
    assert estimate.count <= exact
