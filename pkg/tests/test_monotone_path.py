from fractions import Fraction

import pytest

from constructions.families import (
    family_with_path, lift_line_family, longest_path_family, sweep_lines_for, thm8_family,
)
from constructions.line_families import Line, LineFamily, convex_tangent, line_family_from_dict, slope_graded
from constructions.monotone_path import MonotonePath, count_runs, longest_monotone_path, path_to_cpa
from processors.piece_counter import decompose, pieces_1d
from utils.exceptions import ConstructionError, NoPathError

F = Fraction


def test_count_runs():
    assert count_runs((0, 0, 1, 0)) == 3
    assert count_runs((2,)) == 1


def test_path_validation():
    with pytest.raises(ConstructionError):
        MonotonePath(((F(0), F(0)),), ())
    with pytest.raises(ConstructionError):
        MonotonePath(((F(1), F(0)), (F(0), F(0))), (0,))
    with pytest.raises(ConstructionError):
        MonotonePath(((F(0), F(0)), (F(1), F(0))), (0, 1))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_convex_tangent_path_length(k):
    family = convex_tangent(k)
    path = longest_monotone_path(family)
    path.validate(family)
    assert path.length == 2 * k - 4


def test_four_tangents_weave():
    path = longest_monotone_path(convex_tangent(4))
    assert path.vertices[0] == (F(3, 2), F(2))
    assert [line for line, _, _ in path.runs()] == [0, 2, 1, 3]


def test_concurrent_lines_have_no_path():
    with pytest.raises(NoPathError):
        longest_monotone_path(slope_graded(3))


def test_parallel_lines_have_no_path():
    with pytest.raises(NoPathError):
        longest_monotone_path(LineFamily((Line(1, 0), Line(1, 1))))


def test_path_function_pieces_match_length():
    family = convex_tangent(5)
    path = longest_monotone_path(family)
    function = path_to_cpa(path, family)
    assert pieces_1d(function).maximal_piece_count == path.length
    for vertex in path.vertices:
        assert function((vertex[0],)) == vertex[1]


def test_single_run_is_affine():
    family = LineFamily((Line(1, 0), Line(-1, 2)))
    path = MonotonePath(((F(0), F(0)), (F(1), F(1))), (0,))
    assert path.length == 1
    assert pieces_1d(path_to_cpa(path, family)).maximal_piece_count == 1


def test_path_off_its_carrier_is_rejected():
    family = LineFamily((Line(1, 0), Line(-1, 2)))
    path = MonotonePath(((F(0), F(0)), (F(1), F(1))), (1,))
    with pytest.raises(ConstructionError):
        path_to_cpa(path, family)


def test_sweep_pairing():
    assert sweep_lines_for(2) == 4


def test_family_certificate_in_one_dimension():
    instance = thm8_family(1, 4, kind="convex-tangent")
    assert instance.path.length == 4
    certificate = instance.certificate()
    assert certificate["certified_pieces_lower_bound"] == 4
    assert certificate["path_pieces_lower_bound"] == 4
    assert certificate["source"] == "convex-tangent"
    assert certificate["path"]["carriers"] == list(instance.path.carriers)
    assert line_family_from_dict(certificate["lines"]) == instance.lines


@pytest.mark.slow
def test_family_in_the_plane():
    instance = thm8_family(2, sweep_lines_for(2), m=2, kind="convex-tangent")
    assert instance.lifted.base_pieces == 6
    assert instance.lifted.certified_pieces_lower_bound == 12
    assert instance.lifted.component_budget == 10
    assert instance.path_pieces_lower_bound == 8
    assert instance.certificate()["clamped_base_pieces"] == 6
    dec = decompose(instance.expression)
    assert dec.n_active == 10
    assert dec.maximal_piece_count == 16


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_longest_path_family_beats_or_keeps_the_tangents(n):
    lines, path, source = longest_path_family(n)
    path.validate(lines)
    assert path == longest_monotone_path(lines)
    assert path.length >= 2 * n - 4
    if path.length == 2 * n - 4:
        assert source == "convex-tangent"
    else:
        assert source.startswith("random-generic seed ")


def test_longest_path_lengths_never_shrink_as_lines_are_added():
    lengths = [longest_path_family(n)[1].length for n in range(3, 9)]
    assert lengths == sorted(lengths)


def test_longest_path_family_needs_a_vertex_pair():
    with pytest.raises(NoPathError):
        longest_path_family(2)


def test_family_with_path_dispatch():
    lines, path, source = family_with_path("convex-tangent", 5)
    assert (len(lines), path.length, source) == (5, 6, "convex-tangent")
    assert family_with_path("random-generic", 4, seed=3)[2] == "random-generic seed 3"
    with pytest.raises(ConstructionError):
        family_with_path("spiral", 4)


def test_lifting_a_given_family():
    instance = lift_line_family(1, convex_tangent(5))
    assert instance.kind == "file"
    assert instance.lifted.m == 5
    assert instance.certificate()["path_length"] == 6
