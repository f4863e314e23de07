from fractions import Fraction

from geometry.simplex import INFEASIBLE, OPTIMAL, TARGET_REACHED, UNBOUNDED, solve_lp


def test_bounded_optimum():
    result = solve_lp([1, 1], rows_le=[[1, 0], [0, 1]], rhs_le=[2, 3])
    assert result.status == OPTIMAL
    assert result.objective == 5
    assert result.values == (Fraction(2), Fraction(3))


def test_fractional_vertex():
    # max x + y with 2x + y <= 4, x + 3y <= 6
    result = solve_lp([1, 1], rows_le=[[2, 1], [1, 3]], rhs_le=[4, 6])
    assert result.status == OPTIMAL
    assert result.values == (Fraction(6, 5), Fraction(8, 5))
    assert result.objective == Fraction(14, 5)


def test_unbounded_returns_a_ray():
    result = solve_lp([1, 0], rows_le=[[1, -1]], rhs_le=[1])
    assert result.status == UNBOUNDED
    x, y = result.ray
    # the ray keeps x - y <= 1 and improves the objective
    assert x - y <= 0
    assert x > 0


def test_infeasible_system():
    result = solve_lp([1], rows_le=[[1]], rhs_le=[-1])
    assert result.status == INFEASIBLE
    assert not result.feasible


def test_negative_rhs_that_is_feasible():
    # -x <= -1 means x >= 1; minimize x
    result = solve_lp([-1], rows_le=[[-1]], rhs_le=[-1])
    assert result.status == OPTIMAL
    assert result.values == (Fraction(1),)


def test_equality_constraints():
    # max -x subject to x + y = 2, y <= 1
    result = solve_lp([-1, 0], rows_le=[[0, 1]], rhs_le=[1], rows_eq=[[1, 1]], rhs_eq=[2])
    assert result.status == OPTIMAL
    assert result.values == (Fraction(1), Fraction(1))
    assert result.objective == -1


def test_redundant_equalities_are_dropped():
    result = solve_lp([1, 1], rows_le=[[1, 0]], rhs_le=[1], rows_eq=[[1, 1], [2, 2]], rhs_eq=[3, 6])
    assert result.status == OPTIMAL
    assert result.objective == 3


def test_target_stops_early():
    result = solve_lp([1], rows_le=[[1]], rhs_le=[10], target=Fraction(0))
    assert result.status in (TARGET_REACHED, OPTIMAL)
    assert result.objective > 0
