from fractions import Fraction

from components.fan import cm_sequences, cone_system
from utility.exact_lp import (cone_implies, cone_implies_fm, cone_strictly_feasible, facet_indices,
                              fm_feasible, interior_point, is_feasible, solve_lp)


def test_solve_lp_optimum():
    result = solve_lp([1, 1], [([1, 0], '<=', 1), ([0, 1], '<=', 2)], 2)
    assert result.status == 'optimal'
    assert result.value == 3
    assert result.point == (1, 2)


def test_solve_lp_with_equalities_and_fractions():
    result = solve_lp([1, 0], [([1, 1], '==', 1), ([0, 1], '>=', Fraction(1, 3))], 2)
    assert result.status == 'optimal'
    assert result.value == Fraction(2, 3)
    assert isinstance(result.value, Fraction)


def test_solve_lp_infeasible_and_unbounded():
    assert solve_lp([1], [([1], '>=', 1), ([1], '<=', 0)], 1).status == 'infeasible'
    assert solve_lp([1], [([1], '>=', 0)], 1).status == 'unbounded'
    assert not is_feasible([([1], '>=', 1), ([1], '<=', 0)], 1)


def test_fourier_motzkin():
    assert not fm_feasible([([1], 0, True), ([-1], 0, True)], 1)
    assert fm_feasible([([1], 0, False), ([-1], -1, False)], 1)
    assert not fm_feasible([([1, 1], 2, False), ([-1, 0], 0, False), ([0, -1], 0, False)], 2)


def test_cone_helpers_d2():
    n = (-1, 2, -1)
    assert cone_strictly_feasible([n], 3)
    assert not cone_strictly_feasible([n, tuple(-v for v in n)], 3)
    assert cone_implies([n], n, 3)
    assert not cone_implies([n], tuple(-v for v in n), 3)
    assert cone_implies_fm([n], n, 3)


def test_facets_drop_implied_inequalities():
    n1, n2 = (1, -2, 1, 0), (0, 1, -2, 1)
    implied = tuple(x + y for x, y in zip(n1, n2))
    assert facet_indices([n1, n2, implied], 4) == [0, 1]


def test_interior_point():
    point, slack = interior_point([(-1, 2, -1)], 3)
    assert slack == 1
    assert sum(x * y for x, y in zip((-1, 2, -1), point)) >= slack
    point, slack = interior_point([(-1, 2, -1), (1, -2, 1)], 3)
    assert point is None or slack <= 0


def test_solve_lp_with_nonnegative_variables():
    result = solve_lp([-1], [([1], '>=', 2)], 1, nonnegative=True)
    assert result.status == 'optimal'
    assert result.value == -2
    assert result.point == (2,)
    assert solve_lp([0], [([1], '<=', -1)], 1).status == 'optimal'
    assert solve_lp([0], [([1], '<=', -1)], 1, nonnegative=True).status == 'infeasible'


def test_implication_agrees_with_fourier_motzkin():
    sequences = cm_sequences(3)
    for i in sequences:
        normals = cone_system(i, closed=True).normals
        for j in sequences:
            for target in cone_system(j).normals:
                assert cone_implies(normals, target, 4) == cone_implies_fm(normals, target, 4), (i, j, target)


def test_facets_of_a_cone_with_a_redundant_inequality():
    # b1 <= b2 <= b3 makes b1 <= b3 redundant
    normals = [(1, -2, 1, 0), (0, 1, -2, 1), (1, -1, -1, 1)]
    assert facet_indices(normals, 4) == [0, 1]
    assert facet_indices(normals[:2], 4) == [0, 1]
