import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from smlat.simplex import solve_feasibility


def test_simple_feasible_system():
    # x1 + x2 = 1, x1 - x2 <= 0
    x = solve_feasibility(2, [([1, 1], 1)], [([1, -1], 0)])
    assert x is not None
    assert x[0] + x[1] == 1 and x[0] <= x[1]
    assert all(v >= 0 for v in x)


def test_infeasible_system():
    # x1 + x2 = 1 and x1 + x2 = 2 (encoded as two equalities)
    assert solve_feasibility(2, [([1, 1], 1), ([1, 1], 2)], []) is None


def test_redundant_equality_handled():
    # duplicated equality row leaves an artificial basic at zero
    x = solve_feasibility(2, [([1, 1], 1), ([1, 1], 1)], [])
    assert x is not None and x[0] + x[1] == 1


def test_exactness():
    # 3x = 1 forces the non-representable-in-float 1/3
    x = solve_feasibility(1, [([3], 1)], [])
    assert x == [Fraction(1, 3)]


def test_solution_is_vertex_of_small_polytope():
    # x1 + x2 + x3 = 1, x >= 0 has vertices at the unit axes only
    x = solve_feasibility(3, [([1, 1, 1], 1)], [])
    assert sorted(x) == [0, 0, 1]


def test_against_scipy_on_random_systems():
    rng = random.Random(4)
    agree = 0
    for _ in range(60):
        nv = rng.randrange(2, 5)
        eq = [([rng.randrange(-2, 3) for _ in range(nv)], rng.randrange(0, 3))
              for _ in range(rng.randrange(1, 3))]
        ub = [([rng.randrange(-2, 3) for _ in range(nv)], rng.randrange(0, 4))
              for _ in range(rng.randrange(0, 3))]
        mine = solve_feasibility(nv, eq, ub)
        res = linprog(c=[0] * nv,
                      A_eq=np.array([r for r, _ in eq]),
                      b_eq=np.array([b for _, b in eq]),
                      A_ub=np.array([r for r, _ in ub]) if ub else None,
                      b_ub=np.array([b for _, b in ub]) if ub else None,
                      bounds=[(0, None)] * nv, method="highs")
        assert (mine is not None) == res.success
        if mine is not None:
            # exact solution satisfies every constraint with no tolerance
            for row, b in eq:
                assert sum(c * v for c, v in zip(row, mine)) == b
            for row, b in ub:
                assert sum(c * v for c, v in zip(row, mine)) <= b
            assert all(v >= 0 for v in mine)
            agree += 1
    assert agree > 10


def test_rejects_negative_rhs():
    with pytest.raises(ValueError):
        solve_feasibility(1, [([1], -1)], [])
