import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from supnorm.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp


def test_small_lp():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    res = solve_lp([-1, -1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == OPTIMAL
    assert res.value == Fraction(-14, 5)
    assert res.x == (Fraction(8, 5), Fraction(6, 5))


def test_infeasible_and_unbounded():
    assert solve_lp([1], [[1]], [-1]).status == INFEASIBLE
    assert solve_lp([-1], [[-1]], [0]).status == UNBOUNDED


def test_equality_and_negative_rhs():
    # min x s.t. x + y = 3, -x <= -1
    res = solve_lp([1, 0], [[-1, 0]], [-1], [[1, 1]], [3])
    assert res.status == OPTIMAL and res.value == 1


@pytest.mark.parametrize("seed", range(25))
def test_against_scipy(seed):
    rng = random.Random(seed)
    n, m = rng.randint(2, 5), rng.randint(2, 6)
    A = [[rng.randint(-4, 6) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(0, 10) for _ in range(m)]
    A.append([1] * n)  # keeps the problem bounded
    b.append(20)
    c = [rng.randint(-5, 5) for _ in range(n)]
    ours = solve_lp(c, A, b)
    ref = linprog(np.array(c, float), A_ub=np.array(A, float), b_ub=np.array(b, float),
                  bounds=[(0, None)] * n, method="highs")
    assert ours.status == OPTIMAL and ref.status == 0
    assert float(ours.value) == pytest.approx(ref.fun, abs=1e-7)
    for row, rhs in zip(A, b):
        assert sum(a * x for a, x in zip(row, ours.x)) <= rhs
