import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from attain.simplex import Infeasible, Unbounded, linprog_max


def test_small_lp():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    res = linprog_max([3, 2], A_ub=[[1, 1], [1, 3], [1, 0]], b_ub=[4, 6, 3])
    assert res.objective == pytest.approx(11.0)
    assert np.allclose(res.x, [3, 1])
    # strong duality
    assert res.duals_ub @ [4, 6, 3] == pytest.approx(11.0)


def test_cycling_example_terminates():
    # classical degenerate instance on which the largest-coefficient rule cycles
    c = [0.75, -150, 0.02, -6]
    A = [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]]
    res = linprog_max(c, A_ub=A, b_ub=[0, 0, 1])
    assert res.objective == pytest.approx(0.05)


def test_equality_and_negative_rhs():
    # x + y = 1, -x <= -0.25  ->  max y gives 0.75
    res = linprog_max([0, 1], A_ub=[[-1, 0]], b_ub=[-0.25], A_eq=[[1, 1]], b_eq=[1])
    assert res.objective == pytest.approx(0.75)


def test_infeasible_and_unbounded():
    with pytest.raises(Infeasible):
        linprog_max([1], A_eq=[[1]], b_eq=[-1])
    with pytest.raises(Unbounded):
        linprog_max([1, 0], A_ub=[[-1, 1]], b_ub=[1])


def test_redundant_equalities():
    res = linprog_max([1, 1], A_ub=[[1, 0]], b_ub=[0.3], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert res.objective == pytest.approx(1.0)


@given(st.integers(0, 10_000))
@settings(max_examples=80)
def test_matches_reference_solver(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 7, size=2)
    A = rng.uniform(-5, 5, size=(m, n))
    b = rng.uniform(0, 5, size=m)
    c = rng.uniform(-5, 5, size=n)
    # a box keeps the problem bounded
    A = np.vstack([A, np.eye(n)])
    b = np.concatenate([b, np.full(n, 3.0)])
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
    res = linprog_max(c, A_ub=A, b_ub=b)
    assert res.objective == pytest.approx(-ref.fun, abs=1e-8)
    assert np.all(A @ res.x <= b + 1e-9)
    assert res.duals_ub @ b == pytest.approx(res.objective, abs=1e-8)
    assert np.all(res.duals_ub >= -1e-9)
