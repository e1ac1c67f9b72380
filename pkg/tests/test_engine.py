import csv
import heapq
import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from attain.engine import (
    EngineError,
    HorizonUnreachable,
    distance_to_target,
    run_discrete,
    run_match,
)
from attain.game import Game
from attain.strategies import (
    BlockSwitching,
    DelayStrategy,
    Observation,
    discrete_pure,
    discrete_uniform,
    sign_counter_discrete,
    stationary,
    zero_attainer,
)

from conftest import games, simplex_points


class Refined(DelayStrategy):
    """Same play as ``inner`` but with extra, idle updating times."""

    def __init__(self, inner, step):
        self.inner, self.step, self.name = inner, step, f"refined({inner.name})"

    def times(self):
        grid = (k * self.step for k in itertools.count())
        last = None
        for t in heapq.merge(self.inner.times(), grid):
            if t != last:
                yield t
                last = t

    def reach(self, n_blocks):
        return math.inf

    def policy(self, game, player):
        inner = self.inner.policy(game, player)
        base = self.inner.times()
        state = {"next": next(base), "k": -1, "w": None, "segs": []}

        def act(k, obs):
            state["segs"].extend(obs.segments)
            if obs.time >= state["next"]:
                state["k"] += 1
                state["w"] = inner(state["k"], Observation(obs.time, tuple(state["segs"])))
                state["segs"] = []
                state["next"] = next(base, math.inf)
            return state["w"]

        return act


@given(games(max_n=3, max_m=3), st.data())
def test_stationary_pair_is_linear(g, data):
    p = data.draw(simplex_points(g.n1))
    q = data.draw(simplex_points(g.n2))
    T = data.draw(st.floats(0.1, 20))
    tr = run_match(g, stationary(p), stationary(q), T)
    np.testing.assert_allclose(tr.gamma[-1], T * g.payoff(p, q), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(tr.gamma_at(T / 3), T / 3 * g.payoff(p, q), rtol=1e-12, atol=1e-12)


def test_refined_partition_gives_same_payoff(net):
    adv = BlockSwitching(0.13, np.eye(4))
    a = run_match(net, zero_attainer(0.4), adv, 2.0)
    b = run_match(net, Refined(zero_attainer(0.4), 0.01), adv, 2.0)
    assert len(b.times) > len(a.times)
    for t in np.linspace(0, 2, 41):
        np.testing.assert_allclose(a.gamma_at(t), b.gamma_at(t), atol=1e-12)


def test_runs_are_bit_identical(net):
    run = lambda: run_match(net, zero_attainer(0.3), BlockSwitching(0.07, np.eye(4)), 3.0)
    a, b = run(), run()
    assert np.array_equal(a.times, b.times)
    assert np.array_equal(a.gamma, b.gamma)
    assert np.array_equal(a.p, b.p)


def test_player_one_first_at_ties(ex1):
    tr = run_match(ex1, zero_attainer(0.5), BlockSwitching(0.5, [[1, 0], [0, 1]]), 1.0)
    # common updating time 0.5 appears once in the partition
    assert np.sum(np.isclose(tr.times, 0.5)) == 1


def test_horizon_unreachable(ex1):
    with pytest.raises(HorizonUnreachable, match="reach only"):
        run_match(ex1, zero_attainer(0.05), stationary([1, 0]), 2.0)
    with pytest.raises(HorizonUnreachable):
        run_match(ex1, zero_attainer(0.2), stationary([1, 0]), 2.0, max_blocks=100)


def test_point_cap(ex1):
    with pytest.raises(EngineError, match="points"):
        run_match(ex1, BlockSwitching(0.001, [[1, 0], [0, 1]]), stationary([1, 0]), 5.0, max_points=1000)


def test_bad_horizon(ex1):
    for h in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            run_match(ex1, stationary([1, 0]), stationary([1, 0]), h)


def test_gamma_at_and_widths(ex1):
    tr = run_match(ex1, zero_attainer(1.0), stationary([1, 0]), 2.0)
    # first block plays B (last action) against L: payoff +1 per unit time
    assert tr.gamma_at(0.5) == pytest.approx([0.5])
    with pytest.raises(ValueError):
        tr.gamma_at(2.5)
    w = tr.block_widths(1)
    assert w[0] == pytest.approx(1.0)
    # updates at 0, 1, 1.5, 1.833; the open block runs to 2.083
    assert w[-1] == pytest.approx(1 / 4)


def test_distance_segment_sup():
    g = Game(np.array([[[1.0, 0.0]], [[0.0, 1.0]]]))
    tr = run_match(g, BlockSwitching(1.0, [[1, 0], [0, 1]]), stationary([1.0]), 2.0)
    # path (0,0) -> (1,0) -> (1,1)
    assert distance_to_target(tr, (0.0, 0.0)) == pytest.approx(math.sqrt(2))
    assert distance_to_target(tr, (1.0, 0.0)) == pytest.approx(1.0)
    assert distance_to_target(tr, (0.0, 0.0), from_time=1.5) == pytest.approx(math.sqrt(2))
    assert distance_to_target(tr, ("box", (0, 0), (1, 0.5))) == pytest.approx(0.5)
    # set {(0,0), (1,1)}: worst point on the path is (1,0) at distance 1
    assert distance_to_target(tr, np.array([[0.0, 0.0], [1.0, 1.0]])) == pytest.approx(1.0)
    # worst point between two targets lies at the tie, not at a breakpoint
    pts = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert distance_to_target(tr, pts, from_time=0.0) == pytest.approx(math.sqrt(2))


def test_csv_output(tmp_path, ex1):
    tr = run_match(ex1, zero_attainer(0.5), stationary([0.5, 0.5]), 1.0)
    path = tmp_path / "run.csv"
    tr.to_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["t", "gamma_1", "p_1", "p_2", "q_1", "q_2"]
    assert len(rows) == len(tr.times) + 1
    assert float(rows[-1][0]) == 1.0
    assert float(rows[-1][1]) == tr.gamma[-1][0]


def test_summary(ex1):
    tr = run_match(ex1, zero_attainer(0.5), stationary([1, 0]), 1.0)
    s = tr.summary(target=[0.0], from_time=0.5)
    assert s["blocks1"] == len(tr.updates1)
    assert s["sup_distance"] >= 0


def test_discrete_zero_game():
    g = Game(np.zeros((2, 2, 1)))
    tr = run_discrete(g, discrete_uniform(2), sign_counter_discrete(), 10)
    assert np.all(tr.S == 0)


def test_discrete_example1_escapes(ex1):
    tr = run_discrete(ex1, discrete_pure(2, 0), sign_counter_discrete(), 100)
    assert tr.observed_current
    assert np.sum(np.abs(tr.S[1:, 0]) > 0.5) >= 50
    with pytest.raises(ValueError):
        run_discrete(ex1, discrete_pure(2, 0), sign_counter_discrete(), 0)
