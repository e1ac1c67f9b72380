import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from attain.game import (
    Direction,
    Game,
    GameFormatError,
    MixedAction,
    format_game,
    game_from_rows,
    mixed_payoff,
    parse_game,
    payoff_bound,
    scalarize,
    translate,
)

from conftest import games, simplex_points


def test_mixed_action_validation():
    assert MixedAction([0.25, 0.75]).weights.tolist() == [0.25, 0.75]
    with pytest.raises(ValueError):
        MixedAction([0.5, 0.6])
    with pytest.raises(ValueError):
        MixedAction([1.5, -0.5])
    with pytest.raises(ValueError):
        MixedAction([])
    # LP noise is cleaned up
    w = MixedAction([1 + 5e-10, -5e-10]).weights
    assert w.min() >= 0 and abs(w.sum() - 1) < 1e-15


def test_mixed_action_is_read_only():
    p = MixedAction.uniform(3)
    with pytest.raises(ValueError):
        p.weights[0] = 1.0
    assert MixedAction.pure(3, 1) == MixedAction([0, 1, 0])


def test_scalar_game_gets_trailing_axis():
    g = Game([[-3.0, -1.0], [1.0, 3.0]])
    assert g.payoffs.shape == (2, 2, 1)
    assert g.m == 1


def test_payoffs_are_immutable():
    g = Game(np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        g.payoffs[0, 0, 0] = 1.0


def test_mixed_payoff_example4(ex4):
    # mixing U and M against R moves along (1-eps, 1)
    eps = 0.1
    u = mixed_payoff(ex4, [eps, 1 - eps, 0], [0, 1])
    assert np.allclose(u, [1 - eps, 1])
    with pytest.raises(ValueError):
        mixed_payoff(ex4, [0.5, 0.5], [1, 0])


def test_scalarize_and_translate_examples(ex1, ex4):
    assert np.array_equal(scalarize(ex1, [1.0]).entries, [[-3, -1], [1, 3]])
    shifted = translate(ex4, [0.5, 0.5])
    assert np.allclose(shifted.payoffs[0, 0], [0.5, 0.5])
    assert np.allclose(scalarize(ex4, Direction.unit([1, 1])).entries[2], [0, 0])
    with pytest.raises(ValueError):
        scalarize(ex4, [1.0])


def test_payoff_bound(ex1, net):
    assert payoff_bound(ex1) == 3.0
    assert payoff_bound(net) == pytest.approx(np.hypot(13, 12))


def test_direction_unit():
    d = Direction.unit([3, 4])
    assert np.allclose(d.vector, [0.6, 0.8])
    assert np.allclose(Direction.unit([1, -1], "l1").vector, [0.5, -0.5])
    with pytest.raises(ValueError):
        Direction.unit([0, 0])


@given(games(), st.data())
def test_payoff_is_bilinear(g, data):
    p1 = data.draw(simplex_points(g.n1))
    p2 = data.draw(simplex_points(g.n1))
    q = data.draw(simplex_points(g.n2))
    a = data.draw(st.floats(0, 1))
    lhs = g.payoff(a * p1 + (1 - a) * p2, q)
    rhs = a * g.payoff(p1, q) + (1 - a) * g.payoff(p2, q)
    assert np.allclose(lhs, rhs, atol=1e-10)


@given(games(), st.data())
def test_scalarize_commutes_with_payoff(g, data):
    p = data.draw(simplex_points(g.n1))
    q = data.draw(simplex_points(g.n2))
    lam = np.array(data.draw(st.lists(st.floats(-3, 3), min_size=g.m, max_size=g.m)))
    lhs = p @ scalarize(g, lam).entries @ q
    assert lhs == pytest.approx(lam @ g.payoff(p, q), abs=1e-9)


@given(games())
def test_text_round_trip(g):
    assert parse_game(format_game(g)) == g


def test_round_trip_keeps_labels(net):
    back = parse_game(format_game(net))
    assert back == net
    assert back.labels1[0] == "(5,5,5)"


@pytest.mark.parametrize(
    "text, line",
    [
        ("gam m=1 n1=1 n2=1\n0 0 1\n", 1),
        ("game m=1 n1=1\n0 0 1\n", 1),
        ("game m=1 n1=1 n2=2\n0 0 1\n0 1 2 3\n", 3),
        ("game m=1 n1=1 n2=2\n0 0 1\n0 0 2\n", 3),
        ("game m=1 n1=2 n2=1\n1 0 1\n0 0 2\n", 2),
        ("game m=1 n1=1 n2=2\n# comment\n0 0 1\n", 3),
        ("game m=1 n1=1 n2=1\n0 0 nan\n", 2),
        ("game m=1 n1=1 n2=1\n0 5 1\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GameFormatError) as err:
        parse_game(text)
    assert err.value.lineno == line
    assert f"line {line}" in str(err.value)


def test_comments_and_blank_lines_are_skipped():
    text = "# example\ngame m=2 n1=1 n2=1\n\n0 0 1.5 -2  # entry\n"
    g = parse_game(text)
    assert np.array_equal(g.payoffs[0, 0], [1.5, -2])


def test_game_from_rows():
    g = game_from_rows([[(1, 1), (0, 1)], [(0, 0), (1, 1)]], labels1=("U", "M"))
    assert g.m == 2 and g.action_index(1, "M") == 1
    with pytest.raises(KeyError):
        g.action_index(2, "L")
