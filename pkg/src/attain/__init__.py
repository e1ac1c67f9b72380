"""Attainability of vector payoffs in continuous-time repeated games."""

from .checker import (
    Status,
    Verdict,
    attainability_verdict,
    check_B3,
    check_B4,
    check_zero_attainable,
    check_zero_exact_small,
    delta_star,
    value_direction,
    zero_attainable,
)
from .engine import HorizonUnreachable, Trajectory, distance_to_target, run_discrete, run_match
from .game import (
    Direction,
    Game,
    GameFormatError,
    MatrixGame,
    MixedAction,
    format_game,
    load_game,
    mixed_payoff,
    parse_game,
    payoff_bound,
    save_game,
    scalarize,
    translate,
)
from .solver import GameSolution, SolverError, solve, value
from .strategies import (
    DelayStrategy,
    accelerate,
    interleave,
    parse_strategy,
    sign_counter_discrete,
    stationary,
    weak_attainer_ex4,
    x_attainer,
    zero_attainer,
)

__version__ = "0.1.0"
