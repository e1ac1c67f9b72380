"""Command-line front end.

Exit codes: 0 success, 1 claim failure, 2 usage or input error,
3 undecided verdict where a decision was required.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import checker
from .engine import EngineError, run_discrete, run_match
from .game import GameFormatError, load_game, scalarize
from .scenarios import scenarios
from .solver import solve
from .strategies import (
    StrategyError,
    discrete_alternating,
    discrete_pure,
    discrete_sign,
    discrete_uniform,
    parse_strategy,
    sign_counter_discrete,
)

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_vector(text: str) -> np.ndarray:
    cleaned = text.replace("[", " ").replace("]", " ").replace(",", " ").split()
    try:
        return np.array([float(v) for v in cleaned])
    except ValueError:
        raise UsageError(f"cannot read a vector from {text!r}") from None


def get_game(ref: str):
    """A game file path, or the name of a bundled scenario."""
    if os.path.exists(ref):
        return load_game(ref)
    bundled = scenarios()
    if ref in bundled and bundled[ref].game is not None:
        return bundled[ref].game
    raise UsageError(f"no game file or bundled game named {ref!r}")


def _emit(rows, as_json: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if as_json:
        json.dump(checker._jsonable(dict(rows)), stream, indent=2)
        stream.write("\n")
        return
    for k, v in rows:
        if isinstance(v, (list, tuple, np.ndarray)):
            v = " ".join(f"{x:.12g}" if isinstance(x, (float, np.floating)) else str(x) for x in np.ravel(v))
        elif isinstance(v, float):
            v = f"{v:.12g}"
        stream.write(f"{k}\t{v}\n")


def _verdict_rows(v) -> list:
    rows = [("verdict", v.label()), ("condition", v.condition)]
    if v.margin is not None:
        rows.append(("margin", float(v.margin)))
    if v.witness is not None:
        rows.append(("witness", json.dumps(checker._jsonable(v.witness))))
    return rows


def cmd_value(args) -> int:
    g = get_game(args.game)
    lam = parse_vector(args.lam)
    sol = solve(scalarize(g, lam))
    if args.json:
        _emit([("value", sol.value), ("p_star", sol.p_star.weights), ("q_star", sol.q_star.weights),
               ("gap", sol.gap)], True)
    else:
        print(f"{sol.value:.12g}")
        _emit([("p_star", sol.p_star.weights), ("q_star", sol.q_star.weights), ("gap", sol.gap)], False)
    return EXIT_OK


def cmd_check_zero(args) -> int:
    g = get_game(args.game)
    if args.strict or args.resolution is not None:
        v = checker.check_zero_attainable(g, args.resolution or checker.DEFAULT_RESOLUTION, strict=args.strict)
    else:
        v = checker.zero_attainable(g)
    _emit(_verdict_rows(v), args.json)
    return EXIT_UNDECIDED if v.status is checker.Status.UNDECIDED else EXIT_OK


def cmd_check_point(args) -> int:
    g = get_game(args.game)
    x = parse_vector(args.x)
    schedule = list(parse_vector(args.delta_schedule)) if args.delta_schedule else None
    v = checker.attainability_verdict(g, x, h=args.resolution, delta_schedule=schedule)
    rows = _verdict_rows(v)
    for key in ("B1", "B3", "B4"):
        sub = v.details.get(key)
        if sub is not None:
            rows.append((key, sub.label()))
    _emit(rows, args.json)
    return EXIT_UNDECIDED if v.status is checker.Status.UNDECIDED else EXIT_OK


def cmd_check_all(args) -> int:
    g = get_game(args.game)
    zero = checker.zero_attainable(g, args.resolution)
    c2 = checker.check_zero_attainable(g, args.resolution, strict=True)
    if c2.holds:
        summary = "Holds (C2 certified): every vector is attainable"
    elif zero.holds:
        summary = "Holds (B2): zero is attainable"
    elif zero.fails:
        summary = f"Fails (B2): zero is not attainable, {zero.label()}"
    else:
        summary = "Undecided"
    rows = [("summary", summary), ("zero", zero.label()), ("C2", c2.label())]
    if "lower_bound" in c2.certificate:
        rows.append(("C2_lower_bound", float(c2.certificate["lower_bound"])))
    _emit(rows, args.json)
    return EXIT_UNDECIDED if summary == "Undecided" else EXIT_OK


def cmd_simulate(args) -> int:
    g = get_game(args.game)
    s1 = parse_strategy(args.p1, g)
    s2 = parse_strategy(args.p2, g)
    tr = run_match(g, s1, s2, args.horizon, max_blocks=args.max_blocks)
    target = parse_vector(args.target) if args.target else None
    summary = tr.summary(target=target, from_time=args.from_time)
    if args.csv:
        tr.to_csv(args.csv)
    if args.plot:
        from .plotting import plot_trajectory

        plot_trajectory(tr, args.plot, target=target)
    _emit(list(summary.items()), args.json)
    return EXIT_OK


DISCRETE_PLAYERS = {
    "pure": lambda g, i: discrete_pure(g.n1, int(i)),
    "uniform": lambda g, _: discrete_uniform(g.n1),
    "alternating": lambda g, _: discrete_alternating(g.n1),
    "sign": lambda g, _: discrete_sign(g.n1),
}


def cmd_discrete(args) -> int:
    g = get_game(args.game)
    name, _, arg = args.p1.partition(":")
    if name not in DISCRETE_PLAYERS:
        raise UsageError(f"unknown discrete strategy {name!r}; known: {', '.join(DISCRETE_PLAYERS)}")
    s1 = DISCRETE_PLAYERS[name](g, arg or 0)
    if args.p2 != "sign_counter":
        raise UsageError("the only discrete adversary is sign_counter")
    tr = run_discrete(g, s1, sign_counter_discrete(n2=g.n2), args.stages)
    if args.csv:
        np.savetxt(args.csv, np.hstack([np.arange(len(tr.S))[:, None], tr.S]), delimiter=",",
                   header="stage," + ",".join(f"S_{i + 1}" for i in range(g.m)), comments="")
    inside = np.all(np.abs(tr.S[1:]) <= 0.5, axis=1)
    _emit([("stages", args.stages), ("final_S", tr.S[-1]), ("stages_within_half", int(inside.sum())),
           ("adversary_sees_current_action", tr.observed_current)], args.json)
    return EXIT_OK


def cmd_scenario(args) -> int:
    bundled = scenarios()
    if args.action == "list":
        for name, sc in bundled.items():
            print(f"{name}\t{sc.description}")
            for c in sc.claims:
                print(f"  {c.criterion}\t{c.id}\t{c.description}")
        return EXIT_OK
    if not args.name or args.name not in bundled:
        raise UsageError(f"unknown scenario {args.name!r}; known: {', '.join(bundled)}")
    results = bundled[args.name].run(args.claim)
    if not results:
        raise UsageError(f"scenario {args.name} has no claim {args.claim!r}")
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}\t{r.criterion}\t{r.claim}\t{r.detail}")
    if args.plot_dir:
        from .plotting import plot_trajectory

        os.makedirs(args.plot_dir, exist_ok=True)
        for r in results:
            for i, (label, tr) in enumerate(r.trajectories.items()):
                plot_trajectory(tr, os.path.join(args.plot_dir, f"{r.claim}-{i:02d}.png"), title=label)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(checker._jsonable([{"claim": r.claim, "criterion": r.criterion, "passed": r.passed,
                                          "detail": r.detail, "metrics": r.metrics} for r in results]),
                      fh, indent=2)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CLAIM


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="attain", description="Attainability checks and simulations.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", help="value of the game scalarized along a direction")
    p.add_argument("game")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("check-zero", help="is the zero vector attainable")
    p.add_argument("game")
    p.add_argument("--strict", action="store_true", help="check v_lambda > 0 (every vector attainable)")
    p.add_argument("--resolution", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_zero)

    p = sub.add_parser("check-point", help="is a given vector attainable")
    p.add_argument("game")
    p.add_argument("--x", required=True)
    p.add_argument("--delta-schedule", default=None)
    p.add_argument("--resolution", type=float, default=checker.DEFAULT_RESOLUTION)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_point)

    p = sub.add_parser("check-all", help="zero attainability and condition C2")
    p.add_argument("game")
    p.add_argument("--resolution", type=float, default=0.01)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_all)

    p = sub.add_parser("simulate", help="run a continuous-time match")
    p.add_argument("game")
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--horizon", type=float, required=True)
    p.add_argument("--target", default=None)
    p.add_argument("--from-time", type=float, default=0.0)
    p.add_argument("--max-blocks", type=int, default=100_000)
    p.add_argument("--csv", default=None)
    p.add_argument("--plot", default=None, help="write a PNG of the trajectory")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("discrete", help="discrete-time play against the sign-counter adversary")
    p.add_argument("game")
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--p1", default="uniform", help="pure:<i>, uniform, alternating or sign")
    p.add_argument("--p2", default="sign_counter")
    p.add_argument("--csv", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_discrete)

    p = sub.add_parser("scenario", help="list or run bundled scenarios")
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("name", nargs="?")
    p.add_argument("--claim", default=None, help="run one claim (id or criterion)")
    p.add_argument("--json", default=None, help="write results to this file")
    p.add_argument("--plot-dir", default=None, help="write trajectory figures here")
    p.set_defaults(func=cmd_scenario)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except GameFormatError as exc:
        print(f"{getattr(args, 'game', '')}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, StrategyError, EngineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
