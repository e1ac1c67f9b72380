"""Event-driven execution of matches between delay strategies.

Controls are piecewise constant, so the cumulative payoff is piecewise
linear and is integrated exactly: each interval contributes its length
times the bilinear payoff.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .game import Game, as_weights
from .strategies import DelayStrategy, DiscreteStrategy, Observation, Segment, StrategyError

MAX_BLOCKS = 100_000
MAX_POINTS = 1_000_000


class EngineError(RuntimeError):
    pass


class HorizonUnreachable(EngineError):
    pass


@dataclass
class Trajectory:
    """Breakpoints ``times`` (N+1), cumulative payoff ``gamma`` (N+1, m) and
    the actions ``p`` (N, n1), ``q`` (N, n2) held on each interval.

    ``updates1``/``updates2`` list each player's updating times that were
    used; ``next1``/``next2`` hold the first updating time past the horizon.
    """

    game: Game
    times: np.ndarray
    gamma: np.ndarray
    p: np.ndarray
    q: np.ndarray
    updates1: np.ndarray
    updates2: np.ndarray
    next1: float = math.inf
    next2: float = math.inf
    names: tuple[str, str] = ("", "")

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def gamma_at(self, t: float) -> np.ndarray:
        """Cumulative payoff at any time in [0, horizon] (exact interpolation)."""
        if not 0 <= t <= self.horizon:
            raise ValueError(f"time {t} outside [0, {self.horizon}]")
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        if i >= len(self.p):
            return self.gamma[-1].copy()
        return self.gamma[i] + (t - self.times[i]) * self.game.payoff(self.p[i], self.q[i])

    def block_states(self, player: int = 1) -> np.ndarray:
        """Cumulative payoff ``S_k`` at each of the player's updating times."""
        ups = self.updates1 if player == 1 else self.updates2
        idx = np.searchsorted(self.times, ups)
        return self.gamma[idx]

    def block_widths(self, player: int = 1) -> np.ndarray:
        """Width of the player's block containing each interval."""
        ups = self.updates1 if player == 1 else self.updates2
        nxt = self.next1 if player == 1 else self.next2
        ends = np.append(ups[1:], nxt)
        k = np.searchsorted(ups, self.times[:-1], side="right") - 1
        return (ends - ups)[k]

    def summary(self, target=None, from_time: float = 0.0) -> dict:
        out = {
            "players": list(self.names),
            "horizon": self.horizon,
            "final_gamma": self.gamma[-1].tolist(),
            "intervals": len(self.p),
            "blocks1": len(self.updates1),
            "blocks2": len(self.updates2),
        }
        if target is not None:
            out["target"] = np.asarray(target, dtype=float).tolist()
            out["from_time"] = from_time
            out["sup_distance"] = distance_to_target(self, target, from_time)
        return out

    def to_csv(self, path) -> None:
        m, n1, n2 = self.game.m, self.game.n1, self.game.n2
        header = (
            ["t"]
            + [f"gamma_{i + 1}" for i in range(m)]
            + [f"p_{i + 1}" for i in range(n1)]
            + [f"q_{j + 1}" for j in range(n2)]
        )
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for i, t in enumerate(self.times):
                # the last breakpoint repeats the final actions
                k = min(i, len(self.p) - 1)
                row = [t, *self.gamma[i], *self.p[k], *self.q[k]]
                w.writerow([repr(float(v)) for v in row])

    def to_json(self, path, **kwargs) -> None:
        with open(path, "w") as fh:
            json.dump(self.summary(**kwargs), fh, indent=2)


def _check_reach(s: DelayStrategy, horizon: float, max_blocks: int, who: str) -> None:
    reach = s.reach(max_blocks)
    if reach < horizon:
        raise HorizonUnreachable(
            f"{who} {s.name}: updating times reach only t={reach:.6g} within "
            f"{max_blocks} blocks, horizon is {horizon:g}"
        )


def run_match(
    g: Game,
    s1: DelayStrategy,
    s2: DelayStrategy,
    horizon: float,
    max_blocks: int = MAX_BLOCKS,
    max_points: int = MAX_POINTS,
) -> Trajectory:
    """Play ``s1`` against ``s2`` on ``[0, horizon]``.

    At a common updating time player 1's policy is evaluated first; both
    only see play strictly before that time.
    """
    if not horizon > 0 or not math.isfinite(horizon):
        raise ValueError(f"horizon must be positive and finite, got {horizon}")
    _check_reach(s1, horizon, max_blocks, "player 1")
    _check_reach(s2, horizon, max_blocks, "player 2")

    pol1, pol2 = s1.policy(g, 1), s2.policy(g, 2)
    it1, it2 = iter(s1.times()), iter(s2.times())
    next1, next2 = next(it1, None), next(it2, None)
    if next1 != 0 or next2 != 0:
        raise StrategyError("updating times must start at 0")

    times = [0.0]
    gammas = [np.zeros(g.m)]
    ps, qs, ups1, ups2 = [], [], [], []
    pend1: list[Segment] = []
    pend2: list[Segment] = []
    gamma = np.zeros(g.m)
    t = 0.0
    p = q = None
    while t < horizon:
        if next1 <= t:
            p = _validated(pol1(len(ups1), Observation(t, tuple(pend1))), g.n1, s1)
            pend1 = []
            ups1.append(t)
            next1 = _advance(it1, t, s1)
            if len(ups1) > max_blocks:
                raise HorizonUnreachable(f"player 1 exceeded {max_blocks} blocks before t={horizon:g}")
        if next2 <= t:
            q = _validated(pol2(len(ups2), Observation(t, tuple(pend2))), g.n2, s2)
            pend2 = []
            ups2.append(t)
            next2 = _advance(it2, t, s2)
            if len(ups2) > max_blocks:
                raise HorizonUnreachable(f"player 2 exceeded {max_blocks} blocks before t={horizon:g}")
        t_next = min(next1, next2, horizon)
        gamma = gamma + (t_next - t) * g.payoff(p, q)
        seg = Segment(t, t_next, p, q)
        pend1.append(seg)
        pend2.append(seg)
        times.append(t_next)
        gammas.append(gamma)
        ps.append(p)
        qs.append(q)
        if len(times) > max_points:
            raise EngineError(f"trajectory exceeds {max_points} points before t={horizon:g}")
        t = t_next
    return Trajectory(
        game=g,
        times=np.array(times),
        gamma=np.array(gammas),
        p=np.array(ps),
        q=np.array(qs),
        updates1=np.array(ups1),
        updates2=np.array(ups2),
        next1=next1,
        next2=next2,
        names=(s1.name, s2.name),
    )


def _advance(it, t: float, s: DelayStrategy) -> float:
    nxt = next(it, None)
    if nxt is None:
        return math.inf
    if not nxt > t:
        raise StrategyError(f"{s.name}: updating times not increasing ({nxt} after {t})")
    return float(nxt)


def _validated(w, n: int, s: DelayStrategy) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise StrategyError(f"{s.name} returned an action of shape {w.shape}, expected ({n},)")
    return w


# -- distances ------------------------------------------------------------------


def _segment_point_sup(a: np.ndarray, b: np.ndarray, y: np.ndarray) -> np.ndarray:
    # distance to a point is convex along a segment: the sup is at an endpoint
    return np.maximum(np.linalg.norm(a - y, axis=1), np.linalg.norm(b - y, axis=1))


def _segment_set_sup(a: np.ndarray, b: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Sup over each segment of the distance to a finite point set.

    The distance to a finite set is the min of convex functions, so its
    maximum on a segment sits at an endpoint or where two of them tie.
    """
    d = b - a
    cands = [np.zeros(len(a)), np.ones(len(a))]
    for i in range(len(Y)):
        for j in range(i + 1, len(Y)):
            # |a + s d - yi|^2 = |a + s d - yj|^2 is linear in s
            w = Y[j] - Y[i]
            denom = 2 * d @ w
            num = Y[j] @ Y[j] - Y[i] @ Y[i] - 2 * a @ w
            with np.errstate(divide="ignore", invalid="ignore"):
                s = np.where(np.abs(denom) > 0, num / denom, 0.0)
            cands.append(np.clip(s, 0.0, 1.0))
    best = np.zeros(len(a))
    for s in cands:
        pts = a + s[:, None] * d
        dist = np.min(np.linalg.norm(pts[:, None, :] - Y[None, :, :], axis=2), axis=1)
        best = np.maximum(best, dist)
    return best


def _box_distance(pts: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.linalg.norm(pts - np.clip(pts, lo, hi), axis=1)


def distance_to_target(traj: Trajectory, Y, from_time: float = 0.0) -> float:
    """Sup of the distance from gamma(t) to ``Y`` over ``[from_time, horizon]``.

    ``Y`` is a point, an array of points (k, m), or a box given as
    ``("box", lo, hi)``. For a point or a box the distance is convex along
    each linear piece, so the endpoint maximum is exact.
    """
    if from_time > traj.horizon:
        raise ValueError(f"from_time {from_time} beyond horizon {traj.horizon}")
    start = traj.gamma_at(max(from_time, 0.0))
    i0 = int(np.searchsorted(traj.times, from_time, side="right"))
    pts = np.vstack([start, traj.gamma[i0:]])
    a, b = pts[:-1], pts[1:]
    if len(a) == 0:
        a = b = start[None, :]
    if isinstance(Y, tuple) and len(Y) == 3 and Y[0] == "box":
        lo, hi = np.asarray(Y[1], float), np.asarray(Y[2], float)
        return float(max(_box_distance(a, lo, hi).max(), _box_distance(b, lo, hi).max()))
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        return float(_segment_point_sup(a, b, Y).max())
    return float(_segment_set_sup(a, b, Y).max())


# -- discrete time --------------------------------------------------------------


@dataclass
class DiscreteTrajectory:
    S: np.ndarray  # (n+1, m), S[0] = 0
    p: np.ndarray  # (n, n1)
    a: np.ndarray  # (n, n2)
    observed_current: bool = field(default=False)


def run_discrete(g: Game, s1: DiscreteStrategy, s2: DiscreteStrategy, n_stages: int) -> DiscreteTrajectory:
    """Stage game: S_{l+1} = S_l + u(p_l, a_l), with expected payoffs under p_l.

    An adversary flagged ``observes_current`` sees p_l before choosing a_l.
    """
    if n_stages < 1:
        raise ValueError("n_stages must be at least 1")
    S = np.zeros((n_stages + 1, g.m))
    P = np.zeros((n_stages, g.n1))
    A = np.zeros((n_stages, g.n2))
    for ell in range(n_stages):
        p = as_weights(s1(ell, S[ell].copy()))
        a = as_weights(s2(ell, S[ell].copy(), p if s2.observes_current else None))
        P[ell], A[ell] = p, a
        S[ell + 1] = S[ell] + g.payoff(p, a)
    return DiscreteTrajectory(S, P, A, observed_current=s2.observes_current)
