"""Delay strategies, strategy transformers and the adversaries used in tests.

A delay strategy is a pair (updating times, block policy). The engine calls
the policy once at each updating time ``tau_k`` with an :class:`Observation`
holding the joint play since the previous call, and the policy returns the
mixed action held constant on ``[tau_k, tau_{k+1})``. Since the observation
never extends past ``tau_k``, non-anticipation holds by construction.
"""

from __future__ import annotations

import ast
import heapq
import itertools
import math
from typing import Callable, Iterator, NamedTuple, Sequence

import numpy as np

from .game import Game, as_weights, payoff_bound, scalarize, translate
from .solver import solve


class Segment(NamedTuple):
    """Joint play on ``[t0, t1)``: player 1 held ``p``, player 2 held ``q``."""

    t0: float
    t1: float
    p: np.ndarray
    q: np.ndarray


class Observation(NamedTuple):
    time: float
    segments: tuple[Segment, ...]


Policy = Callable[[int, Observation], np.ndarray]


class StrategyError(ValueError):
    pass


def harmonic_reach(eta: float, n_blocks: int) -> float:
    """``eta * H_n``: the time reached after ``n_blocks`` harmonic blocks."""
    if n_blocks <= 0:
        return 0.0
    if n_blocks < 10_000:
        return eta * math.fsum(1.0 / k for k in range(1, n_blocks + 1))
    n = float(n_blocks)
    # asymptotic expansion; error below 1e-17 at this size
    return eta * (math.log(n) + 0.5772156649015329 + 1 / (2 * n) - 1 / (12 * n * n))


def harmonic_blocks_needed(eta: float, horizon: float) -> float:
    """Approximate block count for ``eta * H_k`` to reach ``horizon``."""
    return math.exp(horizon / eta - 0.5772156649015329)


class DelayStrategy:
    """Base class. Subclasses provide :meth:`times` and :meth:`policy`."""

    name = "strategy"

    def times(self) -> Iterator[float]:
        raise NotImplementedError

    def policy(self, game: Game, player: int) -> Policy:
        raise NotImplementedError

    def reach(self, n_blocks: int) -> float:
        """Updating time of block ``n_blocks`` (inf if the sequence stops earlier)."""
        t = 0.0
        for k, t in enumerate(self.times()):
            if k == n_blocks:
                return t
        return math.inf

    def __repr__(self):
        return self.name


def _check_action(w, n: int, who: str) -> np.ndarray:
    w = as_weights(w)
    if w.size != n:
        raise StrategyError(f"{who}: mixed action of size {w.size}, expected {n}")
    return w


def _pure(n: int, i: int) -> np.ndarray:
    w = np.zeros(n)
    w[i] = 1.0
    return w


# -- steering toward zero -------------------------------------------------------


class _Steering:
    """Optimal actions of <-S, G> cached by the unit direction of S."""

    def __init__(self, game: Game, max_cache: int = 20_000):
        self.game = game
        self.cache: dict[bytes, np.ndarray] = {}
        self.max_cache = max_cache
        # S = 0: every action is optimal; take the lexicographically smallest
        # probability vector, i.e. the last pure action
        self.zero_action = _pure(game.n1, game.n1 - 1)

    def __call__(self, S: np.ndarray) -> np.ndarray:
        norm = float(np.linalg.norm(S))
        if norm == 0.0:
            return self.zero_action
        lam = -S / norm
        key = lam.tobytes()
        p = self.cache.get(key)
        if p is None:
            if len(self.cache) >= self.max_cache:
                self.cache.clear()
            p = solve(scalarize(self.game, lam)).p_star.weights
            self.cache[key] = p
        return p


def _accumulate(game: Game, S: np.ndarray, segments: Sequence[Segment]) -> None:
    for seg in segments:
        S += (seg.t1 - seg.t0) * game.payoff(seg.p, seg.q)


class ZeroAttainer(DelayStrategy):
    """Harmonic blocks ``tau_k = eta * H_k``; block k plays optimally in <-S_k, G>.

    With ``target`` set, ``S_k`` is the cumulative payoff minus the target,
    so the same blocks steer the payoff toward that point.
    """

    def __init__(self, eta: float, target=None):
        if not eta > 0:
            raise StrategyError(f"eta must be positive, got {eta}")
        self.eta = float(eta)
        self.target = None if target is None else np.asarray(target, dtype=float).ravel()
        self.name = f"zero_attainer(eta={self.eta:g})"

    def times(self):
        t = 0.0
        yield t
        for k in itertools.count(1):
            t += self.eta / k
            yield t

    def reach(self, n_blocks):
        return harmonic_reach(self.eta, n_blocks)

    def policy(self, game, player):
        if player != 1:
            raise StrategyError("zero_attainer is a player-1 strategy")
        steer = _Steering(game)
        S = np.zeros(game.m) if self.target is None else -self.target.copy()

        def act(k, obs):
            _accumulate(game, S, obs.segments)
            return steer(S)

        return act


def zero_attainer(eta: float, target=None) -> ZeroAttainer:
    return ZeroAttainer(eta, target)


class Stationary(DelayStrategy):
    def __init__(self, action):
        self.action = as_weights(action)
        self.name = f"stationary({np.round(self.action, 6).tolist()})"

    def times(self):
        yield 0.0

    def reach(self, n_blocks):
        return math.inf

    def policy(self, game, player):
        n = game.n1 if player == 1 else game.n2
        w = _check_action(self.action, n, self.name)
        return lambda k, obs: w


def stationary(q) -> Stationary:
    return Stationary(q)


class BlockSwitching(DelayStrategy):
    """Cycles through ``actions`` with a fixed block length."""

    def __init__(self, period: float, actions):
        if not period > 0:
            raise StrategyError("period must be positive")
        if len(actions) == 0:
            raise StrategyError("need at least one action")
        self.period = float(period)
        self.actions = [as_weights(a) for a in actions]
        self.name = f"block_switching(period={self.period:g}, n={len(self.actions)})"

    def times(self):
        for k in itertools.count():
            yield k * self.period

    def reach(self, n_blocks):
        return n_blocks * self.period

    def policy(self, game, player):
        n = game.n1 if player == 1 else game.n2
        acts = [_check_action(a, n, self.name) for a in self.actions]
        return lambda k, obs: acts[k % len(acts)]


class Locking(DelayStrategy):
    """Observe on ``[0, observe)``, then lock the column with the largest
    nonzero integrated payoff against the observed play (player 2 only)."""

    def __init__(self, observe: float = 0.01, initial: int = 0):
        if not observe > 0:
            raise StrategyError("observe must be positive")
        self.observe = float(observe)
        self.initial = int(initial)
        self.name = f"locking(observe={self.observe:g})"

    def times(self):
        yield 0.0
        yield self.observe

    def reach(self, n_blocks):
        return math.inf if n_blocks >= 2 else (0.0, self.observe)[n_blocks]

    def policy(self, game, player):
        if player != 2:
            raise StrategyError("locking adversary plays as player 2")
        first = _pure(game.n2, self.initial)
        self.locked = None

        def act(k, obs):
            if k == 0:
                return first
            totals = np.zeros((game.n2, game.m))
            for seg in obs.segments:
                # integrated payoff of each column against the observed p
                totals += (seg.t1 - seg.t0) * np.einsum("i,ijm->jm", seg.p, game.payoffs)
            norms = np.linalg.norm(totals, axis=1)
            j = int(np.argmax(norms)) if norms.max() > 0 else self.initial
            self.locked = j
            return _pure(game.n2, j)

        return act


class GreedyPusher(DelayStrategy):
    """Every ``period``, plays the column that pushes the cumulative payoff
    furthest from zero against player 1's latest observed action."""

    def __init__(self, period: float = 0.1):
        if not period > 0:
            raise StrategyError("period must be positive")
        self.period = float(period)
        self.name = f"greedy_pusher(period={self.period:g})"

    def times(self):
        for k in itertools.count():
            yield k * self.period

    def reach(self, n_blocks):
        return n_blocks * self.period

    def policy(self, game, player):
        if player != 2:
            raise StrategyError("greedy pusher plays as player 2")
        S = np.zeros(game.m)
        state = {"p": np.full(game.n1, 1.0 / game.n1)}

        def act(k, obs):
            _accumulate(game, S, obs.segments)
            if obs.segments:
                state["p"] = obs.segments[-1].p
            cols = np.einsum("i,ijm->jm", state["p"], game.payoffs) @ S
            return _pure(game.n2, int(np.argmax(cols)) if np.any(S) else 0)

        return act


class WeakAttainerEx4(DelayStrategy):
    """Blocks of length eps in the three-row game with rows U, M, B:
    inside the open eps-ball around (1, 1) play B, otherwise mix
    eps on U with 1-eps on M."""

    def __init__(self, eps: float):
        if not 0 < eps < 1:
            raise StrategyError(f"eps must lie in (0, 1), got {eps}")
        self.eps = float(eps)
        self.name = f"weak_attainer_ex4(eps={self.eps:g})"

    def times(self):
        for k in itertools.count():
            yield k * self.eps

    def reach(self, n_blocks):
        return n_blocks * self.eps

    def policy(self, game, player):
        if player != 1 or game.n1 != 3 or game.m != 2:
            raise StrategyError("weak_attainer_ex4 needs the 3-row, 2-dimensional game as player 1")
        target = np.array([1.0, 1.0])
        mix = np.array([self.eps, 1.0 - self.eps, 0.0])
        rest = _pure(3, 2)
        gamma = np.zeros(2)

        def act(k, obs):
            _accumulate(game, gamma, obs.segments)
            return rest if np.linalg.norm(gamma - target) < self.eps else mix

        return act


def weak_attainer_ex4(eps: float) -> WeakAttainerEx4:
    return WeakAttainerEx4(eps)


# -- transformers ---------------------------------------------------------------


class Accelerated(DelayStrategy):
    """Runs ``inner`` on the clock ``beta * t``."""

    def __init__(self, inner: DelayStrategy, beta: float):
        if not beta > 0:
            raise StrategyError("beta must be positive")
        self.inner = inner
        self.beta = float(beta)
        self.name = f"accelerate({inner.name}, beta={self.beta:g})"

    def times(self):
        for t in self.inner.times():
            yield t / self.beta

    def reach(self, n_blocks):
        return self.inner.reach(n_blocks) / self.beta

    def policy(self, game, player):
        inner = self.inner.policy(game, player)
        b = self.beta

        def act(k, obs):
            segs = tuple(Segment(s.t0 * b, s.t1 * b, s.p, s.q) for s in obs.segments)
            return inner(k, Observation(obs.time * b, segs))

        return act


def accelerate(s: DelayStrategy, beta: float) -> DelayStrategy:
    return Accelerated(s, beta)


def phi(t: float, beta: float, part: int) -> float:
    """Measure of ``[0, t)`` intersected with T1 (part 1) or T2 (part 2)."""
    whole = math.floor(t)
    frac = t - whole
    if part == 1:
        return whole * beta + min(frac, beta)
    return whole * (1.0 - beta) + max(frac - beta, 0.0)


def phi_inverse(s: float, beta: float, part: int) -> float:
    """First real time at which part ``part`` has accumulated measure ``s``."""
    width = beta if part == 1 else 1.0 - beta
    whole = math.floor(s / width)
    r = min(max(s - whole * width, 0.0), width)
    return whole + r if part == 1 else whole + beta + r


def _dedup(times: Iterator[float]) -> Iterator[float]:
    last = -math.inf
    for t in times:
        if t > last:
            last = t
            yield t


class Interleaved(DelayStrategy):
    """Plays ``sx`` on T1 = union of [l, l+beta) and ``sy`` on the complement,
    each on its own clock phi_j and fed only the play inside its own set."""

    def __init__(self, sx: DelayStrategy, sy: DelayStrategy, beta: float):
        if not 0 < beta < 1:
            raise StrategyError(f"beta must lie in (0, 1), got {beta}")
        self.sx, self.sy, self.beta = sx, sy, float(beta)
        self.name = f"interleave({sx.name}, {sy.name}, beta={self.beta:g})"

    def _switches(self):
        for ell in itertools.count():
            yield float(ell)
            yield ell + self.beta

    def times(self):
        b = self.beta
        return _dedup(
            heapq.merge(
                self._switches(),
                (phi_inverse(s, b, 1) for s in self.sx.times()),
                (phi_inverse(s, b, 2) for s in self.sy.times()),
            )
        )

    def policy(self, game, player):
        b = self.beta
        comps = []
        for part, s in ((1, self.sx), (2, self.sy)):
            it = iter(s.times())
            comps.append(
                {"part": part, "policy": s.policy(game, player), "it": it,
                 "next": next(it, None), "k": 0, "pending": [], "action": None}
            )

        def act(k, obs):
            for seg in obs.segments:
                mid = 0.5 * (seg.t0 + seg.t1)
                c = comps[0] if mid - math.floor(mid) < b else comps[1]
                part = c["part"]
                c["pending"].append(Segment(phi(seg.t0, b, part), phi(seg.t1, b, part), seg.p, seg.q))
            for c in comps:
                while c["next"] is not None and phi_inverse(c["next"], b, c["part"]) <= obs.time:
                    inner = Observation(c["next"], tuple(c["pending"]))
                    c["action"] = c["policy"](c["k"], inner)
                    c["k"] += 1
                    c["pending"] = []
                    c["next"] = next(c["it"], None)
            # same arithmetic as the switch times ell + beta
            active = comps[0] if obs.time < math.floor(obs.time) + b else comps[1]
            if active["action"] is None:
                raise StrategyError("interleaved component has not started")
            return active["action"]

        return act


def interleave(sx: DelayStrategy, sy: DelayStrategy, beta: float) -> DelayStrategy:
    return Interleaved(sx, sy, beta)


class XAttainer(DelayStrategy):
    """Two phases. On [0, 1/delta]: a zero-attainer for G - delta*x accelerated
    by delta*T. Afterwards: harmonic blocks steering the cumulative payoff
    toward x in G.

    The default step sizes follow the worst-case bounds (error eps in both
    phases) and can make horizons unreachable under the engine's block cap;
    pass ``eta1``/``eta2`` explicitly for practical runs.
    """

    def __init__(self, x, delta: float, T: float, eps: float, eta1=None, eta2=None):
        if not (delta > 0 and T > 0 and eps > 0):
            raise StrategyError("delta, T and eps must be positive")
        self.x = np.asarray(x, dtype=float).ravel()
        self.delta, self.T, self.eps = float(delta), float(T), float(eps)
        self.eta1, self.eta2 = eta1, eta2
        self.switch = 1.0 / self.delta
        self.name = f"x_attainer(x={self.x.tolist()}, delta={self.delta:g}, T={self.T:g})"

    def _etas(self, game: Game) -> tuple[float, float]:
        inner = translate(game, self.delta * self.x)
        u1 = max(payoff_bound(inner), 1e-300)
        u2 = max(payoff_bound(game), 1e-300)
        eta1 = self.eta1 if self.eta1 is not None else self.eps * self.delta * self.T / (2 * u1)
        eta2 = self.eta2 if self.eta2 is not None else self.eps / (2 * u2)
        return float(eta1), float(eta2)

    def bind(self, game: Game) -> "XAttainer":
        self.eta1, self.eta2 = self._etas(game)
        return self

    def _phase1(self) -> Accelerated:
        if self.eta1 is None:
            raise StrategyError("step sizes unresolved; call bind(game) first")
        return Accelerated(ZeroAttainer(self.eta1), self.delta * self.T)

    def times(self):
        for t in self._phase1().times():
            if t >= self.switch:
                break
            yield t
        t = self.switch
        yield t
        for k in itertools.count(1):
            t += self.eta2 / k
            yield t

    def policy(self, game, player):
        if player != 1:
            raise StrategyError("x_attainer is a player-1 strategy")
        if self.x.size != game.m:
            raise StrategyError(f"target has dimension {self.x.size}, game has m={game.m}")
        self.bind(game)
        inner = self._phase1().policy(translate(game, self.delta * self.x), 1)
        steer = _Steering(game)
        S = -self.x.copy()

        def act(k, obs):
            _accumulate(game, S, obs.segments)
            if obs.time < self.switch:
                return inner(k, obs)
            return steer(S)

        return act


def x_attainer(g: Game, x, delta: float, T: float, eps: float, eta1=None, eta2=None) -> DelayStrategy:
    """Strategy steering the cumulative payoff of ``g`` to ``x``; see :class:`XAttainer`."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != g.m:
        raise StrategyError(f"target has dimension {x.size}, game has m={g.m}")
    if not np.any(x):
        eta = eta2 if eta2 is not None else eps / (2 * max(payoff_bound(g), 1e-300))
        return ZeroAttainer(eta)
    return XAttainer(x, delta, T, eps, eta1, eta2).bind(g)


# -- discrete time --------------------------------------------------------------


class DiscreteStrategy:
    """Stage rule ``(stage, S, observed_p) -> mixed action``.

    ``observes_current`` marks adversaries that see player 1's mixed action
    of the same stage; this exceeds the delay information structure and is
    used only for the discrete lower-bound argument.
    """

    observes_current = False
    name = "discrete"

    def __init__(self, rule, name: str, observes_current: bool = False):
        self.rule = rule
        self.name = name
        self.observes_current = observes_current

    def __call__(self, stage: int, S: np.ndarray, p=None) -> np.ndarray:
        return as_weights(self.rule(stage, S, p))

    def __repr__(self):
        return self.name


def discrete_pure(n: int, i: int) -> DiscreteStrategy:
    w = _pure(n, i)
    return DiscreteStrategy(lambda l, S, p: w, f"pure({i})")


def discrete_uniform(n: int) -> DiscreteStrategy:
    w = np.full(n, 1.0 / n)
    return DiscreteStrategy(lambda l, S, p: w, "uniform")


def discrete_alternating(n: int, a: int = 0, b: int = 1) -> DiscreteStrategy:
    wa, wb = _pure(n, a), _pure(n, b)
    return DiscreteStrategy(lambda l, S, p: wa if l % 2 == 0 else wb, "alternating")


def discrete_sign(n: int, when_positive: int = 0, otherwise: int = 1) -> DiscreteStrategy:
    """Scalar games: play ``when_positive`` while S > 0."""
    wp, wo = _pure(n, when_positive), _pure(n, otherwise)
    return DiscreteStrategy(lambda l, S, p: wp if S[0] > 0 else wo, "cumulative_sign")


def sign_counter_discrete(row: int = 0, cols: tuple[int, int] = (0, 1), n2: int = 2) -> DiscreteStrategy:
    """Plays ``cols[0]`` when p(row) >= 1/2 and ``cols[1]`` otherwise."""
    wl, wr = _pure(n2, cols[0]), _pure(n2, cols[1])
    return DiscreteStrategy(
        lambda l, S, p: wl if p[row] >= 0.5 else wr, "sign_counter", observes_current=True
    )


# -- textual specs --------------------------------------------------------------


def _registry(game: Game | None):
    def need_game():
        if game is None:
            raise StrategyError("this strategy needs the game")
        return game

    return {
        "zero_attainer": lambda eta, target=None: ZeroAttainer(eta, target),
        "stationary": lambda q: Stationary(q),
        "pure": lambda i, player=2: Stationary(
            _pure(need_game().n1 if player == 1 else need_game().n2, int(i))
        ),
        "uniform": lambda player=2: Stationary(
            np.full(need_game().n1 if player == 1 else need_game().n2, 1.0)
            / (need_game().n1 if player == 1 else need_game().n2)
        ),
        "block_switching": lambda period, actions: BlockSwitching(period, actions),
        "locking": lambda observe=0.01, initial=0: Locking(observe, initial),
        "greedy_pusher": lambda period=0.1: GreedyPusher(period),
        "weak_attainer_ex4": lambda eps: WeakAttainerEx4(eps),
        "accelerate": lambda s, beta: Accelerated(s, beta),
        "interleave": lambda sx, sy, beta: Interleaved(sx, sy, beta),
        "x_attainer": lambda x, delta, T, eps, eta1=None, eta2=None: x_attainer(
            need_game(), x, delta, T, eps, eta1, eta2
        ),
    }


def parse_strategy(text: str, game: Game | None = None) -> DelayStrategy:
    """Build a strategy from text such as ``zero_attainer(eta=0.1)`` or
    ``accelerate(zero_attainer(eta=0.1), beta=2)``."""
    try:
        tree = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise StrategyError(f"cannot parse strategy {text!r}: {exc.msg}") from None
    reg = _registry(game)

    def build(node):
        if isinstance(node, ast.Name):
            node = ast.Call(func=node, args=[], keywords=[])
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            if node.func.id not in reg:
                raise StrategyError(f"unknown strategy {node.func.id!r}; known: {', '.join(sorted(reg))}")
            args = [build(a) for a in node.args]
            kwargs = {kw.arg: build(kw.value) for kw in node.keywords}
            try:
                return reg[node.func.id](*args, **kwargs)
            except TypeError as exc:
                raise StrategyError(f"bad arguments for {node.func.id}: {exc}") from None
        try:
            return ast.literal_eval(node)
        except ValueError:
            raise StrategyError(f"unsupported expression in strategy {text!r}") from None

    s = build(tree)
    if not isinstance(s, DelayStrategy):
        raise StrategyError(f"{text!r} does not describe a strategy")
    return s
