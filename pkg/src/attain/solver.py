"""Values and optimal strategies of zero-sum matrix games.

The LP is the classical positive-shift form: with ``M' = M - min(M) + 1``,

    maximize 1 @ y  subject to  M' @ y <= 1,  y >= 0,

whose optimum is ``1 / (value + shift)``. The column player's strategy is
``y / sum(y)`` and the row player's is the normalized dual. The duality
certificate is always recomputed from the returned strategies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .game import MatrixGame, MixedAction
from .simplex import LPError, linprog_max

CERT_TOL = 1e-8


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class GameSolution:
    value: float
    p_star: MixedAction
    q_star: MixedAction
    gap: float
    # min over columns of p_star's payoff, max over rows against q_star
    lower: float
    upper: float

    def guarantees(self, tol: float = CERT_TOL) -> bool:
        return self.lower >= self.value - tol and self.upper <= self.value + tol


def _entries(mg) -> np.ndarray:
    return mg.entries if isinstance(mg, MatrixGame) else MatrixGame(mg).entries


def certificate(M: np.ndarray, p: np.ndarray, q: np.ndarray) -> tuple[float, float]:
    """(min_j p@M[:, j], max_i M[i] @ q) by direct evaluation."""
    return float((p @ M).min()), float((M @ q).max())


def solve(mg) -> GameSolution:
    """Value and optimal mixed strategies of ``mg`` (row player maximizes)."""
    M = _entries(mg)
    n1, n2 = M.shape
    shift = 1.0 - M.min()
    Mp = M + shift
    try:
        res = linprog_max(np.ones(n2), A_ub=Mp, b_ub=np.ones(n1))
    except LPError as exc:
        raise SolverError(f"{exc}\n{MatrixGame(M).debug_text()}") from exc
    total = res.x.sum()
    if not total > 0:
        raise SolverError(f"degenerate LP optimum (sum y = {total})\n{MatrixGame(M).debug_text()}")
    q = np.clip(res.x, 0.0, None)
    p = np.clip(res.duals_ub, 0.0, None)
    q = q / q.sum()
    p = p / p.sum()
    value = float(1.0 / total - shift)
    lower, upper = certificate(M, p, q)
    gap = upper - lower
    tol = CERT_TOL * max(1.0, np.abs(M).max() / 10.0)
    if abs(gap) > tol or lower < value - tol or upper > value + tol:
        cond = np.linalg.cond(Mp[:, res.basis[res.basis < n2]]) if np.any(res.basis < n2) else np.inf
        raise SolverError(
            f"certificate failed: gap={gap:.3e}, value={value:.17g}, "
            f"lower={lower:.17g}, upper={upper:.17g}, basis cond={cond:.3e}\n"
            + MatrixGame(M).debug_text()
        )
    return GameSolution(value, MixedAction(p), MixedAction(q), gap, lower, upper)


def value(mg) -> float:
    return solve(mg).value


@lru_cache(maxsize=32)
def simplex_grid(n: int, k: int) -> np.ndarray:
    """All points of the probability simplex in R^n with denominator k."""
    if n == 1:
        out = np.ones((1, 1))
    else:
        # stars and bars: choose n-1 bar positions among k+n-1 slots
        bars = np.array(list(itertools.combinations(range(k + n - 1), n - 1)), dtype=np.int64)
        padded = np.hstack([np.full((len(bars), 1), -1), bars, np.full((len(bars), 1), k + n - 1)])
        counts = np.diff(padded, axis=1) - 1
        out = counts / k
    out.setflags(write=False)
    return out


def value_oracle(mg, grid_k: int) -> float:
    """Brute-force lower bound on the value: best grid point of the row simplex."""
    M = _entries(mg)
    n1, n2 = M.shape
    if n1 > 4 or n2 > 4:
        raise ValueError(f"oracle is limited to 4x4 games, got {n1}x{n2}")
    if grid_k < 100:
        raise ValueError("oracle needs grid_k >= 100")
    best = -np.inf
    P = simplex_grid(n1, grid_k)
    for chunk in np.array_split(P, max(1, len(P) // 200_000)):
        best = max(best, float((chunk @ M).min(axis=1).max()))
    return best
