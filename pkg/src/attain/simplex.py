"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Solves ``maximize c @ x`` subject to ``A_ub @ x <= b_ub``, ``A_eq @ x == b_eq``
and ``x >= 0``. Entering variable: lowest index with positive reduced cost.
Leaving variable: minimum ratio, ties broken by the lowest basic index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-10


class LPError(RuntimeError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


@dataclass
class LPResult:
    x: np.ndarray
    objective: float
    duals_ub: np.ndarray
    duals_eq: np.ndarray
    basis: np.ndarray
    iterations: int


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    colvals = T[:, col].copy()
    colvals[row] = 0.0
    T -= np.outer(colvals, T[row])


def _run(T: np.ndarray, basis: np.ndarray, ncols: int, tol: float, max_iter: int) -> int:
    """Optimize the tableau in place. Row 0 holds reduced costs, last column the rhs."""
    it = 0
    while True:
        reduced = T[0, :ncols]
        candidates = np.nonzero(reduced > tol)[0]
        if candidates.size == 0:
            return it
        col = int(candidates[0])
        column = T[1:, col]
        positive = column > tol
        if not positive.any():
            raise Unbounded("objective is unbounded above")
        rhs = T[1:, -1]
        ratios = np.full(column.shape, np.inf)
        ratios[positive] = rhs[positive] / column[positive]
        best = ratios.min()
        # ratio ties within tolerance go to the smallest basic variable index
        tied = np.nonzero(ratios <= best + tol * max(1.0, abs(best)))[0]
        row = int(tied[np.argmin(basis[tied])])
        _pivot(T, row + 1, col)
        basis[row] = col
        it += 1
        if it > max_iter:
            raise LPError(f"simplex did not terminate within {max_iter} pivots")


def linprog_max(
    c,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    tol: float = PIVOT_TOL,
    max_iter: int = 50_000,
) -> LPResult:
    c = np.asarray(c, dtype=float).ravel()
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.atleast_2d(np.asarray(A_ub, dtype=float))
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float).ravel()
    A_eq = np.zeros((0, n)) if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=float))
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float).ravel()
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    if A_ub.shape[1] != n or A_eq.shape[1] != n or b_ub.size != m_ub or b_eq.size != m_eq:
        raise ValueError("inconsistent LP dimensions")
    rows = m_ub + m_eq

    # columns: structural | slacks (one per <= row) | artificials (as needed)
    A = np.zeros((rows, n + m_ub))
    A[:m_ub, :n] = A_ub
    A[:m_ub, n:] = np.eye(m_ub)
    A[m_ub:, :n] = A_eq
    b = np.concatenate([b_ub, b_eq])
    sign = np.where(b < 0, -1.0, 1.0)
    A *= sign[:, None]
    b = b * sign

    basis = np.full(rows, -1)
    for r in range(m_ub):
        if sign[r] > 0:
            basis[r] = n + r
    need_art = np.nonzero(basis < 0)[0]
    n_std = n + m_ub
    n_art = need_art.size
    ncols = n_std + n_art
    T = np.zeros((rows + 1, ncols + 1))
    T[1:, :n_std] = A
    T[1:, -1] = b
    for k, r in enumerate(need_art):
        T[r + 1, n_std + k] = 1.0
        basis[r] = n_std + k

    iterations = 0
    keep = np.ones(rows + 1, dtype=bool)
    if n_art:
        # phase 1: maximize -sum(artificials)
        T[0, :] = 0.0
        T[0, n_std:ncols] = -1.0
        for r in need_art:
            T[0] += T[r + 1]
        iterations += _run(T, basis, ncols, tol, max_iter)
        if T[0, -1] > 1e3 * tol * max(1.0, np.abs(b).max(initial=0.0)):
            raise Infeasible(f"phase 1 residual {T[0, -1]:.3e}")
        # drive remaining artificials out of the basis; drop redundant rows
        for r in range(rows):
            if basis[r] >= n_std:
                nz = np.nonzero(np.abs(T[r + 1, :n_std]) > tol)[0]
                if nz.size:
                    _pivot(T, r + 1, int(nz[0]))
                    basis[r] = int(nz[0])
                else:
                    keep[r + 1] = False
        T = T[keep]
        basis = basis[keep[1:]]
        T = np.hstack([T[:, :n_std], T[:, -1:]])
        ncols = n_std

    # phase 2 reduced costs: c_j - c_B B^-1 A_j
    cost = np.zeros(n_std)
    cost[:n] = c
    T[0, :] = 0.0
    T[0, :n_std] = cost
    for r, j in enumerate(basis):
        if cost[j] != 0.0:
            T[0] -= cost[j] * T[r + 1]
    iterations += _run(T, basis, ncols, tol, max_iter)

    x_std = np.zeros(n_std)
    x_std[basis] = T[1:, -1]
    x = x_std[:n]
    # duals y = c_B B^-1 on the sign-normalized rows, mapped back
    y = _duals(A, cost, basis, keep[1:]) * sign
    return LPResult(
        x=x,
        objective=float(c @ x),
        duals_ub=y[:m_ub],
        duals_eq=y[m_ub:],
        basis=basis.copy(),
        iterations=iterations,
    )


def _duals(A, cost, basis, active_rows) -> np.ndarray:
    rows = A.shape[0]
    active = np.nonzero(active_rows)[0]
    B = A[np.ix_(active, basis)]
    y_active = np.linalg.solve(B.T, cost[basis])
    y = np.zeros(rows)
    y[active] = y_active
    return y
