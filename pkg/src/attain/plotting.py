"""Figures for trajectories and direction sweeps (written to files)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .checker import value_direction  # noqa: E402


def plot_trajectory(traj, path, target=None, title: str | None = None) -> None:
    """Cumulative payoff against time; for m = 2 also the planar path."""
    m = traj.game.m
    ncols = 2 if m == 2 else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5.5 * ncols, 4))
    axes = np.atleast_1d(axes)
    ax = axes[0]
    for i in range(m):
        ax.plot(traj.times, traj.gamma[:, i], lw=1, label=f"gamma_{i + 1}")
    if target is not None:
        for i, v in enumerate(np.atleast_1d(target)):
            ax.axhline(v, color=f"C{i}", ls=":", lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("cumulative payoff")
    ax.legend(loc="best", fontsize=8)
    if m == 2:
        ax = axes[1]
        ax.plot(traj.gamma[:, 0], traj.gamma[:, 1], lw=0.8)
        ax.plot(*traj.gamma[-1], "o", ms=4)
        if target is not None:
            ax.plot(*np.asarray(target, float), "x", color="k", ms=8)
        ax.set_xlabel("gamma_1")
        ax.set_ylabel("gamma_2")
        ax.set_aspect("equal", adjustable="datalim")
    fig.suptitle(title or f"{traj.names[0]} vs {traj.names[1]}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_direction_values(g, path, n: int = 720) -> None:
    """v_lambda around the unit circle (m = 2 only)."""
    if g.m != 2:
        raise ValueError("direction plot needs m = 2")
    th = np.linspace(0, 2 * math.pi, n, endpoint=False)
    v = [value_direction(g, (math.cos(t), math.sin(t))) for t in th]
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    ax.plot(th, v, lw=1)
    ax.axhline(0.0, color="k", lw=0.6)
    ax.set_xlabel("direction angle")
    ax.set_ylabel("v_lambda")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
