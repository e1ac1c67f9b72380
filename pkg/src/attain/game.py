"""Finite two-player games with vector payoffs.

A :class:`Game` stores the pure-action payoff tensor ``u[a1, a2] in R^m``.
Mixed actions extend it bilinearly; :func:`scalarize` and :func:`translate`
build the derived games used by the attainability conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

RENORMALIZE_TOL = 1e-9
SUM_TOL = 1e-12


class GameFormatError(ValueError):
    """Malformed game text; carries the offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=float)
    out.setflags(write=False)
    return out


class MixedAction:
    """Probability vector over one player's actions.

    Weights whose sum is within ``1e-9`` of one are renormalized; tiny
    negative entries (LP noise, above ``-1e-9``) are clipped to zero.
    """

    __slots__ = ("weights",)

    def __init__(self, weights):
        w = np.array(weights, dtype=float).ravel()
        if w.size == 0:
            raise ValueError("mixed action needs at least one weight")
        if not np.all(np.isfinite(w)):
            raise ValueError(f"non-finite weights: {w}")
        if w.min() < -RENORMALIZE_TOL:
            raise ValueError(f"negative weight in mixed action: {w}")
        w = np.clip(w, 0.0, None)
        total = w.sum()
        if abs(total - 1.0) > RENORMALIZE_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")
        if abs(total - 1.0) > SUM_TOL:
            w = w / total
        w.setflags(write=False)
        self.weights = w

    @classmethod
    def pure(cls, n: int, i: int) -> "MixedAction":
        w = np.zeros(n)
        w[i] = 1.0
        return cls(w)

    @classmethod
    def uniform(cls, n: int) -> "MixedAction":
        return cls(np.full(n, 1.0 / n))

    def __len__(self):
        return self.weights.size

    def __array__(self, dtype=None, copy=None):
        return self.weights if dtype is None else self.weights.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, MixedAction):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())

    def __repr__(self):
        return f"MixedAction({np.array2string(self.weights, precision=6)})"


def as_weights(p) -> np.ndarray:
    if isinstance(p, MixedAction):
        return p.weights
    return MixedAction(p).weights


@dataclass(frozen=True)
class Direction:
    """A payoff-space direction; ``norm`` records how it was normalized."""

    vector: np.ndarray
    norm: str = "l2"

    def __post_init__(self):
        object.__setattr__(self, "vector", _frozen(self.vector))
        if self.norm not in ("l2", "l1", "none"):
            raise ValueError(f"unknown norm convention {self.norm!r}")

    @classmethod
    def unit(cls, vector, norm: str = "l2") -> "Direction":
        v = np.asarray(vector, dtype=float)
        scale = np.linalg.norm(v, 1 if norm == "l1" else 2)
        if scale == 0:
            raise ValueError("zero vector has no direction")
        return cls(v / scale, norm)


@dataclass(frozen=True, eq=False)
class MatrixGame:
    """Scalar zero-sum game; the row player receives ``entries[i, j]``."""

    entries: np.ndarray

    def __post_init__(self):
        e = _frozen(self.entries)
        if e.ndim != 2 or e.size == 0:
            raise ValueError(f"matrix game needs a nonempty 2-d array, got shape {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("matrix game entries must be finite")
        object.__setattr__(self, "entries", e)

    @property
    def n1(self) -> int:
        return self.entries.shape[0]

    @property
    def n2(self) -> int:
        return self.entries.shape[1]

    def debug_text(self) -> str:
        rows = [" ".join(f"{x: .17g}" for x in row) for row in self.entries]
        return f"matrix {self.n1}x{self.n2}\n" + "\n".join(rows)


@dataclass(frozen=True, eq=False)
class Game:
    """Vector-payoff game; ``payoffs`` has shape ``(n1, n2, m)``."""

    payoffs: np.ndarray
    labels1: tuple[str, ...] | None = None
    labels2: tuple[str, ...] | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        u = _frozen(self.payoffs)
        if u.ndim == 2:
            u = _frozen(u[:, :, None])
        if u.ndim != 3 or 0 in u.shape:
            raise ValueError(f"payoffs must have shape (n1, n2, m), got {u.shape}")
        if not np.all(np.isfinite(u)):
            raise ValueError("payoffs must be finite")
        object.__setattr__(self, "payoffs", u)
        for attr, n in (("labels1", u.shape[0]), ("labels2", u.shape[1])):
            labels = getattr(self, attr)
            if labels is not None:
                labels = tuple(str(s) for s in labels)
                if len(labels) != n:
                    raise ValueError(f"{attr} has {len(labels)} names for {n} actions")
                object.__setattr__(self, attr, labels)
        # (n1, n2*m) view for fast bilinear evaluation
        flat = u.reshape(u.shape[0], -1).copy()
        flat.setflags(write=False)
        object.__setattr__(self, "_flat", flat)

    @property
    def n1(self) -> int:
        return self.payoffs.shape[0]

    @property
    def n2(self) -> int:
        return self.payoffs.shape[1]

    @property
    def m(self) -> int:
        return self.payoffs.shape[2]

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return (
            np.array_equal(self.payoffs, other.payoffs)
            and self.labels1 == other.labels1
            and self.labels2 == other.labels2
        )

    __hash__ = None

    def payoff(self, p, q) -> np.ndarray:
        """Bilinear payoff for raw weight vectors (no validation)."""
        return q @ (p @ self._flat).reshape(self.n2, self.m)

    def action_index(self, player: int, label: str) -> int:
        labels = self.labels1 if player == 1 else self.labels2
        if labels is None or label not in labels:
            raise KeyError(f"player {player} has no action named {label!r}")
        return labels.index(label)


def mixed_payoff(g: Game, p, q) -> np.ndarray:
    """Expected payoff vector ``sum_ij p_i q_j u(i, j)``."""
    p = as_weights(p)
    q = as_weights(q)
    if p.size != g.n1 or q.size != g.n2:
        raise ValueError(
            f"mixed actions of sizes ({p.size}, {q.size}) do not match game ({g.n1}, {g.n2})"
        )
    return g.payoff(p, q)


def scalarize(g: Game, lam) -> MatrixGame:
    """The zero-sum game with entries ``<lam, u(i, j)>``."""
    lam = np.asarray(lam.vector if isinstance(lam, Direction) else lam, dtype=float).ravel()
    if lam.size != g.m:
        raise ValueError(f"direction has dimension {lam.size}, game has m={g.m}")
    return MatrixGame(g.payoffs @ lam)


def translate(g: Game, y) -> Game:
    """The game with payoff ``u - y``."""
    y = np.asarray(y, dtype=float).ravel()
    if y.size != g.m:
        raise ValueError(f"offset has dimension {y.size}, game has m={g.m}")
    return Game(g.payoffs - y, g.labels1, g.labels2, name=g.name)


def payoff_bound(g: Game) -> float:
    """Largest Euclidean norm of a pure-action payoff."""
    return float(np.linalg.norm(g.payoffs, axis=2).max())


# -- text format -------------------------------------------------------------


def format_game(g: Game) -> str:
    lines = [f"game m={g.m} n1={g.n1} n2={g.n2}"]
    if g.labels1 is not None:
        lines.append("labels1: " + " ".join(g.labels1))
    if g.labels2 is not None:
        lines.append("labels2: " + " ".join(g.labels2))
    for i in range(g.n1):
        for j in range(g.n2):
            vals = " ".join(repr(float(v)) for v in g.payoffs[i, j])
            lines.append(f"{i} {j} {vals}")
    return "\n".join(lines) + "\n"


def _parse_header(text: str, lineno: int) -> dict[str, int]:
    parts = text.split()
    if not parts or parts[0] != "game":
        raise GameFormatError("expected header 'game m=<int> n1=<int> n2=<int>'", lineno)
    fields = {}
    for item in parts[1:]:
        key, sep, value = item.partition("=")
        if not sep or key not in ("m", "n1", "n2"):
            raise GameFormatError(f"bad header field {item!r}", lineno)
        if key in fields:
            raise GameFormatError(f"duplicate header field {key!r}", lineno)
        try:
            fields[key] = int(value)
        except ValueError:
            raise GameFormatError(f"header field {key} is not an integer: {value!r}", lineno)
        if fields[key] <= 0:
            raise GameFormatError(f"header field {key} must be positive", lineno)
    missing = {"m", "n1", "n2"} - fields.keys()
    if missing:
        raise GameFormatError(f"header is missing {sorted(missing)}", lineno)
    return fields


def parse_game(text: str, name: str = "") -> Game:
    """Parse the line-oriented game format. Blank lines and ``#`` comments are skipped."""
    lines = [
        (n, raw.split("#", 1)[0].strip())
        for n, raw in enumerate(text.splitlines(), start=1)
    ]
    lines = [(n, s) for n, s in lines if s]
    if not lines:
        raise GameFormatError("empty game file")
    n0, header = lines[0]
    dims = _parse_header(header, n0)
    m, n1, n2 = dims["m"], dims["n1"], dims["n2"]
    labels: dict[str, tuple[str, ...]] = {}
    payoffs = np.full((n1, n2, m), np.nan)
    seen: dict[tuple[int, int], int] = {}
    expected = [(i, j) for i in range(n1) for j in range(n2)]
    for lineno, s in lines[1:]:
        if s.startswith(("labels1:", "labels2:")):
            key, _, rest = s.partition(":")
            if seen:
                raise GameFormatError(f"{key} must precede payoff entries", lineno)
            if key in labels:
                raise GameFormatError(f"duplicate {key} line", lineno)
            labels[key] = tuple(rest.split())
            continue
        parts = s.split()
        if len(parts) != m + 2:
            raise GameFormatError(f"expected '<i> <j>' and {m} payoff values, got {len(parts)} fields", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            vals = [float(v) for v in parts[2:]]
        except ValueError:
            raise GameFormatError(f"cannot parse entry {s!r}", lineno)
        if not (0 <= i < n1 and 0 <= j < n2):
            raise GameFormatError(f"index ({i}, {j}) out of range for {n1}x{n2} game", lineno)
        if (i, j) in seen:
            raise GameFormatError(f"duplicate entry ({i}, {j}), first given on line {seen[(i, j)]}", lineno)
        if len(seen) < len(expected) and expected[len(seen)] != (i, j):
            raise GameFormatError(
                f"entry ({i}, {j}) out of row-major order; expected {expected[len(seen)]}", lineno
            )
        if not all(np.isfinite(vals)):
            raise GameFormatError("payoff values must be finite", lineno)
        seen[(i, j)] = lineno
        payoffs[i, j] = vals
    if len(seen) != n1 * n2:
        missing = [ij for ij in expected if ij not in seen]
        raise GameFormatError(f"missing {len(missing)} entries, first {missing[0]}", lines[-1][0])
    try:
        return Game(payoffs, labels.get("labels1"), labels.get("labels2"), name=name)
    except ValueError as exc:
        raise GameFormatError(str(exc), n0)


def load_game(path) -> Game:
    from pathlib import Path

    path = Path(path)
    return parse_game(path.read_text(encoding="utf-8"), name=path.stem)


def save_game(g: Game, path) -> None:
    from pathlib import Path

    Path(path).write_text(format_game(g), encoding="utf-8")


def game_from_rows(rows: Sequence[Sequence[Iterable[float]]], **kwargs) -> Game:
    """Build a game from nested lists ``rows[i][j] = payoff vector`` (or scalar)."""
    arr = np.array(rows, dtype=float)
    return Game(arr, **kwargs)
