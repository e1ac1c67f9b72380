"""Attainability decisions with certificates and witnesses.

Three routes decide the sign of ``v_lam`` (the value of the scalarized game)
over all directions:

* a Lipschitz-certified sweep over a covering grid of the unit sphere,
  using ``|v_lam - v_mu| <= |lam - mu| * U_max``;
* an exact route for ``m <= 2`` that splits the circle at every angle where a
  minor of the bordered payoff matrix vanishes; between two such angles the
  optimal basis, and therefore the sign of ``v_lam``, cannot change;
* LP evaluation of the largest multiple of ``x`` realizable against a fixed
  column mixture (used as evidence only).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .game import Direction, Game, MixedAction, payoff_bound, scalarize, translate
from .simplex import Infeasible, linprog_max
from .solver import simplex_grid, solve

DECISION_MARGIN = 1e-6
DEFAULT_RESOLUTION = 0.05
MAX_EXACT_MINORS = 250_000


def default_delta_schedule(n: int = 16) -> list[float]:
    return [2.0 ** -i for i in range(n)]


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDECIDED = "Undecided"

    def __str__(self):
        return self.value


@dataclass
class Verdict:
    status: Status
    condition: str
    margin: float = float("nan")
    certificate: dict[str, Any] | None = None
    witness: dict[str, Any] | None = None
    evidence: bool = False
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    def label(self) -> str:
        suffix = "-evidence" if self.evidence and self.status is not Status.UNDECIDED else ""
        return f"{self.status}{suffix}"

    def to_json(self) -> dict[str, Any]:
        return {
            "status": str(self.status),
            "condition": self.condition,
            "evidence": self.evidence,
            "margin": _jsonable(self.margin),
            "certificate": _jsonable(self.certificate),
            "witness": _jsonable(self.witness),
            "details": _jsonable(self.details),
        }


def _jsonable(obj):
    if isinstance(obj, Verdict):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, MixedAction):
        return obj.weights.tolist()
    if isinstance(obj, Direction):
        return obj.vector.tolist()
    if isinstance(obj, Enum):
        return str(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else repr(f)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


# -- directions ----------------------------------------------------------------


def value_direction(g: Game, lam) -> float:
    """``v_lam``: value of the zero-sum game with payoff ``<lam, u>``."""
    lam = np.asarray(lam.vector if isinstance(lam, Direction) else lam, dtype=float)
    if not np.any(lam):
        if lam.size != g.m:
            raise ValueError(f"direction has dimension {lam.size}, game has m={g.m}")
        return 0.0
    return solve(scalarize(g, lam)).value


@dataclass(frozen=True)
class SphereGrid:
    m: int
    h: float
    points: np.ndarray
    covering_radius: float

    def __len__(self):
        return len(self.points)


def sphere_grid(m: int, h: float) -> SphereGrid:
    """Unit directions with neighbour spacing at most ``h``.

    Every unit vector lies within Euclidean distance ``covering_radius <= h/2``
    of a grid point. For ``m >= 3`` the grid is the radial projection of a
    cubical grid on the faces of ``[-1, 1]^m``; the projection is 1-Lipschitz
    outside the unit ball, which bounds the covering radius.
    """
    if h <= 0:
        raise ValueError("resolution must be positive")
    if m == 1:
        return SphereGrid(1, h, np.array([[1.0], [-1.0]]), 0.0)
    if m == 2:
        n = max(8, 8 * math.ceil(2 * math.pi / h / 8))
        theta = 2 * math.pi * np.arange(n) / n
        pts = np.column_stack([np.cos(theta), np.sin(theta)])
        return SphereGrid(2, h, pts, 2 * math.sin(math.pi / n / 2))
    per_face = math.ceil(2 * math.sqrt(m - 1) / h)
    axis = np.linspace(-1.0, 1.0, per_face + 1)
    face = np.array(list(itertools.product(axis, repeat=m - 1)))
    blocks = []
    for k in range(m):
        for s in (1.0, -1.0):
            pts = np.insert(face, k, s, axis=1)
            blocks.append(pts)
    pts = np.unique(np.round(np.vstack(blocks), 12), axis=0)
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    radius = (2.0 / per_face) * math.sqrt(m - 1) / 2
    return SphereGrid(m, h, pts, radius)


def _fail(condition, lam, v, **details) -> Verdict:
    return Verdict(
        Status.FAILS,
        condition,
        margin=v,
        witness={"kind": "direction", "lambda": np.asarray(lam, dtype=float), "value": v},
        details=details,
    )


def check_zero_attainable(
    g: Game,
    h: float = DEFAULT_RESOLUTION,
    strict: bool = False,
    margin: float = DECISION_MARGIN,
    refine: bool = True,
) -> Verdict:
    """Certified sweep for ``v_lam >= 0`` (weak) or ``v_lam > 0`` (strict)."""
    condition = "C2" if strict else "B2"
    grid = sphere_grid(g.m, h)
    vals = np.array([value_direction(g, lam) for lam in grid.points])
    i = int(np.argmin(vals))  # first minimum: ties go to the lowest grid index
    vmin = float(vals[i])
    lam_min = grid.points[i]
    L = payoff_bound(g)
    slack = L * grid.covering_radius
    cert = {
        "resolution": h,
        "covering_radius": grid.covering_radius,
        "grid_points": len(grid),
        "min_sampled": vmin,
        "argmin": lam_min,
        "lipschitz": L,
        "lower_bound": vmin - slack,
    }
    vmin_w, lam_w = vmin, lam_min
    if refine and g.m == 2:
        step = 2 * math.pi / len(grid)
        th0 = math.atan2(lam_min[1], lam_min[0])
        res = minimize_scalar(
            lambda th: value_direction(g, (math.cos(th), math.sin(th))),
            bounds=(th0 - step, th0 + step),
            method="bounded",
            options={"xatol": 1e-10},
        )
        if res.fun < vmin:
            vmin_w, lam_w = float(res.fun), np.array([math.cos(res.x), math.sin(res.x)])
        cert["refined_min"] = vmin_w
        cert["refined_argmin"] = lam_w
    if vmin_w < -margin:
        v = _fail(condition, lam_w, vmin_w)
        v.certificate = cert
        return v
    lower = vmin - slack
    if (strict and lower > 0) or (not strict and lower >= 0):
        return Verdict(Status.HOLDS, condition, margin=lower, certificate=cert)
    return Verdict(Status.UNDECIDED, condition, margin=lower, certificate=cert)


# -- exact route for m <= 2 ----------------------------------------------------


def _bordered(A: np.ndarray) -> np.ndarray:
    n1, n2 = A.shape[-2:]
    out = np.zeros(A.shape[:-2] + (n1 + 1, n2 + 1))
    out[..., :n1, :n2] = A
    out[..., :n1, n2] = 1.0
    out[..., n1, :n2] = 1.0
    return out


def critical_angles(g: Game) -> np.ndarray:
    """Angles in [0, 2pi) at which some minor of the bordered scalarized matrix vanishes.

    With ``lam = (1, t)`` each k-by-k minor is a polynomial of degree <= k in
    ``t``; it is recovered by interpolation and its real roots mapped to
    angles ``atan(t)`` and ``atan(t) + pi``. The axis angles are always
    included, which covers roots at ``t = infinity``.
    """
    if g.m != 2:
        raise ValueError("critical angles are defined for m = 2")
    A, B = g.payoffs[..., 0], g.payoffs[..., 1]
    n1, n2 = A.shape
    nr, nc = n1 + 1, n2 + 1
    total = sum(math.comb(nr, k) * math.comb(nc, k) for k in range(1, min(nr, nc) + 1))
    if total > MAX_EXACT_MINORS:
        raise ValueError(f"{total} minors exceed the exact-route limit")
    scale = max(1.0, np.abs(g.payoffs).max())
    angles = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
    for k in range(1, min(nr, nc) + 1):
        ts = np.linspace(-1.0, 1.0, k + 1)
        mats = _bordered((A[None] + ts[:, None, None] * B[None]) / scale)
        rows = np.array(list(itertools.combinations(range(nr), k)))
        cols = np.array(list(itertools.combinations(range(nc), k)))
        V = np.vander(ts, k + 1)  # highest power first, as np.roots expects
        Vinv = np.linalg.inv(V)
        for r in rows:
            sub = mats[:, r, :][:, :, cols]  # (k+1, k, len(cols), k)
            sub = np.transpose(sub, (2, 0, 1, 3))  # (len(cols), k+1, k, k)
            dets = np.linalg.det(sub)  # (len(cols), k+1)
            coeffs = dets @ Vinv.T
            for c in coeffs:
                if np.abs(c).max() < 1e-12:
                    continue
                nz = np.nonzero(np.abs(c) > 1e-14 * np.abs(c).max())[0]
                c = c[nz[0]:]
                if c.size < 2:
                    continue
                for root in np.roots(c):
                    if abs(root.imag) <= 1e-9 * (1.0 + abs(root)):
                        th = math.atan(root.real)
                        angles.extend([th % (2 * math.pi), (th + math.pi) % (2 * math.pi)])
    angles = np.sort(np.array(angles))
    keep = np.concatenate([[True], np.diff(angles) > 1e-13])
    return angles[keep]


def _noise_tol(g: Game) -> float:
    return 1e-12 * max(1.0, payoff_bound(g))


def check_zero_exact_small(g: Game) -> Verdict:
    """Exact decision of ``v_lam >= 0`` for all ``lam`` when ``m <= 2``."""
    if g.m == 1:
        v_pos = value_direction(g, [1.0])
        v_neg = value_direction(g, [-1.0])
        tol = _noise_tol(g)
        cert = {"route": "exact-m1", "v_plus": v_pos, "v_minus": v_neg}
        vmin, lam = min((v_pos, [1.0]), (v_neg, [-1.0]), key=lambda t: t[0])
        if vmin < -tol:
            v = _fail("B2", lam, vmin)
            v.certificate = cert
            return v
        return Verdict(Status.HOLDS, "B2", margin=vmin, certificate=cert)
    if g.m != 2:
        raise ValueError(f"exact route needs m <= 2, got m={g.m}")
    crit = critical_angles(g)
    nxt = np.append(crit[1:], crit[0] + 2 * math.pi)
    mids = (crit + nxt) / 2

    def v_at(th):
        return value_direction(g, (math.cos(th), math.sin(th)))

    v_crit = np.array([v_at(t) for t in crit])
    v_mid = np.array([v_at(t) for t in mids])
    tol = _noise_tol(g)
    best_v, best_th = float("inf"), 0.0
    for th, v in itertools.chain(zip(crit, v_crit), zip(mids, v_mid)):
        if v < best_v:
            best_v, best_th = float(v), float(th)
    # sharpen the witness on the most negative arc
    if best_v < -tol:
        for a, b, vm in zip(crit, nxt, v_mid):
            if vm < -tol:
                res = minimize_scalar(v_at, bounds=(a, b), method="bounded", options={"xatol": 1e-13})
                if res.fun < best_v:
                    best_v, best_th = float(res.fun), float(res.x)
    cert = {
        "route": "exact-m2",
        "critical_angles": len(crit),
        "min_value": best_v,
        "argmin_angle": best_th,
    }
    if best_v < -tol:
        v = _fail("B2", (math.cos(best_th), math.sin(best_th)), best_v)
        v.certificate = cert
        return v
    return Verdict(Status.HOLDS, "B2", margin=best_v, certificate=cert)


def zero_attainable(g: Game, h: float = DEFAULT_RESOLUTION, strict: bool = False) -> Verdict:
    """Exact route when available (weak check, m <= 2), sweep otherwise."""
    if not strict and g.m <= 2:
        try:
            return check_zero_exact_small(g)
        except ValueError:
            pass
    return check_zero_attainable(g, h, strict=strict)


def recheck(g: Game, verdict: Verdict, tol: float = 0.0) -> bool:
    """Re-evaluate a Fails witness from scratch; True when the violation reproduces."""
    w = verdict.witness
    if w is None:
        return False
    if w["kind"] == "direction":
        return value_direction(g, w["lambda"]) < -tol
    if w["kind"] == "mixed_action":
        return delta_star(g, w["x"], w["q"]) is None
    raise ValueError(f"unknown witness kind {w['kind']!r}")


# -- point-specific conditions ---------------------------------------------------


def delta_star(g: Game, x, q) -> float | None:
    """Largest ``delta >= 0`` with ``u(p, q) = delta * x`` for some ``p``; None if infeasible."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != g.m:
        raise ValueError(f"x has dimension {x.size}, game has m={g.m}")
    if not np.any(x):
        raise ValueError("x must be nonzero")
    q = MixedAction(q).weights if not isinstance(q, MixedAction) else q.weights
    if q.size != g.n2:
        raise ValueError("q does not match the game")
    Uq = np.tensordot(g.payoffs, q, axes=([1], [0]))  # (n1, m)
    n1 = g.n1
    A_eq = np.zeros((g.m + 1, n1 + 1))
    A_eq[: g.m, :n1] = Uq.T
    A_eq[: g.m, n1] = -x
    A_eq[g.m, :n1] = 1.0
    b_eq = np.zeros(g.m + 1)
    b_eq[g.m] = 1.0
    c = np.zeros(n1 + 1)
    c[n1] = 1.0
    try:
        res = linprog_max(c, A_eq=A_eq, b_eq=b_eq)
    except Infeasible:
        return None
    return max(0.0, float(res.x[n1]))


def check_B3(g: Game, x, grid_k: int = 4, levels: int = 3) -> Verdict:
    """Evidence about condition B3 from nested grids of column mixtures."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ValueError("x must be nonzero")
    if grid_k < 1:
        raise ValueError("grid_k must be >= 1")
    infima, argmins = [], []
    for level in range(levels):
        k = grid_k * 2**level
        Q = simplex_grid(g.n2, k)
        best, best_q = float("inf"), None
        for q in Q:
            d = delta_star(g, x, q)
            if d is None:
                return Verdict(
                    Status.FAILS,
                    "B3",
                    margin=0.0,
                    witness={"kind": "mixed_action", "q": q.copy(), "x": x},
                    details={"grid_k": k, "reason": "no p with u(p,q) = delta*x, delta >= 0"},
                )
            if d < best:
                best, best_q = d, q.copy()
        infima.append(best)
        argmins.append(best_q)
    details = {"grids": [grid_k * 2**i for i in range(levels)], "infima": infima, "argmins": argmins}
    ratios = [b / a if a > 0 else 0.0 for a, b in zip(infima, infima[1:])]
    details["ratios"] = ratios
    if levels >= 3 and all(r <= 0.5 for r in ratios[-2:]):
        return Verdict(Status.FAILS, "B3", margin=infima[-1], evidence=True, details=details,
                       witness={"kind": "decay", "q": argmins[-1], "x": x, "infimum": infima[-1]})
    details["stabilized"] = bool(infima[-1] > 0 and all(r > 0.5 for r in ratios))
    return Verdict(Status.UNDECIDED, "B3", margin=infima[-1], evidence=True, details=details)


def check_B4(
    g: Game,
    x,
    delta_schedule: Sequence[float] | None = None,
    h: float = DEFAULT_RESOLUTION,
) -> Verdict:
    """Search for ``delta`` with 0 attainable in ``G - delta*x``."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ValueError("x must be nonzero")
    deltas = list(default_delta_schedule() if delta_schedule is None else delta_schedule)
    if not deltas or any(d <= 0 for d in deltas):
        raise ValueError("delta schedule must be nonempty and positive")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("delta schedule must be decreasing")
    per_delta = []
    for d in deltas:
        sub = zero_attainable(translate(g, d * x), h)
        per_delta.append({"delta": d, "verdict": sub})
        if sub.holds:
            return Verdict(
                Status.HOLDS,
                "B4",
                margin=sub.margin,
                certificate={"delta": d, "zero_check": sub},
                details={"tried": per_delta},
            )
    if all(item["verdict"].fails for item in per_delta):
        worst = max(per_delta, key=lambda it: it["verdict"].margin)
        return Verdict(
            Status.FAILS,
            "B4",
            margin=worst["verdict"].margin,
            evidence=True,
            witness={"kind": "schedule", "deltas": deltas,
                     "directions": [it["verdict"].witness["lambda"] for it in per_delta],
                     "values": [it["verdict"].witness["value"] for it in per_delta]},
            details={"tried": per_delta},
        )
    return Verdict(Status.UNDECIDED, "B4", evidence=True, details={"tried": per_delta})


def attainability_verdict(
    g: Game,
    x,
    h: float = DEFAULT_RESOLUTION,
    delta_schedule: Sequence[float] | None = None,
    b3_grid: int | None = 4,
) -> Verdict:
    """Combine C2, B1, B3 and B4 into a verdict on the attainability of ``x``."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != g.m:
        raise ValueError(f"x has dimension {x.size}, game has m={g.m}")
    if not np.any(x):
        zero = zero_attainable(g, h)
        return Verdict(zero.status, "B1", zero.margin, zero.certificate, zero.witness,
                       zero.evidence, {"B2": zero})
    c2 = check_zero_attainable(g, h, strict=True)
    if c2.holds:
        return Verdict(Status.HOLDS, "C2", c2.margin, c2.certificate, details={"C2": c2})
    details: dict[str, Any] = {"C2": c2}
    b1 = zero_attainable(g, h)
    details["B1"] = b1
    if b1.fails:
        return Verdict(Status.FAILS, "B1", b1.margin, witness=b1.witness, details=details)
    b4 = check_B4(g, x, delta_schedule, h)
    details["B4"] = b4
    if b3_grid:
        details["B3"] = check_B3(g, x, b3_grid)
    if b1.holds and b4.holds:
        return Verdict(Status.HOLDS, "B1+B4", b4.margin, b4.certificate, details=details)
    if b1.holds and b4.fails:
        return Verdict(Status.FAILS, "B1+B4", b4.margin, witness=b4.witness, evidence=True,
                       details=details)
    return Verdict(Status.UNDECIDED, "B1+B4", evidence=True, details=details)
