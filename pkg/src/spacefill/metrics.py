"""Space-filling quality measures of a design against an evaluation set.

Covering radius here is always the finite-evaluation-set approximation
max_j d(x_j, design), which underestimates the true covering radius by at
most the covering radius of the evaluation set itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .pointgen import PointSet

__all__ = [
    "Design",
    "Trajectory",
    "TrajectoryRow",
    "covering_radius",
    "packing_radius",
    "mesh_ratio",
    "covering_quantile",
    "quantization_error",
    "nearest_distances",
    "evaluate_trajectory",
]


@dataclass(frozen=True)
class Design:
    """Ordered design points; prefixes are meaningful designs themselves."""

    points: np.ndarray
    indices: tuple[int, ...] | None = None
    trace: Any = None

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        if pts.ndim != 2:
            raise ValueError(f"design points must be a 2-d array, got {pts.shape}")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def prefix(self, n: int) -> "Design":
        if n > self.n:
            raise ValueError(f"prefix of {n} requested from a design of {self.n}")
        idx = self.indices[:n] if self.indices is not None else None
        return Design(self.points[:n], idx)

    @staticmethod
    def from_points(points) -> "Design":
        return Design(np.atleast_2d(np.asarray(points, dtype=float)))


def _dists_to_point(points: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum((points - x) ** 2, axis=1))


def nearest_distances(eval_points: np.ndarray, design_points: np.ndarray) -> np.ndarray:
    """Distance of every evaluation point to its nearest design point.

    Plain scan over design points with a running minimum; no spatial index.
    """
    if len(design_points) == 0:
        raise ValueError("design is empty")
    dmin = _dists_to_point(eval_points, design_points[0])
    for z in design_points[1:]:
        np.minimum(dmin, _dists_to_point(eval_points, z), out=dmin)
    return dmin


def covering_radius(design: Design, eval_set: PointSet) -> float:
    """max over evaluation points of the distance to the nearest design point."""
    if design.n == 0:
        raise ValueError("design is empty")
    if len(eval_set) == 0:
        raise ValueError("evaluation set is empty")
    if design.d != eval_set.d:
        raise ValueError(f"dimension mismatch: design d={design.d}, eval d={eval_set.d}")
    return float(np.max(nearest_distances(eval_set.points, design.points)))


def packing_radius(design: Design) -> float:
    """Half the minimum pairwise distance; zero for duplicated points."""
    if design.n < 2:
        raise ValueError("packing radius requires at least 2 points")
    pts = design.points
    best = math.inf
    for i in range(design.n - 1):
        best = min(best, float(np.min(_dists_to_point(pts[i + 1 :], pts[i]))))
    return best / 2.0


def mesh_ratio(design: Design, eval_set: PointSet) -> float:
    """covering_radius / packing_radius; bounded for quasi-uniform sequences."""
    pr = packing_radius(design)
    if pr == 0.0:
        raise ValueError("mesh ratio undefined: coincident design points (PR = 0)")
    return covering_radius(design, eval_set) / pr


def covering_quantile(design: Design, eval_set: PointSet, alpha: float) -> float:
    """Empirical alpha-quantile of the distance from eval points to the design.

    Left-continuous estimator: the ceil(alpha * Q)-th order statistic, so that
    alpha = 1 returns the covering radius.
    """
    if not (0.0 < alpha <= 1.0):
        raise ValueError("alpha must lie in (0, 1]")
    if design.n == 0 or len(eval_set) == 0:
        raise ValueError("design and evaluation set must be nonempty")
    dists = nearest_distances(eval_set.points, design.points)
    k = math.ceil(alpha * len(dists))  # 1-indexed order statistic
    return float(np.partition(dists, k - 1)[k - 1])


def quantization_error(design: Design, eval_set: PointSet, q: float) -> float:
    """L^(q+1) power mean of the eval-point distances to the design."""
    if q <= -1.0:
        raise ValueError("quantization error requires q > -1")
    dists = nearest_distances(eval_set.points, design.points)
    return float(np.mean(dists ** (q + 1.0)) ** (1.0 / (q + 1.0)))


# ---------------------------------------------------------------------------
# trajectories
# ---------------------------------------------------------------------------

@dataclass
class TrajectoryRow:
    n: int
    cr: float
    q_alpha: dict[float, float]
    pr: float | None
    rho: float | None
    cr_norm: float
    nq_alpha: dict[float, float]
    seconds: float
    gamma: float | None = None


@dataclass
class Trajectory:
    """Per-n record of covering/packing diagnostics along a construction."""

    alphas: tuple[float, ...]
    rows: list[TrajectoryRow] = field(default_factory=list)

    def _header(self, include_gamma: bool) -> list[str]:
        cols = ["n", "cr"]
        cols += [f"q{a:g}" for a in self.alphas]
        cols += ["pr", "rho", "cr_norm"]
        cols += [f"nq{a:g}" for a in self.alphas]
        cols += ["seconds"]
        if include_gamma:
            cols.append("gamma")
        return cols

    def _cells(self, row: TrajectoryRow, include_gamma: bool) -> list[str]:
        def fmt(v) -> str:
            return "" if v is None else repr(float(v))

        cells = [str(row.n), fmt(row.cr)]
        cells += [fmt(row.q_alpha[a]) for a in self.alphas]
        cells += [fmt(row.pr), fmt(row.rho), fmt(row.cr_norm)]
        cells += [fmt(row.nq_alpha[a]) for a in self.alphas]
        cells += [fmt(row.seconds)]
        if include_gamma:
            cells.append(fmt(row.gamma))
        return cells

    def to_csv(self, path: str | Path, include_gamma: bool = False) -> None:
        lines = [",".join(self._header(include_gamma))]
        for row in self.rows:
            lines.append(",".join(self._cells(row, include_gamma)))
        Path(path).write_text("\n".join(lines) + "\n")

    def to_jsonl(self, path: str | Path, include_gamma: bool = False) -> None:
        with open(path, "w") as fh:
            for row in self.rows:
                rec: dict[str, Any] = {"n": row.n, "cr": row.cr}
                for a in self.alphas:
                    rec[f"q{a:g}"] = row.q_alpha[a]
                rec["pr"] = row.pr
                rec["rho"] = row.rho
                rec["cr_norm"] = row.cr_norm
                for a in self.alphas:
                    rec[f"nq{a:g}"] = row.nq_alpha[a]
                rec["seconds"] = row.seconds
                if include_gamma:
                    rec["gamma"] = row.gamma
                fh.write(json.dumps(rec) + "\n")


def evaluate_trajectory(
    design: Design,
    reference: PointSet,
    alphas: Sequence[float],
    n_min: int = 1,
    n_max: int | None = None,
    cr_normalizer: Callable[[int, float], float] | None = None,
    seconds_per_n: Sequence[float] | None = None,
    gamma_per_n: Sequence[float] | None = None,
) -> Trajectory:
    """Evaluate all prefixes of a design against a reference point set.

    Distances to the reference set are maintained incrementally, so the cost
    is one scan of the reference set per design point. `cr_normalizer`
    maps (n, cr) to the normalized column (defaults to n^(1/d) * cr).
    """
    n_max = design.n if n_max is None else n_max
    if n_max > design.n:
        raise ValueError(f"n_max={n_max} exceeds design size {design.n}")
    if not (1 <= n_min <= n_max):
        raise ValueError("need 1 <= n_min <= n_max")
    alphas = tuple(float(a) for a in alphas)
    for a in alphas:
        if not (0.0 < a <= 1.0):
            raise ValueError("alpha values must lie in (0, 1]")
    if cr_normalizer is None:
        cr_normalizer = lambda n, cr: n ** (1.0 / design.d) * cr

    traj = Trajectory(alphas=alphas)
    ref = reference.points
    dmin = np.full(len(ref), np.inf)
    min_pair = math.inf  # minimum pairwise distance among design points seen
    for i in range(n_max):
        x = design.points[i]
        if i > 0:
            min_pair = min(min_pair, float(np.min(_dists_to_point(design.points[:i], x))))
        np.minimum(dmin, _dists_to_point(ref, x), out=dmin)
        n = i + 1
        if n < n_min:
            continue
        cr = float(np.max(dmin))
        q_alpha = {}
        for a in alphas:
            k = math.ceil(a * len(dmin))
            q_alpha[a] = float(np.partition(dmin, k - 1)[k - 1])
        pr = min_pair / 2.0 if n >= 2 else None
        rho = (cr / pr) if (pr is not None and pr > 0) else None
        scale = n ** (1.0 / design.d)
        traj.rows.append(
            TrajectoryRow(
                n=n,
                cr=cr,
                q_alpha=q_alpha,
                pr=pr,
                rho=rho,
                cr_norm=cr_normalizer(n, cr),
                nq_alpha={a: scale * q_alpha[a] for a in alphas},
                seconds=0.0 if seconds_per_n is None else float(seconds_per_n[n - 1]),
                gamma=None if gamma_per_n is None else float(gamma_per_n[n - 1]),
            )
        )
    return traj
