"""Harmonic-mean relaxation of the covering radius and two constructions.

psi_q is a smooth surrogate that tends to the covering radius as q grows.
Two incremental constructions are provided: a greedy minimizer of the
discretized objective (supermodular, so the lazy engine applies) and a
Frank-Wolfe / vertex-direction scheme with step 1/(k+1) whose measure support
yields the ordered design. Both require candidate and evaluation sets to be
disjoint, since the objective diverges at zero distance.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .greedy_engine import GreedyTrace, greedy, lazy_greedy
from .metrics import Design
from .pointgen import PointSet

__all__ = [
    "RelaxedObjective",
    "VdStep",
    "VdTrace",
    "psi_q",
    "rd_construct",
    "vd_construct",
]

_DIST_FLOOR = 1e-14


def _check_disjoint(candidates: PointSet, eval_set: PointSet) -> None:
    if candidates.d != eval_set.d:
        raise ValueError(
            f"dimension mismatch: candidates d={candidates.d}, eval d={eval_set.d}"
        )
    cand_rows = {row.tobytes() for row in candidates.points}
    for row in eval_set.points:
        if row.tobytes() in cand_rows:
            raise ValueError(
                "candidate and evaluation sets overlap (exact duplicate point); "
                "the relaxed criterion needs disjoint sets"
            )


def _floored_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(len(a), len(b)) distances, floored away from zero; exact zero raises."""
    out = np.empty((len(a), len(b)))
    for i in range(len(a)):
        out[i] = np.sqrt(np.sum((b - a[i]) ** 2, axis=1))
    if np.any(out == 0.0):
        raise ValueError("coincident points between the two sets")
    return np.maximum(out, _DIST_FLOOR)


def psi_q(design: Design, eval_set: PointSet, q: float) -> float:
    """[(1/Q) sum_j ((1/n) sum_i ||z_i - x_j||^(-q))^(-1)]^(1/q).

    Harmonic-type average of design-to-point distances; tends to the covering
    radius over the evaluation set as q grows.
    """
    if design.n == 0:
        raise ValueError("design is empty")
    if q <= 0:
        raise ValueError("q must be positive")
    dist = _floored_distances(design.points, eval_set.points)  # n x Q
    inner = np.mean(dist ** (-q), axis=0)  # (1/n) sum_i, per eval point
    return float(np.mean(1.0 / inner) ** (1.0 / q))


class RelaxedObjective:
    """Greedy oracle minimizing sum_j (sum_i ||z_i - x_j||^(-q))^(-1).

    Exposed to the engine as the nondecreasing submodular function
    f(Z) = offset - g(Z) with offset = 2 * max_k g({x_k}), which keeps
    f(empty) = 0 and f nonnegative while preserving the argmin of g and the
    diminishing-returns property, empty set included. Gains are O(Q) from the
    per-evaluation-point accumulators of inverse distance powers.
    """

    submodular = True

    def __init__(self, candidates: PointSet, eval_set: PointSet, q: float):
        if q <= 0:
            raise ValueError("q must be positive")
        _check_disjoint(candidates, eval_set)
        self.q = float(q)
        self.candidates = candidates
        self.eval_set = eval_set
        self.w = _floored_distances(candidates.points, eval_set.points) ** (-q)  # C x Q
        self.acc = np.zeros(len(eval_set))  # sum of w over selected candidates
        self.selected: list[int] = []
        self.offset = 2.0 * float(np.max(np.sum(1.0 / self.w, axis=1)))
        self._singleton = np.sum(1.0 / self.w, axis=1)  # g({x_k}) per candidate

    @property
    def n_candidates(self) -> int:
        return self.w.shape[0]

    @property
    def candidate_points(self) -> np.ndarray:
        return self.candidates.points

    def fresh(self) -> "RelaxedObjective":
        clone = object.__new__(RelaxedObjective)
        clone.q = self.q
        clone.candidates = self.candidates
        clone.eval_set = self.eval_set
        clone.w = self.w
        clone.acc = np.zeros(self.w.shape[1])
        clone.selected = []
        clone.offset = self.offset
        clone._singleton = self._singleton
        return clone

    def objective(self) -> float:
        """g(Z): the discrete relaxed coverage objective (inf when empty)."""
        if not self.selected:
            return math.inf
        return float(np.sum(1.0 / self.acc))

    def value(self) -> float:
        if not self.selected:
            return 0.0
        return self.offset - self.objective()

    def delta(self, k: int) -> float:
        if not 0 <= k < self.n_candidates:
            raise IndexError(f"candidate index {k} out of range")
        if not self.selected:
            return self.offset - float(self._singleton[k])
        wk = self.w[k]
        return float(np.sum(1.0 / self.acc - 1.0 / (self.acc + wk)))

    def delta_batch(self, ks: np.ndarray) -> np.ndarray:
        ks = np.asarray(ks, dtype=int)
        if not self.selected:
            return self.offset - self._singleton[ks]
        return np.sum(1.0 / self.acc - 1.0 / (self.acc + self.w[ks]), axis=1)

    def commit(self, k: int) -> None:
        if not 0 <= k < self.n_candidates:
            raise IndexError(f"candidate index {k} out of range")
        self.acc = self.acc + self.w[k]
        self.selected.append(k)


def rd_construct(
    candidates: PointSet,
    eval_set: PointSet,
    q: float | None,
    n: int,
    lazy: bool = True,
    timing: bool = False,
) -> tuple[Design, GreedyTrace]:
    """Greedy minimization of the relaxed-coverage objective.

    q defaults to the dimension. The first point minimizes the q-th distance
    moment over the evaluation set.
    """
    q = float(candidates.d) if q is None else float(q)
    oracle = RelaxedObjective(candidates, eval_set, q)
    run = lazy_greedy if lazy else greedy
    return run(oracle, n, timing=timing)


@dataclass
class VdStep:
    index: int  # candidate emitted into the design
    argmax_index: int  # true maximizer of the directional derivative
    collision: bool  # argmax was already in the design support
    weight_sum: float
    seconds: float = 0.0


@dataclass
class VdTrace:
    candidate_count: int
    steps: list[VdStep] = field(default_factory=list)

    @property
    def indices(self) -> list[int]:
        return [s.index for s in self.steps]


def vd_construct(
    candidates: PointSet,
    eval_set: PointSet,
    q: float | None,
    n: int,
    timing: bool = False,
) -> tuple[Design, VdTrace]:
    """Vertex-direction (conditional gradient) construction with step 1/(k+1).

    The measure starts at the candidate minimizing the q-th distance moment;
    each iteration moves toward the delta measure at the candidate maximizing
    sum_j ||z - x_j||^(-q) / (sum_y weight(y) ||y - x_j||^(-q))^2. If the
    maximizer is already in the support, its weight still receives the update
    but the emitted design point is the best not-yet-selected candidate, so
    prefixes keep n distinct points; such steps are flagged in the trace.
    """
    q = float(candidates.d) if q is None else float(q)
    if q <= 0:
        raise ValueError("q must be positive")
    _check_disjoint(candidates, eval_set)
    if not 1 <= n <= len(candidates):
        raise ValueError(f"target size {n} not in 1..{len(candidates)}")
    t0 = time.perf_counter()
    dist = _floored_distances(candidates.points, eval_set.points)  # C x Q
    w = dist ** (-q)
    moments = np.sum(dist**q, axis=1)

    trace = VdTrace(candidate_count=len(candidates))
    weights = np.zeros(len(candidates))
    first = int(np.argmin(moments))
    weights[first] = 1.0
    acc = w[first].copy()  # sum_y weight(y) * ||y - x_j||^(-q), per eval point
    chosen = [first]
    taken = np.zeros(len(candidates), dtype=bool)
    taken[first] = True
    trace.steps.append(
        VdStep(first, first, False, 1.0, (time.perf_counter() - t0) if timing else 0.0)
    )

    for k in range(1, n):
        scores = w @ (acc**-2.0)
        argmax = int(np.argmax(scores))
        if taken[argmax]:
            masked = np.where(taken, -np.inf, scores)
            emit = int(np.argmax(masked))
            collision = True
        else:
            emit = argmax
            collision = False
        step = 1.0 / (k + 1.0)
        weights *= 1.0 - step
        weights[argmax] += step
        acc = (1.0 - step) * acc + step * w[argmax]
        chosen.append(emit)
        taken[emit] = True
        trace.steps.append(
            VdStep(
                emit,
                argmax,
                collision,
                float(np.sum(weights)),
                (time.perf_counter() - t0) if timing else 0.0,
            )
        )
    return (
        Design(candidates.points[chosen], indices=tuple(chosen), trace=trace),
        trace,
    )
