"""Coffee-house constructions: greedy packing-radius and boundary-phobic variants.

The compromise distance min(d(x, design), beta * d(x, boundary)) penalizes
candidates close to the domain boundary; beta = inf recovers the classical
farthest-point (packing radius) rule. Only the per-candidate running minimum
distance to the design is maintained, so candidate sets can be much larger
than for the matrix-based covering criterion.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .domain import Domain
from .metrics import Design
from .pointgen import PointSet

__all__ = [
    "SpacingConfig",
    "CoffeehouseStep",
    "CoffeehouseTrace",
    "d_beta",
    "s_beta",
    "p_beta",
    "coffeehouse_construct",
]


@dataclass(frozen=True)
class SpacingConfig:
    """Boundary-penalty weight; beta > 0 or math.inf."""

    beta: float

    def __post_init__(self):
        if not (self.beta > 0.0):  # also rejects nan
            raise ValueError("beta must be positive (math.inf for pure packing)")


def d_beta(x, design: Design, domain: Domain, beta: float) -> float:
    """min(distance to design, beta * distance to boundary) at a point.

    With an empty design the first term is +inf, so the value reduces to
    beta * d(x, boundary) (and +inf when beta is also infinite).
    """
    x = np.asarray(x, dtype=float)
    if not domain.contains(x):
        raise ValueError("point lies outside the domain")
    if design.n == 0:
        dist = math.inf
    else:
        dist = float(np.min(np.sqrt(np.sum((design.points - x) ** 2, axis=1))))
    if math.isinf(beta):
        return dist
    return min(dist, beta * domain.dist_to_boundary(x))


def _scores(design: Design, candidates: PointSet, domain: Domain, beta: float) -> np.ndarray:
    if design.n == 0:
        dist = np.full(len(candidates), np.inf)
    else:
        dist = np.full(len(candidates), np.inf)
        for z in design.points:
            np.minimum(dist, np.sqrt(np.sum((candidates.points - z) ** 2, axis=1)), out=dist)
    if math.isinf(beta):
        return dist
    return np.minimum(dist, beta * domain.dist_to_boundary_many(candidates.points))


def s_beta(
    design: Design, candidates: PointSet, domain: Domain, beta: float
) -> tuple[float, np.ndarray]:
    """Max of the compromise distance over the candidate set, with the witness.

    Finite-candidate approximation of the beta-spacing; ties resolve to the
    lowest candidate index.
    """
    if len(candidates) == 0:
        raise ValueError("candidate set is empty")
    scores = _scores(design, candidates, domain, beta)
    best = int(np.argmax(scores))
    return float(scores[best]), candidates.points[best]


def p_beta(design: Design, domain: Domain, beta: float) -> float:
    """Boundary-penalized packing radius.

    Minimum over ordered pairs (i, j), i != j, of
    (1/2) * min(||z_i - z_j||, beta * d(z_i, boundary)); beta = inf gives the
    packing radius.
    """
    if design.n < 2:
        raise ValueError("needs at least 2 design points")
    pts = design.points
    best = math.inf
    for i in range(design.n):
        others = np.delete(pts, i, axis=0)
        pair = float(np.min(np.sqrt(np.sum((others - pts[i]) ** 2, axis=1))))
        if not math.isinf(beta):
            pair = min(pair, beta * domain.dist_to_boundary(pts[i]))
        best = min(best, pair)
    return best / 2.0


@dataclass
class CoffeehouseStep:
    index: int
    score: float  # compromise distance of the chosen point = S_beta of the prefix
    seconds: float = 0.0


@dataclass
class CoffeehouseTrace:
    candidate_count: int
    beta: float
    steps: list[CoffeehouseStep] = field(default_factory=list)

    @property
    def indices(self) -> list[int]:
        return [s.index for s in self.steps]


def coffeehouse_construct(
    candidates: PointSet,
    domain: Domain,
    beta: float,
    n: int,
    timing: bool = False,
) -> tuple[Design, CoffeehouseTrace]:
    """Greedy maximization of the compromise distance over a candidate set.

    The first point maximizes beta * d(x, boundary); with beta = inf every
    candidate ties at +inf and the tie is broken toward the candidate nearest
    to the domain center, recovering the usual Chebyshev-center start. Each
    subsequent point maximizes min(d(x, design), beta * d(x, boundary)), with
    equal scores resolved to the lowest candidate index.
    """
    SpacingConfig(beta=beta)
    if n > len(candidates):
        raise ValueError(f"target size {n} exceeds candidate count {len(candidates)}")
    if n < 1:
        raise ValueError("target size must be >= 1")
    if not domain.is_convex and not math.isinf(beta):
        raise ValueError(
            "finite beta spacings are supported on convex domains only; "
            "use beta = inf (optionally with an eroded candidate set)"
        )
    pts = candidates.points
    c = len(candidates)
    trace = CoffeehouseTrace(candidate_count=c, beta=beta)
    t0 = time.perf_counter()

    bdist = domain.dist_to_boundary_many(pts)
    if math.isinf(beta):
        first = int(np.argmin(np.sqrt(np.sum((pts - domain.center()) ** 2, axis=1))))
        first_score = math.inf
    else:
        first = int(np.argmax(bdist))
        first_score = float(beta * bdist[first])
    chosen = [first]
    taken = np.zeros(c, dtype=bool)
    taken[first] = True
    trace.steps.append(
        CoffeehouseStep(first, first_score, (time.perf_counter() - t0) if timing else 0.0)
    )

    mind = np.sqrt(np.sum((pts - pts[first]) ** 2, axis=1))
    for _ in range(1, n):
        scores = mind if math.isinf(beta) else np.minimum(mind, beta * bdist)
        scores = np.where(taken, -np.inf, scores)
        best = int(np.argmax(scores))
        chosen.append(best)
        taken[best] = True
        trace.steps.append(
            CoffeehouseStep(
                best, float(scores[best]), (time.perf_counter() - t0) if timing else 0.0
            )
        )
        np.minimum(mind, np.sqrt(np.sum((pts - pts[best]) ** 2, axis=1)), out=mind)
    return Design(pts[chosen], indices=tuple(chosen), trace=trace), trace
