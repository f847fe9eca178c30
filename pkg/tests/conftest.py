import math

import numpy as np
import pytest

from spacefill import cdf_criterion, pointgen


class AdditiveOracle:
    """Modular set function: f(S) = sum of nonnegative per-element weights."""

    submodular = True

    def __init__(self, weights):
        self.w = np.asarray(weights, dtype=float)
        self.selected: list[int] = []

    @property
    def n_candidates(self):
        return len(self.w)

    @property
    def candidate_points(self):
        return self.w[:, None]

    def value(self):
        return float(sum(self.w[i] for i in self.selected))

    def delta(self, k):
        return 0.0 if k in self.selected else float(self.w[k])

    def delta_batch(self, ks):
        return np.array([self.delta(int(k)) for k in ks])

    def commit(self, k):
        if k not in self.selected:
            self.selected.append(k)


class PackingRadiusOracle:
    """Packing radius as a set function (f = 0 below two points).

    Neither submodular nor nondecreasing; used as a negative control for the
    submodularity checker.
    """

    submodular = False

    def __init__(self, points):
        self.pts = np.atleast_2d(np.asarray(points, dtype=float))
        self.selected: list[int] = []

    @property
    def n_candidates(self):
        return len(self.pts)

    @property
    def candidate_points(self):
        return self.pts

    def _pr(self, sel):
        if len(sel) < 2:
            return 0.0
        best = math.inf
        for a in range(len(sel) - 1):
            for b in range(a + 1, len(sel)):
                best = min(best, float(np.linalg.norm(self.pts[sel[a]] - self.pts[sel[b]])))
        return best / 2.0

    def value(self):
        return self._pr(self.selected)

    def delta(self, k):
        if k in self.selected:
            return 0.0
        return self._pr(self.selected + [k]) - self._pr(self.selected)

    def commit(self, k):
        if k not in self.selected:
            self.selected.append(k)


def random_point_set(rng, n, d, tag="random"):
    return pointgen.PointSet(rng.random((n, d)), tag)


def make_cdf_instance(seed, c=None, q_count=None, q_exponent=None, big_b=None):
    """Small random criterion instance in the unit square, for oracle checks."""
    rng = np.random.default_rng(seed)
    c = c if c is not None else int(rng.integers(3, 9))
    q_count = q_count if q_count is not None else int(rng.integers(4, 17))
    q_exponent = q_exponent if q_exponent is not None else float(rng.choice([0.0, 5.0, 10.0]))
    diam = math.sqrt(2.0)
    big_b = big_b if big_b is not None else float(diam * (1.0 + rng.random()))
    cands = random_point_set(rng, c, 2, "candidates")
    evals = random_point_set(rng, q_count, 2, "eval")
    cfg = cdf_criterion.CriterionConfig(q=q_exponent, B=big_b)
    return cdf_criterion.init(evals, cands, cfg)


@pytest.fixture
def rng():
    return np.random.default_rng(20240301)
