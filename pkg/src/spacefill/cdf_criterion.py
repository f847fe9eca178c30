"""Submodular integrated covering criterion with O(Q) incremental gains.

The criterion integrates r^q times the empirical c.d.f. of the distance from
evaluation points to the design, over r in [b, B]. For a design Z with
distances d_j = d(x_j, Z) to the Q evaluation points, the value is

    B^(q+1)/(q+1) - (1/(Q(q+1))) * sum_j min(d_j, B)^(q+1)

minus the analogous term truncated at b when a positive lower integration
limit is configured. The set function is nondecreasing and submodular, so
greedy maximization carries the (1 - 1/e) guarantee.

All stored distance powers are pre-scaled by 1/B so matrix entries lie in
[0, 1]; gains are sums of nonnegative per-point differences, which avoids the
catastrophic cancellation of differencing two near-equal totals at large q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pointgen import PointSet

__all__ = ["CriterionConfig", "CriterionState", "CapacityError", "init"]

_DEFAULT_ENTRY_CAP = 1 << 27


class CapacityError(RuntimeError):
    """Raised when a requested allocation exceeds the configured entry cap."""


@dataclass(frozen=True)
class CriterionConfig:
    """Parameters of the integrated covering criterion.

    B is the upper integration limit (callers usually pass the domain
    diameter); b > 0 restricts the contribution of small distances and is off
    by default. With truncate_to_cr the state additionally tracks the
    criterion truncated at the current covering radius plus the matching
    constant, whose sum reproduces the untruncated value.
    """

    q: float = 10.0
    B: float = 1.0
    b: float = 0.0
    truncate_to_cr: bool = True

    def __post_init__(self):
        if not self.q > -1.0:
            raise ValueError("q must be > -1")
        if not self.B > 0.0:
            raise ValueError("B must be positive")
        if not (0.0 <= self.b < self.B):
            raise ValueError("need 0 <= b < B")


class CriterionState:
    """Mutable greedy-oracle state over fixed evaluation and candidate sets.

    Stores the powered, B-truncated distance matrix `p0` (Q x C, scaled to
    [0, 1]) and the current per-evaluation-point column `m`; the full powered
    matrix for the design-plus-candidate unions is implicit as
    min(m[:, None], p0) and is never materialized.
    """

    submodular = True

    def __init__(
        self,
        eval_set: PointSet,
        candidates: PointSet,
        config: CriterionConfig,
        entry_cap: int = _DEFAULT_ENTRY_CAP,
    ):
        if len(eval_set) < 1 or len(candidates) < 1:
            raise ValueError("evaluation and candidate sets must be nonempty")
        if eval_set.d != candidates.d:
            raise ValueError(
                f"dimension mismatch: eval d={eval_set.d}, candidates d={candidates.d}"
            )
        q_count, c_count = len(eval_set), len(candidates)
        if q_count * c_count > entry_cap:
            raise CapacityError(
                f"criterion matrix needs {q_count * c_count} entries, "
                f"cap is {entry_cap}; reduce Q or C or raise entry_cap"
            )
        self.config = config
        self.eval_set = eval_set
        self.candidates = candidates
        self._power = config.q + 1.0
        self._scale = config.B**self._power / self._power
        # (b/B)^(q+1), the scaled power at the lower integration limit
        self._tb = (config.b / config.B) ** self._power if config.b > 0.0 else 0.0
        self.p0 = self._scaled_powers(eval_set.points, candidates.points)
        self.m = np.ones(q_count)
        self.selected: list[int] = []
        self._value = 0.0
        self.cr_eval: float | None = None

    def _scaled_powers(self, eval_pts: np.ndarray, cand_pts: np.ndarray) -> np.ndarray:
        out = np.empty((len(eval_pts), len(cand_pts)))
        for k in range(len(cand_pts)):
            dist = np.sqrt(np.sum((eval_pts - cand_pts[k]) ** 2, axis=1))
            np.minimum(dist, self.config.B, out=dist)
            dist /= self.config.B
            out[:, k] = dist**self._power
        return out

    @property
    def n_candidates(self) -> int:
        return self.p0.shape[1]

    @property
    def n_eval(self) -> int:
        return self.p0.shape[0]

    @property
    def candidate_points(self) -> np.ndarray:
        return self.candidates.points

    def fresh(self) -> "CriterionState":
        """Empty-design copy sharing the precomputed distance matrix."""
        clone = object.__new__(CriterionState)
        clone.config = self.config
        clone.eval_set = self.eval_set
        clone.candidates = self.candidates
        clone._power = self._power
        clone._scale = self._scale
        clone._tb = self._tb
        clone.p0 = self.p0
        clone.m = np.ones(self.n_eval)
        clone.selected = []
        clone._value = 0.0
        clone.cr_eval = None
        return clone

    def _value_from(self, m: np.ndarray) -> float:
        upper = 1.0 - float(np.mean(m))
        if self._tb > 0.0:
            upper -= self._tb - float(np.mean(np.minimum(m, self._tb)))
        return self._scale * upper

    def value(self) -> float:
        """Current criterion value (0 for the empty design)."""
        return self._value_from(self.m)

    def value_accumulated(self) -> float:
        """Sum of committed gains; equals value() up to rounding."""
        return self._value

    def covering_radius_eval(self) -> float:
        """Covering radius of the current design over the evaluation set."""
        if not self.selected:
            raise ValueError("empty design")
        return self.config.B * float(np.max(self.m)) ** (1.0 / self._power)

    def truncation_constant(self) -> float:
        """(B^(q+1) - CR^(q+1)) / (q+1): offset between the B- and
        CR-truncated criterion values."""
        return self._scale * (1.0 - float(np.max(self.m)))

    def value_truncated(self) -> float:
        """Criterion truncated at the current covering radius.

        Computed directly from the distance powers (not as a difference of
        two near-equal totals); adding truncation_constant() recovers value()
        in real arithmetic.
        """
        upper = float(np.max(self.m)) - float(np.mean(self.m))
        if self._tb > 0.0:
            upper -= self._tb - float(np.mean(np.minimum(self.m, self._tb)))
        return self._scale * upper

    def _gain_terms(self, col: np.ndarray) -> np.ndarray:
        new_m = np.minimum(self.m, col)
        terms = self.m - new_m
        if self._tb > 0.0:
            terms = terms - (np.minimum(self.m, self._tb) - np.minimum(new_m, self._tb))
        return terms

    def delta(self, k: int) -> float:
        """Gain of adding candidate k; O(Q), state unchanged."""
        if not 0 <= k < self.n_candidates:
            raise IndexError(f"candidate index {k} out of range")
        return self._scale * float(np.mean(self._gain_terms(self.p0[:, k])))

    def delta_batch(self, ks: np.ndarray) -> np.ndarray:
        """Vectorized gains for many candidates at once."""
        ks = np.asarray(ks, dtype=int)
        cols = self.p0[:, ks]
        new_m = np.minimum(self.m[:, None], cols)
        terms = self.m[:, None] - new_m
        if self._tb > 0.0:
            terms = terms - (
                np.minimum(self.m, self._tb)[:, None] - np.minimum(new_m, self._tb)
            )
        return self._scale * terms.mean(axis=0)

    def commit(self, k: int) -> float:
        """Add candidate k to the design; returns the realized gain."""
        if not 0 <= k < self.n_candidates:
            raise IndexError(f"candidate index {k} out of range")
        col = self.p0[:, k]
        gain = self._scale * float(np.mean(self._gain_terms(col)))
        np.minimum(self.m, col, out=self.m)
        self.selected.append(k)
        self._value += gain
        if self.config.truncate_to_cr:
            self.cr_eval = self.covering_radius_eval()
        return gain

    def current_powers(self, ks: np.ndarray | None = None) -> np.ndarray:
        """Powered truncated distances min(d(x_j, design + candidate k), B)^(q+1).

        Computed column-block-wise from m and p0 rather than stored; pass `ks`
        to restrict to a block of candidate columns.
        """
        cols = self.p0 if ks is None else self.p0[:, np.asarray(ks, dtype=int)]
        return np.minimum(self.m[:, None], cols) * self.config.B**self._power

    def design_powers(self) -> np.ndarray:
        """Powered truncated distances of eval points to the current design."""
        return self.m * self.config.B**self._power


def init(
    eval_set: PointSet,
    candidates: PointSet,
    config: CriterionConfig,
    entry_cap: int = _DEFAULT_ENTRY_CAP,
) -> CriterionState:
    """Build the criterion state with an empty design."""
    return CriterionState(eval_set, candidates, config, entry_cap=entry_cap)
