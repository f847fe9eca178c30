"""Greedy and lazy-greedy maximization of nondecreasing submodular oracles.

The engine is criterion-agnostic: an oracle exposes `n_candidates`,
`candidate_points`, `value()`, `delta(k)`, `commit(k)`, optionally a
vectorized `delta_batch(indices)`, and a boolean `submodular` attribute.
Ties always resolve to the lowest candidate index, which makes greedy and
lazy-greedy outputs identical and runs reproducible.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from .metrics import Design

__all__ = [
    "GreedyStep",
    "GreedyTrace",
    "SubmodularityReport",
    "greedy",
    "lazy_greedy",
    "efficiency_bound",
    "brute_force_best",
    "check_submodular",
]


@dataclass
class GreedyStep:
    index: int
    gain: float
    value: float
    evaluations: int
    seconds: float = 0.0


@dataclass
class GreedyTrace:
    candidate_count: int
    steps: list[GreedyStep] = field(default_factory=list)

    @property
    def indices(self) -> list[int]:
        return [s.index for s in self.steps]

    @property
    def fractions(self) -> list[float]:
        """Effective candidate-set fraction per iteration (evaluations / C)."""
        return [s.evaluations / self.candidate_count for s in self.steps]

    @property
    def mean_fraction(self) -> float:
        fr = self.fractions
        return sum(fr) / len(fr) if fr else 0.0


def _batch_deltas(oracle, indices: np.ndarray) -> np.ndarray:
    if hasattr(oracle, "delta_batch"):
        return np.asarray(oracle.delta_batch(indices), dtype=float)
    return np.array([oracle.delta(int(k)) for k in indices], dtype=float)


def _design_from(oracle, indices: list[int], trace: GreedyTrace) -> Design:
    pts = np.asarray(oracle.candidate_points, dtype=float)[indices]
    return Design(pts, indices=tuple(indices), trace=trace)


def greedy(oracle, k: int, timing: bool = False) -> tuple[Design, GreedyTrace]:
    """Plain greedy: scan every unselected candidate at every step."""
    c = oracle.n_candidates
    if not 1 <= k <= c:
        raise ValueError(f"target size {k} not in 1..{c}")
    trace = GreedyTrace(candidate_count=c)
    chosen: list[int] = []
    available = np.ones(c, dtype=bool)
    t0 = time.perf_counter()
    for _ in range(k):
        idx = np.flatnonzero(available)
        deltas = _batch_deltas(oracle, idx)
        best_pos = int(np.argmax(deltas))  # argmax returns the first maximum
        best = int(idx[best_pos])
        oracle.commit(best)
        available[best] = False
        chosen.append(best)
        trace.steps.append(
            GreedyStep(
                index=best,
                gain=float(deltas[best_pos]),
                value=float(oracle.value()),
                evaluations=len(idx),
                seconds=(time.perf_counter() - t0) if timing else 0.0,
            )
        )
    return _design_from(oracle, chosen, trace), trace


def lazy_greedy(oracle, k: int, timing: bool = False) -> tuple[Design, GreedyTrace]:
    """Lazy greedy with stale upper bounds on the gains.

    A max-heap keyed by (stale bound, index) is refreshed on pop; a popped
    entry whose bound was computed in the current iteration is a certified
    maximum. Heap ordering by (-bound, index) makes equal-gain ties resolve
    to the lowest index, so the output matches plain greedy exactly.
    """
    if not getattr(oracle, "submodular", False):
        raise ValueError("lazy_greedy requires an oracle declared submodular")
    c = oracle.n_candidates
    if not 1 <= k <= c:
        raise ValueError(f"target size {k} not in 1..{c}")
    trace = GreedyTrace(candidate_count=c)
    chosen: list[int] = []
    selected = np.zeros(c, dtype=bool)
    t0 = time.perf_counter()

    # iteration 1 scans everything, establishing the initial bounds
    bounds = _batch_deltas(oracle, np.arange(c))
    stamp = np.ones(c, dtype=np.int64)  # iteration at which each bound was computed
    heap = [(-bounds[i], i) for i in range(c)]
    heapq.heapify(heap)

    for it in range(1, k + 1):
        evaluations = c if it == 1 else 0
        while True:
            neg_bound, idx = heapq.heappop(heap)
            if selected[idx] or -neg_bound != bounds[idx]:
                continue  # superseded or already committed
            if stamp[idx] == it:
                best = idx
                break
            fresh = oracle.delta(int(idx))
            evaluations += 1
            bounds[idx] = fresh
            stamp[idx] = it
            heapq.heappush(heap, (-fresh, idx))
        gain = float(bounds[best])
        oracle.commit(int(best))
        selected[best] = True
        chosen.append(int(best))
        trace.steps.append(
            GreedyStep(
                index=int(best),
                gain=gain,
                value=float(oracle.value()),
                evaluations=evaluations,
                seconds=(time.perf_counter() - t0) if timing else 0.0,
            )
        )
    return _design_from(oracle, chosen, trace), trace


def efficiency_bound(k: int) -> float:
    """Guaranteed fraction 1 - (1 - 1/k)^k of the optimal value at size k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 1.0 - (1.0 - 1.0 / k) ** k


def _set_value(factory: Callable[[], Any], subset: Iterable[int]) -> float:
    oracle = factory()
    for i in subset:
        oracle.commit(int(i))
    return float(oracle.value())


def brute_force_best(
    factory: Callable[[], Any], k: int, cap: int = 10**6
) -> tuple[tuple[int, ...], float]:
    """Exact maximizer over all size-k subsets, via fresh oracle states.

    Assumes a nondecreasing objective, so only subsets of size exactly k are
    enumerated.
    """
    oracle = factory()
    c = oracle.n_candidates
    if not 1 <= k <= c:
        raise ValueError(f"target size {k} not in 1..{c}")
    if math.comb(c, k) > cap:
        raise ValueError(f"C({c},{k}) = {math.comb(c, k)} exceeds cap {cap}")
    best_set: tuple[int, ...] = ()
    best_val = -math.inf
    for subset in itertools.combinations(range(c), k):
        val = _set_value(factory, subset)
        if val > best_val:
            best_set, best_val = subset, val
    return best_set, best_val


@dataclass
class SubmodularityReport:
    submodular: bool
    nondecreasing: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.submodular and self.nondecreasing


def check_submodular(
    factory: Callable[[], Any], tol: float = 1e-10, max_candidates: int = 12
) -> SubmodularityReport:
    """Exhaustively verify the diminishing-returns property and monotonicity.

    Checks f(A + x) - f(A) >= f(B + x) - f(B) for every A subset of B and
    x outside B, and that all marginal gains are >= -tol. Marginals are taken
    from the oracle's own delta() so that the check exercises the same code
    path the greedy engine uses.
    """
    c = factory().n_candidates
    if c > max_candidates:
        raise ValueError(f"exhaustive check limited to {max_candidates} candidates")

    # marginal[mask][x] = delta of adding x to the subset encoded by mask
    all_idx = np.arange(c)
    marginal = np.empty((1 << c, c))
    for mask in range(1 << c):
        oracle = factory()
        for i in range(c):
            if mask >> i & 1:
                oracle.commit(i)
        marginal[mask] = _batch_deltas(oracle, all_idx)

    in_mask = (np.arange(1 << c)[:, None] >> np.arange(c)) & 1
    out_mask = in_mask == 0  # out_mask[mask, x]: candidate x not in subset mask

    nondec = True
    nondec_witness = None
    bad = (marginal < -tol) & out_mask
    if bad.any():
        m, x = np.argwhere(bad)[0]
        nondec = False
        nondec_witness = (
            f"f decreases: adding candidate {x} to subset mask {m:#x} "
            f"changes f by {marginal[m, x]:.3e}"
        )

    for b_mask in range(1 << c):
        # enumerate proper and improper submasks a of b
        a = b_mask
        while True:
            a = (a - 1) & b_mask
            gap = marginal[a] - marginal[b_mask]
            viol = (gap < -tol) & out_mask[b_mask]
            if viol.any():
                x = int(np.flatnonzero(viol)[0])
                return SubmodularityReport(
                    submodular=False,
                    nondecreasing=nondec,
                    violation=(
                        f"diminishing returns fails for x={x}, A=mask {a:#x}, "
                        f"B=mask {b_mask:#x}: gain grows by {-gap[x]:.3e}"
                    ),
                )
            if a == 0:
                break
    return SubmodularityReport(
        submodular=True, nondecreasing=nondec, violation=nondec_witness
    )
