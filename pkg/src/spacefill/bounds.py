"""Closed-form covering-radius bounds and analytic reference designs.

Used for trajectory normalization, boundary-penalty calibration, and as test
oracles for the numerical machinery.
"""

from __future__ import annotations

import math

import numpy as np

from .metrics import Design
from .pointgen import next_prime

__all__ = [
    "unit_ball_volume",
    "r_lower",
    "r_upper",
    "integer_root",
    "beta_star",
    "lds_cr_upper",
    "faure_base",
    "two_point_optimal",
    "three_point_reference",
]


def unit_ball_volume(d: int) -> float:
    """Volume of the d-dimensional Euclidean unit ball.

    Half-integer recurrence V_d = V_(d-2) * 2*pi / d, exact for this use.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    v_even, v_odd = 1.0, 2.0  # V_0, V_1
    for k in range(2, d + 1):
        if k % 2 == 0:
            v_even = v_even * 2.0 * math.pi / k
        else:
            v_odd = v_odd * 2.0 * math.pi / k
    return v_even if d % 2 == 0 else v_odd


def r_lower(n: int, d: int) -> float:
    """Covering-radius lower bound (n * V_d)^(-1/d) for n points in unit volume."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return float((n * unit_ball_volume(d)) ** (-1.0 / d))


def integer_root(n: int, d: int) -> int:
    """floor(n^(1/d)) computed exactly (no floating floor misfires at n = k^d)."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    k = max(1, int(round(n ** (1.0 / d))))
    while k**d > n:
        k -= 1
    while (k + 1) ** d <= n:
        k += 1
    return k


def r_upper(n: int, d: int) -> float:
    """Covering-radius upper bound sqrt(d) / (2 * floor(n^(1/d))) on the hypercube."""
    return math.sqrt(d) / (2.0 * integer_root(n, d))


def beta_star(n_max: int, d: int) -> float:
    """Boundary-penalty weight d / (2 * r_lower(n_max, d)) - sqrt(d).

    Chosen so that the second coffee-house point sits at distance
    r_lower(n_max, d) from a hypercube vertex.
    """
    val = d / (2.0 * r_lower(n_max, d)) - math.sqrt(d)
    if val <= 0.0:
        raise ValueError(
            f"beta_star({n_max}, {d}) = {val:.4g} is not positive; "
            "increase n_max or use an explicit beta"
        )
    return val


def lds_cr_upper(n_points: int, d: int, t: int, base: int) -> float:
    """Covering-radius upper bound sqrt(d) * base^(1 + t/d) / N^(1/d) for the
    first N points of a (t, d)-sequence in the given base."""
    if n_points < 1 or base < 2:
        raise ValueError("need N >= 1 and base >= 2")
    return math.sqrt(d) * base ** (1.0 + t / d) / n_points ** (1.0 / d)


def faure_base(d: int) -> int:
    """Base of the Faure sequence in dimension d: first prime >= d (t = 0)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return next_prime(max(2, d))


def two_point_optimal(d: int) -> tuple[Design, float]:
    """Covering-radius-optimal two-point design in the unit hypercube.

    Points (1/2, ..., 1/2, 1/4) and its reflection, with covering radius
    (1/2) * sqrt(d - 3/4).
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    z1 = np.full(d, 0.5)
    z1[-1] = 0.25
    pts = np.vstack([z1, 1.0 - z1])
    return Design(pts), 0.5 * math.sqrt(d - 0.75)


def three_point_reference(d: int) -> tuple[Design, float]:
    """Center plus the reflected pair (1/2, ..., 1/2, 1/6): covering radius
    (1/2) * sqrt(d - 8/9). The best three-point extension of the center."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    center = np.full(d, 0.5)
    x2 = np.full(d, 0.5)
    x2[-1] = 1.0 / 6.0
    pts = np.vstack([center, x2, 1.0 - x2])
    return Design(pts), 0.5 * math.sqrt(d - 8.0 / 9.0)
