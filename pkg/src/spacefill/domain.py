"""Compact design regions: membership, boundary distance, diameter, center.

All regions are closed sets (boundary points are members), so candidate
clipping is reproducible. Supported kinds: unit hypercube, axis-aligned box,
Euclidean ball, and spherical annulus (the one non-convex region).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Domain",
    "Hypercube",
    "Box",
    "Ball",
    "Annulus",
    "domain_from_config",
    "domain_to_config",
]


def _as_point(x, d: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (d,):
        raise ValueError(f"expected a point of dimension {d}, got shape {x.shape}")
    return x


@dataclass(frozen=True)
class Domain:
    """Base class; concrete kinds implement the four geometric queries."""

    def contains(self, x) -> bool:
        raise NotImplementedError

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (n, d) array."""
        raise NotImplementedError

    def dist_to_boundary(self, x) -> float:
        raise NotImplementedError

    def dist_to_boundary_many(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def diameter(self) -> float:
        raise NotImplementedError

    def center(self) -> np.ndarray:
        raise NotImplementedError

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        """(lower, upper) corners of the tightest axis-aligned box."""
        raise NotImplementedError

    @property
    def is_convex(self) -> bool:
        raise NotImplementedError

    @property
    def d(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Box(Domain):
    """Axis-aligned box with lower[i] < upper[i] in every coordinate."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        lo, up = np.asarray(self.lower, float), np.asarray(self.upper, float)
        if lo.ndim != 1 or lo.shape != up.shape or lo.size == 0:
            raise ValueError("box bounds must be equal-length nonempty vectors")
        if not np.all(lo < up):
            raise ValueError("box requires lower < upper in every coordinate")
        object.__setattr__(self, "lower", tuple(float(v) for v in lo))
        object.__setattr__(self, "upper", tuple(float(v) for v in up))

    @property
    def d(self) -> int:
        return len(self.lower)

    @property
    def is_convex(self) -> bool:
        return True

    def contains(self, x) -> bool:
        x = _as_point(x, self.d)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, float)
        return np.all(pts >= self.lower, axis=1) & np.all(pts <= self.upper, axis=1)

    def dist_to_boundary(self, x) -> float:
        x = _as_point(x, self.d)
        if not self.contains(x):
            raise ValueError("point lies outside the domain")
        return float(min(np.min(x - self.lower), np.min(np.asarray(self.upper) - x)))

    def dist_to_boundary_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, float)
        lo = np.min(pts - np.asarray(self.lower), axis=1)
        hi = np.min(np.asarray(self.upper) - pts, axis=1)
        return np.minimum(lo, hi)

    def diameter(self) -> float:
        return float(np.linalg.norm(np.asarray(self.upper) - np.asarray(self.lower)))

    def center(self) -> np.ndarray:
        return (np.asarray(self.lower) + np.asarray(self.upper)) / 2.0

    def bounding_box(self):
        return np.asarray(self.lower, float), np.asarray(self.upper, float)


def Hypercube(d: int) -> Box:
    """The unit hypercube [0, 1]^d."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return Box(lower=(0.0,) * d, upper=(1.0,) * d)


def is_unit_hypercube(dom: Domain) -> bool:
    return (
        isinstance(dom, Box)
        and all(v == 0.0 for v in dom.lower)
        and all(v == 1.0 for v in dom.upper)
    )


@dataclass(frozen=True)
class Ball(Domain):
    """Closed Euclidean ball."""

    center_point: tuple[float, ...]
    radius: float

    def __post_init__(self):
        c = np.asarray(self.center_point, float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("ball center must be a nonempty vector")
        if not self.radius > 0:
            raise ValueError("ball radius must be positive")
        object.__setattr__(self, "center_point", tuple(float(v) for v in c))
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def d(self) -> int:
        return len(self.center_point)

    @property
    def is_convex(self) -> bool:
        return True

    def _r(self, pts: np.ndarray) -> np.ndarray:
        return np.sqrt(np.sum((np.asarray(pts, float) - self.center_point) ** 2, axis=-1))

    def contains(self, x) -> bool:
        x = _as_point(x, self.d)
        return bool(self._r(x) <= self.radius)

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        return self._r(pts) <= self.radius

    def dist_to_boundary(self, x) -> float:
        x = _as_point(x, self.d)
        if not self.contains(x):
            raise ValueError("point lies outside the domain")
        return float(self.radius - self._r(x))

    def dist_to_boundary_many(self, pts: np.ndarray) -> np.ndarray:
        return self.radius - self._r(pts)

    def diameter(self) -> float:
        return 2.0 * self.radius

    def center(self) -> np.ndarray:
        return np.asarray(self.center_point, float)

    def bounding_box(self):
        c = np.asarray(self.center_point, float)
        return c - self.radius, c + self.radius


@dataclass(frozen=True)
class Annulus(Domain):
    """Closed spherical shell r_inner <= ||x - c|| <= r_outer (non-convex)."""

    center_point: tuple[float, ...]
    r_inner: float
    r_outer: float

    def __post_init__(self):
        c = np.asarray(self.center_point, float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("annulus center must be a nonempty vector")
        if not (0.0 < self.r_inner < self.r_outer):
            raise ValueError("annulus requires 0 < r_inner < r_outer")
        object.__setattr__(self, "center_point", tuple(float(v) for v in c))
        object.__setattr__(self, "r_inner", float(self.r_inner))
        object.__setattr__(self, "r_outer", float(self.r_outer))

    @property
    def d(self) -> int:
        return len(self.center_point)

    @property
    def is_convex(self) -> bool:
        return False

    def _r(self, pts: np.ndarray) -> np.ndarray:
        return np.sqrt(np.sum((np.asarray(pts, float) - self.center_point) ** 2, axis=-1))

    def contains(self, x) -> bool:
        x = _as_point(x, self.d)
        r = self._r(x)
        return bool(self.r_inner <= r <= self.r_outer)

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        r = self._r(pts)
        return (r >= self.r_inner) & (r <= self.r_outer)

    def dist_to_boundary(self, x) -> float:
        x = _as_point(x, self.d)
        if not self.contains(x):
            raise ValueError("point lies outside the domain")
        r = self._r(x)
        return float(min(r - self.r_inner, self.r_outer - r))

    def dist_to_boundary_many(self, pts: np.ndarray) -> np.ndarray:
        r = self._r(pts)
        return np.minimum(r - self.r_inner, self.r_outer - r)

    def diameter(self) -> float:
        return 2.0 * self.r_outer

    def center(self) -> np.ndarray:
        # The medial sphere has radius (r_inner + r_outer)/2; break the tie
        # deterministically along the +x axis.
        c = np.asarray(self.center_point, float).copy()
        c[0] += (self.r_inner + self.r_outer) / 2.0
        return c

    def bounding_box(self):
        c = np.asarray(self.center_point, float)
        return c - self.r_outer, c + self.r_outer


def domain_from_config(spec: dict) -> Domain:
    """Build a domain from its JSON run-config representation."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("domain spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "hypercube":
        return Hypercube(int(spec["d"]))
    if kind == "box":
        return Box(lower=tuple(spec["lower"]), upper=tuple(spec["upper"]))
    if kind == "ball":
        return Ball(center_point=tuple(spec["center"]), radius=float(spec["radius"]))
    if kind == "annulus":
        return Annulus(
            center_point=tuple(spec["center"]),
            r_inner=float(spec["r_inner"]),
            r_outer=float(spec["r_outer"]),
        )
    raise ValueError(f"unknown domain kind {kind!r}")


def domain_to_config(dom: Domain) -> dict:
    if is_unit_hypercube(dom):
        return {"kind": "hypercube", "d": dom.d}
    if isinstance(dom, Box):
        return {"kind": "box", "lower": list(dom.lower), "upper": list(dom.upper)}
    if isinstance(dom, Ball):
        return {"kind": "ball", "center": list(dom.center_point), "radius": dom.radius}
    if isinstance(dom, Annulus):
        return {
            "kind": "annulus",
            "center": list(dom.center_point),
            "r_inner": dom.r_inner,
            "r_outer": dom.r_outer,
        }
    raise ValueError(f"cannot serialize domain {dom!r}")
