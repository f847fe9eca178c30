import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacefill.domain import (
    Annulus,
    Ball,
    Box,
    Hypercube,
    domain_from_config,
    domain_to_config,
    is_unit_hypercube,
)

UNIT_SQUARE = Hypercube(2)
ANNULUS = Annulus((0.0, 0.0), 0.5, 1.0)


class TestContains:
    def test_interior_point(self):
        assert UNIT_SQUARE.contains([0.5, 0.5])

    def test_boundary_is_included(self):
        assert UNIT_SQUARE.contains([0.0, 1.0])

    def test_annulus_hole_excluded(self):
        assert not ANNULUS.contains([0.3, 0.0])

    def test_annulus_rings_included(self):
        assert ANNULUS.contains([0.5, 0.0])
        assert ANNULUS.contains([0.0, 1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            UNIT_SQUARE.contains([0.5, 0.5, 0.5])

    def test_contains_many_matches_scalar(self, rng):
        pts = rng.uniform(-1.2, 1.2, size=(200, 2))
        many = ANNULUS.contains_many(pts)
        assert all(ANNULUS.contains(p) == m for p, m in zip(pts, many))


class TestBoundaryDistance:
    def test_square_center(self):
        assert UNIT_SQUARE.dist_to_boundary([0.5, 0.5]) == 0.5

    def test_square_nearest_face(self):
        assert UNIT_SQUARE.dist_to_boundary([0.25, 0.5]) == 0.25

    def test_annulus_hand_value(self):
        # min(0.7 - 0.5, 1 - 0.7)
        assert ANNULUS.dist_to_boundary([0.7, 0.0]) == pytest.approx(0.2)

    def test_outside_raises(self):
        with pytest.raises(ValueError):
            UNIT_SQUARE.dist_to_boundary([1.5, 0.5])
        with pytest.raises(ValueError):
            ANNULUS.dist_to_boundary([0.0, 0.0])

    def test_zero_on_boundary(self):
        assert UNIT_SQUARE.dist_to_boundary([0.0, 0.3]) == 0.0
        assert ANNULUS.dist_to_boundary([1.0, 0.0]) == pytest.approx(0.0)

    @pytest.mark.parametrize("dom", [UNIT_SQUARE, Ball((0.2, 0.3), 1.5), ANNULUS])
    def test_bounded_by_half_diameter(self, dom, rng):
        lo, hi = dom.bounding_box()
        pts = rng.uniform(lo, hi, size=(500, dom.d))
        pts = pts[dom.contains_many(pts)]
        assert np.all(dom.dist_to_boundary_many(pts) <= dom.diameter() / 2 + 1e-12)

    @pytest.mark.parametrize("dom", [UNIT_SQUARE, Ball((0.0, 0.0), 2.0), ANNULUS])
    def test_lipschitz(self, dom, rng):
        lo, hi = dom.bounding_box()
        pts = rng.uniform(lo, hi, size=(400, dom.d))
        pts = pts[dom.contains_many(pts)]
        b = dom.dist_to_boundary_many(pts)
        for _ in range(50):
            i, j = rng.integers(0, len(pts), size=2)
            gap = abs(b[i] - b[j])
            assert gap <= np.linalg.norm(pts[i] - pts[j]) + 1e-12


class TestDiameter:
    @pytest.mark.parametrize("d", [1, 2, 5, 10])
    def test_hypercube(self, d):
        assert Hypercube(d).diameter() == pytest.approx(math.sqrt(d))

    def test_ball(self):
        assert Ball((0.0,), 3.0).diameter() == 6.0

    def test_annulus(self):
        assert ANNULUS.diameter() == 2.0

    def test_box(self):
        assert Box((0.0, 0.0), (3.0, 4.0)).diameter() == 5.0


class TestCenter:
    @pytest.mark.parametrize("d", [1, 3, 10])
    def test_hypercube_center(self, d):
        assert np.allclose(Hypercube(d).center(), np.full(d, 0.5))

    def test_ball_center(self):
        assert np.allclose(Ball((1.0, -2.0), 0.5).center(), [1.0, -2.0])

    def test_annulus_medial_point(self):
        assert np.allclose(ANNULUS.center(), [0.75, 0.0])

    @pytest.mark.parametrize("dom", [UNIT_SQUARE, Ball((0.5, 0.5), 0.5)])
    def test_center_maximizes_boundary_distance(self, dom, rng):
        c = dom.center()
        assert dom.contains(c)
        best = dom.dist_to_boundary(c)
        lo, hi = dom.bounding_box()
        pts = rng.uniform(lo, hi, size=(1000, dom.d))
        pts = pts[dom.contains_many(pts)]
        assert np.all(dom.dist_to_boundary_many(pts) <= best + 1e-12)

    def test_annulus_center_inside(self):
        c = ANNULUS.center()
        assert ANNULUS.contains(c)
        assert ANNULUS.dist_to_boundary(c) == pytest.approx(0.25)


class TestValidation:
    def test_bad_annulus(self):
        with pytest.raises(ValueError):
            Annulus((0.0, 0.0), 1.0, 0.5)
        with pytest.raises(ValueError):
            Annulus((0.0, 0.0), 0.0, 1.0)

    def test_bad_box(self):
        with pytest.raises(ValueError):
            Box((0.0, 1.0), (1.0, 1.0))

    def test_bad_ball(self):
        with pytest.raises(ValueError):
            Ball((0.0,), 0.0)


class TestConfigRoundTrip:
    @pytest.mark.parametrize(
        "spec",
        [
            {"kind": "hypercube", "d": 4},
            {"kind": "box", "lower": [0.0, -1.0], "upper": [2.0, 1.0]},
            {"kind": "ball", "center": [0.0, 0.0, 0.0], "radius": 2.0},
            {"kind": "annulus", "center": [0.0, 0.0], "r_inner": 0.5, "r_outer": 1.0},
        ],
    )
    def test_round_trip(self, spec):
        dom = domain_from_config(spec)
        assert domain_to_config(dom) == spec

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            domain_from_config({"kind": "torus", "d": 2})

    def test_unit_hypercube_detection(self):
        assert is_unit_hypercube(Hypercube(3))
        assert not is_unit_hypercube(Box((0.0,), (2.0,)))


@settings(max_examples=40, deadline=None)
@given(
    x=st.floats(0, 1),
    y=st.floats(0, 1),
    u=st.floats(0, 1),
    v=st.floats(0, 1),
)
def test_boundary_distance_lipschitz_hypothesis(x, y, u, v):
    a, b = np.array([x, y]), np.array([u, v])
    da = UNIT_SQUARE.dist_to_boundary(a)
    db = UNIT_SQUARE.dist_to_boundary(b)
    assert abs(da - db) <= np.linalg.norm(a - b) + 1e-12
