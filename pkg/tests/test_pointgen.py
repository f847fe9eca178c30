import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacefill import pointgen
from spacefill.domain import Annulus, Hypercube
from spacefill.pointgen import (
    PointSet,
    clip_rescale,
    grid,
    halton,
    load_design,
    sobol,
    sobol_t,
    union,
    vertices,
)

ANNULUS = Annulus((0.0, 0.0), 0.5, 1.0)


class TestHalton:
    def test_first_point(self):
        pts = halton(1, 2).points
        assert pts[0, 0] == 0.5
        assert pts[0, 1] == pytest.approx(1 / 3)

    def test_van_der_corput(self):
        assert list(halton(3, 1).points.ravel()) == [0.5, 0.25, 0.75]

    def test_second_point(self):
        pts = halton(2, 2).points
        assert pts[1, 0] == 0.25
        assert pts[1, 1] == pytest.approx(2 / 3)

    def test_bases_are_primes(self):
        assert pointgen.first_primes(6) == [2, 3, 5, 7, 11, 13]

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(1, 60), extra=st.integers(1, 40), d=st.integers(1, 6))
    def test_prefix_stability(self, n, extra, d):
        a = halton(n, d).points
        b = halton(n + extra, d).points
        assert np.array_equal(a, b[:n])

    def test_in_unit_cube(self):
        pts = halton(500, 4).points
        assert np.all(pts > 0) and np.all(pts < 1)


class TestSobol:
    def test_first_point_is_center(self):
        for d in (1, 2, 7, 30):
            assert np.all(sobol(1, d).points == 0.5)

    def test_golden_d1(self):
        # canonical Gray-code output, frozen
        assert list(sobol(3, 1).points.ravel()) == [0.5, 0.75, 0.25]

    def test_golden_d2(self):
        pts = sobol(4, 2).points
        assert pts.tolist() == [
            [0.5, 0.5],
            [0.75, 0.25],
            [0.25, 0.75],
            [0.375, 0.375],
        ]

    def test_matches_scipy_exactly(self):
        qmc = pytest.importorskip("scipy.stats.qmc")
        ref = qmc.Sobol(8, scramble=False).random(257)[1:]  # drop the origin
        assert np.array_equal(sobol(256, 8).points, ref)

    @settings(max_examples=20, deadline=None)
    @given(n=st.integers(1, 100), extra=st.integers(1, 50), d=st.integers(1, 10))
    def test_prefix_stability(self, n, extra, d):
        assert np.array_equal(sobol(n, d).points, sobol(n + extra, d).points[:n])

    def test_scramble_prefix_stability(self):
        a = sobol(64, 3, scramble=9).points
        b = sobol(128, 3, scramble=9).points
        assert np.array_equal(a, b[:64])

    def test_scramble_changes_points_but_stays_inside(self):
        plain = sobol(128, 4).points
        scr = sobol(128, 4, scramble=1).points
        assert not np.array_equal(plain, scr)
        assert np.all(scr >= 0) and np.all(scr < 1)

    def test_distinct_points(self):
        pts = sobol(2048, 5).points
        assert len({row.tobytes() for row in pts}) == 2048

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            sobol(4, 51)

    def test_provenance_tags(self):
        assert sobol(2, 2).provenance == "sobol"
        assert sobol(2, 2, scramble=5).provenance == "sobol-scrambled(5)"


class TestSobolT:
    def test_paper_table(self):
        expected = {2: 0, 3: 1, 4: 3, 5: 5, 6: 8, 7: 11, 8: 15, 9: 19, 10: 23, 11: 27, 12: 31, 13: 35}
        for d, t in expected.items():
            assert sobol_t(d) == t

    @pytest.mark.parametrize("d", [1, 14])
    def test_out_of_range(self, d):
        with pytest.raises(ValueError):
            sobol_t(d)


class TestGridVertices:
    def test_grid_2_2(self):
        assert grid(2, 2).points.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]

    def test_grid_3_1(self):
        assert grid(3, 1).points.ravel().tolist() == [0.0, 0.5, 1.0]

    def test_grid_count(self):
        assert len(grid(50, 2)) == 2500

    def test_grid_cap(self):
        with pytest.raises(ValueError):
            grid(10, 10, cap=10**6)

    def test_vertices_d1(self):
        assert vertices(1).points.ravel().tolist() == [0.0, 1.0]

    def test_vertices_d3(self):
        pts = vertices(3).points
        assert len(pts) == 8
        assert pts[0].tolist() == [0, 0, 0]
        assert pts[-1].tolist() == [1, 1, 1]

    def test_vertices_d10_count(self):
        assert len(vertices(10)) == 1024

    def test_vertices_cap(self):
        with pytest.raises(ValueError):
            vertices(21)


class TestClipRescale:
    def test_center_rejected(self):
        raw = PointSet(np.array([[0.5, 0.5]]), "manual")
        with pytest.raises(ValueError):
            clip_rescale(raw, ANNULUS, 1)
        assert len(clip_rescale(raw, ANNULUS, 0)) == 0

    def test_outer_boundary_kept(self):
        raw = PointSet(np.array([[1.0, 0.5]]), "manual")
        ps = clip_rescale(raw, ANNULUS, 1)
        assert np.allclose(ps.points, [[1.0, 0.0]])

    def test_area_ratio(self):
        raw = sobol(4096, 2)
        lo, hi = ANNULUS.bounding_box()
        mapped = lo + raw.points * (hi - lo)
        n_in = int(ANNULUS.contains_many(mapped).sum())
        expected = 4096 * math.pi * (1 - 0.25) / 4
        assert abs(n_in - expected) <= 0.05 * expected
        ps = clip_rescale(raw, ANNULUS, n_in)
        assert len(ps) == n_in
        assert ANNULUS.contains_many(ps.points).all()

    def test_insufficient_raw(self):
        raw = sobol(16, 2)
        with pytest.raises(ValueError):
            clip_rescale(raw, ANNULUS, 16)

    def test_order_preserved(self):
        raw = sobol(256, 2)
        ps = clip_rescale(raw, ANNULUS, 50)
        lo, hi = ANNULUS.bounding_box()
        mapped = lo + raw.points * (hi - lo)
        kept = mapped[ANNULUS.contains_many(mapped)]
        assert np.array_equal(ps.points, kept[:50])


class TestUnion:
    def test_duplicates_removed(self):
        u = union(grid(2, 1), vertices(1))
        assert u.points.ravel().tolist() == [0.0, 1.0]

    def test_empty_left(self):
        empty = PointSet(np.zeros((0, 1)), "empty")
        u = union(empty, grid(3, 1))
        assert np.array_equal(u.points, grid(3, 1).points)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            union(grid(2, 1), grid(2, 2))

    def test_sobol_never_hits_vertices(self):
        # no Sobol' coordinate is exactly 0 or 1 once the origin is skipped,
        # so the full-factorial augmentation adds all 2^d points
        u = union(sobol(4096, 10), vertices(10))
        assert len(u) == 4096 + 1024

    def test_order(self):
        a = PointSet(np.array([[0.3], [0.1]]), "a")
        b = PointSet(np.array([[0.1], [0.2]]), "b")
        assert union(a, b).points.ravel().tolist() == [0.3, 0.1, 0.2]


class TestLoadDesign:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "design.csv"
        pts = np.random.default_rng(0).random((100, 10))
        path.write_text("\n".join(",".join(repr(float(v)) for v in row) for row in pts) + "\n")
        ps = load_design(path)
        assert ps.d == 10 and len(ps) == 100
        assert np.array_equal(ps.points, pts)
        assert ps.provenance == f"file({path})"

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ValueError):
            load_design(path)

    def test_ragged_row(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("1,2,3\n4,5\n")
        with pytest.raises(ValueError, match="ragged"):
            load_design(path)

    def test_bad_field(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3,oops\n")
        with pytest.raises(ValueError, match="unparsable"):
            load_design(path)

    def test_skip_header(self, tmp_path):
        path = tmp_path / "hdr.csv"
        path.write_text("x1,x2\n0.25,0.75\n")
        ps = load_design(path, skip_header=True)
        assert ps.points.tolist() == [[0.25, 0.75]]


class TestPointSet:
    def test_immutable(self):
        ps = grid(3, 2)
        with pytest.raises(ValueError):
            ps.points[0, 0] = 9.0

    def test_prefix(self):
        ps = halton(10, 2)
        assert np.array_equal(ps.prefix(4).points, ps.points[:4])
        with pytest.raises(ValueError):
            ps.prefix(11)
