"""Exact halfspace intersections, clipping, centroids, and region export."""

import random
from fractions import Fraction as F

from halfmed.geometry import dataset, halfspace, point
from halfmed.polytope import (
    barycenter,
    clip_polygon,
    dedup_halfspaces,
    intersect_halfspaces,
    vertex_centroid,
    write_region_files,
)

from oracles import random_dataset


def _square(lo=0, hi=1):
    return [
        halfspace((1, 0), lo),
        halfspace((-1, 0), -hi),
        halfspace((0, 1), lo),
        halfspace((0, -1), -hi),
    ]


class TestDedup:
    def test_keeps_tightest_offset(self):
        hs = [halfspace((2, 0), 2), halfspace((1, 0), 3), halfspace((1, 0), -1)]
        out = dedup_halfspaces(hs)
        assert len(out) == 1
        h = out[0]
        # x >= 3 dominates x >= 1 and x >= -1
        assert h.contains((F(3), F(0)))
        assert not h.contains((F(2), F(0)))


class TestIntersect1D:
    def test_interval(self):
        p = intersect_halfspaces([halfspace((1,), 0), halfspace((-1,), -2)])
        assert p.vertices == ((F(0),), (F(2),))
        assert not p.unbounded and not p.empty

    def test_point(self):
        p = intersect_halfspaces([halfspace((1,), 1), halfspace((-1,), -1)])
        assert p.vertices == ((F(1),),)
        assert p.affine_dim == 0

    def test_empty(self):
        p = intersect_halfspaces([halfspace((1,), 2), halfspace((-1,), -1)])
        assert p.empty

    def test_ray_unbounded(self):
        p = intersect_halfspaces([halfspace((1,), 0)])
        assert p.unbounded


class TestIntersect2D:
    def test_singleton_from_four_diagonal_cuts(self):
        hs = [
            halfspace((-1, 1), 0),
            halfspace((1, -1), 0),
            halfspace((1, 1), 2),
            halfspace((-1, -1), -2),
        ]
        p = intersect_halfspaces(hs)
        assert p.vertices == ((F(1), F(1)),)
        assert p.affine_dim == 0
        assert not p.empty and not p.unbounded

    def test_opposite_pair_is_unbounded_line(self):
        p = intersect_halfspaces([halfspace((-1, 1), 0), halfspace((1, -1), 0)])
        assert p.unbounded
        assert p.affine_dim == 1

    def test_unit_square(self):
        p = intersect_halfspaces(_square())
        assert len(p.vertices) == 4
        assert set(p.vertices) == {
            point((0, 0)),
            point((1, 0)),
            point((1, 1)),
            point((0, 1)),
        }
        assert barycenter(p) == (F(1, 2), F(1, 2))

    def test_empty_intersection(self):
        p = intersect_halfspaces([halfspace((1, 0), 1), halfspace((-1, 0), 0)])
        assert p.empty
        assert p.vertices == ()

    def test_segment(self):
        hs = _square() + [halfspace((1, 1), 1), halfspace((-1, -1), -1)]
        p = intersect_halfspaces(hs)  # diagonal x + y = 1 inside the square
        assert p.affine_dim == 1
        assert set(p.vertices) == {point((1, 0)), point((0, 1))}

    def test_halfplane_unbounded(self):
        p = intersect_halfspaces([halfspace((1, 0), 0)])
        assert p.unbounded

    def test_vertices_satisfy_all_constraints(self):
        rng = random.Random(3)
        for _ in range(60):
            hs = []
            for _ in range(rng.randint(2, 8)):
                n = (rng.randint(-4, 4), rng.randint(-4, 4))
                if n == (0, 0):
                    continue
                hs.append(halfspace(n, F(rng.randint(-8, 8), rng.randint(1, 3))))
            if not hs:
                continue
            p = intersect_halfspaces(hs, dim=2)
            for v in p.vertices:
                assert all(h.contains(v) for h in hs)
            if not p.empty and not p.unbounded and p.vertices:
                assert all(h.contains(barycenter(p)) for h in hs)


class TestIntersect3D:
    def _cube(self):
        hs = []
        for i in range(3):
            lo = [0, 0, 0]
            hi = [0, 0, 0]
            lo[i] = 1
            hi[i] = -1
            hs.append(halfspace(tuple(lo), 0))
            hs.append(halfspace(tuple(hi), -1))
        return hs

    def test_cube(self):
        p = intersect_halfspaces(self._cube())
        assert len(p.vertices) == 8
        assert barycenter(p) == (F(1, 2), F(1, 2), F(1, 2))
        assert p.affine_dim == 3

    def test_tetrahedron(self):
        hs = [
            halfspace((1, 0, 0), 0),
            halfspace((0, 1, 0), 0),
            halfspace((0, 0, 1), 0),
            halfspace((-1, -1, -1), -1),
        ]
        p = intersect_halfspaces(hs)
        assert len(p.vertices) == 4
        assert barycenter(p) == (F(1, 4), F(1, 4), F(1, 4))

    def test_slab_unbounded(self):
        p = intersect_halfspaces(
            [halfspace((0, 0, 1), 0), halfspace((0, 0, -1), -1)]
        )
        assert p.unbounded

    def test_planar_square_in_space(self):
        hs = self._cube() + [halfspace((0, 0, 1), 1)]  # z >= 1 pins z = 1
        p = intersect_halfspaces(hs)
        assert p.affine_dim == 2
        assert len(p.vertices) == 4
        assert barycenter(p) == (F(1, 2), F(1, 2), F(1))

    def test_singleton_corner(self):
        hs = [
            halfspace((1, 0, 0), 0),
            halfspace((0, 1, 0), 0),
            halfspace((0, 0, 1), 0),
            halfspace((-1, -1, -1), 0),
        ]
        p = intersect_halfspaces(hs)
        assert p.vertices == ((F(0), F(0), F(0)),)

    def test_empty(self):
        hs = [halfspace((0, 0, 1), 1), halfspace((0, 0, -1), 0)]
        p = intersect_halfspaces(hs)
        assert p.empty


class TestClipPolygon:
    def test_square_clipped_by_diagonal(self):
        square = [point((0, 0)), point((1, 0)), point((1, 1)), point((0, 1))]
        out = clip_polygon(square, halfspace((-1, -1), -1))  # x + y <= 1
        assert set(out) == {point((0, 0)), point((1, 0)), point((0, 1))}

    def test_clip_to_nothing(self):
        square = [point((0, 0)), point((1, 0)), point((1, 1)), point((0, 1))]
        assert clip_polygon(square, halfspace((1, 0), 5)) == []

    def test_clip_to_edge(self):
        square = [point((0, 0)), point((1, 0)), point((1, 1)), point((0, 1))]
        out = clip_polygon(square, halfspace((1, 0), 1))  # x >= 1
        assert set(out) == {point((1, 0)), point((1, 1))}

    def test_no_change_when_inside(self):
        tri = [point((0, 0)), point((2, 0)), point((1, 1))]
        out = clip_polygon(tri, halfspace((0, -1), -5))
        assert set(out) == set(tri)


class TestBarycenter:
    def test_triangle(self):
        hs = [
            halfspace((0, 1), 0),
            halfspace((1, -1), 0),
            halfspace((-1, -1), -2),
        ]
        p = intersect_halfspaces(hs)
        assert set(p.vertices) == {point((0, 0)), point((2, 0)), point((1, 1))}
        assert barycenter(p) == (F(1), F(1, 3))

    def test_segment_midpoint(self):
        p = intersect_halfspaces([halfspace((1,), 0), halfspace((-1,), -3)])
        assert barycenter(p) == (F(3, 2),)

    def test_vertex_centroid_differs_on_lopsided_polygon(self):
        hs = [
            halfspace((0, 1), 0),
            halfspace((0, -1), -1),
            halfspace((1, 0), 0),
            halfspace((-1, 0), -1),
            halfspace((-1, -1), -F(3, 2)),
        ]
        p = intersect_halfspaces(hs)
        assert len(p.vertices) == 5
        assert vertex_centroid(p) != barycenter(p)


class TestRegionExport:
    def test_files_roundtrip(self, tmp_path):
        p = intersect_halfspaces(_square())
        paths = write_region_files(p, tmp_path, "sq")
        texts = {pp.name for pp in paths}
        assert texts == {"sq_vertices.txt", "sq_halfspaces.txt", "sq_vertices.csv"}
        body = (tmp_path / "sq_vertices.txt").read_text()
        assert "1" in body
        csv_body = (tmp_path / "sq_vertices.csv").read_text().strip().splitlines()
        assert csv_body[0].split(",")[0] == "x1"
        assert len(csv_body) == 5

    def test_halfspace_file_mentions_all(self, tmp_path):
        p = intersect_halfspaces(_square())
        write_region_files(p, tmp_path, "sq")
        hs_body = (tmp_path / "sq_halfspaces.txt").read_text()
        assert len([ln for ln in hs_body.splitlines() if ln.strip() and not ln.startswith("#")]) == 4
