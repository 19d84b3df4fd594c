"""Exact rational geometry kernel: parsing, hulls, halfspaces, dataset I/O."""

import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfmed.geometry import (
    DataSet,
    Side,
    affine_dimension,
    angular_cmp,
    as_fraction,
    canonical_direction,
    convex_hull_2d,
    convex_hull_contains,
    dataset,
    dataset_from_floats,
    halfspace,
    hull_halfspaces,
    point,
    read_dataset,
    side_of,
    snap,
    write_dataset,
)

from oracles import random_dataset


class TestAsFraction:
    def test_ratio_tokens(self):
        assert as_fraction("3/4") == F(3, 4)
        assert as_fraction("-7/2") == F(-7, 2)
        assert as_fraction("0/5") == 0

    def test_decimal_tokens_exact(self):
        assert as_fraction("0.25") == F(1, 4)
        assert as_fraction("-1.5e-3") == F(-3, 2000)
        assert as_fraction("2") == 2

    def test_float_is_binary_exact(self):
        # floats convert by value, not by printed digits
        assert as_fraction(0.5) == F(1, 2)
        assert as_fraction(0.1) == F(0.1)
        assert as_fraction(0.1) != F(1, 10)

    def test_fraction_passthrough(self):
        f = F(22, 7)
        assert as_fraction(f) is f or as_fraction(f) == f

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            as_fraction("1/0")
        with pytest.raises((ValueError, TypeError)):
            as_fraction("abc")


class TestSnap:
    def test_snap_grid(self):
        assert snap(0.3, bits=2) == F(1, 4) or snap(0.3, bits=2) == F(1, 2)
        assert snap(0.25, bits=2) == F(1, 4)
        assert snap(F(1, 3), bits=4) == F(5, 16)

    @given(st.floats(-1e6, 1e6), st.integers(1, 40))
    def test_snap_error_bound(self, x, bits):
        s = snap(x, bits=bits)
        assert abs(s - F(x)) <= F(1, 2 ** (bits + 1))


class TestDirections:
    def test_canonical_scale_invariance(self):
        # positive rescaling collapses; opposite directions stay distinct
        assert canonical_direction((F(0), F(-2))) == (F(0), F(-1))
        assert canonical_direction((F(4), F(-6))) == (F(1), F(-3, 2))
        assert canonical_direction((F(2), F(-3))) == (F(1), F(-3, 2))
        assert canonical_direction((F(-4), F(6))) == (F(-1), F(3, 2))

    def test_angular_order_frozen(self):
        vecs = [(1, 0), (2, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
        shuffled = vecs[::-1]
        import functools

        got = sorted(shuffled, key=functools.cmp_to_key(angular_cmp))
        assert got == vecs

    @given(
        st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
        st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
        st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
    )
    def test_angular_cmp_total_order(self, a, b, c):
        vs = [v for v in (a, b, c) if v != (0, 0)]
        for v in vs:
            assert angular_cmp(v, v) == 0
        for u, v in [(x, y) for x in vs for y in vs]:
            assert angular_cmp(u, v) == -angular_cmp(v, u)
        # transitivity on a strict chain
        if len(vs) == 3 and angular_cmp(vs[0], vs[1]) < 0 and angular_cmp(vs[1], vs[2]) < 0:
            assert angular_cmp(vs[0], vs[2]) < 0


class TestHalfspace:
    def test_contains_and_side(self):
        h = halfspace((1, -1), 0)  # x - y >= 0
        assert h.contains((F(2), F(1)))
        assert h.contains((F(1), F(1)))
        assert not h.contains((F(0), F(1)))
        assert side_of(h, (F(2), F(1))) is Side.INTERIOR
        assert side_of(h, (F(1), F(1))) is Side.BOUNDARY
        assert side_of(h, (F(0), F(1))) is Side.EXTERIOR

    def test_canonical(self):
        h = halfspace((2, -4), 6).canonical()
        assert h.normal == (F(1), F(-2))
        assert h.offset == F(3)

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            halfspace((0, 0), 1)


class TestDataSet:
    def test_duplicates_preserved(self):
        ds = dataset([(0, 0), (1, 1), (1, 1)])
        assert ds.n == 3
        assert ds.dim == 2
        assert ds.points[1] == ds.points[2]

    def test_scaled_ints_exact(self):
        ds = dataset([(F(1, 2), F(1, 3)), (F(-1, 6), F(2))])
        scale, rows = ds.scaled_ints()
        for p, r in zip(ds.points, rows):
            assert all(F(c, scale) == pc for c, pc in zip(r, p))

    def test_from_floats_snaps(self):
        ds = dataset_from_floats([[0.1, 0.7]], bits=3)
        assert ds.points[0][0].denominator <= 8

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            dataset([])

    def test_mixed_dims_rejected(self):
        with pytest.raises(ValueError):
            dataset([(0, 0), (1,)])


class TestAffineDimension:
    def test_cases(self):
        assert affine_dimension(dataset([(3, 4)])) == 0
        assert affine_dimension(dataset([(0, 0), (1, 1), (2, 2), (1, 1)])) == 1
        assert affine_dimension(dataset([(0, 0), (2, 0), (1, 1), (1, 1)])) == 2
        assert affine_dimension(dataset([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])) == 2
        assert affine_dimension(dataset([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])) == 3


class TestConvexHull2D:
    def test_square_with_interior(self):
        pts = [point((0, 0)), point((1, 0)), point((1, 1)), point((0, 1)), point((F(1, 2), F(1, 2)))]
        hull = convex_hull_2d(pts)
        assert set(hull) == {point((0, 0)), point((1, 0)), point((1, 1)), point((0, 1))}
        assert len(hull) == 4

    def test_collinear_collapses_to_endpoints(self):
        pts = [point((0, 0)), point((1, 1)), point((3, 3)), point((2, 2))]
        hull = convex_hull_2d(pts)
        assert set(hull) == {point((0, 0)), point((3, 3))}

    def test_single_point(self):
        assert convex_hull_2d([point((2, 5)), point((2, 5))]) == [point((2, 5))]


class TestHullMembership:
    def test_triangle_fixture(self):
        ds = dataset([(0, 0), (2, 0), (1, 1), (1, 1)])
        assert convex_hull_contains(ds, point((1, F(1, 2))))
        assert convex_hull_contains(ds, point((1, 1)))  # vertex
        assert convex_hull_contains(ds, point((1, 0)))  # edge
        assert not convex_hull_contains(ds, point((2, 1)))
        assert not convex_hull_contains(ds, point((-1, 0)))

    def test_segment_dataset(self):
        ds = dataset([(0, 0), (2, 2)])
        assert convex_hull_contains(ds, point((1, 1)))
        assert not convex_hull_contains(ds, point((1, 0)))

    def test_convex_combinations_always_inside(self):
        rng = random.Random(7)
        for _ in range(25):
            d = rng.choice([2, 3])
            ds = random_dataset(rng, d, max_n=7)
            ws = [F(rng.randint(0, 5)) for _ in range(ds.n)]
            tot = sum(ws)
            if tot == 0:
                continue
            x = tuple(
                sum(w * p[j] for w, p in zip(ws, ds.points)) / tot
                for j in range(d)
            )
            assert convex_hull_contains(ds, x)


class TestHullHalfspaces:
    def test_all_dims_cover_data(self):
        rng = random.Random(11)
        for _ in range(30):
            d = rng.choice([1, 2, 3])
            ds = random_dataset(rng, d, max_n=7)
            hs = hull_halfspaces(ds)
            assert hs, "hull must produce at least one halfspace"
            for p in ds.points:
                for h in hs:
                    assert h.contains(p)

    def test_exterior_point_violates(self):
        rng = random.Random(13)
        for _ in range(20):
            d = rng.choice([1, 2, 3])
            ds = random_dataset(rng, d, max_n=7)
            hs = hull_halfspaces(ds)
            far = tuple(max(p[j] for p in ds.points) + 1 for j in range(d))
            assert any(not h.contains(point(far)) for h in hs)

    def test_triangle_facets(self):
        ds = dataset([(0, 0), (2, 0), (1, 1), (1, 1)])
        hs = hull_halfspaces(ds)
        assert len(hs) == 3


class TestDatasetIO:
    def test_roundtrip_exact(self, tmp_path):
        ds = dataset([(F(1, 3), F(-2)), (F(7, 2), F(0))], metadata={"name": "demo"})
        path = tmp_path / "pts.txt"
        write_dataset(ds, path)
        back = read_dataset(path)
        assert back.points == ds.points
        assert back.metadata.get("name") == "demo"

    def test_parses_mixed_tokens(self, tmp_path):
        path = tmp_path / "mix.txt"
        path.write_text("# demo data\n0.5 -1/3\n2 0.25\n\n# trailing comment\n1e-2 3\n")
        ds = read_dataset(path)
        assert ds.n == 3
        assert ds.points[0] == (F(1, 2), F(-1, 3))
        assert ds.points[1] == (F(2), F(1, 4))
        assert ds.points[2] == (F(1, 100), F(3))

    def test_rejects_ragged_rows(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 2\n3\n")
        with pytest.raises(ValueError):
            read_dataset(path)
