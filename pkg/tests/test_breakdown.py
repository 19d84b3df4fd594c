"""Breakdown bounds, projections, contamination plans, and exhaustive search.

Frozen values were derived by hand from the projection/counting definitions
(the projected 1-D depth values can be read off sorted lists) and confirmed
against the exact region machinery.
"""

import random
from fractions import Fraction as F

import pytest

from halfmed import (
    BREAKDOWN_CSV_HEADER,
    ContaminationPlan,
    DirectionSearchConfig,
    affine_dimension,
    breakdown_csv_row,
    build_attack,
    dataset,
    exact_breakdown,
    lower_bound,
    median_region,
    project_dataset,
    projected_lambda,
    projection_frame,
    symmetrize,
    tukey_depth,
    upper_bound,
    verify_attack,
)

from oracles import random_dataset

DS_A = dataset([(0, 0), (2, 0), (1, 1), (1, 1)])
DS_B = dataset([(0, 0), (1, 0), (0, 1), (1, 1)])


# ---------------------------------------------------------------------------
# projection frames and projected depth levels


class TestProjection:
    def test_frame_spans_orthocomplement(self):
        f = projection_frame((0, 1), 2)
        assert f.basis == ((F(1), F(0)),)
        f = projection_frame((1, 1), 2)
        assert f.basis == ((F(1), F(-1)),)
        f = projection_frame((1, 0, 0), 3)
        assert f.basis == ((F(0), F(1), F(0)), (F(0), F(0), F(1)))

    def test_frame_columns_orthogonal_to_direction(self):
        rng = random.Random(3)
        for d in (2, 3):
            for _ in range(20):
                u = tuple(F(rng.randint(-9, 9)) for _ in range(d))
                if all(c == 0 for c in u):
                    continue
                f = projection_frame(u, d)
                assert len(f.basis) == d - 1
                for col in f.basis:
                    assert sum(a * b for a, b in zip(col, u)) == 0

    def test_projected_points(self):
        proj = project_dataset(DS_A, projection_frame((0, 1), 2))
        assert [p[0] for p in proj.points] == [F(0), F(2), F(1), F(1)]

    def test_projected_lambda_sees_duplicates(self):
        # projecting out (0,1) leaves {0, 2, 1, 1}: the duplicate sits at the
        # median, so the projected maximal depth is 3/4, not 1/2
        assert projected_lambda(DS_A, (0, 1)) == F(3, 4)
        assert projected_lambda(DS_A, (1, 0)) == F(1, 2)


# ---------------------------------------------------------------------------
# bounds


class TestBounds:
    def test_degenerate_example_pinches_at_one_third(self):
        assert lower_bound(DS_A) == F(1, 3)
        ub = upper_bound(DS_A)
        assert ub.bound == F(1, 3)
        assert ub.inf_lambda == F(1, 2)
        assert ub.exact

    def test_square_pinches_at_one_third(self):
        assert lower_bound(DS_B) == F(1, 3)
        assert upper_bound(DS_B).bound == F(1, 3)

    def test_result_unpacks_as_pair(self):
        bound, direction = upper_bound(DS_A)
        assert bound == F(1, 3)
        assert any(c != 0 for c in direction)

    def test_three_dimensional_upper_bound(self):
        simp = dataset([(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)])
        ub = upper_bound(simp)
        assert ub.bound == F(2, 7)
        assert ub.inf_lambda == F(2, 5)
        assert ub.exact  # the pinch floor ceil(5/3)/5 = 2/5 is attained

    def test_requires_full_affine_dimension(self):
        col = dataset([(0, 0), (1, 1), (2, 2)])
        with pytest.raises(ValueError):
            lower_bound(col)
        with pytest.raises(ValueError):
            upper_bound(col)

    def test_sweep_agrees_with_probe_floor(self):
        # forcing the exhaustive sweep must reproduce the pinched value
        ub_fast = upper_bound(DS_B)
        ub_sweep = upper_bound(DS_B, DirectionSearchConfig(probes=0, exhaustive=True))
        assert ub_fast.bound == ub_sweep.bound == F(1, 3)

    def test_net_refinement_never_beats_exact_sweep(self):
        # the exact minimum over the critical direction set is a true
        # infimum: no direction from a finer random net goes below it
        rng = random.Random(17)
        done = 0
        while done < 15:
            ds = random_dataset(rng, 2, max_n=8)
            if affine_dimension(ds) < 2:
                continue
            exact = upper_bound(ds, DirectionSearchConfig(exhaustive=True))
            assert exact.exact
            for _ in range(60):
                u = (F(rng.randint(-30, 30)), F(rng.randint(-30, 30)))
                if u == (0, 0):
                    continue
                assert projected_lambda(ds, u) >= exact.inf_lambda
            done += 1

    def test_bounds_sandwich_on_random_instances(self):
        rng = random.Random(23)
        done = 0
        while done < 30:
            ds = random_dataset(rng, 2, max_n=7)
            if affine_dimension(ds) < 2:
                continue
            lo = lower_bound(ds)
            ub = upper_bound(ds)
            assert lo <= ub.bound, (ds.points,)
            done += 1


# ---------------------------------------------------------------------------
# constructive attacks


class TestAttack:
    def test_plan_on_degenerate_example(self):
        plan = build_attack(DS_A, (1, 0), distance=10**6)
        assert plan.m == 2
        assert plan.lambda_u == F(1, 2)
        assert plan.x0_projected == (F(0),)
        assert plan.y0 == (F(10**6), F(0))

    def test_verification_certifies_escape(self):
        plan = build_attack(DS_A, (1, 0), distance=10**6)
        res = verify_attack(DS_A, plan)
        # Exact supremum of contaminated depth over the clean hull equals
        # the guaranteed ceiling n*lambda_u/(n+m) = 4*(1/2)/6 here.
        assert res.sup_depth_inside == F(1, 3)
        assert res.sup_depth_inside <= F(DS_A.n, 1) * plan.lambda_u / (DS_A.n + plan.m)
        # m copies at y0 give the contamination site depth exactly m/(n+m)
        assert res.depth_at_y0 == F(plan.m, DS_A.n + plan.m)
        assert res.escaped
        assert tuple(res) == (res.sup_depth_inside, res.depth_at_y0, res.escaped)

    def test_one_fewer_copy_cannot_escape(self):
        plan = build_attack(DS_A, (1, 0), distance=10**6, m=1)
        res = verify_attack(DS_A, plan)
        assert not res.escaped

    def test_attack_beats_hull_depth_at_every_scale(self):
        for scale in (10**3, 10**4, 10**5):
            plan = build_attack(DS_A, (1, 0), distance=scale)
            res = verify_attack(DS_A, plan)
            assert res.escaped
            assert res.depth_at_y0 > res.sup_depth_inside or (
                res.depth_at_y0 == res.sup_depth_inside and res.escaped
            )

    def test_contamination_inside_hull_is_rejected(self):
        plan = ContaminationPlan(
            u=(F(1), F(0)),
            x0_projected=(F(0),),
            y0=(F(1), F(1, 2)),  # strictly inside the clean hull
            m=2,
            distance_scale=F(1),
            gamma=F(1),
            lambda_u=F(1, 2),
        )
        with pytest.raises(ValueError):
            verify_attack(DS_A, plan)

    def test_three_dimensional_attack(self):
        simp = dataset([(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)])
        plan = build_attack(simp, (0, 0, 1), distance=10**4)
        res = verify_attack(simp, plan)
        assert plan.m == 2
        assert res.escaped
        assert res.sup_depth_inside <= F(simp.n, 1) * plan.lambda_u / (simp.n + plan.m)

    def test_attack_soundness_random_instances(self):
        rng = random.Random(29)
        done = 0
        while done < 12:
            ds = random_dataset(rng, 2, max_n=7)
            if affine_dimension(ds) < 2:
                continue
            ub = upper_bound(ds)
            plan = build_attack(ds, ub.direction, distance=10**4)
            res = verify_attack(ds, plan)
            ceiling = F(ds.n, 1) * plan.lambda_u / (ds.n + plan.m)
            assert res.sup_depth_inside <= ceiling, (ds.points,)
            assert res.depth_at_y0 == F(plan.m, ds.n + plan.m)
            assert res.escaped, (ds.points,)
            done += 1


# ---------------------------------------------------------------------------
# exhaustive small-instance search


class TestExactBreakdown:
    def test_degenerate_example(self):
        rep = exact_breakdown(DS_A)
        assert rep.exact_m == 2
        assert rep.exact_ratio == F(1, 3)
        assert rep.lower == rep.upper == F(1, 3)

    def test_square(self):
        assert exact_breakdown(DS_B).exact_m == 2

    def test_one_dimensional_closed_form(self):
        rep = exact_breakdown(dataset([(1,), (2,), (3,)]))
        assert rep.dim == 1
        assert rep.exact_m == 3  # the univariate median needs m = n copies
        assert rep.lower == F(2, 5)
        assert rep.upper == F(1, 2)
        rep2 = exact_breakdown(dataset([(0,), (1,), (2,), (2,)]))
        assert rep2.exact_m == 4
        assert rep2.lower == F(1, 3)
        assert rep2.upper == F(1, 2)

    def test_sandwich_against_bounds(self):
        rng = random.Random(31)
        done = 0
        while done < 10:
            ds = random_dataset(rng, 2, max_n=7)
            if affine_dimension(ds) < 2:
                continue
            rep = exact_breakdown(ds)
            if rep.exact_m is None:
                continue
            ratio = rep.exact_ratio
            assert rep.lower <= ratio, (ds.points,)
            assert ratio <= rep.upper or ratio == rep.upper, (ds.points,)
            done += 1

    def test_csv_row_round_trip(self):
        rep = exact_breakdown(DS_A)
        row = breakdown_csv_row(rep)
        header = BREAKDOWN_CSV_HEADER.split(",")
        import csv
        import io

        parsed = next(csv.reader(io.StringIO(row)))
        assert len(parsed) == len(header)
        record = dict(zip(header, parsed))
        assert record["n"] == "4"
        assert record["d"] == "2"
        assert record["lower"] == "1/3"
        assert record["upper"] == "1/3"
        assert record["exact_m"] == "2"
        assert record["escaped"] == "true"

    def test_rejects_large_or_deficient(self):
        rng = random.Random(5)
        big = dataset(
            [(rng.randint(0, 50), rng.randint(0, 50)) for _ in range(11)]
        )
        with pytest.raises(ValueError):
            exact_breakdown(big)
        with pytest.raises(ValueError):
            exact_breakdown(dataset([(0, 0), (1, 1), (2, 2)]))


# ---------------------------------------------------------------------------
# symmetry of projections (exact counts)


class TestProjectionSymmetry:
    def test_symmetrized_projections_are_halfspace_symmetric(self):
        # For a centrally symmetric dataset, every direction's projection is
        # halfspace symmetric about the projected center: every closed
        # halfspace through it holds at least half the points (exact check
        # via the depth of the projected center).
        rng = random.Random(37)
        for trial in range(12):
            base = random_dataset(rng, 2, max_n=6)
            center = (F(rng.randint(-3, 3), 2), F(rng.randint(-3, 3), 2))
            sym = symmetrize(base, center)
            n = sym.n
            for _ in range(25):
                u = (F(rng.randint(-20, 20)), F(rng.randint(-20, 20)))
                if all(c == 0 for c in u):
                    continue
                frame = projection_frame(u, 2)
                proj = project_dataset(sym, frame)
                proj_center = tuple(
                    sum(col[i] * center[i] for i in range(2)) for col in frame.basis
                )
                count = tukey_depth(proj_center, proj).count
                assert 2 * count >= n, (u, count, n)

    def test_symmetrized_projections_3d(self):
        rng = random.Random(41)
        for trial in range(6):
            base = random_dataset(rng, 3, max_n=5)
            center = tuple(F(rng.randint(-2, 2)) for _ in range(3))
            sym = symmetrize(base, center)
            for _ in range(15):
                u = tuple(F(rng.randint(-9, 9)) for _ in range(3))
                if all(c == 0 for c in u):
                    continue
                frame = projection_frame(u, 3)
                proj = project_dataset(sym, frame)
                proj_center = tuple(
                    sum(col[i] * center[i] for i in range(3)) for col in frame.basis
                )
                assert 2 * tukey_depth(proj_center, proj).count >= sym.n
