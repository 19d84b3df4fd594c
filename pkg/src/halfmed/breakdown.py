"""Contamination robustness of the halfspace median.

The additive breakdown point of the deepest-point median is bracketed by two
exactly computable quantities:

* **lower bound** ``lambda*/(1 + lambda*)`` — fewer than ``n*lambda*``
  contaminating points cannot pull the median out of a bounded set, because
  the original data alone keep the depth of interior points high enough;
* **upper bound** ``inf_u lambda_u*/(1 + inf_u lambda_u*)`` — project the
  data onto the orthocomplement of a direction ``u``; if ``lambda_u*`` is
  the maximal depth of the projected sample, then roughly ``n*lambda_u*``
  copies of a single far-away point on a well-chosen line parallel to ``u``
  give that point more depth than anything inside the original hull.

The upper bound is constructive: :func:`build_attack` emits the actual
contamination plan and :func:`verify_attack` checks, with exact rational
arithmetic, that the plan caps the depth inside the original hull and drags
the median away linearly in the placement distance.  For tiny planar
datasets :func:`exact_breakdown` searches the plan family exhaustively and,
whenever the two bounds pinch, certifies the exact breakdown point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .depth import (
    max_depth_1d,
    median_interval_1d,
    optimal_direction_cone,
    tukey_depth,
)
from .geometry import (
    DataSet,
    Vec,
    affine_dimension,
    as_fraction,
    dataset,
    dot,
    hull_halfspaces,
    vsub,
)
from .polytope import Polytope, barycenter, intersect_halfspaces
from .regions import depth_region, median_region

_DESCENT_CAP = 10_000
_DESCENT_GAP = Fraction(1, 2**40)


# ---------------------------------------------------------------------------
# projections onto a direction's orthocomplement


@dataclass(frozen=True)
class ProjectionFrame:
    """Exact rational basis of the orthocomplement of ``u``.

    Columns are pairwise orthogonal and orthogonal to ``u`` but not unit
    length: halfspace-depth combinatorics in the projected space are
    invariant to positive column scaling, so normalization (which would
    leave the rationals) is unnecessary.
    """

    u: Vec
    basis: tuple[Vec, ...]


def _primitive(v: Sequence[Fraction]) -> Vec:
    den = 1
    for c in v:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(Fraction(c) for c in ints)


def projection_frame(u: Sequence, d: int | None = None) -> ProjectionFrame:
    """Orthogonal rational basis of ``u``'s orthocomplement (Gram-Schmidt)."""
    uvec = tuple(as_fraction(c) for c in u)
    if d is None:
        d = len(uvec)
    if len(uvec) != d:
        raise ValueError("direction length does not match dimension")
    if all(c == 0 for c in uvec):
        raise ValueError("zero direction has no projection frame")
    if d < 2:
        raise ValueError("projection frames require dimension >= 2")
    basis: list[Vec] = []
    uu = dot(uvec, uvec)
    for j in range(d):
        e = tuple(Fraction(1 if i == j else 0) for i in range(d))
        f = tuple(ec - Fraction(dot(uvec, e), uu) * uc for ec, uc in zip(e, uvec))
        for b in basis:
            bb = dot(b, b)
            f = tuple(fc - Fraction(dot(b, f), bb) * bc for fc, bc in zip(f, b))
        if any(c != 0 for c in f):
            basis.append(_primitive(f))
        if len(basis) == d - 1:
            break
    return ProjectionFrame(uvec, tuple(basis))


def project_dataset(ds: DataSet, frame: ProjectionFrame) -> DataSet:
    """Images of the points under the frame's basis (multiplicity kept)."""
    if len(frame.u) != ds.dim:
        raise ValueError("frame dimension does not match dataset")
    return dataset([tuple(dot(b, p) for b in frame.basis) for p in ds.points])


def projected_lambda(ds: DataSet, u: Sequence) -> Fraction:
    """Maximal depth of the sample projected onto ``u``'s orthocomplement."""
    if ds.dim not in (2, 3):
        raise ValueError("projected depth levels support d in {2, 3}")
    frame = projection_frame(u, ds.dim)
    proj = project_dataset(ds, frame)
    if proj.dim == 1:
        return max_depth_1d([p[0] for p in proj.points])[0]
    return median_region(proj).lambda_star


# ---------------------------------------------------------------------------
# the two bounds


@dataclass(frozen=True)
class DirectionSearchConfig:
    """Controls the direction search of :func:`upper_bound`.

    ``probes`` pseudo-random directions are tried first to hit the exact
    pinch floor; ``exhaustive`` forces (True) or forbids (False) the exact
    d=2 critical sweep, with None meaning "sweep when the pinch fails".
    """

    probes: int = 32
    seed: int = 0
    exhaustive: bool | None = None


@dataclass(frozen=True)
class UpperBoundResult:
    bound: Fraction
    direction: Vec
    inf_lambda: Fraction
    exact: bool

    def __iter__(self) -> Iterator:
        return iter((self.bound, self.direction))


def _pinch_floor(n: int, projected_dim: int) -> Fraction:
    # minimal possible maximal depth of any n-point sample in the projected
    # dimension: the median (k=1) and centerpoint (k=2) guarantees
    return Fraction(-(-n // (projected_dim + 1)), n)


def _probe_directions(d: int, cfg: DirectionSearchConfig) -> list[Vec]:
    import random

    rng = random.Random(cfg.seed)
    dirs: list[Vec] = []
    for j in range(d):
        e = [Fraction(0)] * d
        e[j] = Fraction(1)
        dirs.append(tuple(e))
    for _ in range(cfg.probes):
        v = tuple(Fraction(rng.randint(-999, 999)) for _ in range(d))
        if any(c != 0 for c in v):
            dirs.append(v)
    return dirs


def _tie_directions_2d(ds: DataSet) -> list[Vec]:
    """Directions parallel to point differences: where projections tie."""
    seen: set[tuple] = set()
    out: list[Vec] = []
    uniq = sorted(set(ds.points))
    for a, b in itertools.combinations(uniq, 2):
        v = _primitive(vsub(b, a))
        for w in (v, tuple(-c for c in v)):
            key = tuple(w)
            if key not in seen:
                seen.add(key)
                out.append(w)
    return out


def _angle_sorted(dirs: list[Vec]) -> list[Vec]:
    return sorted(dirs, key=lambda v: math.atan2(float(v[1]), float(v[0])))


def upper_bound(
    ds: DataSet, search: DirectionSearchConfig | None = None
) -> UpperBoundResult:
    """Minimize the projected depth level over directions.

    For d=2 the minimum is exact: the projected order changes only at
    directions parallel to point differences, so ``lambda_u*`` is piecewise
    constant on the circle and its minimum is attained on the finite set of
    tie directions plus one representative per arc between them.  If a
    probed direction already attains the unimprovable floor (median depth
    of a tie-free projection), the sweep is skipped.  For d=3 the result is
    exact only when pinched; otherwise it is the minimum over a candidate
    net (data cross products plus random probes), flagged ``exact=False``.
    """
    cfg = search or DirectionSearchConfig()
    d = ds.dim
    if d not in (2, 3):
        raise ValueError("the projection upper bound supports d in {2, 3}")
    if affine_dimension(ds) < d:
        raise ValueError("the projection upper bound requires full affine dimension")
    floor = _pinch_floor(ds.n, d - 1)

    best: Fraction | None = None
    best_u: Vec | None = None
    for u in _probe_directions(d, cfg):
        lam = projected_lambda(ds, u)
        if best is None or lam < best:
            best, best_u = lam, u
        if lam == floor:
            return UpperBoundResult(lam / (1 + lam), u, lam, True)

    if d == 2 and cfg.exhaustive is not False:
        ties = _angle_sorted(_tie_directions_2d(ds))
        candidates = list(ties)
        for a, b in zip(ties, ties[1:] + ties[:1]):
            mid = tuple(ac + bc for ac, bc in zip(a, b))
            if any(c != 0 for c in mid):
                candidates.append(mid)
        for u in candidates:
            lam = projected_lambda(ds, u)
            if best is None or lam < best:
                best, best_u = lam, u
        assert best is not None and best_u is not None
        return UpperBoundResult(best / (1 + best), best_u, best, True)

    if d == 3:
        uniq = sorted(set(ds.points))
        cands: list[Vec] = []
        seen: set[tuple] = set()
        diffs = [_primitive(vsub(b, a)) for a, b in itertools.combinations(uniq, 2)]
        for v, w in itertools.combinations(diffs, 2):
            c = (
                v[1] * w[2] - v[2] * w[1],
                v[2] * w[0] - v[0] * w[2],
                v[0] * w[1] - v[1] * w[0],
            )
            if all(x == 0 for x in c):
                continue
            p = _primitive(c)
            if tuple(p) not in seen:
                seen.add(tuple(p))
                cands.append(p)
        for u in cands:
            lam = projected_lambda(ds, u)
            if best is None or lam < best:
                best, best_u = lam, u
            if lam == floor:
                return UpperBoundResult(lam / (1 + lam), u, lam, True)

    assert best is not None and best_u is not None
    return UpperBoundResult(best / (1 + best), best_u, best, best == floor)


def lower_bound(ds: DataSet) -> Fraction:
    """``lambda*/(1 + lambda*)``: contamination below it cannot escape."""
    if affine_dimension(ds) < ds.dim:
        raise ValueError("the breakdown lower bound requires full affine dimension")
    lam = median_region(ds).lambda_star
    return lam / (1 + lam)


# ---------------------------------------------------------------------------
# the constructive attack


@dataclass(frozen=True)
class ContaminationPlan:
    """Repeated contamination at one point on a line parallel to ``u``.

    ``y0 = sum(x0_projected[i] * basis[i]) + gamma * u`` lies outside the
    convex hull of the clean data; ``m`` copies of it are added.
    """

    u: Vec
    x0_projected: Vec
    y0: Vec
    m: int
    distance_scale: Fraction
    gamma: Fraction
    lambda_u: Fraction


@dataclass(frozen=True)
class AttackVerification:
    sup_depth_inside: Fraction
    depth_at_y0: Fraction
    escaped: bool

    def __iter__(self) -> Iterator:
        return iter((self.sup_depth_inside, self.depth_at_y0, self.escaped))


def _exposed_vertices(region: Polytope, proj: DataSet) -> list[Vec]:
    """Region vertices having an optimal direction supporting only them."""
    out = []
    for v in region.vertices:
        others = [w for w in region.vertices if w != v]
        if not others:
            out.append(v)
            continue
        if proj.dim == 1:
            out.append(v)  # an interval endpoint is supported by its ray
            continue
        for u in optimal_direction_cone(v, proj):
            lo = dot(u, v)
            if all(dot(u, w) > lo for w in others):
                out.append(v)
                break
    return out


def _descent_x0(region: Polytope, proj: DataSet) -> Vec:
    """Iterative fallback: walk vertex-to-vertex until no optimal direction
    of the current point sees another region vertex strictly ahead."""
    z = barycenter(region)
    vertices = list(region.vertices)
    for _ in range(_DESCENT_CAP):
        best_gap = Fraction(0)
        best_x: Vec | None = None
        for u in optimal_direction_cone(z, proj):
            zval = dot(u, z)
            for x in vertices:
                if x == z:
                    continue
                gap = dot(u, x) - zval
                if gap > best_gap:
                    best_gap = gap
                    best_x = x
        if best_x is None or best_gap < _DESCENT_GAP:
            return z
        z = best_x
    raise RuntimeError("attack descent did not terminate within the iteration cap")


def build_attack(
    ds: DataSet,
    u: Sequence,
    distance: object = 10**6,
    m: int | None = None,
    x0: Vec | None = None,
) -> ContaminationPlan:
    """Contamination plan along direction ``u`` at roughly ``distance``.

    Searches the projected median region for a point ``x0`` whose optimal
    halfspace touches the region only at ``x0`` (exposed vertices first,
    then an iterative descent); places ``m = ceil(n*lambda_u*)`` copies of
    ``y0`` on the line through ``x0`` parallel to ``u``, outside the hull.
    """
    if ds.dim not in (2, 3):
        raise ValueError("attacks support d in {2, 3}")
    dist = as_fraction(distance)
    if dist <= 0:
        raise ValueError("distance must be positive")
    frame = projection_frame(u, ds.dim)
    proj = project_dataset(ds, frame)

    if proj.dim == 1:
        lo, hi, lam_u = median_interval_1d([p[0] for p in proj.points])
        candidates = [(lo,), (hi,)] if hi != lo else [(lo,)]
    else:
        mr = median_region(proj)
        lam_u = mr.lambda_star
        candidates = sorted(_exposed_vertices(mr.region, proj))
        if not candidates:
            candidates = [_descent_x0(mr.region, proj)]
    x0_point: Vec = x0 if x0 is not None else candidates[0]

    reps = m if m is not None else math.ceil(ds.n * lam_u)
    if reps < 1:
        raise ValueError("attack needs at least one contaminating point")

    # lift the projected anchor back to the ambient space: the projected
    # coordinates are dot products with the (orthogonal, non-unit) basis
    # vectors, so inverting requires dividing by their squared norms
    base = tuple(
        sum(x0c * bvec[j] / _sq_norm(bvec) for x0c, bvec in zip(x0_point, frame.basis))
        for j in range(ds.dim)
    )
    maxabs = max(abs(c) for c in frame.u)
    gamma = dist / maxabs
    # a point beyond the data's coordinate range cannot lie in the hull
    bound = max(abs(c) for p in ds.points for c in p) + 1
    y0 = tuple(bc + gamma * uc for bc, uc in zip(base, frame.u))
    while all(abs(c) <= bound for c in y0):
        gamma *= 2
        y0 = tuple(bc + gamma * uc for bc, uc in zip(base, frame.u))
    return ContaminationPlan(
        u=frame.u,
        x0_projected=x0_point,
        y0=y0,
        m=reps,
        distance_scale=dist,
        gamma=gamma,
        lambda_u=lam_u,
    )


def _sup_depth_on_hull(clean: DataSet, contaminated: DataSet) -> Fraction:
    """Exact sup of the contaminated depth over the clean convex hull."""
    hull_hs = hull_halfspaces(clean)
    total = contaminated.n

    def feasible(k: int) -> bool:
        region = depth_region(contaminated, Fraction(k, total)).polytope
        if region.empty:
            return False
        meet = intersect_halfspaces(
            list(region.halfspaces) + list(hull_hs), dim=clean.dim
        )
        return not meet.empty

    lo, hi = 1, total  # depth 1/total is attained at every clean point
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid - 1
    return Fraction(lo, total)


def _sq_norm(v: Vec) -> Fraction:
    return sum(c * c for c in v)


def _enclosing_ball(ds: DataSet) -> tuple[Vec, Fraction]:
    """Center and squared radius of a simple ball containing the hull."""
    center = tuple(
        (min(p[j] for p in ds.points) + max(p[j] for p in ds.points)) / 2
        for j in range(ds.dim)
    )
    r2 = max(_sq_norm(vsub(p, center)) for p in ds.points)
    return center, r2


def _median_of(ds: DataSet) -> Vec:
    return median_region(ds).median


def verify_attack(ds: DataSet, plan: ContaminationPlan) -> AttackVerification:
    """Exact verification of a contamination plan.

    Checks the depth cap over the clean hull, the depth earned at ``y0``,
    and whether the contaminated median escapes: it must leave the doubled
    enclosing ball of the clean data and recede linearly when the placement
    distance is multiplied by 10.
    """
    if len(plan.y0) != ds.dim:
        raise ValueError("plan dimension does not match dataset")
    if tukey_depth(plan.y0, ds).count >= 1:
        raise ValueError("plan's contamination point lies inside the convex hull")

    contaminated = dataset(list(ds.points) + [plan.y0] * plan.m)
    sup_inside = _sup_depth_on_hull(ds, contaminated)
    depth_y0 = tukey_depth(plan.y0, contaminated).value

    center, r2 = _enclosing_ball(ds)
    t1 = _median_of(contaminated)
    d1 = _sq_norm(vsub(t1, center))
    outside_ball = d1 > 4 * r2

    escaped = False
    if outside_ball:
        base = tuple(y - plan.gamma * u for y, u in zip(plan.y0, plan.u))
        y0_far = tuple(b + 10 * plan.gamma * u for b, u in zip(base, plan.u))
        far = dataset(list(ds.points) + [y0_far] * plan.m)
        d2 = _sq_norm(vsub(_median_of(far), center))
        escaped = d2 >= 25 * d1  # distance at least 5x when placement is 10x
    return AttackVerification(sup_inside, depth_y0, escaped)


# ---------------------------------------------------------------------------
# exhaustive small-instance breakdown search


@dataclass(frozen=True)
class BreakdownReport:
    n: int
    dim: int
    lower: Fraction
    upper: Fraction
    exact_m: int | None
    witness_plan: ContaminationPlan | None

    @property
    def exact_ratio(self) -> Fraction | None:
        if self.exact_m is None:
            return None
        return Fraction(self.exact_m, self.n + self.exact_m)


BREAKDOWN_CSV_HEADER = "n,d,lower,upper,exact_m,attack_u,m,scale,escaped"


def breakdown_csv_row(report: BreakdownReport) -> str:
    plan = report.witness_plan
    return ",".join(
        [
            str(report.n),
            str(report.dim),
            str(report.lower),
            str(report.upper),
            "" if report.exact_m is None else str(report.exact_m),
            "" if plan is None else '"' + " ".join(str(c) for c in plan.u) + '"',
            "" if plan is None else str(plan.m),
            "" if plan is None else str(plan.distance_scale),
            "" if plan is None else "true",
        ]
    )


def exact_breakdown(
    ds: DataSet,
    m_max: int | None = None,
    scales: Sequence[object] = (10**3, 10**4, 10**5),
) -> BreakdownReport:
    """Smallest certified contamination count for tiny instances.

    For d=1 the answer is closed-form: the median interval's endpoints are
    order statistics that stay inside the clean range until ``m = n``, so
    ``exact_m = n`` (the classical 1/2 additive breakdown).  For d=2 with
    n <= 10, searches the structured plan family (every tie direction and
    arc representative, every candidate ``x0``) for the smallest ``m`` that
    escapes at every scale of the schedule; reports ``exact_m=None`` if the
    family finds none (the family is exhaustive over plans, not over all
    possible contaminations).
    """
    n = ds.n
    if ds.dim == 1:
        lam = max_depth_1d([p[0] for p in ds.points])[0]
        return BreakdownReport(
            n=n, dim=1, lower=lam / (1 + lam), upper=Fraction(1, 2),
            exact_m=n, witness_plan=None,
        )
    if ds.dim != 2:
        raise ValueError("exhaustive breakdown search supports d in {1, 2}")
    if n > 10:
        raise ValueError("exhaustive breakdown search is limited to n <= 10")
    if affine_dimension(ds) < 2:
        raise ValueError("exhaustive breakdown search requires full affine dimension")

    lower = lower_bound(ds)
    ub = upper_bound(ds)
    lam_star = median_region(ds).lambda_star
    m_floor = math.ceil(n * lam_star)  # below this the lower bound forbids escape
    if m_max is None:
        m_max = n

    ties = _angle_sorted(_tie_directions_2d(ds))
    directions = list(ties)
    for a, b in zip(ties, ties[1:] + ties[:1]):
        mid = tuple(ac + bc for ac, bc in zip(a, b))
        if any(c != 0 for c in mid):
            directions.append(mid)
    for ax in ((1, 0), (-1, 0), (0, 1), (0, -1)):  # axis-extreme placements
        v = tuple(Fraction(c) for c in ax)
        if v not in directions:
            directions.append(v)

    scale_list = [as_fraction(s) for s in scales]
    for m in range(max(1, m_floor), m_max + 1):
        for u in directions:
            frame = projection_frame(u, 2)
            proj = project_dataset(ds, frame)
            lo, hi, _ = median_interval_1d([p[0] for p in proj.points])
            for x0 in sorted({(lo,), (hi,)}):
                ok_plan: ContaminationPlan | None = None
                for scale in scale_list:
                    plan = build_attack(ds, u, scale, m=m, x0=x0)
                    res = verify_attack(ds, plan)
                    if not res.escaped:
                        ok_plan = None
                        break
                    ok_plan = plan
                if ok_plan is not None:
                    return BreakdownReport(
                        n=n, dim=2, lower=lower, upper=ub.bound,
                        exact_m=m, witness_plan=ok_plan,
                    )
    return BreakdownReport(
        n=n, dim=2, lower=lower, upper=ub.bound, exact_m=None, witness_plan=None
    )
