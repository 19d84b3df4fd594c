"""Depth regions as explicit convex polytopes, and the deepest-point median.

Two independent construction routes are provided:

* **certificates** — enumerate every *non-rotatable* supporting halfspace: a
  closed halfspace that (a) strictly cuts off at most ``ceil(n*tau) - 1``
  points and (b) is pinned by its boundary points: some ``d-1`` of them span
  a pivot flat about which rotating the boundary in some sense would sweep
  enough further boundary points strictly below to exceed the allowance.
  For data of full affine dimension the region is exactly the intersection
  of these finitely many halfspaces.

* **cuts** — an exact cutting-plane loop: start from the axis quantile
  halfspaces (a bounding box of the region), evaluate the exact depth at
  every vertex of the current polytope, and cut off each insufficiently
  deep vertex with a valid quantile halfspace until every vertex is
  certified.  Quasi-concavity of the depth makes the certified polytope
  exactly the region.  In the plane the cuts are tightened to *critical*
  directions (perpendiculars of point differences): on any arc of
  directions where the quantile contact point is constant, the quantile
  halfspaces form a pencil through that contact, so the arc's endpoint
  halfspaces carve everything the arc can carve.  Critical directions form
  a finite family, which guarantees termination.

Both routes return identical polytopes; the cutting route scales to
thousands of points and tolerates degenerate (affinely deficient) data.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .depth import (
    depth_count,
    directional_quantile,
    median_interval_1d,
    quantile_index,
    witness_cut,
)
from .geometry import (
    DataSet,
    Halfspace,
    Vec,
    affine_dimension,
    as_fraction,
    dataset,
    halfspace,
)
from .polytope import Polytope, barycenter, intersect_halfspaces, vertex_centroid

_MAX_CUT_ROUNDS = 500


@dataclass(frozen=True)
class IrrotatableCertificate:
    """A supporting halfspace pinned in place by the sample.

    ``halfspace`` strictly cuts off ``cut_count`` points (at most the
    allowance ``required - 1``), carries ``boundary_indices`` on its
    boundary, and rotating about the flat spanned by ``pivot_indices`` in
    the recorded sense would newly cut ``swept_count`` boundary points,
    overshooting the allowance.
    """

    halfspace: Halfspace
    tau: Fraction
    required: int  # ceil(n * tau)
    cut_count: int
    boundary_indices: tuple[int, ...]
    pivot_indices: tuple[int, ...]
    swept_count: int


@dataclass(frozen=True)
class RegionResult:
    polytope: Polytope
    tau: Fraction
    required: int
    method: str
    certificates: tuple[IrrotatableCertificate, ...] | None = None


@dataclass(frozen=True)
class MedianResult:
    region: Polytope
    lambda_star: Fraction
    median: Vec
    average: str


# ---------------------------------------------------------------------------
# certificates


def _boundary_split(ds: DataSet, h: Halfspace):
    """Indices strictly below / exactly on the boundary of ``h``."""
    cut = []
    boundary = []
    for i, p in enumerate(ds.points):
        s = sum(nc * pc for nc, pc in zip(h.normal, p)) - h.offset
        if s < 0:
            cut.append(i)
        elif s == 0:
            boundary.append(i)
    return cut, boundary


def certificate_for(ds: DataSet, h: Halfspace, tau: object) -> IrrotatableCertificate | None:
    """The pinning certificate of ``h`` at level ``tau``, or None."""
    tau = as_fraction(tau)
    if not (0 < tau <= 1):
        raise ValueError("tau must lie in (0, 1]")
    if len(h.normal) != ds.dim:
        raise ValueError("halfspace dimension does not match dataset")
    k = quantile_index(ds.n, tau)
    allowance = k - 1
    cut, boundary = _boundary_split(ds, h)
    if len(cut) > allowance:
        return None
    d = ds.dim

    if d == 1:
        # no rotations exist on a line; the halfspace is pinned as soon as
        # its boundary passes through a sample point
        if boundary:
            return IrrotatableCertificate(
                h, tau, k, len(cut), tuple(boundary), (boundary[0],), 0
            )
        return None

    if d == 2:
        locs: dict[Vec, int] = {}
        for i in boundary:
            locs.setdefault(ds.points[i], i)
        tangent = (-h.normal[1], h.normal[0])
        for pivot_loc, pivot_idx in locs.items():
            plus = minus = 0
            for i in boundary:
                s = sum(tc * (pc - vc) for tc, pc, vc in zip(tangent, ds.points[i], pivot_loc))
                if s > 0:
                    plus += 1
                elif s < 0:
                    minus += 1
            swept = max(plus, minus)
            if len(cut) + swept > allowance:
                return IrrotatableCertificate(
                    h, tau, k, len(cut), tuple(boundary), (pivot_idx,), swept
                )
        return None

    if d == 3:
        locs3: dict[Vec, int] = {}
        for i in boundary:
            locs3.setdefault(ds.points[i], i)
        uniq = list(locs3.items())
        for (la, ia), (lb, ib) in itertools.combinations(uniq, 2):
            axis = tuple(b - a for a, b in zip(la, lb))
            # in-plane direction perpendicular to the pivot axis
            tangent = _cross3(h.normal, axis)
            if all(c == 0 for c in tangent):
                continue
            plus = minus = 0
            for i in boundary:
                s = sum(tc * (pc - ac) for tc, pc, ac in zip(tangent, ds.points[i], la))
                if s > 0:
                    plus += 1
                elif s < 0:
                    minus += 1
            swept = max(plus, minus)
            if len(cut) + swept > allowance:
                return IrrotatableCertificate(
                    h, tau, k, len(cut), tuple(boundary), (ia, ib), swept
                )
        return None

    raise ValueError("certificates support d <= 3")


def is_irrotatable(ds: DataSet, h: Halfspace, tau: object) -> bool:
    return certificate_for(ds, h, tau) is not None


def _cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def enumerate_irrotatable(ds: DataSet, tau: object) -> tuple[IrrotatableCertificate, ...]:
    """Every non-rotatable halfspace at level ``tau`` (exact, deduplicated).

    Complete for data of full affine dimension: a certificate needs swept
    boundary points besides its pivot flat, so its boundary contains at
    least two distinct sample locations (d=2) or three non-collinear ones
    (d=3); candidate boundaries therefore run over point pairs or triples.
    """
    tau = as_fraction(tau)
    if not (0 < tau <= 1):
        raise ValueError("tau must lie in (0, 1]")
    d = ds.dim
    if d > 3:
        raise ValueError("certificate enumeration supports d <= 3")
    if affine_dimension(ds) < d:
        raise ValueError(
            "certificate enumeration requires full affine-dimensional data; "
            "use the cutting-plane region route for degenerate datasets"
        )

    if d == 1:
        k = quantile_index(ds.n, tau)
        vals = sorted(p[0] for p in ds.points)
        lo = vals[k - 1]
        hi = vals[ds.n - k]
        out = []
        for h in (halfspace((1,), lo), halfspace((-1,), -hi)):
            cert = certificate_for(ds, h, tau)
            if cert is not None:
                out.append(cert)
        return tuple(out)

    seen: set = set()
    out: list[IrrotatableCertificate] = []
    uniq_pts = sorted(set(ds.points))

    if d == 2:
        for a, b in itertools.combinations(uniq_pts, 2):
            t = tuple(bb - aa for aa, bb in zip(a, b))
            for normal in ((-t[1], t[0]), (t[1], -t[0])):
                h = halfspace(normal, sum(nc * ac for nc, ac in zip(normal, a)))
                key = h.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                cert = certificate_for(ds, h, tau)
                if cert is not None:
                    out.append(cert)
        return tuple(out)

    for a, b, c in itertools.combinations(uniq_pts, 3):
        u = _cross3(
            tuple(bb - aa for aa, bb in zip(a, b)),
            tuple(cc - aa for aa, cc in zip(a, c)),
        )
        if all(x == 0 for x in u):
            continue
        for normal in (u, tuple(-x for x in u)):
            h = halfspace(normal, sum(nc * ac for nc, ac in zip(normal, a)))
            key = h.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            cert = certificate_for(ds, h, tau)
            if cert is not None:
                out.append(cert)
    return tuple(out)


# ---------------------------------------------------------------------------
# cutting-plane region construction (d = 2 core)


def _axis_quantile_box(ds: DataSet, tau: Fraction) -> list[Halfspace]:
    d = ds.dim
    out = []
    for i in range(d):
        e = [Fraction(0)] * d
        e[i] = Fraction(1)
        out.append(halfspace(tuple(e), directional_quantile(ds, tuple(e), tau)))
        e[i] = Fraction(-1)
        out.append(halfspace(tuple(e), directional_quantile(ds, tuple(e), tau)))
    return out


def _contact_location(ds: DataSet, u: Vec, k: int) -> tuple[Fraction, Vec]:
    """The k-th smallest projection under ``u`` and a location attaining it."""
    projs = sorted(
        (sum(uc * pc for uc, pc in zip(u, p)), p) for p in ds.points
    )
    q, loc = projs[k - 1]
    return q, loc


def _bracketing_criticals_2d(ds: DataSet, u: Vec, contact: Vec) -> list[Vec]:
    """Nearest critical directions on each side of ``u``.

    Critical directions are perpendiculars of differences between the
    quantile contact location and other sample locations: rotating ``u``
    past one changes the contact set.  If ``u`` is itself critical it is
    returned alone.
    """
    best_left: Vec | None = None
    best_right: Vec | None = None
    for p in set(ds.points):
        dx = p[0] - contact[0]
        dy = p[1] - contact[1]
        if dx == 0 and dy == 0:
            continue
        for w in ((-dy, dx), (dy, -dx)):
            c = u[0] * w[1] - u[1] * w[0]
            if c == 0:
                if u[0] * w[0] + u[1] * w[1] > 0:
                    return [u]  # u is already critical
                continue
            if c > 0:
                # w lies counterclockwise of u within (0, pi)
                if best_left is None or (w[0] * best_left[1] - w[1] * best_left[0]) > 0:
                    best_left = w
            else:
                if best_right is None or (w[0] * best_right[1] - w[1] * best_right[0]) < 0:
                    best_right = w
    out = []
    for w in (best_left, best_right):
        if w is not None:
            out.append((as_fraction(w[0]), as_fraction(w[1])))
    return out


def _region_by_cuts_2d(
    ds: DataSet,
    tau: Fraction,
    k: int,
    deadline: float | None,
    seed_directions: Sequence[Vec] = (),
) -> tuple[Polytope, list[Vec]]:
    """Exact cutting-plane loop; returns the region and the cut directions."""
    constraints = _axis_quantile_box(ds, tau)
    seen_keys = {h.canonical_key() for h in constraints}
    directions: list[Vec] = []
    for u in seed_directions:
        h = halfspace(u, directional_quantile(ds, u, tau))
        if h.canonical_key() not in seen_keys:
            seen_keys.add(h.canonical_key())
            constraints.append(h)
            directions.append(u)
    certified: dict[Vec, int] = {}
    for _ in range(_MAX_CUT_ROUNDS):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("region construction exceeded its deadline")
        poly = intersect_halfspaces(constraints, dim=2)
        if poly.empty:
            return poly, directions
        assert not poly.unbounded, "quantile box must bound the region search"
        added = False
        for v in poly.vertices:
            cnt = certified.get(v)
            u_wit: Vec | None = None
            if cnt is None:
                cnt, u_wit = witness_cut(v, ds)
                certified[v] = cnt
            if cnt >= k:
                continue
            if u_wit is None:
                _, u_wit = witness_cut(v, ds)
            # tighten the witness direction to the bracketing critical
            # directions of its quantile-contact arc; they cut at least as
            # deep and come from a finite family (termination)
            _, contact = _contact_location(ds, u_wit, k)
            cuts: list[Halfspace] = []
            for w in _bracketing_criticals_2d(ds, u_wit, contact):
                qw = directional_quantile(ds, w, tau)
                if sum(wc * vc for wc, vc in zip(w, v)) < qw:
                    cuts.append(halfspace(w, qw))
            if not cuts:
                # rare fallback: the raw witness quantile halfspace always
                # separates v from the region
                qu = directional_quantile(ds, u_wit, tau)
                cuts.append(halfspace(u_wit, qu))
            for h in cuts:
                key = h.canonical_key()
                if key not in seen_keys:
                    seen_keys.add(key)
                    constraints.append(h)
                    directions.append(h.normal)
                    added = True
        if not added:
            return poly, directions
    raise RuntimeError("cutting-plane region search failed to converge")


# ---------------------------------------------------------------------------
# degenerate-data reduction (exact affine coordinates and lift)


def _affine_frame(ds: DataSet):
    """(base point, exact basis of difference space) for the affine hull."""
    pts = ds.points
    base = pts[0]
    basis: list[Vec] = []
    for p in pts[1:]:
        cand = tuple(pc - bc for pc, bc in zip(p, base))
        trial = basis + [cand]
        if _rank_of(trial) == len(trial):
            basis.append(cand)
    return base, basis


def _rank_of(vecs: list[Vec]) -> int:
    rows = [list(v) for v in vecs]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / pv
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def _solve_gram(basis: list[Vec], rhs: list[Fraction]) -> list[Fraction]:
    """Solve (B^T B) alpha = rhs for the (independent) basis columns."""
    m = len(basis)
    g = [[sum(a * b for a, b in zip(basis[i], basis[j])) for j in range(m)] for i in range(m)]
    aug = [row + [rhs[i]] for i, row in enumerate(g)]
    for c in range(m):
        piv = next(i for i in range(c, m) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [a / pv for a in aug[c]]
        for i in range(m):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][m] for i in range(m)]


def _reduce_points(ds: DataSet, base: Vec, basis: list[Vec]) -> DataSet:
    reduced = []
    for p in ds.points:
        diff = tuple(pc - bc for pc, bc in zip(p, base))
        rhs = [sum(bc * dc for bc, dc in zip(bv, diff)) for bv in basis]
        reduced.append(tuple(_solve_gram(basis, rhs)))
    return dataset(reduced)


def _complement_normals(basis: list[Vec], dim: int) -> list[Vec]:
    """Exact spanning set of the orthogonal complement of the basis."""
    if dim != 3:
        raise ValueError("complement construction implemented for ambient d=3")
    if len(basis) == 2:
        return [_cross3(basis[0], basis[1])]
    if len(basis) == 1:
        b = basis[0]
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            n1 = _cross3(b, e)
            if any(c != 0 for c in n1):
                return [n1, _cross3(b, n1)]
    if len(basis) == 0:
        return [(Fraction(1), Fraction(0), Fraction(0)),
                (Fraction(0), Fraction(1), Fraction(0)),
                (Fraction(0), Fraction(0), Fraction(1))]
    raise ValueError("unexpected basis size")


def _lift_region(
    base: Vec, basis: list[Vec], reduced: Polytope, ambient_dim: int
) -> Polytope:
    """Exact ambient polytope for a region solved in affine-hull coordinates."""
    plane_hs: list[Halfspace] = []
    for nrm in _complement_normals(basis, ambient_dim):
        off = sum(nc * bc for nc, bc in zip(nrm, base))
        plane_hs.append(halfspace(nrm, off))
        plane_hs.append(halfspace(tuple(-c for c in nrm), -off))

    lifted_hs = list(plane_hs)
    for h in reduced.halfspaces:
        alpha = _solve_gram(basis, list(h.normal))
        w = tuple(
            sum(a * bv[j] for a, bv in zip(alpha, basis)) for j in range(ambient_dim)
        )
        off = h.offset + sum(wc * bc for wc, bc in zip(w, base))
        lifted_hs.append(halfspace(w, off))

    verts = tuple(
        tuple(
            bc + sum(yv * bvec[j] for yv, bvec in zip(y, basis))
            for j, bc in enumerate(base)
        )
        for y in reduced.vertices
    )
    return Polytope(
        halfspaces=tuple(lifted_hs),
        vertices=verts,
        dim=ambient_dim,
        affine_dim=reduced.affine_dim,
        empty=reduced.empty,
        unbounded=False,
    )


# ---------------------------------------------------------------------------
# public region API


def _empty_region(dim: int) -> Polytope:
    e = tuple([Fraction(1)] + [Fraction(0)] * (dim - 1))
    hs = (halfspace(e, 1), halfspace(tuple(-c for c in e), 0))
    return Polytope(
        halfspaces=hs, vertices=(), dim=dim, affine_dim=-1, empty=True, unbounded=False
    )


def _region_1d(ds: DataSet, tau: Fraction, k: int) -> Polytope:
    vals = sorted(p[0] for p in ds.points)
    lo = vals[k - 1]
    hi = vals[ds.n - k]
    if lo > hi:
        return _empty_region(1)
    return intersect_halfspaces([halfspace((1,), lo), halfspace((-1,), -hi)], dim=1)


def _region_certificates(ds: DataSet, tau: Fraction, k: int):
    certs = enumerate_irrotatable(ds, tau)
    poly = intersect_halfspaces([c.halfspace for c in certs], dim=ds.dim)
    # outside the guaranteed range (tau above the maximal depth) the
    # intersection can overshoot; an exact depth check settles it
    if not poly.empty:
        probe = poly.vertices[0] if poly.vertices else None
        if poly.unbounded or probe is None or depth_count(_inner_point(poly), ds) < k:
            poly = _empty_region(ds.dim)
    return poly, certs


def _inner_point(poly: Polytope) -> Vec:
    if len(poly.vertices) == 1:
        return poly.vertices[0]
    return tuple(
        sum(v[j] for v in poly.vertices) / len(poly.vertices)
        for j in range(poly.dim)
    )


def _region_3d_lazy_certificates(
    ds: DataSet, tau: Fraction, k: int, deadline: float | None
) -> Polytope:
    """Cutting loop over the (complete) certificate family in space."""
    certs = enumerate_irrotatable(ds, tau)
    family = [c.halfspace for c in certs]
    constraints = _axis_quantile_box(ds, tau)
    certified: dict[Vec, int] = {}
    for _ in range(_MAX_CUT_ROUNDS):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("region construction exceeded its deadline")
        poly = intersect_halfspaces(constraints, dim=3)
        if poly.empty:
            return poly
        assert not poly.unbounded
        new_cuts: list[Halfspace] = []
        for v in poly.vertices:
            cnt = certified.get(v)
            if cnt is None:
                cnt = depth_count(v, ds)
                certified[v] = cnt
            if cnt >= k:
                continue
            if any(not h.contains(v) for h in new_cuts):
                continue  # a cut added this round already excludes it
            for h in family:
                if not h.contains(v):
                    constraints.append(h)
                    new_cuts.append(h)
                    family.remove(h)
                    break
            else:
                # no certificate excludes a shallow point: the level is
                # above the maximal depth and the region is empty
                return _empty_region(3)
        if not new_cuts:
            return poly
    raise RuntimeError("certificate cutting loop failed to converge")


def depth_region(
    ds: DataSet,
    tau: object,
    method: str = "auto",
    deadline: float | None = None,
) -> RegionResult:
    """The set of points whose depth is at least ``tau``, as a polytope.

    ``method`` is ``"auto"``, ``"cuts"``, or ``"certificates"``; the
    certificate route requires data of full affine dimension.  Results are
    exact for every rational dataset in dimensions 1-3, including data with
    duplicated or collinear points.
    """
    tau = as_fraction(tau)
    if not (0 < tau <= 1):
        raise ValueError("tau must lie in (0, 1]")
    if method not in ("auto", "cuts", "certificates"):
        raise ValueError(f"unknown region method: {method!r}")
    if ds.dim > 3:
        raise ValueError("depth regions support d <= 3")
    k = quantile_index(ds.n, tau)

    if method == "certificates":
        poly, certs = _region_certificates(ds, tau, k)
        return RegionResult(poly, tau, k, "certificates", certs)

    if ds.dim == 1:
        return RegionResult(_region_1d(ds, tau, k), tau, k, "cuts")

    if ds.dim == 2:
        poly, _ = _region_by_cuts_2d(ds, tau, k, deadline)
        return RegionResult(poly, tau, k, "cuts")

    # d == 3
    ad = affine_dimension(ds)
    if ad == 3:
        poly = _region_3d_lazy_certificates(ds, tau, k, deadline)
        return RegionResult(poly, tau, k, "cuts")
    if ad == 0:
        loc = ds.points[0]
        hs = []
        for i in range(3):
            e = [Fraction(0)] * 3
            e[i] = Fraction(1)
            hs.append(halfspace(tuple(e), loc[i]))
            e[i] = Fraction(-1)
            hs.append(halfspace(tuple(e), -loc[i]))
        poly = Polytope(
            halfspaces=tuple(hs), vertices=(loc,), dim=3, affine_dim=0,
            empty=False, unbounded=False,
        )
        return RegionResult(poly, tau, k, "cuts")
    base, basis = _affine_frame(ds)
    reduced_ds = _reduce_points(ds, base, basis)
    if len(basis) == 1:
        red = _region_1d(reduced_ds, tau, k)
    else:
        red, _ = _region_by_cuts_2d(reduced_ds, tau, k, deadline)
    poly = _lift_region(base, basis, red, 3)
    return RegionResult(poly, tau, k, "cuts")


# ---------------------------------------------------------------------------
# maximal-depth region and median


def max_depth(ds: DataSet, deadline: float | None = None) -> Fraction:
    """The maximum depth attained by any point (at least 1/n, at the data)."""
    return median_region(ds, deadline=deadline).lambda_star


def _coordinatewise_median(ds: DataSet) -> Vec:
    cols = []
    for j in range(ds.dim):
        vals = sorted(p[j] for p in ds.points)
        m = len(vals)
        if m % 2:
            cols.append(vals[m // 2])
        else:
            cols.append((vals[m // 2 - 1] + vals[m // 2]) / 2)
    return tuple(cols)


def median_region(
    ds: DataSet,
    average: str = "barycenter",
    deadline: float | None = None,
) -> MedianResult:
    """Maximal-depth region and its center point.

    ``average="barycenter"`` takes the volume centroid of the region (the
    vertex average for degenerate regions); ``average="vertices"`` always
    averages the vertices.
    """
    if average not in ("barycenter", "vertices"):
        raise ValueError(f"unknown average: {average!r}")
    n = ds.n

    if ds.dim == 1:
        lo, hi, lam = median_interval_1d([p[0] for p in ds.points])
        poly = intersect_halfspaces([halfspace((1,), lo), halfspace((-1,), -hi)], dim=1)
        med = ((lo + hi) / 2,)
        return MedianResult(poly, lam, med, average)

    seeds: list[Vec] = []

    def build(k: int) -> Polytope:
        nonlocal seeds
        if ds.dim == 2:
            poly, dirs = _region_by_cuts_2d(ds, Fraction(k, n), k, deadline, seeds)
            seeds = dirs
            return poly
        return depth_region(ds, Fraction(k, n), deadline=deadline).polytope

    # the coordinatewise median supplies a certified nonempty starting level
    k_lo = max(depth_count(_coordinatewise_median(ds), ds), 1)
    k_hi = n + 1  # first level known (or assumed) empty
    best_poly: Polytope | None = None
    best_k: int | None = None
    while k_lo + 1 < k_hi or best_k != k_lo:
        k_try = (k_lo + k_hi) // 2 if best_k == k_lo else k_lo
        poly = build(k_try)
        if poly.empty:
            if k_try == k_lo:
                raise RuntimeError("level certified feasible came back empty")
            k_hi = k_try
        else:
            k_lo = k_try
            best_poly = poly
            best_k = k_try
            # region vertices often reveal deeper points; jump if so
            deepest = max(depth_count(v, ds) for v in poly.vertices)
            if deepest > k_lo:
                k_lo = deepest
                best_k = None  # the floor must be re-established by a build
    assert best_poly is not None and best_k is not None
    lam = Fraction(best_k, n)
    med = vertex_centroid(best_poly) if average == "vertices" else barycenter(best_poly)
    return MedianResult(best_poly, lam, med, average)


def halfspace_median(ds: DataSet, average: str = "barycenter") -> Vec:
    """The deepest-region center: barycenter of the maximal-depth region."""
    return median_region(ds, average=average).median
