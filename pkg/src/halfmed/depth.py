"""Exact halfspace (Tukey) depth for finite rational datasets.

The depth of ``x`` is the smallest fraction of sample points contained in a
closed halfspace whose boundary passes through ``x``.  Because the empirical
measure takes finitely many values, the infimum over directions is attained
on one of finitely many combinatorial cells, and the minimum is found by an
exact angular sweep:

* d = 1: order statistics.
* d = 2: sort the difference vectors ``Xi - x`` by angle and slide a
  half-circle window; ties and duplicated points are counted with
  multiplicity, never perturbed.
* d = 3: the candidate normals live on the arrangement of planes
  ``{u : u . (Xi - x) = 0}``; every minimizing cell touches an edge
  ``cross(Xi - x, Xj - x)``, and the cells around an edge reduce to a 2-D
  sweep in the edge's orthogonal plane.

All counting is integer arithmetic after clearing denominators.  A numpy
fast path handles large planar queries when coordinates are small enough for
proven-exact float angle sorting (verified pairwise with integer cross
products, with a pure comparator sort as fallback).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .geometry import (
    DataSet,
    Vec,
    angular_cmp,
    as_fraction,
    canonical_direction,
)

# Coordinates at or below this bound make float64 atan2 ordering provably
# consistent with the exact angular order (minimum angular gap between
# distinct reduced integer vectors ~ 2^-47 versus ~2^-50 atan2 error).
_NP_COORD_LIMIT = 1 << 23
_NP_MIN_SIZE = 96


@dataclass(frozen=True)
class DepthResult:
    """Exact depth value with a certifying direction.

    ``count`` points satisfy ``witness . Xi <= witness . x`` and no closed
    halfspace through ``x`` contains fewer; ``boundary_count`` of them lie
    exactly on the boundary hyperplane.
    """

    value: Fraction
    count: int
    n: int
    witness: Vec
    boundary_count: int
    exact: bool = True


# ---------------------------------------------------------------------------
# integer preparation


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _direction_ints(u: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for c in u:
        den = _lcm(den, c.denominator)
    return tuple(int(c * den) for c in u)


def _query_vectors(ds: DataSet, x: Vec) -> tuple[int, list[tuple[int, ...]]]:
    """Differences ``Xi - x`` as integer tuples sharing one positive scale."""
    scale, rows = ds.scaled_ints()
    den = 1
    for c in x:
        den = _lcm(den, c.denominator)
    big = _lcm(scale, den)
    f = big // scale
    xi = tuple(int(c * big) for c in x)
    c0 = 0
    vecs: list[tuple[int, ...]] = []
    for r in rows:
        v = tuple(rc * f - xc for rc, xc in zip(r, xi))
        if any(c != 0 for c in v):
            vecs.append(v)
        else:
            c0 += 1
    return c0, vecs


def _np_matrix(ds: DataSet):
    cached = ds._cache.get("np64")
    if cached is None:
        scale, rows = ds.scaled_ints()
        maxabs = max((max(abs(c) for c in r) for r in rows), default=0)
        if maxabs < (1 << 62):
            cached = (np.array(rows, dtype=np.int64), maxabs)
        else:
            cached = (None, maxabs)
        ds._cache["np64"] = cached
    return cached


# ---------------------------------------------------------------------------
# planar sweep core


def _groups_python(vecs: Iterable[tuple[int, int]]) -> tuple[list[tuple[int, int]], list[int]]:
    acc: dict[tuple[int, int], int] = {}
    for a, b in vecs:
        g = math.gcd(abs(a), abs(b))
        key = (a // g, b // g)
        acc[key] = acc.get(key, 0) + 1
    keys = sorted(acc, key=functools.cmp_to_key(angular_cmp))
    return keys, [acc[k] for k in keys]


def _groups_numpy(vx, vy) -> tuple[list[tuple[int, int]], list[int]] | None:
    g = np.gcd(np.abs(vx), np.abs(vy))
    px = vx // g
    py = vy // g
    pairs = np.stack([px, py], axis=1)
    uniq, counts = np.unique(pairs, axis=0, return_counts=True)
    ux = uniq[:, 0]
    uy = uniq[:, 1]
    theta = np.arctan2(uy.astype(np.float64), ux.astype(np.float64))
    theta = np.where(theta < 0, theta + 2.0 * np.pi, theta)
    order = np.argsort(theta, kind="stable")
    ux = ux[order]
    uy = uy[order]
    counts = counts[order]
    if len(ux) > 1:
        # exact verification of the float ordering: adjacent pairs must be
        # strictly increasing in angle
        ax, ay, bx, by = ux[:-1], uy[:-1], ux[1:], uy[1:]
        ha = ~((ay > 0) | ((ay == 0) & (ax > 0)))
        hb = ~((by > 0) | ((by == 0) & (bx > 0)))
        cross = ax * by - ay * bx
        ok = (ha < hb) | ((ha == hb) & (cross > 0))
        if not bool(ok.all()):
            return None
    return list(zip(ux.tolist(), uy.tolist())), counts.tolist()


def _window_in(anchor: tuple[int, int], w: tuple[int, int]) -> bool:
    """Angle of w lies in the half-open half-circle [anchor, anchor + pi)."""
    cross = anchor[0] * w[1] - anchor[1] * w[0]
    if cross > 0:
        return True
    if cross < 0:
        return False
    return anchor[0] * w[0] + anchor[1] * w[1] > 0


def _max_window(groups: list[tuple[int, int]], mult: list[int]) -> tuple[int, list[int]]:
    """Largest multiplicity in a half-open angular window, with all anchors."""
    m = len(groups)
    if m == 1:
        return mult[0], [0]
    best = -1
    anchors: list[int] = []
    r = 0
    cnt = 0
    for j in range(m):
        if r < j:
            r = j
            cnt = 0
        while r < j + m and _window_in(groups[j], groups[r % m]):
            cnt += mult[r % m]
            r += 1
        if cnt > best:
            best = cnt
            anchors = [j]
        elif cnt == best:
            anchors.append(j)
        cnt -= mult[j]
    return best, anchors


def _cell_witness_2d(anchor: tuple[int, int], groups: list[tuple[int, int]]) -> tuple[int, int]:
    """Integer direction inside the open cell anchored at ``anchor``.

    The returned u satisfies u . anchor > 0 and keeps the strict sign of
    u0 . g for every other group, where u0 is the left perpendicular of the
    anchor.
    """
    ax, ay = anchor
    u0 = (-ay, ax)
    eps: Fraction | None = None
    for g in groups:
        du = u0[0] * g[0] + u0[1] * g[1]
        da = ax * g[0] + ay * g[1]
        if du != 0 and da != 0:
            cand = Fraction(abs(du), abs(da))
            if eps is None or cand < eps:
                eps = cand
    if eps is None:
        # no group constrains the rotation amount; any positive tilt works
        return (u0[0] + ax, u0[1] + ay)
    half = eps / 2
    q = half.denominator
    p = half.numerator
    return (q * u0[0] + p * ax, q * u0[1] + p * ay)


def _depth2_counts(c0: int, groups: list[tuple[int, int]], mult: list[int]) -> tuple[int, list[int]]:
    n_nz = sum(mult)
    if not groups:
        return c0, []
    best, anchors = _max_window(groups, mult)
    return c0 + n_nz - best, anchors


# ---------------------------------------------------------------------------
# d = 3 core


def _vec_rank3(vecs: list[tuple[int, int, int]]):
    """(rank, basis info) of a list of nonzero integer 3-vectors."""
    b1 = vecs[0]
    normal = None
    b2 = None
    for v in vecs[1:]:
        c = _cross3i(b1, v)
        if c != (0, 0, 0):
            b2 = v
            normal = c
            break
    if normal is None:
        return 1, (b1, None, None)
    for v in vecs:
        if _dot3i(normal, v) != 0:
            return 3, (b1, b2, normal)
    return 2, (b1, b2, normal)


def _cross3i(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot3i(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _reduce3(v):
    g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    return (v[0] // g, v[1] // g, v[2] // g)


def _depth3_int(c0: int, vecs: list[tuple[int, int, int]]) -> tuple[int, tuple[int, int, int]]:
    """Minimum closed-halfspace count and an exact witness direction (d=3)."""
    n_nz = len(vecs)
    if n_nz == 0:
        return c0, (1, 0, 0)
    rank, (b1, b2, normal) = _vec_rank3(vecs)

    if rank == 1:
        pos = sum(1 for v in vecs if _dot3i(b1, v) > 0)
        neg = n_nz - pos
        # u = +-b1 puts the smaller side at or below the boundary
        return (c0 + min(neg, pos), b1 if neg <= pos else tuple(-c for c in b1))

    if rank == 2:
        bb2 = _cross3i(normal, b1)
        mapped = [(_dot3i(b1, v), _dot3i(bb2, v)) for v in vecs]
        groups, mult = _groups_python(mapped)
        count, anchors = _depth2_counts(c0, groups, mult)
        s, t = _cell_witness_2d(groups[anchors[0]], groups)
        u = tuple(s * a + t * b for a, b in zip(b1, bb2))
        return count, u

    # rank 3: sweep the cells around every arrangement edge
    reduced = {}
    for v in vecs:
        reduced.setdefault(_reduce3(v), True)
    dirs = list(reduced)
    edges: set[tuple[int, int, int]] = set()
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            e = _cross3i(dirs[i], dirs[j])
            if e == (0, 0, 0):
                continue
            e = _reduce3(e)
            if e not in edges:
                edges.add(e)
                edges.add(tuple(-c for c in e))

    best_count: int | None = None
    best_witness = None
    for e in edges:
        below = 0
        zidx = []
        for v in vecs:
            s = _dot3i(e, v)
            if s < 0:
                below += 1
            elif s == 0:
                zidx.append(v)
        if best_count is not None and c0 + below >= best_count:
            continue
        bb1 = zidx[0]
        bb2 = _cross3i(e, bb1)
        mapped = [(_dot3i(bb1, v), _dot3i(bb2, v)) for v in zidx]
        groups, mult = _groups_python(mapped)
        wbest, anchors = _max_window(groups, mult)
        count = c0 + below + (len(zidx) - wbest)
        if best_count is None or count < best_count:
            s, t = _cell_witness_2d(groups[anchors[0]], groups)
            w3 = tuple(s * a + t * b for a, b in zip(bb1, bb2))
            delta: Fraction | None = None
            for v in vecs:
                se = _dot3i(e, v)
                if se == 0:
                    continue
                sw = _dot3i(w3, v)
                if sw != 0:
                    cand = Fraction(abs(se), abs(sw))
                    if delta is None or cand < delta:
                        delta = cand
            if delta is None:
                u = tuple(q_e + w for q_e, w in zip(e, w3))
            else:
                half = delta / 2
                u = tuple(half.denominator * ec + half.numerator * wc for ec, wc in zip(e, w3))
            best_count = count
            best_witness = u
    assert best_count is not None and best_witness is not None
    return best_count, best_witness


# ---------------------------------------------------------------------------
# public depth API


def tukey_depth(x: Sequence[object], ds: DataSet) -> DepthResult:
    """Exact halfspace depth of ``x`` with respect to the dataset (d <= 3)."""
    xt = tuple(as_fraction(c) for c in x)
    d = ds.dim
    if len(xt) != d:
        raise ValueError("query point dimension does not match dataset")
    if d > 3:
        raise ValueError("exact depth supports d <= 3; see approximate_depth")
    n = ds.n

    if d == 1:
        c0, vecs = _query_vectors(ds, xt)
        neg = sum(1 for (v,) in vecs if v < 0)
        pos = len(vecs) - neg
        if neg <= pos:
            count, witness = c0 + neg, (Fraction(1),)
        else:
            count, witness = c0 + pos, (Fraction(-1),)
        return DepthResult(Fraction(count, n), count, n, witness, c0)

    if d == 2:
        c0, groups, mult = _planar_groups(ds, xt)
        count, anchors = _depth2_counts(c0, groups, mult)
        if groups:
            u = _cell_witness_2d(groups[anchors[0]], groups)
            witness = canonical_direction((Fraction(u[0]), Fraction(u[1])))
        else:
            witness = (Fraction(1), Fraction(0))
        _verify_witness(ds, xt, witness, count)
        return DepthResult(Fraction(count, n), count, n, witness, c0)

    c0, vecs = _query_vectors(ds, xt)
    count, u = _depth3_int(c0, vecs)
    witness = canonical_direction(tuple(Fraction(c) for c in u))
    _verify_witness(ds, xt, witness, count)
    return DepthResult(Fraction(count, n), count, n, witness, c0)


def _planar_groups(ds: DataSet, xt: Vec):
    """Angularly sorted difference-direction groups for a planar query."""
    arr, maxabs = _np_matrix(ds)
    if arr is not None and ds.n >= _NP_MIN_SIZE:
        scale, _ = ds.scaled_ints()
        den = 1
        for c in xt:
            den = _lcm(den, c.denominator)
        big = _lcm(scale, den)
        f = big // scale
        bound = maxabs * f + max(abs(int(c * big)) for c in xt)
        if bound <= _NP_COORD_LIMIT:
            xi = np.array([int(c * big) for c in xt], dtype=np.int64)
            diff = arr * f - xi
            nz = (diff[:, 0] != 0) | (diff[:, 1] != 0)
            c0 = int(len(diff) - nz.sum())
            vx = diff[nz, 0]
            vy = diff[nz, 1]
            if len(vx) == 0:
                return c0, [], []
            out = _groups_numpy(vx, vy)
            if out is not None:
                groups, mult = out
                return c0, groups, mult
    c0, vecs = _query_vectors(ds, xt)
    groups, mult = _groups_python(vecs)
    return c0, groups, mult


def _verify_witness(ds: DataSet, xt: Vec, witness: Vec, count: int) -> None:
    u = _direction_ints(witness)
    scale, rows = ds.scaled_ints()
    den = 1
    for c in xt:
        den = _lcm(den, c.denominator)
    big = _lcm(scale, den)
    f = big // scale
    thr = sum(uc * int(c * big) for uc, c in zip(u, xt))
    got = sum(1 for r in rows if sum(uc * rc * f for uc, rc in zip(u, r)) <= thr)
    if got != count:
        raise AssertionError(
            f"witness recount mismatch: sweep={count}, witness gives {got}"
        )


def depth_count(x: Sequence[object], ds: DataSet) -> int:
    """Minimum closed-halfspace count without witness construction (fast path)."""
    xt = tuple(as_fraction(c) for c in x)
    d = ds.dim
    if d == 1:
        c0, vecs = _query_vectors(ds, xt)
        neg = sum(1 for (v,) in vecs if v < 0)
        return c0 + min(neg, len(vecs) - neg)
    if d == 2:
        c0, groups, mult = _planar_groups(ds, xt)
        count, _ = _depth2_counts(c0, groups, mult)
        return count
    c0, vecs = _query_vectors(ds, xt)
    count, _ = _depth3_int(c0, vecs)
    return count


def witness_cut(x: Sequence[object], ds: DataSet) -> tuple[int, Vec]:
    """Minimum count together with an exact witness direction (d = 2 or 3).

    Cheaper companion of :func:`tukey_depth` used by the region search: no
    canonicalization, no recount.
    """
    xt = tuple(as_fraction(c) for c in x)
    if ds.dim == 2:
        c0, groups, mult = _planar_groups(ds, xt)
        count, anchors = _depth2_counts(c0, groups, mult)
        if not groups:
            return count, (Fraction(1), Fraction(0))
        u = _cell_witness_2d(groups[anchors[0]], groups)
        return count, (Fraction(u[0]), Fraction(u[1]))
    c0, vecs = _query_vectors(ds, xt)
    count, u = _depth3_int(c0, vecs)
    return count, tuple(Fraction(c) for c in u)


def optimal_direction_cone(x: Sequence[object], ds: DataSet) -> list[Vec]:
    """One exact witness per maximal cone of depth-minimizing directions."""
    xt = tuple(as_fraction(c) for c in x)
    d = ds.dim
    if d == 1:
        c0, vecs = _query_vectors(ds, xt)
        neg = sum(1 for (v,) in vecs if v < 0)
        pos = len(vecs) - neg
        out = []
        if neg <= pos:
            out.append((Fraction(1),))
        if pos <= neg:
            out.append((Fraction(-1),))
        return out
    if d == 2:
        c0, groups, mult = _planar_groups(ds, xt)
        if not groups:
            return [(Fraction(1), Fraction(0))]
        _, anchors = _depth2_counts(c0, groups, mult)
        cones = []
        seen = set()
        for j in anchors:
            u = _cell_witness_2d(groups[j], groups)
            cu = canonical_direction((Fraction(u[0]), Fraction(u[1])))
            if cu not in seen:
                seen.add(cu)
                cones.append(cu)
        return cones
    # d = 3: a single representative from the best cell of the edge sweep
    res = tukey_depth(xt, ds)
    return [res.witness]


# ---------------------------------------------------------------------------
# directional quantiles


def quantile_index(n: int, tau: Fraction) -> int:
    """1-based order-statistic index ceil(n * tau)."""
    k = -((-(tau.numerator * n)) // tau.denominator)
    return int(k)


def directional_quantile(ds: DataSet, u: Sequence[object], tau: object) -> Fraction:
    """The ceil(n*tau)-th smallest projection of the sample onto ``u``."""
    tau = as_fraction(tau)
    if not (0 < tau <= 1):
        raise ValueError("tau must lie in (0, 1]")
    ut = tuple(as_fraction(c) for c in u)
    if all(c == 0 for c in ut):
        raise ValueError("direction must be nonzero")
    k = quantile_index(ds.n, tau)
    uden = 1
    for c in ut:
        uden = _lcm(uden, c.denominator)
    ui = tuple(int(c * uden) for c in ut)
    scale, rows = ds.scaled_ints()
    projs = [sum(uc * rc for uc, rc in zip(ui, r)) for r in rows]
    projs.sort()
    return Fraction(projs[k - 1], uden * scale)


# ---------------------------------------------------------------------------
# 1-D order-statistic utilities (shared with the breakdown analysis)


def max_depth_1d(values: Sequence[Fraction]) -> tuple[Fraction, int]:
    """Largest 1-D depth over all points, as (value, count)."""
    vals = sorted(values)
    n = len(vals)
    best = 0
    i = 0
    while i < n:
        j = i
        while j < n and vals[j] == vals[i]:
            j += 1
        le = j
        ge = n - i
        best = max(best, min(le, ge))
        i = j
    return Fraction(best, n), best


def median_interval_1d(values: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """(left end, right end, max depth) of the 1-D maximal-depth region."""
    vals = sorted(values)
    n = len(vals)
    _, best = max_depth_1d(vals)
    lo = None
    hi = None
    i = 0
    while i < n:
        j = i
        while j < n and vals[j] == vals[i]:
            j += 1
        if min(j, n - i) == best:
            if lo is None:
                lo = vals[i]
            hi = vals[i]
        i = j
    assert lo is not None and hi is not None
    return lo, hi, Fraction(best, n)


# ---------------------------------------------------------------------------
# approximate paths (d > 3, and Monte Carlo population estimates)


def direction_net(d: int, count: int, seed: int = 0, rng=None) -> np.ndarray:
    """Deterministic direction net including the coordinate axes."""
    axes = np.concatenate([np.eye(d), -np.eye(d)])
    if d == 1:
        return axes
    if d == 2:
        angles = np.linspace(0.0, np.pi, count, endpoint=False)
        net = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        return np.concatenate([net, -net, axes])
    if rng is None:
        rng = np.random.Generator(np.random.Philox(key=seed))
    raw = rng.standard_normal((count, d))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return np.concatenate([raw / norms, axes])


def approximate_depth(
    x: Sequence[object], ds: DataSet, n_directions: int = 512, seed: int = 0
) -> DepthResult:
    """Net-based upper estimate of the depth (any dimension, labeled inexact).

    Counts per direction are exact; only the minimum over directions is
    restricted to the net, so the result can overestimate the true depth.
    """
    xt = tuple(as_fraction(c) for c in x)
    d = ds.dim
    n = ds.n
    rng = np.random.Generator(np.random.Philox(key=seed))
    net = direction_net(d, n_directions, rng=rng)
    # data-driven candidates: differences of sample points
    pts = np.array([[float(c) for c in p] for p in ds.points])
    xf = np.array([float(c) for c in xt])
    diffs = pts - xf
    keep = np.abs(diffs).max(axis=1) > 0
    if keep.any():
        net = np.concatenate([net, diffs[keep][: 4 * n]])
    best_count = None
    best_u = None
    for u in net:
        uf = tuple(as_fraction(snapped) for snapped in np.round(u * (1 << 24)).astype(np.int64).tolist())
        if all(c == 0 for c in uf):
            continue
        cnt = _count_le(ds, xt, uf)
        if best_count is None or cnt < best_count:
            best_count, best_u = cnt, uf
    assert best_count is not None and best_u is not None
    boundary = _count_boundary(ds, xt, best_u)
    return DepthResult(
        Fraction(best_count, n), best_count, n, canonical_direction(best_u), boundary, exact=False
    )


def _count_le(ds: DataSet, xt: Vec, u: Vec) -> int:
    ui = _direction_ints(u)
    scale, rows = ds.scaled_ints()
    den = 1
    for c in xt:
        den = _lcm(den, c.denominator)
    big = _lcm(scale, den)
    f = big // scale
    thr = sum(uc * int(c * big) for uc, c in zip(ui, xt))
    return sum(1 for r in rows if sum(uc * rc * f for uc, rc in zip(ui, r)) <= thr)


def _count_boundary(ds: DataSet, xt: Vec, u: Vec) -> int:
    ui = _direction_ints(u)
    scale, rows = ds.scaled_ints()
    den = 1
    for c in xt:
        den = _lcm(den, c.denominator)
    big = _lcm(scale, den)
    f = big // scale
    thr = sum(uc * int(c * big) for uc, c in zip(ui, xt))
    return sum(1 for r in rows if sum(uc * rc * f for uc, rc in zip(ui, r)) == thr)


def population_depth_estimate(
    dist_spec,
    x: Sequence[float],
    n_samples: int,
    seed: int = 0,
    n_directions: int = 64,
) -> tuple[float, float]:
    """Monte Carlo depth estimate under a sampling law, with a 95% half-width.

    Returns ``(estimate, 1.96 * sqrt(p(1-p)/N))`` where the estimate is the
    minimum over a direction net of the closed-halfspace probability.
    """
    from .distributions import sample_floats

    samples = sample_floats(dist_spec, n_samples, seed)
    xf = np.asarray([float(c) for c in x], dtype=float)
    net = direction_net(samples.shape[1], n_directions, seed=seed + 1)
    best = 1.0
    for u in net:
        p = float(np.mean(samples @ u <= xf @ u))
        if p < best:
            best = p
    half = 1.96 * math.sqrt(max(best * (1.0 - best), 1e-12) / n_samples)
    return best, half
