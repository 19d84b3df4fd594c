"""Exact intersection of closed halfspaces in dimensions 1 to 3.

The intersections arising from depth regions are frequently degenerate —
segments, single points, or empty sets — so the vertex enumeration never
assumes full dimensionality.  Vertices are found as solutions of d boundary
hyperplanes validated against every constraint, entirely in integer
arithmetic after clearing denominators; a point found this way and satisfying
all constraints is exactly an extreme point of the intersection.

Unbounded intersections are detected exactly (recession-cone test) and
reported with a flag instead of a vertex list.
"""

from __future__ import annotations

import csv
import functools
import math
import pathlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import (
    Halfspace,
    Vec,
    affine_dimension,
    angular_cmp,
    canonical_direction,
    convex_hull_2d,
    cross3,
    dot,
    format_rational,
    matrix_rank,
    vsub,
    _phase_one_feasible,
)


@dataclass(frozen=True)
class Polytope:
    """Result of intersecting closed halfspaces.

    ``vertices`` lists the extreme points (counter-clockwise in the plane)
    and is empty when the set is empty or unbounded; ``affine_dim`` is None
    only for unbounded sets whose dimension is not pinned by opposite
    boundary pairs.
    """

    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[Vec, ...]
    dim: int
    affine_dim: int | None
    empty: bool
    unbounded: bool

    def contains(self, x: Sequence[Fraction]) -> bool:
        if self.empty:
            return False
        return all(h.contains(x) for h in self.halfspaces)


def dedup_halfspaces(halfspaces: Sequence[Halfspace]) -> list[Halfspace]:
    """Drop exact duplicates and keep only the tightest offset per direction."""
    best: dict[Vec, tuple[Fraction, Halfspace]] = {}
    order: list[Vec] = []
    for h in halfspaces:
        key, off = h.canonical_key()
        cur = best.get(key)
        if cur is None:
            best[key] = (off, h)
            order.append(key)
        elif off > cur[0]:  # larger offset is the more restrictive constraint
            best[key] = (off, h)
    return [best[k][1] for k in order]


def intersect_halfspaces(halfspaces: Sequence[Halfspace], dim: int | None = None) -> Polytope:
    """Exact intersection for ambient dimension 1, 2 or 3."""
    hs = list(halfspaces)
    if not hs:
        raise ValueError("at least one halfspace is required")
    d = dim if dim is not None else hs[0].dim
    if any(h.dim != d for h in hs):
        raise ValueError("halfspace dimensions disagree")
    if d not in (1, 2, 3):
        raise ValueError(f"exact intersection supports d in {{1,2,3}}, got {d}")
    hs = dedup_halfspaces(hs)
    if d == 1:
        return _intersect_1d(hs)
    if d == 2:
        return _intersect_2d(hs)
    return _intersect_3d(hs)


# ---------------------------------------------------------------------------
# d = 1


def _intersect_1d(hs: list[Halfspace]) -> Polytope:
    lo = None
    hi = None
    for h in hs:
        a = h.normal[0]
        bound = h.offset / a
        if a > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    base = tuple(hs)
    if lo is None or hi is None:
        return Polytope(base, (), 1, 1, empty=False, unbounded=True)
    if lo > hi:
        return Polytope(base, (), 1, None, empty=True, unbounded=False)
    if lo == hi:
        return Polytope(base, ((lo,),), 1, 0, empty=False, unbounded=False)
    return Polytope(base, ((lo,), (hi,)), 1, 1, empty=False, unbounded=False)


# ---------------------------------------------------------------------------
# shared helpers


def _int_halfspaces(hs: list[Halfspace]) -> list[tuple[tuple[int, ...], int]]:
    out = []
    for h in hs:
        scale = 1
        for c in (*h.normal, h.offset):
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        normal = tuple(int(c * scale) for c in h.normal)
        out.append((normal, int(h.offset * scale)))
    return out


def _equality_dim(hs: list[Halfspace], d: int) -> int | None:
    """Ambient dimension minus the rank of opposite boundary pairs.

    For unbounded sets this pins the affine dimension whenever flatness is
    forced by explicit opposite halfspaces (the only case producing flat
    unbounded sets in this codebase); otherwise the full dimension d.
    """
    canon = {h.canonical_key() for h in hs}
    eq_normals = []
    for key, off in canon:
        neg = (tuple(-c for c in key), -off)
        if neg in canon:
            eq_normals.append(key)
    if not eq_normals:
        return d
    return d - matrix_rank(eq_normals)


def _feasible(hs: list[Halfspace], d: int) -> bool:
    """LP feasibility of the intersection (used only for unbounded sets)."""
    m = len(hs)
    rows = []
    rhs = []
    for i, h in enumerate(hs):
        row = list(h.normal) + [-c for c in h.normal]
        row.extend(Fraction(-1) if j == i else Fraction(0) for j in range(m))
        rows.append(row)
        rhs.append(h.offset)
    return _phase_one_feasible(rows, rhs)


# ---------------------------------------------------------------------------
# d = 2


def _unbounded_direction_2d(hs: list[Halfspace]) -> bool:
    normals = [h.normal for h in hs]
    distinct = {canonical_direction(n) for n in normals}
    if len(distinct) == 1:
        return True
    reps = [tuple(c for c in v) for v in distinct]
    reps.sort(key=functools.cmp_to_key(angular_cmp))
    for a, b in zip(reps, reps[1:] + reps[:1]):
        c = a[0] * b[1] - a[1] * b[0]
        if c < 0 or (c == 0 and a[0] * b[0] + a[1] * b[1] < 0):
            return True
    return False


def _intersect_2d(hs: list[Halfspace]) -> Polytope:
    base = tuple(hs)
    if _unbounded_direction_2d(hs):
        if _feasible(hs, 2):
            return Polytope(base, (), 2, _equality_dim(hs, 2), empty=False, unbounded=True)
        return Polytope(base, (), 2, None, empty=True, unbounded=False)

    ints = _int_halfspaces(hs)
    m = len(ints)
    found: set[Vec] = set()
    for i in range(m):
        (a0, a1), ca = ints[i]
        for j in range(i + 1, m):
            (b0, b1), cb = ints[j]
            det = a0 * b1 - a1 * b0
            if det == 0:
                continue
            x_num = ca * b1 - cb * a1
            y_num = a0 * cb - b0 * ca
            ok = True
            for (n0, n1), c in ints:
                lhs = n0 * x_num + n1 * y_num
                rhs = c * det
                if (lhs < rhs) if det > 0 else (lhs > rhs):
                    ok = False
                    break
            if ok:
                found.add((Fraction(x_num, det), Fraction(y_num, det)))
    if not found:
        return Polytope(base, (), 2, None, empty=True, unbounded=False)
    verts = convex_hull_2d(sorted(found))
    adim = affine_dimension(verts)
    return Polytope(base, tuple(verts), 2, adim, empty=False, unbounded=False)


# ---------------------------------------------------------------------------
# d = 3


def _unbounded_direction_3d(hs: list[Halfspace]) -> bool:
    ints = _int_halfspaces(hs)
    normals = [n for n, _ in ints]
    if matrix_rank([[Fraction(c) for c in n] for n in normals]) <= 2:
        return True
    m = len(normals)
    for i in range(m):
        for j in range(i + 1, m):
            w = cross3(normals[i], normals[j])
            if w == (0, 0, 0):
                continue
            for cand in (w, tuple(-c for c in w)):
                if all(sum(nc * wc for nc, wc in zip(n, cand)) >= 0 for n in normals):
                    return True
    return False


def _intersect_3d(hs: list[Halfspace]) -> Polytope:
    base = tuple(hs)
    if _unbounded_direction_3d(hs):
        if _feasible(hs, 3):
            return Polytope(base, (), 3, _equality_dim(hs, 3), empty=False, unbounded=True)
        return Polytope(base, (), 3, None, empty=True, unbounded=False)

    ints = _int_halfspaces(hs)
    m = len(ints)
    found: set[Vec] = set()
    for i in range(m):
        ni, ci = ints[i]
        for j in range(i + 1, m):
            nj, cj = ints[j]
            for k in range(j + 1, m):
                nk, ck = ints[k]
                det = (
                    ni[0] * (nj[1] * nk[2] - nj[2] * nk[1])
                    - ni[1] * (nj[0] * nk[2] - nj[2] * nk[0])
                    + ni[2] * (nj[0] * nk[1] - nj[1] * nk[0])
                )
                if det == 0:
                    continue
                # Cramer numerators for the solution of the three boundary planes.
                xs = []
                cols = (ci, cj, ck)
                rows = (ni, nj, nk)
                for axis in range(3):
                    mat = [
                        [cols[r] if c == axis else rows[r][c] for c in range(3)]
                        for r in range(3)
                    ]
                    xs.append(
                        mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1])
                        - mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0])
                        + mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0])
                    )
                ok = True
                for n, c in ints:
                    lhs = n[0] * xs[0] + n[1] * xs[1] + n[2] * xs[2]
                    rhs = c * det
                    if (lhs < rhs) if det > 0 else (lhs > rhs):
                        ok = False
                        break
                if ok:
                    found.add(tuple(Fraction(x, det) for x in xs))
    if not found:
        return Polytope(base, (), 3, None, empty=True, unbounded=False)
    verts = sorted(found)
    adim = affine_dimension(verts)
    if adim == 2:
        verts = _order_planar_cycle(verts)
    return Polytope(base, tuple(verts), 3, adim, empty=False, unbounded=False)


def _order_planar_cycle(verts: list[Vec]) -> list[Vec]:
    """Order coplanar extreme points into a convex cycle (exact)."""
    base = verts[0]
    b1 = None
    normal = None
    for v in verts[1:]:
        e = vsub(v, base)
        if b1 is None:
            if any(c != 0 for c in e):
                b1 = e
            continue
        c = cross3(b1, e)
        if any(x != 0 for x in c):
            normal = c
            break
    if b1 is None or normal is None:
        return verts
    b2 = cross3(normal, b1)
    coords = {v: (dot(b1, vsub(v, base)), dot(b2, vsub(v, base))) for v in verts}
    hull2 = convex_hull_2d(list(coords.values()))
    back = {coords[v]: v for v in verts}
    return [back[c] for c in hull2]


# ---------------------------------------------------------------------------
# incremental polygon clipping (used by the region search in 2-D)


def clip_polygon(vertices: Sequence[Vec], h: Halfspace) -> list[Vec]:
    """Clip a convex (possibly degenerate) vertex cycle by a halfspace.

    The input is a convex polygon given as a cyclic vertex list, a segment
    (two vertices), a point, or empty; the exact clip returns the same kind
    of normalized representation.
    """
    pts = list(vertices)
    if not pts:
        return []
    if len(pts) == 1:
        return pts if h.contains(pts[0]) else []
    if len(pts) == 2:
        kept = _clip_segment(pts[0], pts[1], h)
        return kept
    out: list[Vec] = []
    n = len(pts)
    side = [dot(h.normal, p) - h.offset for p in pts]
    for i in range(n):
        a, sa = pts[i], side[i]
        b, sb = pts[(i + 1) % n], side[(i + 1) % n]
        if sa >= 0:
            out.append(a)
        if (sa > 0 > sb) or (sb > 0 > sa):
            t = sa / (sa - sb)
            out.append(tuple(pa + t * (pb - pa) for pa, pb in zip(a, b)))
    return _normalize_cycle(out)


def _clip_segment(a: Vec, b: Vec, h: Halfspace) -> list[Vec]:
    sa = dot(h.normal, a) - h.offset
    sb = dot(h.normal, b) - h.offset
    if sa >= 0 and sb >= 0:
        return [a, b]
    if sa < 0 and sb < 0:
        return []
    t = sa / (sa - sb)
    cut = tuple(pa + t * (pb - pa) for pa, pb in zip(a, b))
    keep = a if sa >= 0 else b
    if cut == keep:
        return [cut]
    return [keep, cut] if sa >= 0 else [cut, keep]


def _normalize_cycle(pts: list[Vec]) -> list[Vec]:
    uniq: list[Vec] = []
    for p in pts:
        if not uniq or p != uniq[-1]:
            uniq.append(p)
    if len(uniq) > 1 and uniq[0] == uniq[-1]:
        uniq.pop()
    if len(uniq) <= 1:
        return uniq
    if len(uniq) == 2:
        return uniq
    hull = convex_hull_2d(uniq)
    return hull


# ---------------------------------------------------------------------------
# barycenters


def barycenter(poly: Polytope) -> Vec:
    """Centroid of the uniform measure on the polytope.

    Vertex average for 0- and 1-dimensional sets, exact area or volume
    weighting for full-dimensional ones.
    """
    if poly.empty:
        raise ValueError("empty polytope has no barycenter")
    if poly.unbounded:
        raise ValueError("unbounded set has no barycenter")
    return _centroid_of_vertices(list(poly.vertices), poly.affine_dim, poly.halfspaces)


def vertex_centroid(poly: Polytope) -> Vec:
    if poly.empty or poly.unbounded:
        raise ValueError("vertex centroid requires a bounded nonempty polytope")
    n = len(poly.vertices)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*poly.vertices))


def _centroid_of_vertices(verts: list[Vec], adim: int | None, halfspaces) -> Vec:
    n = len(verts)
    if adim in (0, 1) or n <= 2:
        return tuple(sum(col, Fraction(0)) / n for col in zip(*verts))
    d = len(verts[0])
    if d == 2:
        return _polygon_centroid(verts)
    if adim == 2:
        # planar polygon embedded in 3-space: compute in plane coordinates
        base = verts[0]
        b1 = vsub(verts[1], base)
        normal = None
        for v in verts[2:]:
            c = cross3(b1, vsub(v, base))
            if any(x != 0 for x in c):
                normal = c
                break
        assert normal is not None
        b2 = cross3(normal, b1)
        g11, g12, g22 = dot(b1, b1), dot(b1, b2), dot(b2, b2)
        coords = [(dot(b1, vsub(v, base)), dot(b2, vsub(v, base))) for v in verts]
        # plane coordinates are affine, so the area centroid maps back affinely
        cx, cy = _polygon_centroid(convex_hull_2d(coords))
        det = g11 * g22 - g12 * g12
        alpha = (cx * g22 - cy * g12) / det
        beta = (g11 * cy - g12 * cx) / det
        return tuple(bc + alpha * x + beta * y for bc, x, y in zip(base, b1, b2))
    return _polyhedron_centroid(verts, halfspaces)


def _polygon_centroid(verts: Sequence[Vec]) -> Vec:
    a2 = Fraction(0)  # twice the signed area
    cx = Fraction(0)
    cy = Fraction(0)
    for (x0, y0), (x1, y1) in zip(verts, list(verts[1:]) + [verts[0]]):
        w = x0 * y1 - x1 * y0
        a2 += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    if a2 == 0:  # safety net, callers pass genuinely 2-dimensional polygons
        n = len(verts)
        return (sum(v[0] for v in verts) / n, sum(v[1] for v in verts) / n)
    return (cx / (3 * a2), cy / (3 * a2))


def _polyhedron_centroid(verts: list[Vec], halfspaces) -> Vec:
    vset = set(verts)
    g = tuple(sum(col, Fraction(0)) / len(verts) for col in zip(*verts))
    total = Fraction(0)
    acc = [Fraction(0)] * 3
    for h in halfspaces:
        face = [v for v in vset if dot(h.normal, v) == h.offset]
        if len(face) < 3:
            continue
        cycle = _order_planar_cycle(sorted(face))
        if len(cycle) < 3:
            continue
        # orient the cycle so the face normal points away from g
        fc = tuple(sum(col, Fraction(0)) / len(cycle) for col in zip(*cycle))
        nrm = cross3(vsub(cycle[1], cycle[0]), vsub(cycle[2], cycle[0]))
        if dot(nrm, vsub(fc, g)) < 0:
            cycle = list(reversed(cycle))
        a = cycle[0]
        for b, c in zip(cycle[1:], cycle[2:]):
            ea, eb, ec = vsub(a, g), vsub(b, g), vsub(c, g)
            vol6 = dot(ea, cross3(eb, ec))
            total += vol6
            for i in range(3):
                acc[i] += vol6 * (g[i] + a[i] + b[i] + c[i])
    if total == 0:
        return g
    return tuple(a / (4 * total) for a in acc)


# ---------------------------------------------------------------------------
# plain-text and CSV export


def write_region_files(poly: Polytope, out_dir, stem: str = "region") -> list[pathlib.Path]:
    """Write vertex and halfspace listings plus an RFC-4180 vertex CSV."""
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: list[pathlib.Path] = []

    vt = out / f"{stem}_vertices.txt"
    with open(vt, "w", encoding="utf-8") as fh:
        if poly.empty:
            fh.write("# empty region\n")
        elif poly.unbounded:
            fh.write("# unbounded region (no vertex enumeration)\n")
        for v in poly.vertices:
            fh.write(" ".join(format_rational(c) for c in v) + "\n")
    paths.append(vt)

    ht = out / f"{stem}_halfspaces.txt"
    with open(ht, "w", encoding="utf-8") as fh:
        for h in poly.halfspaces:
            lhs = " ".join(format_rational(c) for c in h.normal)
            fh.write(f"{lhs} >= {format_rational(h.offset)}\n")
    paths.append(ht)

    vc = out / f"{stem}_vertices.csv"
    with open(vc, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{i+1}" for i in range(poly.dim)])
        for v in poly.vertices:
            writer.writerow([format_rational(c) for c in v])
    paths.append(vc)
    return paths
