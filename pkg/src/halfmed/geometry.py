"""Exact rational geometry primitives.

Everything downstream (depth, regions, breakdown analysis) reduces to sign
tests of inner products, so all geometric state is kept in exact rational
arithmetic (`fractions.Fraction`).  Points and directions are plain tuples of
Fractions; halfspaces are closed sets ``{x : normal . x >= offset}``.

Datasets may be degenerate on purpose: duplicated points, collinear triples,
or clouds whose affine hull is a proper subspace.  Nothing in this module
assumes general position.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vec = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+/\d+$")


def as_fraction(value: object) -> Fraction:
    """Convert ints, rational strings ('3/4'), decimal strings and Fractions.

    Floats are converted via their exact binary expansion; use :func:`snap`
    when a controlled precision is wanted instead.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        token = value.strip()
        try:
            if _RATIONAL_RE.match(token):
                num, den = token.split("/")
                return Fraction(int(num), int(den))
            # Decimal handles plain and scientific notation exactly.
            return Fraction(Decimal(token))
        except (ZeroDivisionError, ArithmeticError) as exc:
            raise ValueError(f"not a valid rational token: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def snap(value: float, bits: int = 53) -> Fraction:
    """Round a float to ``bits`` fractional binary digits, exactly."""
    scale = 1 << bits
    return Fraction(round(value * scale), scale)


def point(*coords: object) -> Vec:
    """Exact point from varargs or a single iterable: point(1, 2) == point((1, 2))."""
    if len(coords) == 1 and not isinstance(coords[0], (int, float, str, Fraction, Decimal)):
        coords = tuple(coords[0])
    return tuple(as_fraction(c) for c in coords)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# small vector helpers


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vscale(s: Fraction, a: Sequence[Fraction]) -> Vec:
    return tuple(s * x for x in a)


def is_zero_vec(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def perp2(u: Sequence[Fraction]) -> Vec:
    """Counter-clockwise quarter turn of a planar vector."""
    return (-u[1], u[0])


def cross2(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def cross3(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def canonical_direction(u: Sequence[Fraction]) -> Vec:
    """Scale a nonzero direction by the reciprocal of |first nonzero entry|.

    Two directions are equivalent iff one is a positive multiple of the other;
    the canonical form makes that an equality test (and a dict key).
    """
    for c in u:
        if c != 0:
            s = abs(c)
            return tuple(x / s for x in u)
    raise ValueError("zero vector has no direction")


def angular_cmp(a: Sequence, b: Sequence) -> int:
    """Exact comparison of two nonzero planar vectors by angle in [0, 2pi).

    Works for integer and Fraction coordinates alike; only signs of products
    are inspected.
    """
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return -1 if ha < hb else 1
    c = a[0] * b[1] - a[1] * b[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank of a rational matrix."""
    return _rank([list(r) for r in rows])


# ---------------------------------------------------------------------------
# halfspaces


class Side(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace ``{x : normal . x >= offset}`` with rational data."""

    normal: Vec
    offset: Fraction

    def __post_init__(self) -> None:
        if is_zero_vec(self.normal):
            raise ValueError("halfspace normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def contains(self, x: Sequence[Fraction]) -> bool:
        return dot(self.normal, x) >= self.offset

    def canonical(self) -> "Halfspace":
        """Equivalent halfspace with the normal in canonical direction form."""
        normal, offset = self.canonical_key()
        return Halfspace(normal, offset)

    def canonical_key(self) -> tuple[Vec, Fraction]:
        for c in self.normal:
            if c != 0:
                s = abs(c)
                return tuple(v / s for v in self.normal), self.offset / s
        raise ValueError("zero normal")


def halfspace(normal: Iterable[object], offset: object) -> Halfspace:
    return Halfspace(tuple(as_fraction(c) for c in normal), as_fraction(offset))


def side_of(h: Halfspace, x: Sequence[Fraction]) -> Side:
    """Exact side classification of a point against a halfspace boundary."""
    s = dot(h.normal, x)
    if s > h.offset:
        return Side.INTERIOR
    if s == h.offset:
        return Side.BOUNDARY
    return Side.EXTERIOR


# ---------------------------------------------------------------------------
# datasets


@dataclass(frozen=True)
class DataSet:
    """Finite multiset of rational points; duplicates carry multiplicity."""

    points: tuple[Vec, ...]
    metadata: dict = field(default_factory=dict, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, init=False)

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("dataset must contain at least one point")
        d = len(self.points[0])
        if d == 0 or any(len(p) != d for p in self.points):
            raise ValueError("all points must share one positive dimension")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def scaled_ints(self) -> tuple[int, list[tuple[int, ...]]]:
        """Common-denominator integer coordinates ``x = k / scale``.

        Cached; used by the counting kernels so the per-query work is pure
        integer arithmetic.
        """
        cached = self._cache.get("ints")
        if cached is None:
            scale = 1
            for p in self.points:
                for c in p:
                    scale = scale * c.denominator // math.gcd(scale, c.denominator)
            rows = [tuple(int(c * scale) for c in p) for p in self.points]
            cached = (scale, rows)
            self._cache["ints"] = cached
        return cached


def dataset(
    points: Iterable[Iterable[object]],
    metadata: dict | None = None,
    **extra: object,
) -> DataSet:
    pts = tuple(tuple(as_fraction(c) for c in p) for p in points)
    meta = dict(metadata) if metadata else {}
    meta.update(extra)
    return DataSet(pts, meta)


def dataset_from_floats(
    rows, bits: int = 53, metadata: dict | None = None, **extra: object
) -> DataSet:
    pts = tuple(tuple(snap(float(c), bits) for c in row) for row in rows)
    meta = {"precision_bits": bits}
    if metadata:
        meta.update(metadata)
    meta.update(extra)
    return DataSet(pts, meta)


# ---------------------------------------------------------------------------
# affine dimension (exact rank of the difference matrix)


def affine_dimension(ds: DataSet | Sequence[Sequence[Fraction]]) -> int:
    pts = ds.points if isinstance(ds, DataSet) else [tuple(p) for p in ds]
    if not pts:
        raise ValueError("affine dimension of an empty set is undefined")
    base = pts[0]
    rows = [list(vsub(p, base)) for p in pts[1:]]
    return _rank(rows)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows if any(c != 0 for c in r)]
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    col = 0
    while col < cols and rank < len(rows):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# convex hull membership via exact linear feasibility


def convex_hull_contains(ds: DataSet, x: Sequence[Fraction]) -> bool:
    """Exact test for ``x`` in the convex hull of the dataset.

    Solves the convex-combination feasibility problem (sum of weights 1,
    weights nonnegative, weighted points equal to x) with a phase-one simplex
    under Bland's rule, so degenerate inputs terminate and no floats appear.
    """
    x = tuple(as_fraction(c) for c in x)
    if len(x) != ds.dim:
        raise ValueError("point dimension does not match dataset")
    rows = [[p[j] for p in ds.points] for j in range(ds.dim)]
    rhs = [x[j] for j in range(ds.dim)]
    rows.append([Fraction(1)] * ds.n)
    rhs.append(Fraction(1))
    return _phase_one_feasible(rows, rhs)


def _phase_one_feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    m = len(rows)
    n = len(rows[0])
    tableau: list[list[Fraction]] = []
    for i in range(m):
        row = rows[i][:]
        b = rhs[i]
        if b < 0:
            row = [-a for a in row]
            b = -b
        row.extend(Fraction(1) if j == i else Fraction(0) for j in range(m))
        row.append(b)
        tableau.append(row)
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            obj[j] += tableau[i][j]
    for j in range(n, n + m):
        obj[j] -= 1

    total = n + m
    while True:
        enter = next((j for j in range(total) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-one simplex unbounded: inconsistent tableau")
        piv = tableau[leave][enter]
        tableau[leave] = [a / piv for a in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [a - f * b for a, b in zip(tableau[i], tableau[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, tableau[leave])]
        basis[leave] = enter
    return obj[-1] == 0


# ---------------------------------------------------------------------------
# convex hulls (exact, degenerate-safe) and their halfspace representations


def convex_hull_2d(points: Sequence[Vec]) -> list[Vec]:
    """Extreme points of a planar point multiset, counter-clockwise.

    Degenerate inputs are fine: collinear sets yield the two endpoints and a
    single repeated point yields one vertex.
    """
    uniq = sorted(set(points))
    if len(uniq) <= 1:
        return list(uniq)

    def chain(pts: list[Vec]) -> list[Vec]:
        out: list[Vec] = []
        for p in pts:
            while len(out) >= 2 and cross2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(uniq)
    upper = chain(list(reversed(uniq)))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points collinear collapse the chains
        return [uniq[0], uniq[-1]]
    return hull


def hull_halfspaces(ds: DataSet) -> list[Halfspace]:
    """Closed halfspaces whose intersection is the convex hull (d <= 3)."""
    d = ds.dim
    pts = ds.points
    if d == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        return [
            Halfspace((Fraction(1),), lo),
            Halfspace((Fraction(-1),), -hi),
        ]
    if d == 2:
        return _hull_halfspaces_2d(pts)
    if d == 3:
        return _hull_halfspaces_3d(ds)
    raise ValueError(f"hull halfspaces unsupported for dimension {d}")


def _box_halfspaces(pts: Sequence[Vec], dims: Sequence[int]) -> list[Halfspace]:
    d = len(pts[0])
    out = []
    for j in dims:
        lo = min(p[j] for p in pts)
        hi = max(p[j] for p in pts)
        e = tuple(Fraction(1 if k == j else 0) for k in range(d))
        ne = tuple(-c for c in e)
        out.append(Halfspace(e, lo))
        out.append(Halfspace(ne, -hi))
    return out


def _hull_halfspaces_2d(pts: Sequence[Vec]) -> list[Halfspace]:
    hull = convex_hull_2d(pts)
    if len(hull) == 1:
        return _box_halfspaces(hull, (0, 1))
    if len(hull) == 2:
        a, b = hull
        t = vsub(b, a)
        n = perp2(t)
        return [
            Halfspace(n, dot(n, a)),
            Halfspace(tuple(-c for c in n), -dot(n, a)),
            Halfspace(t, dot(t, a)),
            Halfspace(tuple(-c for c in t), -dot(t, b)),
        ]
    out = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        n = perp2(vsub(b, a))  # inward for a CCW boundary
        out.append(Halfspace(n, dot(n, a)))
    return out


def _hull_halfspaces_3d(ds: DataSet) -> list[Halfspace]:
    pts = ds.points
    adim = affine_dimension(ds)
    if adim == 0:
        return _box_halfspaces(pts, (0, 1, 2))
    if adim == 1:
        uniq = sorted(set(pts))
        a, b = uniq[0], uniq[-1]
        t = vsub(b, a)
        # two independent normals pin the carrier line, two ends cap it
        k = min(range(3), key=lambda j: abs(t[j]))
        e = tuple(Fraction(1 if j == k else 0) for j in range(3))
        n1 = cross3(t, e)
        n2 = cross3(t, n1)
        out = []
        for nvec in (n1, n2):
            c = dot(nvec, a)
            out.append(Halfspace(nvec, c))
            out.append(Halfspace(tuple(-x for x in nvec), -c))
        out.append(Halfspace(t, dot(t, a)))
        out.append(Halfspace(tuple(-x for x in t), -dot(t, b)))
        return out
    if adim == 2:
        base = pts[0]
        other = next(p for p in pts if p != base)
        b1 = vsub(other, base)
        b2 = None
        for p in pts:
            v = vsub(p, base)
            c = cross3(b1, v)
            if not is_zero_vec(c):
                b2 = v
                nrm = c
                break
        assert b2 is not None and nrm is not None
        coords2 = [(dot(b1, vsub(p, base)), dot(b2, vsub(p, base))) for p in pts]
        out = [
            Halfspace(nrm, dot(nrm, base)),
            Halfspace(tuple(-x for x in nrm), -dot(nrm, base)),
        ]
        for h2 in _hull_halfspaces_2d(coords2):
            m1, m2 = h2.normal
            n3 = tuple(m1 * x + m2 * y for x, y in zip(b1, b2))
            off = min(dot(n3, p) for p in pts)
            out.append(Halfspace(n3, off))
        return out

    scale, rows = ds.scaled_ints()
    uniq = sorted(set(rows))
    facets: dict[tuple, Halfspace] = {}
    m = len(uniq)
    for i in range(m):
        for j in range(i + 1, m):
            eij = tuple(b - a for a, b in zip(uniq[i], uniq[j]))
            for k in range(j + 1, m):
                nx = eij[1] * (uniq[k][2] - uniq[i][2]) - eij[2] * (uniq[k][1] - uniq[i][1])
                ny = eij[2] * (uniq[k][0] - uniq[i][0]) - eij[0] * (uniq[k][2] - uniq[i][2])
                nz = eij[0] * (uniq[k][1] - uniq[i][1]) - eij[1] * (uniq[k][0] - uniq[i][0])
                if nx == 0 and ny == 0 and nz == 0:
                    continue
                c = nx * uniq[i][0] + ny * uniq[i][1] + nz * uniq[i][2]
                lo = hi = False
                for q in uniq:
                    s = nx * q[0] + ny * q[1] + nz * q[2]
                    if s < c:
                        lo = True
                    elif s > c:
                        hi = True
                    if lo and hi:
                        break
                if lo and hi:
                    continue
                if lo:  # flip so every point satisfies n.x >= c
                    nx, ny, nz, c = -nx, -ny, -nz, -c
                g = math.gcd(math.gcd(abs(nx), abs(ny)), abs(nz))
                key = (nx // g, ny // g, nz // g)
                if key not in facets:
                    normal = tuple(Fraction(v) for v in key)
                    facets[key] = Halfspace(normal, Fraction(c, g * scale))
    return list(facets.values())


# ---------------------------------------------------------------------------
# dataset text format
#
# One point per line, coordinates whitespace-separated, each written either in
# decimal or as a rational literal p/q.  Lines starting with '#' are comments;
# header comments of the form '# key = value' populate the metadata.


def read_dataset(path: str) -> DataSet:
    points: list[Vec] = []
    metadata: dict = {}
    dim = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    metadata[key.strip()] = val.strip()
                continue
            try:
                coords = tuple(as_fraction(tok) for tok in line.split())
            except Exception as exc:
                raise ValueError(f"{path}:{lineno}: bad coordinate ({exc})") from exc
            if dim is None:
                dim = len(coords)
            elif len(coords) != dim:
                raise ValueError(f"{path}:{lineno}: expected {dim} coordinates, got {len(coords)}")
            points.append(coords)
    if not points:
        raise ValueError(f"{path}: no data points found")
    return DataSet(tuple(points), metadata)


def write_dataset(ds: DataSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, val in ds.metadata.items():
            fh.write(f"# {key} = {val}\n")
        for p in ds.points:
            fh.write(" ".join(format_rational(c) for c in p) + "\n")
