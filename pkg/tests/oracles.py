"""Independent brute-force oracles used to validate the fast implementations.

Everything here trades speed for obviousness: depth minima are taken over an
explicitly enumerated, provably sufficient set of candidate directions, with
plain Fraction/integer arithmetic and no shared code with the sweep kernels.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from halfmed.geometry import DataSet


def _diff_vectors(x, ds: DataSet):
    """Integer versions of Xi - x (common positive scale), plus zero count."""
    den = 1
    for p in ds.points:
        for c in p:
            den = den * c.denominator // math.gcd(den, c.denominator)
    for c in x:
        den = den * c.denominator // math.gcd(den, c.denominator)
    vecs = []
    zeros = 0
    for p in ds.points:
        v = tuple(int((pc - xc) * den) for pc, xc in zip(p, x))
        if any(c != 0 for c in v):
            vecs.append(v)
        else:
            zeros += 1
    return zeros, vecs


def _count_lex(seq, vecs) -> int:
    """Points whose lexicographic sign under the direction chain is <= 0.

    ``seq`` models the direction u = s1 + eps*s2 + eps^2*s3 for infinitesimal
    eps: the sign of u . v is the first nonzero of (s1.v, s2.v, ...).
    """
    cnt = 0
    for v in vecs:
        s = 0
        for u in seq:
            d = sum(uc * vc for uc, vc in zip(u, v))
            if d != 0:
                s = d
                break
        if s <= 0:
            cnt += 1
    return cnt


def oracle_depth_count(x, ds: DataSet) -> int:
    """Minimum number of sample points in a closed halfspace through x."""
    zeros, vecs = _diff_vectors(x, ds)
    n = ds.n
    if not vecs:
        return n
    d = ds.dim
    if d == 1:
        neg = sum(1 for (v,) in vecs if v < 0)
        return zeros + min(neg, len(vecs) - neg)
    if d == 2:
        return zeros + _oracle_min_2d(vecs)
    if d == 3:
        return zeros + _oracle_min_3d(vecs)
    raise ValueError("oracle supports d <= 3")


def oracle_depth_value(x, ds: DataSet) -> Fraction:
    return Fraction(oracle_depth_count(x, ds), ds.n)


def _oracle_min_2d(vecs) -> int:
    # candidate directions: every cell boundary ray (perpendiculars of the
    # difference vectors) plus a representative inside every open cell (sums
    # of ray pairs; perpendiculars of rays cover the two-ray case)
    rays = set()
    for a, b in vecs:
        g = math.gcd(abs(a), abs(b))
        rays.add((-b // g, a // g))
        rays.add((b // g, -a // g))
    rays = list(rays)
    cands = list(rays)
    for r in rays:
        cands.append((-r[1], r[0]))
    for r, s in itertools.combinations(rays, 2):
        t = (r[0] + s[0], r[1] + s[1])
        if t != (0, 0):
            cands.append(t)
    best = len(vecs)
    for u in cands:
        c = sum(1 for v in vecs if u[0] * v[0] + u[1] * v[1] <= 0)
        if c < best:
            best = c
    return best


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _oracle_min_3d(vecs) -> int:
    # Level-1 candidates: data vectors and pairwise cross products (every
    # cone cell of the hyperplane arrangement has such a vector in its
    # closure). Lexicographic chains (e, p, cross(e,p)) reach the open cells
    # adjacent to each candidate, so the minimum over chains is the true
    # minimum over directions.
    singles = set()
    for v in vecs:
        g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
        w = (v[0] // g, v[1] // g, v[2] // g)
        singles.add(w)
        singles.add((-w[0], -w[1], -w[2]))
    for a, b in itertools.combinations(list(singles), 2):
        e = _cross(a, b)
        if e != (0, 0, 0):
            g = math.gcd(math.gcd(abs(e[0]), abs(e[1])), abs(e[2]))
            e = (e[0] // g, e[1] // g, e[2] // g)
            singles.add(e)
            singles.add((-e[0], -e[1], -e[2]))
    best = len(vecs)
    for e in singles:
        best = min(best, _count_lex((e,), vecs))
        for v in vecs:
            p = _cross(e, v)
            if p == (0, 0, 0):
                continue
            for pp in (p, (-p[0], -p[1], -p[2])):
                q = _cross(e, pp)
                best = min(best, _count_lex((e, pp, q), vecs))
                best = min(
                    best, _count_lex((e, pp, (-q[0], -q[1], -q[2])), vecs)
                )
    return best


# ---------------------------------------------------------------------------
# randomized rational datasets for property tests


def random_dataset(
    rng: random.Random,
    dim: int,
    max_n: int = 12,
    dup_prob: float = 0.3,
    collinear_prob: float = 0.2,
    denom: int = 4,
    span: int = 6,
) -> DataSet:
    """Small rational dataset with deliberate duplicates and collinearity."""
    from halfmed.geometry import dataset

    n = rng.randint(dim + 1, max_n)
    pts: list[tuple[Fraction, ...]] = []
    while len(pts) < n:
        if pts and rng.random() < dup_prob:
            pts.append(rng.choice(pts))
            continue
        if len(pts) >= 2 and rng.random() < collinear_prob:
            a, b = rng.sample(range(len(pts)), 2)
            t = Fraction(rng.randint(-2, 4), rng.randint(1, 3))
            pts.append(
                tuple(pa + t * (pb - pa) for pa, pb in zip(pts[a], pts[b]))
            )
            continue
        pts.append(
            tuple(
                Fraction(rng.randint(-span * denom, span * denom), denom)
                for _ in range(dim)
            )
        )
    return dataset(pts)


def random_probe(rng: random.Random, ds: DataSet) -> tuple[Fraction, ...]:
    """A probe point near the data: mixture of data points, averages, noise."""
    mode = rng.random()
    if mode < 0.35:
        return rng.choice(ds.points)
    if mode < 0.7:
        a, b = rng.choice(ds.points), rng.choice(ds.points)
        t = Fraction(rng.randint(0, 8), 8)
        return tuple(pa + t * (pb - pa) for pa, pb in zip(a, b))
    base = rng.choice(ds.points)
    return tuple(
        c + Fraction(rng.randint(-12, 12), 8) for c in base
    )
