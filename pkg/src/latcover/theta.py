"""Planar lattice-covering density via inscribed centrally symmetric hexagons.

For a convex polygon ``K`` the thinnest lattice covering density equals
``area(K) / area(H)`` minimized over centrally symmetric hexagons ``H`` inside
``K`` (each such ``H`` tiles with the lattice spanned by ``q1 + q2`` and
``q2 + q3``).  At a fixed center ``c`` the problem is exact: every admissible
hexagon lies in the slice ``S(c) = K & (2c - K)``, and because the area form
is linear in each ``q_i`` separately an optimum uses vertices of ``S(c)``.
The search over centers is a deterministic grid plus pattern search, so the
reported value is an upper bound on the true density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact
from . import polytope as pt
from .errors import CenterOutside, DegenerateHexagon, DegenerateInput, DegenerateSlice, DimensionUnsupported, Empty
from .exact import Vector, cross2
from .lattice import Lattice
from .polytope import Polytope

DEFAULT_GRID = 7
DEFAULT_TOL = Fraction(1, 10**7)
# float prescreen margin, relative to the squared slice radius; float error is
# below 1e-14 of that scale, so every exact maximizer survives the screen
_SCREEN_MARGIN = 1e-9


@dataclass(frozen=True)
class Hexagon:
    center: Vector
    q1: Vector
    q2: Vector
    q3: Vector

    @property
    def area(self) -> Fraction:
        q1, q2, q3 = self.q1, self.q2, self.q3
        return cross2(q1, q2) + cross2(q2, q3) - cross2(q3, q1)

    @property
    def points(self) -> list:
        c = self.center
        offs = [self.q1, self.q2, self.q3]
        offs += [exact.neg(q) for q in offs]
        return [exact.add(c, q) for q in offs]

    def polygon(self) -> Polytope:
        return pt.hull(self.points, 2)


@dataclass
class ThetaReport:
    polygon: Polytope
    theta_estimate: Fraction
    hexagon: Hexagon
    lattice: Lattice
    search_trace: list = field(default_factory=list)  # (center, hexagon area)

    @property
    def area(self) -> Fraction:
        return pt.volume(self.polygon)


def polygon(points) -> Polytope:
    return pt.hull(points, 2)


def _ccw(p: Polytope) -> list:
    return [p.vertices[i] for i in p.cycle]


def _clip_ccw(poly: list, normal, offset) -> list:
    """Sutherland-Hodgman step: keep ``normal . x <= offset``."""
    out = []
    n = len(poly)
    vals = [normal[0] * x + normal[1] * y - offset for x, y in poly]
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        sp, sq = vals[i], vals[(i + 1) % n]
        if sp <= 0:
            out.append(p)
        if (sp < 0 < sq) or (sq < 0 < sp):
            lam = sp / (sp - sq)
            out.append((p[0] + lam * (q[0] - p[0]), p[1] + lam * (q[1] - p[1])))
    return out


def _intersect_ccw(a: list, halfplanes) -> list:
    poly = a
    for h in halfplanes:
        poly = _clip_ccw(poly, h.normal, h.offset)
        if len(poly) < 3:
            return []
    return pt._convex_hull_2d(poly)


def intersect_polygons(a: Polytope, b: Polytope) -> Polytope:
    """Exact intersection of two convex polygons."""
    if a.dim != 2 or b.dim != 2:
        raise DimensionUnsupported("polygon intersection is planar")
    ccw = _intersect_ccw(_ccw(a), b.facets)
    if len(ccw) < 3:
        raise Empty("polygons do not overlap in a region of positive area")
    return pt._polygon_from_ccw(ccw)


def _reflected_facets(k: Polytope, c: Vector):
    # x in 2c - K  <=>  n.(2c - x) <= b  <=>  -n.x <= b - 2 n.c
    return [exact.Halfspace(exact.neg(h.normal), h.offset - 2 * exact.dot(h.normal, c))
            for h in k.facets]


def _slice_ccw(k: Polytope, c: Vector) -> list:
    m = pt.contains_point(k, c)
    if not m.inside:
        raise CenterOutside(f"center {c} lies outside the polygon")
    if m.boundary:
        raise CenterOutside(f"center {c} lies on the boundary; the slice is degenerate")
    return _intersect_ccw(_ccw(k), _reflected_facets(k, c))


def cs_slice(k: Polytope, c) -> Polytope:
    """Largest subset of ``k`` that is symmetric about ``c``: ``K & (2c - K)``."""
    c = exact.vec(c)
    ccw = _slice_ccw(k, c)
    if len(ccw) < 3:
        raise DegenerateSlice("slice has empty interior")
    return pt._polygon_from_ccw(ccw)


def _best_triple(w: list):
    """Maximize the hexagon area over ordered vertex triples of a symmetric slice.

    ``w`` lists slice vertices relative to the center, counter-clockwise, with
    ``w[i + m/2] == -w[i]``.  Returns ``(area, (i, j, k))``.
    """
    m = len(w)
    h = m // 2
    wf = np.array([[float(x), float(y)] for x, y in w])
    cr = np.outer(wf[:, 0], wf[:, 1]) - np.outer(wf[:, 1], wf[:, 0])
    radius2 = float(np.max(np.sum(wf * wf, axis=1)))
    margin = _SCREEN_MARGIN * max(radius2, 1e-300)
    upper = np.triu(np.ones((h + 1, h + 1), dtype=bool))
    per_i = []
    best_f = -math.inf
    for i in range(h):
        idx = (i + np.arange(h + 1)) % m
        area = cr[i, idx][:, None] + cr[np.ix_(idx, idx)] + cr[i, idx][None, :]
        area = np.where(upper, area, -math.inf)
        per_i.append((idx, area))
        best_f = max(best_f, float(area.max()))
    best = None
    for i, (idx, area) in enumerate(per_i):
        for jj, kk in zip(*np.nonzero(area >= best_f - margin)):
            j, k = int(idx[jj]), int(idx[kk])
            q1, q2, q3 = w[i], w[j], w[k]
            val = cross2(q1, q2) + cross2(q2, q3) + cross2(q1, q3)
            key = (i, j, k)
            if best is None or val > best[0] or (val == best[0] and key < best[1]):
                best = (val, key)
    return best


def best_hexagon_at_center(k: Polytope, c) -> Hexagon:
    """Maximum-area hexagon centered at ``c`` and contained in ``k``."""
    c = exact.vec(c)
    ccw = _slice_ccw(k, c)
    if len(ccw) < 3:
        raise DegenerateSlice("slice has empty interior")
    w = [exact.sub(p, c) for p in ccw]
    m = len(w)
    assert m % 2 == 0 and all(w[i + m // 2] == exact.neg(w[i]) for i in range(m // 2)), \
        "slice must be centrally symmetric"
    area, (i, j, kk) = _best_triple(w)
    if area <= 0:
        raise DegenerateSlice("no hexagon of positive area")
    return Hexagon(c, w[i], w[j], w[kk])


def area_centroid(k: Polytope) -> Vector:
    cyc = _ccw(k)
    a = Fraction(0)
    cx = cy = Fraction(0)
    for i in range(len(cyc)):
        p, q = cyc[i], cyc[(i + 1) % len(cyc)]
        cr = cross2(p, q)
        a += cr
        cx += (p[0] + q[0]) * cr
        cy += (p[1] + q[1]) * cr
    return (cx / (3 * a), cy / (3 * a))


def _interior(k: Polytope, c: Vector) -> bool:
    return all(h.value(c) < 0 for h in k.facets)


def theta_l(k: Polytope, grid: int = DEFAULT_GRID, tol=DEFAULT_TOL,
            max_evaluations: int = 10_000) -> ThetaReport:
    """Upper bound on the lattice covering density of a convex polygon."""
    if k.dim != 2:
        raise DimensionUnsupported("theta_l is defined for polygons")
    tol = exact.scalar(tol)
    area_k = pt.volume(k)
    trace = []
    cache = {}

    def evaluate(c):
        if c not in cache:
            hexagon = best_hexagon_at_center(k, c)
            cache[c] = hexagon
            trace.append((c, hexagon.area))
        return cache[c]

    lo, hi = pt.bounding_box(k)
    centers = [area_centroid(k)]
    for i in range(grid):
        for j in range(grid):
            c = (lo[0] + (hi[0] - lo[0]) * Fraction(2 * i + 1, 2 * grid),
                 lo[1] + (hi[1] - lo[1]) * Fraction(2 * j + 1, 2 * grid))
            if _interior(k, c):
                centers.append(c)
    best_c, best_h = None, None
    for c in centers:
        hexagon = evaluate(c)
        if best_h is None or hexagon.area > best_h.area:
            best_c, best_h = c, hexagon
    step = max(hi[0] - lo[0], hi[1] - lo[1]) / grid
    while step >= tol and len(trace) < max_evaluations:
        moved = False
        for dx, dy in ((step, 0), (-step, 0), (0, step), (0, -step)):
            c = (best_c[0] + dx, best_c[1] + dy)
            if not _interior(k, c):
                continue
            hexagon = evaluate(c)
            if hexagon.area > best_h.area:
                best_c, best_h, moved = c, hexagon, True
        if not moved:
            step /= 2
    return ThetaReport(k, area_k / best_h.area, best_h, lattice_from_hexagon(best_h), trace)


def lattice_from_hexagon(h: Hexagon) -> Lattice:
    """The lattice spanned by ``q1 + q2`` and ``q2 + q3``; it tiles with ``h``."""
    if h.area <= 0:
        raise DegenerateHexagon("hexagon has zero area")
    return Lattice((exact.add(h.q1, h.q2), exact.add(h.q2, h.q3)))


def regular_ngon(n: int, max_error: float = 1e-12) -> Polytope:
    """Rational polygon within ``max_error`` of the regular n-gon of circumradius 1."""
    if n < 3:
        raise DegenerateInput("a polygon needs at least 3 vertices")
    pts = []
    for i in range(n):
        angle = 2 * math.pi * i / n
        pts.append(tuple(_approx(f(angle), max_error) for f in (math.cos, math.sin)))
    out = pt.hull(pts, 2)
    if len(out.vertices) != n:
        raise DegenerateInput("rational approximation lost convex position")
    return out


def _approx(x: float, max_error: float) -> Fraction:
    bound = 10**6
    while True:
        f = Fraction(x).limit_denominator(bound)
        if abs(float(f) - x) <= max_error / 2:
            return f
        bound *= 10
