"""Exact convex polytopes in dimensions 1-3, plus products in higher dimension.

A :class:`Polytope` keeps both representations in sync: a lexicographically
sorted vertex tuple and a sorted tuple of canonical facet halfspaces.  Facet
cycles (the boundary walk of every facet) are derived lazily from the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import exact
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    DimensionUnsupported,
    Empty,
    SingularMatrix,
    Unbounded,
)
from .exact import Halfspace, Vector, canonicalize, cross, cross2, dot, sub


@dataclass(frozen=True)
class Membership:
    inside: bool
    boundary: bool

    def __bool__(self):
        return self.inside


@dataclass(frozen=True)
class FaceData:
    edges: tuple  # sorted vertex-index pairs
    edge_facets: dict  # edge -> (facet index, facet index)
    facet_edges: tuple  # facet index -> tuple of edges in cycle order


@dataclass(frozen=True, eq=False)
class Polytope:
    dim: int
    vertices: tuple
    facets: tuple
    # volume of bodies with dim > 3, where no fan decomposition is available
    known_volume: Fraction | None = field(default=None, compare=False)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.dim, self.vertices, self.facets) == (other.dim, other.vertices, other.facets)

    def __hash__(self):
        return hash((self.dim, self.vertices, self.facets))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    @cached_property
    def tight(self) -> tuple:
        """For every facet, the sorted indices of vertices lying on it."""
        return tuple(
            tuple(i for i, v in enumerate(self.vertices) if h.value(v) == 0)
            for h in self.facets
        )

    @cached_property
    def vertex_facets(self) -> tuple:
        out = [[] for _ in self.vertices]
        for f, idx in enumerate(self.tight):
            for i in idx:
                out[i].append(f)
        return tuple(tuple(x) for x in out)

    @cached_property
    def incidence(self) -> tuple:
        """Per facet, the ordered vertex cycle.

        In dim 3 cycles run counter-clockwise seen from outside, starting at
        the smallest vertex index.  In dim 2 each facet is an edge given as
        ``(start, end)`` along the counter-clockwise boundary.
        """
        if self.dim == 3:
            return tuple(self._facet_cycle(f) for f in range(len(self.facets)))
        if self.dim == 2:
            cyc = self.cycle
            pos = {v: i for i, v in enumerate(cyc)}
            out = []
            for idx in self.tight:
                a, b = idx
                if (pos[a] + 1) % len(cyc) == pos[b]:
                    out.append((a, b))
                else:
                    out.append((b, a))
            return tuple(out)
        if self.dim == 1:
            return tuple((i,) for i in (idx[0] for idx in self.tight))
        raise DimensionUnsupported("facet cycles exist only up to dimension 3")

    @cached_property
    def cycle(self) -> tuple:
        """Counter-clockwise vertex order of a polygon, from vertex 0."""
        if self.dim != 2:
            raise DimensionUnsupported("boundary cycle is defined for polygons")
        return _ccw_order(list(range(len(self.vertices))), self.vertices)

    def _facet_cycle(self, f):
        idx = list(self.tight[f])
        normal = self.facets[f].normal
        k = next(i for i, c in enumerate(normal) if c != 0)
        chart = [tuple(c for j, c in enumerate(self.vertices[i]) if j != k) for i in idx]
        order = _ccw_order(list(range(len(idx))), chart)
        cyc = [idx[i] for i in order]
        a, b, c = (self.vertices[i] for i in cyc[:3])
        if dot(cross(sub(b, a), sub(c, a)), normal) < 0:
            cyc = [cyc[0]] + cyc[1:][::-1]
        start = cyc.index(min(cyc))
        return tuple(cyc[start:] + cyc[:start])

    def validate(self) -> "Polytope":
        """Check the representation invariants; raise AssertionError if broken."""
        d = self.dim
        assert all(len(v) == d for v in self.vertices)
        assert list(self.vertices) == sorted(set(self.vertices)), "vertices sorted, distinct"
        assert list(self.facets) == sorted(set(self.facets)), "facets sorted, distinct"
        for h in self.facets:
            assert canonicalize(h) == h, "facet not canonical"
            for v in self.vertices:
                assert h.value(v) <= 0, "vertex outside a facet"
        for idx in self.tight:
            assert len(idx) >= d, "facet tight at too few vertices"
        for i, fs in enumerate(self.vertex_facets):
            assert len(fs) >= d, f"vertex {i} is not extreme"
        if d <= 3:
            self.incidence  # noqa: B018  (raises if cycles are inconsistent)
        if d == 3:
            fd = face_data(self)
            assert len(self.vertices) - len(fd.edges) + len(self.facets) == 2, "Euler"
        return self


def _angle_key(p):
    # half-plane index then a rational slope-like key, for exact angular sorting
    x, y = p
    upper = y > 0 or (y == 0 and x > 0)
    return 0 if upper else 1


def _ccw_order(ids, pts):
    """Order points of a convex polygon counter-clockwise (exact)."""
    c = exact.centroid([pts[i] for i in ids])
    rel = {i: (pts[i][0] - c[0], pts[i][1] - c[1]) for i in ids}

    import functools

    def cmp(i, j):
        a, b = rel[i], rel[j]
        ha, hb = _angle_key(a), _angle_key(b)
        if ha != hb:
            return ha - hb
        cr = cross2(a, b)
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    order = sorted(ids, key=functools.cmp_to_key(cmp))
    start = order.index(min(order))
    return tuple(order[start:] + order[:start])


# -- construction ------------------------------------------------------------


def _dedupe(points):
    return sorted(set(exact.vec(p) for p in points))


def _convex_hull_2d(pts):
    """Andrew's monotone chain; strict turns only, counter-clockwise."""
    pts = sorted(set(pts))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross2(sub(out[-1], out[-2]), sub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _polygon_from_ccw(ccw) -> Polytope:
    facets = []
    n = len(ccw)
    for i in range(n):
        p, q = ccw[i], ccw[(i + 1) % n]
        normal = (q[1] - p[1], p[0] - q[0])
        facets.append(canonicalize(Halfspace(normal, dot(normal, p))))
    return Polytope(2, tuple(sorted(ccw)), tuple(sorted(facets)))


def _orient3(a, b, c, p):
    return dot(cross(sub(b, a), sub(c, a)), sub(p, a))


def _hull_3d_faces(pts):
    """Incremental hull; returns outward-oriented triangles over ``pts``."""
    n = len(pts)
    i0 = 0
    i1 = next((i for i in range(1, n) if pts[i] != pts[i0]), None)
    if i1 is None:
        raise DegenerateInput("all points coincide")
    i2 = next((i for i in range(n)
               if any(cross(sub(pts[i1], pts[i0]), sub(pts[i], pts[i0])))), None)
    if i2 is None:
        raise DegenerateInput("points are collinear")
    i3 = next((i for i in range(n) if _orient3(pts[i0], pts[i1], pts[i2], pts[i]) != 0), None)
    if i3 is None:
        raise DegenerateInput("points are coplanar")
    if _orient3(pts[i0], pts[i1], pts[i2], pts[i3]) > 0:
        i1, i2 = i2, i1
    faces = {(i0, i1, i2), (i0, i2, i3), (i0, i3, i1), (i1, i3, i2)}
    for p in range(n):
        if p in (i0, i1, i2, i3):
            continue
        visible = [f for f in faces if _orient3(pts[f[0]], pts[f[1]], pts[f[2]], pts[p]) > 0]
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update(((a, b), (b, c), (c, a)))
        for f in visible:
            faces.discard(f)
        for a, b in edges:
            if (b, a) not in edges:
                faces.add((a, b, p))
    return faces


def hull(points: Sequence, dim: int | None = None) -> Polytope:
    """Convex hull of a finite point set in dimension 1, 2 or 3.

    Coplanar triangles are merged into maximal facets and points that are not
    extreme are dropped.
    """
    pts = _dedupe(points)
    if not pts:
        raise DegenerateInput("no points")
    d = len(pts[0]) if dim is None else dim
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    if d == 1:
        if len(pts) < 2:
            raise DegenerateInput("a segment needs two distinct points")
        return segment(pts[0][0], pts[-1][0])
    if d == 2:
        ccw = _convex_hull_2d(pts)
        if len(ccw) < 3:
            raise DegenerateInput("points are collinear")
        return _polygon_from_ccw(ccw).validate()
    if d == 3:
        faces = _hull_3d_faces(pts)
        planes = set()
        for a, b, c in faces:
            normal = cross(sub(pts[b], pts[a]), sub(pts[c], pts[a]))
            planes.add(canonicalize(Halfspace(normal, dot(normal, pts[a]))))
        # a point on a facet plane that is not a vertex of that facet is dropped
        verts = set()
        for h in planes:
            on = [p for p in pts if h.value(p) == 0]
            k = next(i for i, c in enumerate(h.normal) if c != 0)
            chart = {tuple(c for j, c in enumerate(p) if j != k): p for p in on}
            for q in _convex_hull_2d(list(chart)):
                verts.add(chart[q])
        return Polytope(3, tuple(sorted(verts)), tuple(sorted(planes))).validate()
    raise DimensionUnsupported(f"hull is implemented for dimensions 1-3, not {d}")


def segment(lo, hi) -> Polytope:
    lo, hi = exact.scalar(lo), exact.scalar(hi)
    if not lo < hi:
        raise DegenerateInput("segment needs lo < hi")
    facets = sorted([canonicalize(Halfspace((Fraction(-1),), -lo)),
                     canonicalize(Halfspace((Fraction(1),), hi))])
    return Polytope(1, ((lo,), (hi,)), tuple(facets))


def box(lo: Sequence, hi: Sequence) -> Polytope:
    """Axis-parallel box; products of segments."""
    out = segment(lo[0], hi[0])
    for a, b in zip(lo[1:], hi[1:]):
        out = product(out, segment(a, b))
    return out


def from_halfspaces(halfspaces: Sequence[Halfspace], dim: int | None = None) -> Polytope:
    """Vertex enumeration for a bounded full-dimensional intersection."""
    halfspaces = list(halfspaces)
    d = exact._check_dims(halfspaces) if halfspaces else dim
    if d is None:
        raise Unbounded("no constraints")
    if d not in (1, 2, 3):
        raise DimensionUnsupported(f"vertex enumeration only up to dimension 3, not {d}")
    if exact.lp_feasible(halfspaces) is None:
        raise Empty("halfspaces have empty intersection")
    if exact.lp_feasible(halfspaces, [True] * len(halfspaces)) is None:
        raise DegenerateInput("intersection has empty interior")
    for i in range(d):
        for s in (1, -1):
            e = tuple(Fraction(s * int(i == j)) for j in range(d))
            if exact.lp_maximize(halfspaces, e)[0] != "optimal":
                raise Unbounded("intersection is unbounded")
    points = set()
    for combo in itertools.combinations(halfspaces, d):
        x = exact.solve(tuple(h.normal for h in combo), tuple(h.offset for h in combo))
        if x is not None and all(h.value(x) <= 0 for h in halfspaces):
            points.add(x)
    return hull(points, d)


# -- measurements and predicates ----------------------------------------------


def volume(p: Polytope) -> Fraction:
    """Exact volume (length, area) by a fan from vertex 0."""
    if p.dim == 1:
        return p.vertices[1][0] - p.vertices[0][0]
    if p.dim == 2:
        cyc = [p.vertices[i] for i in p.cycle]
        total = sum((cross2(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))), Fraction(0))
        return abs(total) / 2
    if p.dim == 3:
        apex = p.vertices[0]
        total = Fraction(0)
        for f, cyc in enumerate(p.incidence):
            if 0 in cyc:
                continue
            a = p.vertices[cyc[0]]
            for i in range(1, len(cyc) - 1):
                b, c = p.vertices[cyc[i]], p.vertices[cyc[i + 1]]
                total += abs(_orient3(apex, a, b, c))
        return total / 6
    if p.known_volume is None:
        raise DimensionUnsupported("no volume recorded for this high-dimensional body")
    return p.known_volume


def contains_point(p: Polytope, x: Vector) -> Membership:
    if len(x) != p.dim:
        raise DimensionMismatch(f"point of dimension {len(x)} vs body of dimension {p.dim}")
    vals = [h.value(x) for h in p.facets]
    inside = all(v <= 0 for v in vals)
    return Membership(inside, inside and any(v == 0 for v in vals))


def contains_polytope(outer: Polytope, inner: Polytope) -> bool:
    if outer.dim != inner.dim:
        raise DimensionMismatch("containment needs equal dimensions")
    return all(h.value(v) <= 0 for h in outer.facets for v in inner.vertices)


def is_centrally_symmetric(p: Polytope) -> Vector | None:
    """Center of symmetry, or None if the vertex set is not symmetric."""
    c = exact.centroid(p.vertices)
    twice = exact.scale(2, c)
    vs = set(p.vertices)
    if all(sub(twice, v) in vs for v in p.vertices):
        return c
    return None


def affine_map(p: Polytope, m, t=None) -> Polytope:
    """Image of ``p`` under ``x -> m x + t``."""
    m = exact.mat(m)
    t = exact.vec(t) if t is not None else tuple(Fraction(0) for _ in range(p.dim))
    if len(m) != p.dim or len(t) != p.dim:
        raise DimensionMismatch("map does not match body dimension")
    dm = exact.det(m)
    if dm == 0:
        raise SingularMatrix("affine map must be invertible")
    image = [exact.add(exact.matvec(m, v), t) for v in p.vertices]
    if p.dim <= 3:
        return hull(image, p.dim)
    minv_t = exact.transpose(exact.inverse(m))
    facets = []
    for h in p.facets:
        n = exact.matvec(minv_t, h.normal)
        facets.append(canonicalize(Halfspace(n, h.offset + dot(n, t))))
    vol = None if p.known_volume is None else abs(dm) * p.known_volume
    return Polytope(p.dim, tuple(sorted(image)), tuple(sorted(facets)), vol)


def translate(p: Polytope, t: Vector) -> Polytope:
    t = exact.vec(t)
    verts = tuple(exact.add(v, t) for v in p.vertices)
    facets = tuple(h.translate(t) for h in p.facets)
    out = Polytope(p.dim, verts, tuple(sorted(canonicalize(h) for h in facets)), p.known_volume)
    return out


def scaled(p: Polytope, factor, center=None) -> Polytope:
    """Homothetic copy ``center + factor (x - center)``."""
    factor = exact.scalar(factor)
    c = exact.vec(center) if center is not None else tuple(Fraction(0) for _ in range(p.dim))
    m = tuple(tuple(factor if i == j else Fraction(0) for j in range(p.dim)) for i in range(p.dim))
    return affine_map(p, m, sub(c, exact.scale(factor, c)))


def product(p: Polytope, q: Polytope) -> Polytope:
    """Cartesian product; dimension ``p.dim + q.dim``."""
    verts = sorted(tuple(u) + tuple(v) for u in p.vertices for v in q.vertices)
    zp = tuple(Fraction(0) for _ in range(p.dim))
    zq = tuple(Fraction(0) for _ in range(q.dim))
    facets = [canonicalize(Halfspace(h.normal + zq, h.offset)) for h in p.facets]
    facets += [canonicalize(Halfspace(zp + h.normal, h.offset)) for h in q.facets]
    d = p.dim + q.dim
    if d <= 3:
        out = hull(verts, d)
        assert set(out.facets) == set(facets)
        return out
    return Polytope(d, tuple(verts), tuple(sorted(facets)), volume(p) * volume(q))


def face_data(p: Polytope) -> FaceData:
    if p.dim != 3:
        raise DimensionUnsupported("face data is defined for 3-polytopes")
    edge_facets = {}
    facet_edges = []
    for f, cyc in enumerate(p.incidence):
        es = []
        for i in range(len(cyc)):
            e = tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)])))
            edge_facets.setdefault(e, []).append(f)
            es.append(e)
        facet_edges.append(tuple(es))
    for e, fs in edge_facets.items():
        if len(fs) != 2:
            raise AssertionError(f"edge {e} borders {len(fs)} facets")
    return FaceData(tuple(sorted(edge_facets)), {e: tuple(fs) for e, fs in edge_facets.items()},
                    tuple(facet_edges))


def bounding_box(p: Polytope):
    lo = tuple(min(c) for c in zip(*p.vertices))
    hi = tuple(max(c) for c in zip(*p.vertices))
    return lo, hi


def clip(p: Polytope, h: Halfspace) -> Polytope | None:
    """``p`` intersected with ``h``; None when the result has empty interior.

    Works for dims 2 and 3, using the fact that two vertices span an edge iff
    they share ``dim - 1`` facets.
    """
    d = p.dim
    vals = [h.value(v) for v in p.vertices]
    if all(s <= 0 for s in vals):
        return p
    if all(s >= 0 for s in vals):
        return None
    keep = [v for v, s in zip(p.vertices, vals) if s <= 0]
    vf = [set(fs) for fs in p.vertex_facets]
    new = []
    n = len(p.vertices)
    for i in range(n):
        if vals[i] >= 0:
            continue
        for j in range(n):
            if vals[j] <= 0 or len(vf[i] & vf[j]) < d - 1:
                continue
            u, w = p.vertices[i], p.vertices[j]
            lam = vals[i] / (vals[i] - vals[j])
            new.append(tuple(a + lam * (b - a) for a, b in zip(u, w)))
    verts = tuple(sorted(set(keep) | set(new)))
    h = canonicalize(h)
    facets = []
    for g in p.facets + (h,):
        if sum(1 for v in verts if g.value(v) == 0) >= d:
            facets.append(g)
    return Polytope(d, verts, tuple(sorted(set(facets))))
