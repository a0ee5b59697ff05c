"""Lattices, exact covering/tiling verification and covering densities.

A body ``K`` and a lattice ``L`` give a covering of space exactly when the
closed fundamental parallelepiped ``D`` of ``L`` is covered by the finitely
many translates ``K + l`` that meet it.  :func:`covers` decides this with an
exact binary space partition of ``D`` and returns either an auditable
:class:`CoverCertificate` or an :class:`UncoveredWitness`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from . import polytope as pt
from .errors import DegenerateLattice, DimensionMismatch, DimensionUnsupported, SearchBudgetExceeded
from .exact import Vector
from .polytope import Polytope

TranslateId = tuple  # integer coefficient vector k, lattice point = sum k_i * basis_i

DEFAULT_MAX_CELLS = 10**6


@dataclass(frozen=True)
class Lattice:
    basis: tuple  # rows are basis vectors

    def __post_init__(self):
        if exact.det(self.basis) == 0:
            raise DegenerateLattice("basis vectors are linearly dependent")

    @classmethod
    def from_rows(cls, rows) -> "Lattice":
        return cls(exact.mat(rows))

    @classmethod
    def integer(cls, dim: int) -> "Lattice":
        return cls(exact.identity(dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def det(self) -> Fraction:
        return exact.det(self.basis)

    def point(self, k: TranslateId) -> Vector:
        return tuple(sum((ki * row[j] for ki, row in zip(k, self.basis)), Fraction(0))
                     for j in range(self.dim))

    def coords(self, x: Vector) -> Vector:
        """Coefficients of ``x`` in this basis."""
        return exact.matvec(exact.inverse(exact.transpose(self.basis)), x)

    def transform(self, m) -> "Lattice":
        """Image lattice under the linear map ``x -> m x``."""
        m = exact.mat(m)
        return Lattice(tuple(exact.matvec(m, row) for row in self.basis))

    def direct_sum(self, other: "Lattice") -> "Lattice":
        za = tuple(Fraction(0) for _ in range(other.dim))
        zb = tuple(Fraction(0) for _ in range(self.dim))
        return Lattice(tuple(r + za for r in self.basis) + tuple(zb + r for r in other.basis))


@dataclass(frozen=True)
class DensityReport:
    volume: Fraction
    det: Fraction
    density: Fraction


@dataclass(frozen=True)
class CoverCertificate:
    body: Polytope
    lattice: Lattice
    domain: Polytope
    cells: tuple  # of (Polytope, TranslateId), canonically sorted

    @property
    def covered(self) -> bool:
        return True


@dataclass(frozen=True)
class UncoveredWitness:
    body: Polytope
    lattice: Lattice
    domain: Polytope
    point: Vector
    checked_translates: tuple

    @property
    def covered(self) -> bool:
        return False


@dataclass(frozen=True)
class TilingVerdict:
    tiles: bool
    reason: str
    density: DensityReport
    cover: CoverCertificate | UncoveredWitness | None = None

    def __bool__(self):
        return self.tiles


def _check(body: Polytope, lat: Lattice):
    if body.dim != lat.dim:
        raise DimensionMismatch(f"body dimension {body.dim} vs lattice dimension {lat.dim}")


def density(body: Polytope, lat: Lattice) -> DensityReport:
    _check(body, lat)
    d = abs(lat.det)
    if d == 0:
        raise DegenerateLattice("zero determinant")
    v = pt.volume(body)
    return DensityReport(v, d, v / d)


def fundamental_domain(lat: Lattice) -> Polytope:
    """Closed parallelepiped spanned by the basis vectors."""
    corners = [lat.point(eps) for eps in itertools.product((0, 1), repeat=lat.dim)]
    if lat.dim > 3:
        raise DimensionUnsupported("fundamental domains are built up to dimension 3")
    return pt.hull(corners, lat.dim)


def _coefficient_ranges(lat: Lattice, region, body_points):
    """Integer ranges for k such that sum k_i b_i can lie in conv(region) - conv(body).

    Each coefficient is a linear function of the difference, so its exact
    range is found at the vertices of the two sets.
    """
    inv = exact.inverse(exact.transpose(lat.basis))
    ranges = []
    for row in inv:
        a = [exact.dot(row, p) for p in region]
        b = [exact.dot(row, q) for q in body_points]
        ranges.append(range(math.ceil(min(a) - max(b)), math.floor(max(a) - min(b)) + 1))
    return ranges


def translates_meeting(body: Polytope, lat: Lattice, region) -> list:
    """Superset of the k whose translate meets the hull of the points ``region``."""
    return sorted(itertools.product(*_coefficient_ranges(lat, region, body.vertices)))


def translates_near(body: Polytope, lat: Lattice, lo: Vector, hi: Vector) -> list:
    """Superset of the k whose translate meets the box [lo, hi]."""
    return translates_meeting(body, lat, list(itertools.product(*zip(lo, hi))))


def translates_containing(body: Polytope, lat: Lattice, x: Vector) -> list:
    """Exactly the k with ``x`` in ``body + lattice point k``, sorted."""
    _check(body, lat)
    out = []
    for k in translates_meeting(body, lat, [x]):
        if pt.contains_point(body, exact.sub(x, lat.point(k))).inside:
            out.append(k)
    return out


def candidate_translates(body: Polytope, lat: Lattice, domain: Polytope | None = None) -> list:
    """Translates ``body + l`` that meet ``domain`` (default: fundamental domain)."""
    _check(body, lat)
    if lat.det == 0:
        raise DegenerateLattice("zero determinant")
    domain = domain if domain is not None else fundamental_domain(lat)
    out = []
    for k in translates_meeting(body, lat, domain.vertices):
        shift = lat.point(k)
        moved = [h.translate(shift) for h in body.facets]
        if any(all(h.value(v) > 0 for v in domain.vertices) for h in moved):
            continue
        cons = list(domain.facets) + moved
        if exact.lp_feasible(cons) is not None:
            out.append(k)
    return out


class _Candidate:
    __slots__ = ("k", "planes")

    def __init__(self, k, planes):
        self.k = k
        self.planes = planes


def _classify(cell: Polytope, cand: _Candidate):
    """'in', 'out' or the first plane cutting through the cell's interior."""
    mixed = None
    inner = True
    for h in cand.planes:
        neg = pos = False
        for v in cell.vertices:
            s = h.value(v)
            if s < 0:
                neg = True
            elif s > 0:
                pos = True
        if not neg:
            # the cell's interior misses this translate entirely
            return "out"
        if pos:
            inner = False
            if mixed is None:
                mixed = h
    return "in" if inner else mixed


def covers(body: Polytope, lat: Lattice, max_cells: int = DEFAULT_MAX_CELLS):
    """Decide whether ``body + lat`` covers space.

    Returns a :class:`CoverCertificate` or an :class:`UncoveredWitness`.
    Raises :class:`SearchBudgetExceeded` after ``max_cells`` cells.
    """
    _check(body, lat)
    if lat.dim not in (2, 3):
        raise DimensionUnsupported("covering verification is implemented in dimensions 2 and 3")
    domain = fundamental_domain(lat)
    ks = candidate_translates(body, lat, domain)
    cands = [_Candidate(k, tuple(h.translate(lat.point(k)) for h in body.facets)) for k in ks]
    emitted = []
    stack = [(domain, cands)]
    processed = 0
    while stack:
        cell, live = stack.pop()
        processed += 1
        if processed > max_cells:
            raise SearchBudgetExceeded(f"more than {max_cells} cells")
        survivors = []
        split = None
        done = None
        for cand in live:
            status = _classify(cell, cand)
            if status == "out":
                continue
            if status == "in":
                done = cand
                break
            survivors.append(cand)
            if split is None:
                split = status
        if done is not None:
            emitted.append((cell, done.k))
            continue
        if not survivors:
            point = exact.centroid(cell.vertices)
            return UncoveredWitness(body, lat, domain, point, tuple(ks))
        lower = pt.clip(cell, split)
        upper = pt.clip(cell, split.flip())
        stack.append((upper, survivors))
        stack.append((lower, survivors))
    emitted.sort(key=lambda ck: (ck[1], ck[0].vertices))
    return CoverCertificate(body, lat, domain, tuple(emitted))


def tiles(body: Polytope, lat: Lattice, max_cells: int = DEFAULT_MAX_CELLS) -> TilingVerdict:
    """A covering with density exactly 1 is a tiling."""
    rep = density(body, lat)
    if rep.density != 1:
        return TilingVerdict(False, f"density {rep.density} != 1", rep)
    result = covers(body, lat, max_cells)
    if isinstance(result, UncoveredWitness):
        return TilingVerdict(False, "translates do not cover space", rep, result)
    return TilingVerdict(True, "covering with density 1", rep, result)


# -- independent audits -------------------------------------------------------


def audit_certificate(cert: CoverCertificate) -> bool:
    """Recheck a covering certificate from scratch.

    Every cell must lie inside the domain and inside its assigned translate,
    the cell volumes must add up to the domain volume ``|det|`` and no two
    cells may share interior points.
    """
    body, lat, domain = cert.body, cert.lattice, cert.domain
    if pt.volume(domain) != abs(lat.det):
        return False
    total = Fraction(0)
    for cell, k in cert.cells:
        if not pt.contains_polytope(domain, cell):
            return False
        shifted = pt.translate(body, lat.point(k))
        if not pt.contains_polytope(shifted, cell):
            return False
        total += pt.volume(cell)
    if total != abs(lat.det):
        return False
    return _interiors_disjoint([c for c, _ in cert.cells])


def _interiors_disjoint(cells: Sequence[Polytope]) -> bool:
    boxes = [pt.bounding_box(c) for c in cells]
    order = sorted(range(len(cells)), key=lambda i: boxes[i][0][0])
    for a_pos, i in enumerate(order):
        lo_i, hi_i = boxes[i]
        for j in order[a_pos + 1:]:
            lo_j, hi_j = boxes[j]
            if lo_j[0] >= hi_i[0]:
                break
            if any(lo_j[d] >= hi_i[d] or lo_i[d] >= hi_j[d] for d in range(len(lo_i))):
                continue
            if not _separated(cells[i], cells[j]):
                return False
    return True


def _separated(a: Polytope, b: Polytope) -> bool:
    for f in a.facets:
        if all(f.value(v) >= 0 for v in b.vertices):
            return True
    for f in b.facets:
        if all(f.value(v) >= 0 for v in a.vertices):
            return True
    cons = list(a.facets) + list(b.facets)
    return exact.lp_feasible(cons, [True] * len(cons)) is None


def audit_witness(w: UncoveredWitness) -> bool:
    """The witness lies in the domain and in no translate of the body."""
    if not pt.contains_point(w.domain, w.point).inside:
        return False
    if translates_containing(w.body, w.lattice, w.point):
        return False
    return all(not pt.contains_point(w.body, exact.sub(w.point, w.lattice.point(k))).inside
               for k in w.checked_translates)


# -- floating-point oracle -----------------------------------------------------


def mc_density(body: Polytope, lat: Lattice, samples: int = 100_000, seed: int = 0) -> float:
    """Monte Carlo estimate of the mean covering multiplicity over ``D``."""
    _check(body, lat)
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    basis = np.array([[float(c) for c in row] for row in lat.basis])
    pts = rng.random((samples, lat.dim)) @ basis
    normals = np.array([[float(c) for c in h.normal] for h in body.facets])
    offsets = np.array([float(h.offset) for h in body.facets])
    corners = [lat.point(eps) for eps in itertools.product((0, 1), repeat=lat.dim)]
    count = np.zeros(samples)
    for k in translates_meeting(body, lat, corners):
        shift = np.array([float(c) for c in lat.point(k)])
        inside = np.all((pts - shift) @ normals.T <= offsets + 1e-12, axis=1)
        count += inside
    return float(count.mean())
