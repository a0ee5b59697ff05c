"""The twelve-vertex body C(gamma): a lattice covering with no tiling subset.

Coordinates are stored after the linear map ``(x, y, z) -> (x, y / sqrt(3), z)``
so that every vertex and lattice vector is rational.  Covering, tiling,
containment, symmetry and density ratios are all preserved when one invertible
linear map is applied to body and lattice together.

The argument that is machine-checked here:

1. ``C + L`` covers space (exact cell certificate).
2. Every vertex ``v`` of ``C`` is *forced*: there is a direction ``d`` such
   that the points ``v + t d`` (``0 < t <= t_witness``) lie in ``C`` and in no
   other translate ``C + l``.  A closed ``P`` contained in ``C`` whose
   translates by ``L`` tile space must cover those points with ``P`` itself,
   hence contains ``v``.
3. So ``P`` contains all twelve vertices, i.e. ``P = C``.
4. But ``C`` does not tile with ``L`` (density ``1 + 2 gamma / 3 > 1``) and has
   triangular facets, so it is no parallelohedron at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact
from . import lattice as lc
from . import polytope as pt
from .errors import CertificateNotFound, GammaOutOfRange, InvalidBaseReport, NotAVertex
from .exact import Halfspace, Vector
from .lattice import CoverCertificate, DensityReport, Lattice, TilingVerdict, UncoveredWitness
from .parallelohedra import HEX_LATTICE_3D, VenkovReport, Verdict, minkowski_venkov_check
from .polytope import Polytope

HALF = Fraction(1, 2)
MAX_HALVINGS = 64
HYPOTHESES = (
    "P is a closed convex body contained in C",
    "P + L is a tiling: translates cover space and have disjoint interiors",
)


def check_gamma(gamma) -> Fraction:
    g = exact.scalar(gamma)
    if not 0 < g < 1:
        raise GammaOutOfRange(f"gamma must lie strictly between 0 and 1, got {g}")
    return g


def paper_vertices(gamma) -> list:
    """v_1 .. v_12 in their original numbering, normalized coordinates."""
    g = check_gamma(gamma)
    hexagon = [(1, 0), (HALF, HALF), (-HALF, HALF), (-1, 0), (-HALF, -HALF), (HALF, -HALF)]
    top = [exact.vec(x, y, 1 + g if i % 2 == 0 else 1 - g) for i, (x, y) in enumerate(hexagon)]
    bottom = [exact.vec(x, y, z - 2) for x, y, z in top]
    return top + bottom


def build_c(gamma) -> Polytope:
    verts = paper_vertices(gamma)
    c = pt.hull(verts)
    assert set(c.vertices) == set(verts), "every listed point must be extreme"
    assert pt.is_centrally_symmetric(c) == (0, 0, 0)
    assert len(c.facets) == 14
    return c


def build_lattice() -> Lattice:
    return Lattice.from_rows(HEX_LATTICE_3D)


def translation_relation_holds(gamma) -> bool:
    """v_i = v_{6+i} + a_3 for i = 1..6."""
    vs = paper_vertices(gamma)
    a3 = build_lattice().basis[2]
    return all(vs[i] == exact.add(vs[i + 6], a3) for i in range(6))


def vertex_multiplicity(c: Polytope, lat: Lattice, v: Vector) -> list:
    """All translates of ``c`` containing ``v``, as coefficient vectors."""
    return lc.translates_containing(c, lat, exact.vec(v))


@dataclass(frozen=True)
class TangentCone:
    apex: Vector
    active: tuple  # halfspaces through the origin: directions d with n.d <= 0

    def contains(self, d: Vector) -> bool:
        return all(h.value(d) <= 0 for h in self.active)


def tangent_cone(c: Polytope, v: Vector) -> TangentCone:
    v = exact.vec(v)
    if v not in c.vertices:
        raise NotAVertex(f"{v} is not a vertex")
    zero = Fraction(0)
    return TangentCone(v, tuple(Halfspace(h.normal, zero) for h in c.facets if h.value(v) == 0))


@dataclass(frozen=True)
class ForcedVertexCertificate:
    vertex_index: int | None
    vertex: Vector
    multiplicity: tuple
    direction: Vector
    t_witness: Fraction


def _segment_meets(body: Polytope, shift: Vector, v: Vector, d: Vector, t_max: Fraction) -> bool:
    """Does ``v + t d`` for some ``0 < t <= t_max`` lie in ``body + shift``?"""
    lo, hi = Fraction(0), t_max
    lo_closed = False
    for h in body.facets:
        s0 = h.value(exact.sub(v, shift))
        a = exact.dot(h.normal, d)
        if a == 0:
            if s0 > 0:
                return False
        elif a > 0:
            hi = min(hi, -s0 / a)
        else:
            bound = -s0 / a
            if bound > lo or (bound == lo and not lo_closed):
                lo, lo_closed = bound, True
    if lo_closed:
        return lo <= hi and hi > 0 and lo <= t_max
    return hi > 0


def _only_home_translate(body: Polytope, lat: Lattice, v: Vector, d: Vector, t: Fraction) -> bool:
    end = exact.add(v, exact.scale(t, d))
    home = tuple(0 for _ in v)
    if not pt.contains_point(body, end).inside:
        return False
    for k in lc.translates_meeting(body, lat, (v, end)):
        if k != home and _segment_meets(body, lat.point(k), v, d, t):
            return False
    return True


def forced_vertex_certificate(c: Polytope, lat: Lattice, v: Vector,
                              index: int | None = None) -> ForcedVertexCertificate:
    """Direction at ``v`` that leaves every translate through ``v`` except ``c``.

    Raises :class:`CertificateNotFound` if no combination of violated cone
    constraints is feasible or no step length survives the halving loop.
    """
    v = exact.vec(v)
    home = tuple(0 for _ in v)
    mult = vertex_multiplicity(c, lat, v)
    if home not in mult:
        raise NotAVertex(f"{v} is not in the body")
    own = tangent_cone(c, v) if c.dim <= 3 else _cone_from_facets(c, v)
    choices = []
    for k in mult:
        if k == home:
            continue
        other = _cone_from_facets(c, exact.sub(v, lat.point(k)))
        choices.append(other.active)
    for combo in itertools.product(*choices):
        cons = list(own.active) + [Halfspace(exact.neg(h.normal), Fraction(-1)) for h in combo]
        d = exact.lp_feasible(cons, dim=c.dim)
        if d is None:
            continue
        t = Fraction(1)
        for _ in range(MAX_HALVINGS):
            if _only_home_translate(c, lat, v, d, t):
                return ForcedVertexCertificate(index, v, tuple(mult), d, t)
            t /= 2
        break
    raise CertificateNotFound(f"no forcing direction found at {v}")


def _cone_from_facets(c: Polytope, apex: Vector) -> TangentCone:
    zero = Fraction(0)
    return TangentCone(apex, tuple(Halfspace(h.normal, zero) for h in c.facets if h.value(apex) == 0))


def audit_forced_certificate(cert: ForcedVertexCertificate, c: Polytope, lat: Lattice) -> bool:
    """Independent recheck, valid in any dimension (H-representation only)."""
    v, d, t = cert.vertex, cert.direction, cert.t_witness
    home = tuple(0 for _ in v)
    if t <= 0 or not any(d):
        return False
    if tuple(vertex_multiplicity(c, lat, v)) != tuple(cert.multiplicity):
        return False
    if not _cone_from_facets(c, v).contains(d):
        return False
    for tt in (t, t / 2):
        x = exact.add(v, exact.scale(tt, d))
        if lc.translates_containing(c, lat, x) != [home]:
            return False
    return _only_home_translate(c, lat, v, d, t)


@dataclass
class CounterexampleReport:
    gamma: Fraction
    body: Polytope
    lattice: Lattice
    relation_holds: bool
    covering: CoverCertificate | UncoveredWitness
    covering_audit: bool
    density: DensityReport
    forced: tuple
    forced_audit: tuple
    venkov: VenkovReport
    tiling: TilingVerdict
    hull_idempotent: bool
    hypotheses: tuple = HYPOTHESES
    failures: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (
            not self.failures
            and self.relation_holds
            and isinstance(self.covering, CoverCertificate)
            and self.covering_audit
            and self.density.density > 1
            and len(self.forced) == len(self.body.vertices)
            and all(self.forced_audit)
            and not self.tiling.tiles
            and self.venkov.verdict is Verdict.FAIL_FACET_SYMMETRY
            and self.hull_idempotent
        )

    @property
    def status(self) -> str:
        return "Valid" if self.valid else "Inconclusive"

    @property
    def conclusion(self) -> list:
        return [
            "C + L covers space (cell certificate audited)",
            f"every one of the {len(self.forced)} vertices of C is forced into any tiling P",
            "so P contains the convex hull of the vertices, which is C; hence P = C",
            f"but C + L is not a tiling: {self.tiling.reason}",
            f"and C is no parallelohedron: {len(self.venkov.asymmetric_facets)} facets are not"
            " centrally symmetric",
        ]


def verify_counterexample(gamma, max_cells: int = lc.DEFAULT_MAX_CELLS) -> CounterexampleReport:
    g = check_gamma(gamma)
    c = build_c(g)
    lat = build_lattice()
    failures = []
    relation = translation_relation_holds(g)
    covering = lc.covers(c, lat, max_cells)
    if isinstance(covering, CoverCertificate):
        cov_audit = lc.audit_certificate(covering)
    else:
        cov_audit = False
        failures.append("covering not verified")
    dens = lc.density(c, lat)
    forced, audits = [], []
    for i, v in enumerate(paper_vertices(g), start=1):
        try:
            cert = forced_vertex_certificate(c, lat, v, index=i)
        except CertificateNotFound as exc:
            failures.append(f"v_{i}: {exc}")
            continue
        forced.append(cert)
        audits.append(audit_forced_certificate(cert, c, lat))
    venkov = minkowski_venkov_check(c)
    tiling = lc.tiles(c, lat, max_cells)
    hull_ok = pt.hull(c.vertices) == c
    return CounterexampleReport(g, c, lat, relation, covering, cov_audit, dens, tuple(forced),
                                tuple(audits), venkov, tiling, hull_ok, failures=failures)


# -- cylinder lift ------------------------------------------------------------------


@dataclass
class LiftReport:
    dim: int
    body: Polytope
    lattice: Lattice
    covering: CoverCertificate
    covering_audit: bool
    density: DensityReport
    symmetric: bool
    forced: tuple
    forced_audit: tuple
    failures: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (not self.failures and self.covering_audit and self.symmetric
                and all(self.forced_audit) and len(self.forced) == len(self.body.vertices)
                and self.density.density > 1)


def cylinder_lift(report: CounterexampleReport, target_dim: int) -> LiftReport:
    """Lift a verified report to ``C x [-1, 1]^k`` with ``L + (2Z)^k``."""
    if not report.valid or not isinstance(report.covering, CoverCertificate):
        raise InvalidBaseReport("the base report must be valid before lifting")
    base_dim = report.body.dim
    k = target_dim - base_dim
    if k < 0:
        raise InvalidBaseReport(f"cannot lift dimension {base_dim} to {target_dim}")
    if k == 0:
        return LiftReport(base_dim, report.body, report.lattice, report.covering,
                          report.covering_audit, report.density, True, report.forced,
                          report.forced_audit)
    cube = pt.segment(-1, 1)

    def lift_body(p):
        for _ in range(k):
            p = pt.product(p, cube)
        return p

    body = lift_body(report.body)
    lat = report.lattice.direct_sum(Lattice.from_rows(
        [[2 if i == j else 0 for j in range(k)] for i in range(k)]))
    zeros = tuple(0 for _ in range(k))
    cells = tuple(sorted(((lift_body(cell), kk + zeros) for cell, kk in report.covering.cells),
                         key=lambda ck: (ck[1], ck[0].vertices)))
    cert = CoverCertificate(body, lat, lift_body(report.covering.domain), cells)
    cov_audit = lc.audit_certificate(cert)
    dens = lc.density(body, lat)
    failures = []
    forced, audits = [], []
    for base in report.forced:
        for signs in itertools.product((1, -1), repeat=k):
            v = base.vertex + exact.vec(signs)
            d = base.direction + exact.vec(-s for s in signs)
            mult = tuple(lc.translates_containing(body, lat, v))
            t = base.t_witness
            for _ in range(MAX_HALVINGS):
                if _only_home_translate(body, lat, v, d, t):
                    break
                t /= 2
            else:
                failures.append(f"lifted vertex {v}: no step length")
                continue
            cert_v = ForcedVertexCertificate(base.vertex_index, v, mult, d, t)
            forced.append(cert_v)
            audits.append(audit_forced_certificate(cert_v, body, lat))
    symmetric = pt.is_centrally_symmetric(body) == tuple(Fraction(0) for _ in range(target_dim))
    return LiftReport(target_dim, body, lat, cert, cov_audit, dens, symmetric, tuple(forced),
                      tuple(audits), failures)
