import itertools
from fractions import Fraction

import pytest

from latcover import counterexample as cx
from latcover import exact
from latcover import lattice as lc
from latcover import parallelohedra as ph
from latcover import polytope as pt
from latcover.errors import CertificateNotFound, GammaOutOfRange, InvalidBaseReport, NotAVertex
from latcover.parallelohedra import Verdict

from oracles import brute_facets_3d, brute_translates_containing, leibniz_det, polytope_volume_3d

H = Fraction(1, 2)


def _tetra_volume(p, a, b, c):
    return abs(leibniz_det([exact.sub(a, p), exact.sub(b, p), exact.sub(c, p)])) / 6


def _segment_hits(planes, shift, v, d, t_max):
    """Brute-force interval test: some t in (0, t_max] with v + t d in body + shift."""
    lo, hi = Fraction(0), t_max
    lo_open = True
    for n, off in planes:
        s0 = sum(a * (x - y) for a, x, y in zip(n, v, shift)) - off
        a = sum(x * y for x, y in zip(n, d))
        if a == 0:
            if s0 > 0:
                return False
        elif a > 0:
            hi = min(hi, -s0 / a)
        elif -s0 / a > lo:
            # t >= bound; an equal bound leaves the open end t > 0 in force
            lo, lo_open = -s0 / a, False
    return lo < hi or (lo == hi and not lo_open)


def test_vertices_in_original_numbering():
    g = Fraction(1, 10)
    vs = cx.paper_vertices(g)
    # undo the rational chart y -> y / sqrt(3): sin(pi/3) / sqrt(3) = 1/2
    assert vs[0] == (1, 0, 1 + g) and vs[1] == (H, H, 1 - g) and vs[3] == (-1, 0, 1 - g)
    assert vs[6] == (1, 0, -1 + g) and vs[9] == (-1, 0, -1 - g) and vs[11] == (H, -H, -1 - g)
    assert cx.build_lattice().basis == ((Fraction(3, 2), H, 0), (Fraction(3, 2), -H, 0), (0, 0, 2))
    assert cx.translation_relation_holds(g)


@pytest.mark.parametrize("gamma", ["1/10", "1/2", "1/100", "9/10", "1/3"])
def test_volume_and_density_closed_form(gamma):
    g = Fraction(gamma)
    c = cx.build_c(g)
    lat = cx.build_lattice()
    # prism of height 2 (1 + g) over the hexagon of area 3/2, minus six corner tetrahedra
    corner = (H, H, 1 + g)
    tetra = _tetra_volume(corner, (1, 0, 1 + g), (-H, H, 1 + g), (H, H, 1 - g))
    expected = Fraction(3, 2) * 2 * (1 + g) - 6 * tetra
    assert expected == 3 + 2 * g
    assert polytope_volume_3d(c.vertices) == expected
    assert abs(leibniz_det(lat.basis)) == 3
    assert lc.density(c, lat).density == 1 + 2 * g / 3
    census = sorted(len(f) for f in c.incidence)
    assert census == [3] * 8 + [4] * 6


@pytest.mark.parametrize("gamma", [0, 1, "-1/2", "3/2"])
def test_gamma_range(gamma):
    with pytest.raises(GammaOutOfRange):
        cx.build_c(gamma)


def test_gamma_rejects_floats():
    with pytest.raises(TypeError):
        cx.check_gamma(0.1)


def test_multiplicity_matches_brute_force():
    c = cx.build_c("1/10")
    lat = cx.build_lattice()
    planes = brute_facets_3d(c.vertices)
    for v in c.vertices:
        assert cx.vertex_multiplicity(c, lat, v) == brute_translates_containing(planes, lat.basis, v)
    v2 = cx.paper_vertices("1/10")[1]
    assert cx.vertex_multiplicity(c, lat, v2) == [
        (0, 0, 0), (0, 0, 1), (1, -1, 0), (1, -1, 1), (1, 0, 0), (1, 0, 1)]


def test_forced_certificates_against_brute_force():
    c = cx.build_c("1/10")
    lat = cx.build_lattice()
    planes = brute_facets_3d(c.vertices)
    for i, v in enumerate(cx.paper_vertices("1/10"), start=1):
        cert = cx.forced_vertex_certificate(c, lat, v, index=i)
        assert cert.vertex_index == i and cx.audit_forced_certificate(cert, c, lat)
        assert _segment_hits(planes, (0, 0, 0), v, cert.direction, cert.t_witness)
        for k in itertools.product(range(-3, 4), repeat=3):
            if any(k):
                assert not _segment_hits(planes, lat.point(k), v, cert.direction, cert.t_witness)


def test_tangent_cone():
    c = cx.build_c("1/10")
    v1 = cx.paper_vertices("1/10")[0]
    cone = cx.tangent_cone(c, v1)
    assert cone.contains((-1, 0, -1)) and not cone.contains((1, 0, 0))
    with pytest.raises(NotAVertex):
        cx.tangent_cone(c, (0, 0, 0))


def test_tampered_forced_certificate_fails_audit():
    c = cx.build_c("1/10")
    lat = cx.build_lattice()
    cert = cx.forced_vertex_certificate(c, lat, cx.paper_vertices("1/10")[0])
    bad = cx.ForcedVertexCertificate(cert.vertex_index, cert.vertex, cert.multiplicity,
                                     exact.neg(cert.direction), cert.t_witness)
    assert not cx.audit_forced_certificate(bad, c, lat)
    long = cx.ForcedVertexCertificate(cert.vertex_index, cert.vertex, cert.multiplicity,
                                      cert.direction, Fraction(100))
    assert not cx.audit_forced_certificate(long, c, lat)


def test_tile_vertices_are_forced():
    # a tile meets its neighbours only on the boundary, so each of its
    # vertices has a direction into its own interior and no other tile
    body, lat = ph.fedorov_fixtures()[ph.FedorovType.HEXAGONAL_PRISM]
    for v in body.vertices:
        assert cx.audit_forced_certificate(cx.forced_vertex_certificate(body, lat, v), body, lat)


def test_vertex_inside_another_translate_is_not_forced():
    cube = pt.box((0, 0, 0), (2, 2, 2))
    with pytest.raises(CertificateNotFound):
        cx.forced_vertex_certificate(cube, lc.Lattice.integer(3), (0, 0, 0))


def test_report(report_tenth):
    r = report_tenth
    assert r.valid and r.status == "Valid"
    assert r.covering_audit and isinstance(r.covering, lc.CoverCertificate)
    assert sum(pt.volume(cell) for cell, _ in r.covering.cells) == 3
    assert r.density.density == Fraction(16, 15)
    assert len(r.forced) == 12 and all(r.forced_audit)
    assert r.venkov.verdict is Verdict.FAIL_FACET_SYMMETRY
    assert len(r.venkov.asymmetric_facets) == 8
    assert not r.tiling.tiles
    assert r.hull_idempotent and not r.failures
    assert len(r.conclusion) == 5


def test_lift(lift_tenth):
    lift = lift_tenth
    assert lift.valid and lift.dim == 4
    assert lift.density.density == Fraction(16, 15)
    assert lift.symmetric and lift.covering_audit
    assert len(lift.forced) == 24 and all(lift.forced_audit)


def test_lift_requires_valid_base(report_tenth):
    with pytest.raises(InvalidBaseReport):
        cx.cylinder_lift(report_tenth, 2)
    with pytest.raises(InvalidBaseReport):
        cx.cylinder_lift(cx.CounterexampleReport(**{**report_tenth.__dict__, "failures": ["x"]}), 4)


def test_local_structure_at_vertices():
    g = Fraction(1, 10)
    c = cx.build_c(g)
    lat = cx.build_lattice()
    vs = cx.paper_vertices(g)
    assert cx.vertex_multiplicity(c, lat, vs[0]) == [
        (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)]
    # v2 also lies in the translate by a1 - a2: v2 - (a1 - a2) = v6
    assert exact.sub(vs[1], exact.sub(lat.basis[0], lat.basis[1])) == vs[5]
    assert len(cx.tangent_cone(c, vs[0]).active) == 5
    assert len(cx.tangent_cone(c, vs[6]).active) == 3
    assert len(pt.face_data(c).edges) == 24
    slant = exact.halfspace((-2, 0, 5), Fraction(13, 2))
    assert slant in c.facets
    assert not pt.contains_point(c, (1, 0, -1 + g - Fraction(1, 100))).inside
    assert pt.contains_point(c, vs[0]).boundary


def test_inscribed_prisms():
    c = cx.build_c("1/10")
    hexagon = [(1, 0), (H, H), (-H, H), (-1, 0), (-H, -H), (H, -H)]
    low = pt.hull([(x, y, z) for x, y in hexagon for z in (Fraction(-9, 10), Fraction(9, 10))])
    tall = pt.hull([(x, y, z) for x, y in hexagon for z in (-1, 1)])
    assert pt.contains_polytope(c, low)
    assert not pt.contains_polytope(c, tall)


def test_direction_at_v1():
    # the LP may return any valid direction; the hand-derived one must audit too
    c = cx.build_c("1/10")
    lat = cx.build_lattice()
    v1 = cx.paper_vertices("1/10")[0]
    found = cx.forced_vertex_certificate(c, lat, v1)
    assert cx.audit_forced_certificate(found, c, lat)
    by_hand = cx.ForcedVertexCertificate(1, v1, found.multiplicity, exact.vec(-1, 0, "-1/2"),
                                         Fraction(1, 4))
    assert cx.audit_forced_certificate(by_hand, c, lat)


def test_direction_at_v1_fails_at_v2():
    # at v2 that direction enters the translate by a1 - a2
    c = cx.build_c("1/10")
    lat = cx.build_lattice()
    v2 = cx.paper_vertices("1/10")[1]
    d = exact.vec(-1, 0, "-1/2")
    cone = cx._cone_from_facets(c, exact.sub(v2, lat.point((1, -1, 0))))
    assert cone.contains(d)


def test_product_measurements():
    c = cx.build_c("1/10")
    assert pt.volume(pt.product(c, pt.segment(0, 1))) == Fraction(16, 5)
    lifted = pt.product(c, pt.segment(-1, 1))
    lat = cx.build_lattice().direct_sum(lc.Lattice.from_rows([[2]]))
    assert len(lifted.vertices) == 24 and pt.volume(lifted) == Fraction(32, 5)
    assert abs(lat.det) == 6 and lc.density(lifted, lat).density == Fraction(16, 15)
