from fractions import Fraction

import pytest

from latcover import counterexample as cx
from latcover import lattice as lc
from latcover import parallelohedra as ph
from latcover import polytope as pt
from latcover.errors import FacetNotSymmetric, NotParallelohedron
from latcover.parallelohedra import FedorovType, Verdict

from oracles import leibniz_det, polytope_volume_3d

# (volume, belt lengths, facet census) for every fixture
EXPECTED = {
    FedorovType.PARALLELEPIPED: (1, (4, 4, 4), {4: 6}),
    FedorovType.HEXAGONAL_PRISM: (3, (4, 4, 4, 6), {4: 6, 6: 2}),
    FedorovType.RHOMBIC_DODECAHEDRON: (16, (6, 6, 6, 6), {4: 12}),
    FedorovType.ELONGATED: (32, (4, 6, 6, 6, 6), {4: 8, 6: 4}),
    FedorovType.TRUNCATED_OCTAHEDRON: (32, (6, 6, 6, 6, 6, 6), {4: 6, 6: 8}),
}


@pytest.mark.parametrize("kind", list(EXPECTED))
def test_fixture_measurements(kind):
    body, lat = ph.fedorov_fixtures()[kind]
    vol, belt_lengths, census = EXPECTED[kind]
    assert pt.volume(body) == polytope_volume_3d(body.vertices) == vol
    assert abs(leibniz_det(lat.basis)) == vol
    report = ph.minkowski_venkov_check(body)
    assert report.verdict is Verdict.PASS and report.passed
    assert report.belt_lengths == belt_lengths
    assert ph.facet_census(body) == census
    assert ph.classify3(body) is kind


@pytest.mark.parametrize("kind", list(EXPECTED))
def test_fixture_tiles(kind):
    body, lat = ph.fedorov_fixtures()[kind]
    verdict = lc.tiles(body, lat)
    assert verdict.tiles
    assert lc.audit_certificate(verdict.cover)


def test_belts_partition_edges():
    body = ph.truncated_octahedron()
    bs = ph.belts(body)
    fd = pt.face_data(body)
    # every edge lies in exactly one belt and a belt of length n holds 2n edges
    assert sum(2 * len(b) for b in bs) == len(fd.edges) * 2
    for b in bs:
        assert b[0] == min(b)


def test_counterexample_body_fails_facet_symmetry():
    c = cx.build_c("1/10")
    report = ph.minkowski_venkov_check(c)
    assert report.verdict is Verdict.FAIL_FACET_SYMMETRY
    assert report.body_symmetric
    assert len(report.asymmetric_facets) == 8
    assert all(len(c.incidence[f]) == 3 for f in report.asymmetric_facets)
    with pytest.raises(FacetNotSymmetric):
        ph.belts(c)
    with pytest.raises(NotParallelohedron):
        ph.classify3(c)


def test_asymmetric_body():
    tet = pt.hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert ph.minkowski_venkov_check(tet).verdict is Verdict.FAIL_BODY_SYMMETRY


def test_octagonal_prism_fails_belts():
    octagon = [(2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)]
    prism = pt.hull([(x, y, z) for x, y in octagon for z in (-1, 1)])
    report = ph.minkowski_venkov_check(prism)
    assert report.verdict is Verdict.FAIL_BELTS
    assert 8 in report.belt_lengths


def test_classify2():
    assert ph.classify2(pt.hull(ph.HEXAGON)) is FedorovType.CS_HEXAGON
    assert ph.classify2(pt.box((0, 0), (2, 1))) is FedorovType.PARALLELOGRAM
    with pytest.raises(NotParallelohedron):
        ph.classify2(pt.hull([(0, 0), (1, 0), (0, 1)]))
    with pytest.raises(NotParallelohedron):
        ph.classify2(pt.hull([(2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)]))


def test_edge_counts():
    assert len(pt.face_data(ph.truncated_octahedron()).edges) == 36
    assert pt.volume(pt.hull(ph.HEXAGON)) == Fraction(3, 2)
