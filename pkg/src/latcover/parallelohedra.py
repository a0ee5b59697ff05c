"""Belts, Minkowski-Venkov conditions and Fedorov classification.

The three necessary conditions for a 3-polytope to tile by translations are
checked in order: the body is centrally symmetric, every facet is centrally
symmetric, and every belt has 4 or 6 facets.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from . import polytope as pt
from .errors import DimensionUnsupported, FacetNotSymmetric, NotParallelohedron, Unclassified
from .lattice import Lattice
from .polytope import Polytope


class Verdict(str, enum.Enum):
    PASS = "Pass"
    FAIL_BODY_SYMMETRY = "FailBodySymmetry"
    FAIL_FACET_SYMMETRY = "FailFacetSymmetry"
    FAIL_BELTS = "FailBelts"


class FedorovType(str, enum.Enum):
    PARALLELEPIPED = "Parallelepiped"
    HEXAGONAL_PRISM = "HexagonalPrism"
    RHOMBIC_DODECAHEDRON = "RhombicDodecahedron"
    ELONGATED = "ElongatedType"
    TRUNCATED_OCTAHEDRON = "TruncatedOctahedron"
    PARALLELOGRAM = "Parallelogram"
    CS_HEXAGON = "CsHexagon"


# (quadrilaterals, hexagons) -> type
_CENSUS = {
    (6, 0): FedorovType.PARALLELEPIPED,
    (6, 2): FedorovType.HEXAGONAL_PRISM,
    (12, 0): FedorovType.RHOMBIC_DODECAHEDRON,
    (8, 4): FedorovType.ELONGATED,
    (6, 8): FedorovType.TRUNCATED_OCTAHEDRON,
}


@dataclass(frozen=True)
class VenkovReport:
    body_symmetric: bool
    asymmetric_facets: tuple
    belt_lengths: tuple
    verdict: Verdict

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


def _cycle_symmetric(points) -> bool:
    n = len(points)
    if n % 2:
        return False
    m = n // 2
    s = exact.add(points[0], points[m])
    return all(exact.add(points[i], points[i + m]) == s for i in range(1, m))


def asymmetric_facets(p: Polytope) -> tuple:
    if p.dim != 3:
        raise DimensionUnsupported("facet symmetry is checked on 3-polytopes")
    return tuple(f for f, cyc in enumerate(p.incidence)
                 if not _cycle_symmetric([p.vertices[i] for i in cyc]))


def belts(p: Polytope) -> list:
    """Cyclic facet sequences, one per class of parallel edges.

    Each belt starts at its smallest facet index and proceeds towards the
    smaller of that facet's two belt neighbours.
    """
    bad = asymmetric_facets(p)
    if bad:
        raise FacetNotSymmetric(f"facets {list(bad)} are not centrally symmetric")
    fd = pt.face_data(p)

    def opposite(f, e):
        es = fd.facet_edges[f]
        return es[(es.index(e) + len(es) // 2) % len(es)]

    def other(f, e):
        a, b = fd.edge_facets[e]
        return b if a == f else a

    seen = set()
    out = []
    for e0 in fd.edges:
        if e0 in seen:
            continue
        f = fd.edge_facets[e0][0]
        e = e0
        walk = []
        while True:
            seen.add(e)
            walk.append(f)
            e = opposite(f, e)
            seen.add(e)
            f = other(f, e)
            if e == e0:
                break
        out.append(_canonical_cycle(walk))
    return sorted(set(out), key=lambda b: (len(b), b))


def _canonical_cycle(walk):
    i = walk.index(min(walk))
    fwd = walk[i:] + walk[:i]
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


def minkowski_venkov_check(p: Polytope) -> VenkovReport:
    if p.dim != 3:
        raise DimensionUnsupported("the belt conditions are checked on 3-polytopes")
    sym = pt.is_centrally_symmetric(p) is not None
    bad = asymmetric_facets(p)
    if not sym:
        return VenkovReport(False, bad, (), Verdict.FAIL_BODY_SYMMETRY)
    if bad:
        return VenkovReport(True, bad, (), Verdict.FAIL_FACET_SYMMETRY)
    lengths = tuple(len(b) for b in belts(p))
    ok = all(n in (4, 6) for n in lengths)
    return VenkovReport(True, (), lengths, Verdict.PASS if ok else Verdict.FAIL_BELTS)


def facet_census(p: Polytope) -> dict:
    return dict(sorted(Counter(len(c) for c in p.incidence).items()))


def classify3(p: Polytope) -> FedorovType:
    report = minkowski_venkov_check(p)
    if not report.passed:
        raise NotParallelohedron(f"Minkowski-Venkov check failed: {report.verdict.value}")
    census = facet_census(p)
    key = (census.get(4, 0), census.get(6, 0))
    if sum(census.values()) != sum(key) or key not in _CENSUS:
        raise Unclassified(census)
    return _CENSUS[key]


def classify2(p: Polytope) -> FedorovType:
    if p.dim != 2:
        raise DimensionUnsupported("classify2 expects a polygon")
    if pt.is_centrally_symmetric(p) is None:
        raise NotParallelohedron("polygon is not centrally symmetric")
    n = len(p.vertices)
    if n == 4:
        return FedorovType.PARALLELOGRAM
    if n == 6:
        return FedorovType.CS_HEXAGON
    raise NotParallelohedron(f"a centrally symmetric {n}-gon does not tile the plane")


# -- fixtures ------------------------------------------------------------------

HALF = Fraction(1, 2)
HEXAGON = ((1, 0), (HALF, HALF), (-HALF, HALF), (-1, 0), (-HALF, -HALF), (HALF, -HALF))
HEX_LATTICE_3D = ((Fraction(3, 2), HALF, 0), (Fraction(3, 2), -HALF, 0), (0, 0, 2))


def _signed_perms(base):
    pts = set()
    for perm in itertools.permutations(base):
        for signs in itertools.product((1, -1), repeat=3):
            pts.add(tuple(s * c for s, c in zip(signs, perm)))
    return pts


def cube() -> Polytope:
    return pt.hull(itertools.product((0, 1), repeat=3))


def hexagonal_prism() -> Polytope:
    return pt.hull([(x, y, z) for x, y in HEXAGON for z in (-1, 1)])


def rhombic_dodecahedron() -> Polytope:
    pts = set(itertools.product((1, -1), repeat=3)) | _signed_perms((2, 0, 0))
    return pt.hull(pts)


def elongated_dodecahedron() -> Polytope:
    """Rhombic dodecahedron plus the vertical segment [-1, 1] e_z."""
    rd = rhombic_dodecahedron()
    pts = [(x, y, z + s) for x, y, z in rd.vertices for s in (-1, 1)]
    return pt.hull(pts)


def truncated_octahedron() -> Polytope:
    return pt.hull(_signed_perms((0, 1, 2)))


def fedorov_fixtures() -> dict:
    """The five Fedorov solids with lattices they tile with, keyed by type."""
    return {
        FedorovType.PARALLELEPIPED: (cube(), Lattice.integer(3)),
        FedorovType.HEXAGONAL_PRISM: (hexagonal_prism(), Lattice.from_rows(HEX_LATTICE_3D)),
        FedorovType.RHOMBIC_DODECAHEDRON: (
            rhombic_dodecahedron(), Lattice.from_rows([(2, 2, 0), (2, 0, 2), (0, 2, 2)])),
        FedorovType.ELONGATED: (
            elongated_dodecahedron(), Lattice.from_rows([(2, 2, 0), (2, 0, 4), (0, 2, 4)])),
        FedorovType.TRUNCATED_OCTAHEDRON: (
            truncated_octahedron(), Lattice.from_rows([(4, 0, 0), (0, 4, 0), (2, 2, 2)])),
    }
