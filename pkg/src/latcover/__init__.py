"""Exact verification of lattice coverings, tilings and parallelohedra."""

from .counterexample import build_c, build_lattice, cylinder_lift, verify_counterexample
from .lattice import Lattice, audit_certificate, covers, density, mc_density, tiles
from .parallelohedra import classify2, classify3, fedorov_fixtures, minkowski_venkov_check
from .polytope import Polytope, from_halfspaces, hull, volume
from .theta import best_hexagon_at_center, lattice_from_hexagon, regular_ngon, theta_l

__version__ = "0.1.0"

__all__ = [
    "Lattice",
    "Polytope",
    "audit_certificate",
    "best_hexagon_at_center",
    "build_c",
    "build_lattice",
    "classify2",
    "classify3",
    "covers",
    "cylinder_lift",
    "density",
    "fedorov_fixtures",
    "from_halfspaces",
    "hull",
    "lattice_from_hexagon",
    "mc_density",
    "minkowski_venkov_check",
    "regular_ngon",
    "theta_l",
    "tiles",
    "verify_counterexample",
    "volume",
]
