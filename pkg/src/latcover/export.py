"""Render-only exporters: SVG pictures of planar tilings, OFF meshes of solids.

Coordinates are converted to floats here and nowhere else; nothing reads
these files back.
"""

from __future__ import annotations

import itertools
import math

from . import exact
from .errors import DimensionUnsupported
from .lattice import Lattice
from .polytope import Polytope

_STYLE_TILE = 'fill="#dde8f5" fill-opacity="0.55" stroke="#2a4d7a" stroke-width="{w}"'
_STYLE_BODY = 'fill="none" stroke="#b03020" stroke-width="{w}"'
_STYLE_HEX = 'fill="#f3c969" fill-opacity="0.7" stroke="#8a5a00" stroke-width="{w}"'


def _f(x) -> str:
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _points_attr(pts) -> str:
    # SVG y axis points down
    return " ".join(f"{_f(x)},{_f(-y)}" for x, y in pts)


def _ccw_points(p: Polytope):
    return [p.vertices[i] for i in p.cycle]


def export_svg(body: Polytope, lat: Lattice, copies: int = 1,
               outline: Polytope | None = None, highlight: Polytope | None = None) -> str:
    """Body translates over a ``(2 copies + 1)^2`` block of lattice points.

    ``outline`` is drawn unfilled on top (e.g. the polygon K whose density is
    being estimated) and ``highlight`` filled (e.g. the inscribed hexagon).
    """
    if body.dim != 2 or lat.dim != 2:
        raise DimensionUnsupported("SVG export draws planar tilings")
    base = _ccw_points(body)
    polys = []
    for k in itertools.product(range(-copies, copies + 1), repeat=2):
        shift = lat.point(k)
        polys.append([exact.add(v, shift) for v in base])
    extra = [p for p in (outline, highlight) if p is not None]
    xs = [float(v[0]) for poly in polys for v in poly] + [float(v[0]) for p in extra for v in p.vertices]
    ys = [float(v[1]) for poly in polys for v in poly] + [float(v[1]) for p in extra for v in p.vertices]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    pad = 0.05 * span
    w = 0.004 * span
    x0, y0 = min(xs) - pad, -max(ys) - pad
    width, height = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(width)} {_f(height)}">',
    ]
    for poly in polys:
        lines.append(f'  <polygon points="{_points_attr(poly)}" {_STYLE_TILE.format(w=_f(w))}/>')
    if highlight is not None:
        lines.append(f'  <polygon points="{_points_attr(_ccw_points(highlight))}" '
                     f'{_STYLE_HEX.format(w=_f(w))}/>')
    if outline is not None:
        lines.append(f'  <polygon points="{_points_attr(_ccw_points(outline))}" '
                     f'{_STYLE_BODY.format(w=_f(2 * w))}/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_theta_svg(report, copies: int = 1) -> str:
    hexagon = report.hexagon.polygon()
    return export_svg(hexagon, report.lattice, copies, outline=report.polygon, highlight=hexagon)


def export_off(body: Polytope, paper_coords: bool = False) -> str:
    """OFF mesh; ``paper_coords`` stretches y by sqrt(3) to undo the rational chart."""
    if body.dim != 3:
        raise DimensionUnsupported("OFF export needs a 3-polytope")
    ys = math.sqrt(3) if paper_coords else 1.0
    lines = ["OFF", f"{len(body.vertices)} {len(body.facets)} 0"]
    for x, y, z in body.vertices:
        lines.append(f"{_f(x)} {_f(float(y) * ys)} {_f(z)}")
    for cyc in body.incidence:
        lines.append(" ".join(str(i) for i in (len(cyc), *cyc)))
    return "\n".join(lines) + "\n"
