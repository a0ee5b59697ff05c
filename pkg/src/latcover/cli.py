"""Command line interface.

Exit codes: 0 when the property is verified or the task is done, 1 when it is
refuted (a witness or refutation is written), 2 on usage or internal errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import counterexample as cx
from . import export, formats
from . import lattice as lc
from . import parallelohedra as ph
from . import polytope as pt
from . import theta
from .errors import GeometryError

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


def _read(path):
    return Path(path).read_text()


def _write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _rational(text):
    try:
        return formats.parse_rational(text, "argument")
    except GeometryError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_cover(args) -> int:
    body = formats.parse_body(_read(args.body))
    lat = formats.parse_lattice(_read(args.lattice))
    result = lc.covers(body, lat, args.max_cells)
    if args.emit_cert:
        _write(args.emit_cert, formats.serialize_certificate(result))
    if isinstance(result, lc.CoverCertificate):
        ok = lc.audit_certificate(result)
        print(f"covered: {len(result.cells)} cells, audit {'passed' if ok else 'FAILED'}")
        return EXIT_OK if ok else EXIT_ERROR
    ok = lc.audit_witness(result)
    print(f"not covered: witness point ({', '.join(formats.vector_json(result.point))}),"
          f" audit {'passed' if ok else 'FAILED'}")
    return EXIT_REFUTED if ok else EXIT_ERROR


def cmd_tile(args) -> int:
    body = formats.parse_body(_read(args.body))
    lat = formats.parse_lattice(_read(args.lattice))
    verdict = lc.tiles(body, lat, args.max_cells)
    if args.emit_cert and verdict.cover is not None:
        _write(args.emit_cert, formats.serialize_certificate(verdict.cover))
    print(f"tiles: {str(verdict.tiles).lower()} ({verdict.reason})")
    return EXIT_OK if verdict.tiles else EXIT_REFUTED


def cmd_parallelohedron(args) -> int:
    body = formats.parse_body(_read(args.body))
    if body.dim == 2:
        try:
            kind = ph.classify2(body)
        except GeometryError as exc:
            print(f"not a parallelohedron: {exc}")
            return EXIT_REFUTED
        print(f"parallelohedron: {kind.value}")
        return EXIT_OK
    report = ph.minkowski_venkov_check(body)
    out = formats.venkov_json(report)
    code = EXIT_OK if report.passed else EXIT_REFUTED
    if report.passed and args.classify:
        try:
            out["fedorov_type"] = ph.classify3(body).value
        except GeometryError as exc:
            out["fedorov_type"] = None
            out["error"] = str(exc)
            code = EXIT_REFUTED
    if args.report:
        _write(args.report, formats.dumps(out))
    print(f"Minkowski-Venkov: {report.verdict.value}"
          + (f", type {out['fedorov_type']}" if out.get("fedorov_type") else ""))
    if report.asymmetric_facets:
        print(f"  {len(report.asymmetric_facets)} facets are not centrally symmetric")
    return code


def cmd_counterexample(args) -> int:
    start = time.perf_counter()
    report = cx.verify_counterexample(args.gamma, args.max_cells)
    lift = None
    if args.lift_dim is not None and report.valid:
        lift = cx.cylinder_lift(report, args.lift_dim)
    elapsed = time.perf_counter() - start
    if args.report:
        _write(args.report, formats.serialize_counterexample(report, lift))
    d = report.density
    print(f"gamma {formats.fmt(report.gamma)}: {report.status}")
    print(f"  covering certificate: {len(getattr(report.covering, 'cells', ()))} cells,"
          f" audit {'passed' if report.covering_audit else 'FAILED'}")
    print(f"  density: volume {formats.fmt(d.volume)} / det {formats.fmt(d.det)} = {formats.fmt(d.density)}")
    print(f"  forced vertices: {sum(report.forced_audit)}/{len(report.body.vertices)}")
    print(f"  Minkowski-Venkov: {report.venkov.verdict.value}"
          f" ({len(report.venkov.asymmetric_facets)} asymmetric facets)")
    print(f"  tiles(C, L): {str(report.tiling.tiles).lower()} ({report.tiling.reason})")
    for f in report.failures:
        print(f"  failure: {f}")
    if lift is not None:
        print(f"  lift to dimension {lift.dim}: {'valid' if lift.valid else 'INVALID'},"
              f" density {formats.fmt(lift.density.density)},"
              f" {sum(lift.forced_audit)}/{len(lift.body.vertices)} forced vertices")
    print(f"  elapsed {elapsed:.1f}s")
    ok = report.valid and (lift is None or lift.valid)
    if args.lift_dim is not None and lift is None:
        ok = False
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_theta2(args) -> int:
    poly = formats.parse_body(_read(args.polygon))
    report = theta.theta_l(poly, args.grid, args.tol)
    if args.svg:
        _write(args.svg, export.export_theta_svg(report))
    if args.report:
        _write(args.report, formats.dumps(formats.theta_json(report)))
    print(f"theta_l <= {formats.fmt(report.theta_estimate)} ~ {float(report.theta_estimate):.9f}"
          f" ({len(report.search_trace)} centers evaluated)")
    return EXIT_OK


def cmd_export(args) -> int:
    body = formats.parse_body(_read(args.body))
    fmt = args.format or ("svg" if body.dim == 2 else "off")
    if fmt == "svg":
        if not args.lattice:
            raise GeometryError("SVG export needs --lattice")
        text = export.export_svg(body, formats.parse_lattice(_read(args.lattice)), args.copies)
    else:
        text = export.export_off(body, args.paper_coords)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def fixture_files() -> dict:
    """File name -> JSON text for every bundled body and lattice."""
    out = {}
    for kind, (body, lat) in ph.fedorov_fixtures().items():
        name = kind.name.lower()
        out[f"{name}.json"] = formats.serialize_body(body)
        out[f"{name}_lattice.json"] = formats.serialize_lattice(lat)
    c = cx.build_c("1/10")
    out["c_gamma.json"] = formats.serialize_body(c)
    out["c_gamma_shrunk.json"] = formats.serialize_body(pt.scaled(c, "99/100"))
    out["lambda.json"] = formats.serialize_lattice(cx.build_lattice())
    out["triangle.json"] = formats.serialize_body(theta.polygon([(0, 0), (1, 0), (0, 1)]))
    out["square.json"] = formats.serialize_body(theta.polygon([(0, 0), (1, 0), (1, 1), (0, 1)]))
    out["hexagon.json"] = formats.serialize_body(theta.polygon(ph.HEXAGON))
    out["ngon96.json"] = formats.serialize_body(theta.regular_ngon(96))
    return out


def cmd_fixtures(args) -> int:
    root = Path(args.emit)
    files = fixture_files()
    for name, text in files.items():
        _write(root / name, text)
    print(f"wrote {len(files)} files to {root}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (("cover", cmd_cover, "verify that body + lattice covers space"),
                              ("tile", cmd_tile, "verify that body + lattice tiles space")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--body", required=True)
        p.add_argument("--lattice", required=True)
        p.add_argument("--emit-cert", metavar="PATH")
        p.add_argument("--max-cells", type=int, default=lc.DEFAULT_MAX_CELLS)
        p.set_defaults(func=func)

    p = sub.add_parser("parallelohedron", help="Minkowski-Venkov check and Fedorov type")
    p.add_argument("--body", required=True)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(func=cmd_parallelohedron)

    p = sub.add_parser("counterexample", help="verify the twelve-vertex counterexample")
    p.add_argument("--gamma", type=_rational, required=True, help="rational p/q in (0, 1)")
    p.add_argument("--lift-dim", type=int)
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--max-cells", type=int, default=lc.DEFAULT_MAX_CELLS)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("theta2", help="planar lattice covering density of a polygon")
    p.add_argument("--polygon", required=True)
    p.add_argument("--grid", type=int, default=theta.DEFAULT_GRID)
    p.add_argument("--tol", type=_rational, default=theta.DEFAULT_TOL)
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(func=cmd_theta2)

    p = sub.add_parser("export", help="SVG of a planar tiling or OFF mesh of a solid")
    p.add_argument("--body", required=True)
    p.add_argument("--lattice")
    p.add_argument("--format", choices=("svg", "off"))
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--paper-coords", action="store_true",
                   help="stretch y by sqrt(3) back to the original hexagon coordinates")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("fixtures", help="write the bundled bodies and lattices as JSON")
    p.add_argument("--emit", required=True, metavar="DIR")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
