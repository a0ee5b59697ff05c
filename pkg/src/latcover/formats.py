"""JSON file formats with bit-exact rationals.

Every rational is written as a string, ``"p/q"`` or ``"p"``.  Decimal
literals are rejected on input so that no precision is lost at the boundary.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import polytope as pt
from .errors import GeometryError, ParseError
from .exact import Halfspace
from .lattice import CoverCertificate, Lattice, UncoveredWitness
from .polytope import Polytope

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(value, where="value") -> Fraction:
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {value!r}", where) from None
    raise ParseError(f"expected a rational string like '11/10', got {value!r}", where)


def vector_json(v) -> list:
    return [fmt(c) for c in v]


def _vector(value, where, dim=None) -> tuple:
    if not isinstance(value, list):
        raise ParseError("expected a list of rationals", where)
    out = tuple(parse_rational(c, f"{where}[{i}]") for i, c in enumerate(value))
    if dim is not None and len(out) != dim:
        raise ParseError(f"expected {dim} coordinates, got {len(out)}", where)
    return out


def _field(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}", where)
    return obj[key]


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- bodies and lattices ------------------------------------------------------


def body_json(p: Polytope) -> dict:
    out = {"dim": p.dim, "vertices": [vector_json(v) for v in p.vertices]}
    if p.dim > 3:
        out["facets"] = [halfspace_json(h) for h in p.facets]
        out["volume"] = fmt(pt.volume(p))
    return out


def halfspace_json(h: Halfspace) -> dict:
    return {"normal": vector_json(h.normal), "offset": fmt(h.offset)}


def body_from_json(obj, where="body") -> Polytope:
    dim = _field(obj, "dim", where)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("dim must be a positive integer", f"{where}.dim")
    raw = _field(obj, "vertices", where)
    if not isinstance(raw, list):
        raise ParseError("expected a list of vertices", f"{where}.vertices")
    verts = [_vector(v, f"{where}.vertices[{i}]", dim) for i, v in enumerate(raw)]
    if dim > 3:
        facets = []
        for i, h in enumerate(_field(obj, "facets", where)):
            w = f"{where}.facets[{i}]"
            facets.append(Halfspace(_vector(_field(h, "normal", w), f"{w}.normal", dim),
                                    parse_rational(_field(h, "offset", w), f"{w}.offset")))
        vol = parse_rational(_field(obj, "volume", where), f"{where}.volume")
        return Polytope(dim, tuple(sorted(verts)), tuple(sorted(facets)), vol)
    try:
        return pt.hull(verts, dim)
    except GeometryError as exc:
        raise ParseError(str(exc), f"{where}.vertices") from None


def lattice_json(lat: Lattice) -> dict:
    return {"dim": lat.dim, "basis": [vector_json(r) for r in lat.basis]}


def lattice_from_json(obj, where="lattice") -> Lattice:
    dim = _field(obj, "dim", where)
    rows = _field(obj, "basis", where)
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f"expected {dim} basis rows", f"{where}.basis")
    basis = tuple(_vector(r, f"{where}.basis[{i}]", dim) for i, r in enumerate(rows))
    try:
        return Lattice(basis)
    except GeometryError as exc:
        raise ParseError(str(exc), f"{where}.basis") from None


def parse_body(text: str) -> Polytope:
    return body_from_json(_load(text))


def parse_lattice(text: str) -> Lattice:
    return lattice_from_json(_load(text))


def serialize_body(p: Polytope) -> str:
    return dumps(body_json(p))


def serialize_lattice(lat: Lattice) -> str:
    return dumps(lattice_json(lat))


# -- certificates ----------------------------------------------------------------


def certificate_json(cert) -> dict:
    if isinstance(cert, CoverCertificate):
        return {
            "type": "CoverCertificate",
            "body": body_json(cert.body),
            "lattice": lattice_json(cert.lattice),
            "domain": body_json(cert.domain),
            "cells": [{"translate": list(k), "cell": body_json(c)} for c, k in cert.cells],
        }
    if isinstance(cert, UncoveredWitness):
        return {
            "type": "UncoveredWitness",
            "body": body_json(cert.body),
            "lattice": lattice_json(cert.lattice),
            "domain": body_json(cert.domain),
            "point": vector_json(cert.point),
            "checked_translates": [list(k) for k in cert.checked_translates],
        }
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def _translate(value, where, dim):
    if (not isinstance(value, list) or len(value) != dim
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)):
        raise ParseError(f"expected {dim} integers", where)
    return tuple(value)


def certificate_from_json(obj, where="certificate"):
    kind = _field(obj, "type", where)
    body = body_from_json(_field(obj, "body", where), f"{where}.body")
    lat = lattice_from_json(_field(obj, "lattice", where), f"{where}.lattice")
    domain = body_from_json(_field(obj, "domain", where), f"{where}.domain")
    if kind == "CoverCertificate":
        cells = []
        for i, item in enumerate(_field(obj, "cells", where)):
            w = f"{where}.cells[{i}]"
            cells.append((body_from_json(_field(item, "cell", w), f"{w}.cell"),
                          _translate(_field(item, "translate", w), f"{w}.translate", lat.dim)))
        return CoverCertificate(body, lat, domain, tuple(cells))
    if kind == "UncoveredWitness":
        point = _vector(_field(obj, "point", where), f"{where}.point", lat.dim)
        ks = tuple(_translate(k, f"{where}.checked_translates[{i}]", lat.dim)
                   for i, k in enumerate(_field(obj, "checked_translates", where)))
        return UncoveredWitness(body, lat, domain, point, ks)
    raise ParseError(f"unknown certificate type {kind!r}", f"{where}.type")


def serialize_certificate(cert) -> str:
    return dumps(certificate_json(cert))


def parse_certificate(text: str):
    return certificate_from_json(_load(text))


# -- reports -------------------------------------------------------------------


def density_json(rep) -> dict:
    return {"volume": fmt(rep.volume), "det": fmt(rep.det), "density": fmt(rep.density)}


def venkov_json(rep) -> dict:
    return {
        "verdict": rep.verdict.value,
        "body_symmetric": rep.body_symmetric,
        "asymmetric_facets": list(rep.asymmetric_facets),
        "belt_lengths": list(rep.belt_lengths),
    }


def tiling_json(verdict) -> dict:
    return {"tiles": verdict.tiles, "reason": verdict.reason, "density": density_json(verdict.density)}


def forced_json(cert) -> dict:
    return {
        "vertex_index": cert.vertex_index,
        "vertex": vector_json(cert.vertex),
        "multiplicity": [list(k) for k in cert.multiplicity],
        "direction": vector_json(cert.direction),
        "t_witness": fmt(cert.t_witness),
    }


def counterexample_json(report, lift=None) -> dict:
    out = {
        "type": "CounterexampleReport",
        "status": report.status,
        "gamma": fmt(report.gamma),
        "body": body_json(report.body),
        "lattice": lattice_json(report.lattice),
        "translation_relation": report.relation_holds,
        "covering": certificate_json(report.covering),
        "covering_audit": report.covering_audit,
        "density": density_json(report.density),
        "forced_vertices": [forced_json(c) for c in report.forced],
        "forced_audit": list(report.forced_audit),
        "venkov": venkov_json(report.venkov),
        "tiling": tiling_json(report.tiling),
        "hull_idempotent": report.hull_idempotent,
        "hypotheses": list(report.hypotheses),
        "conclusion": report.conclusion,
        "failures": list(report.failures),
    }
    if lift is not None:
        out["lift"] = {
            "dim": lift.dim,
            "valid": lift.valid,
            "body": body_json(lift.body),
            "lattice": lattice_json(lift.lattice),
            "covering": certificate_json(lift.covering),
            "covering_audit": lift.covering_audit,
            "density": density_json(lift.density),
            "centrally_symmetric": lift.symmetric,
            "forced_vertices": [forced_json(c) for c in lift.forced],
            "forced_audit": list(lift.forced_audit),
            "failures": list(lift.failures),
        }
    return out


def hexagon_json(h) -> dict:
    return {"center": vector_json(h.center), "q1": vector_json(h.q1), "q2": vector_json(h.q2),
            "q3": vector_json(h.q3), "area": fmt(h.area)}


def theta_json(report) -> dict:
    return {
        "type": "ThetaReport",
        "polygon": body_json(report.polygon),
        "area": fmt(report.area),
        "theta_estimate": fmt(report.theta_estimate),
        "theta_float": float(report.theta_estimate),
        "hexagon": hexagon_json(report.hexagon),
        "lattice": lattice_json(report.lattice),
        "search_trace": [{"center": vector_json(c), "area": fmt(a)} for c, a in report.search_trace],
    }


def serialize_counterexample(report, lift=None) -> str:
    return dumps(counterexample_json(report, lift))
