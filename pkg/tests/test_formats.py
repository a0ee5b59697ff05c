import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latcover import formats
from latcover import lattice as lc
from latcover import parallelohedra as ph
from latcover import polytope as pt
from latcover.errors import ParseError


@given(st.fractions(max_denominator=10**6))
def test_rational_roundtrip(x):
    assert formats.parse_rational(formats.fmt(x)) == x


@pytest.mark.parametrize("bad", ["0.5", "1e3", "1/0", "a", "", "1/-2", True, 0.5, None, [1]])
def test_rational_rejects(bad):
    with pytest.raises(ParseError):
        formats.parse_rational(bad)


def test_rational_accepts_ints():
    assert formats.parse_rational(3) == 3
    assert formats.parse_rational(" -7/14 ") == Fraction(-1, 2)


def test_body_roundtrip():
    for body, lat in ph.fedorov_fixtures().values():
        assert formats.parse_body(formats.serialize_body(body)) == body
        assert formats.parse_lattice(formats.serialize_lattice(lat)) == lat


def test_high_dimensional_body_roundtrip():
    p = pt.product(pt.box((0, 0, 0), (1, 1, 1)), pt.segment(-1, 1))
    q = formats.parse_body(formats.serialize_body(p))
    assert q == p and pt.volume(q) == 2


def test_certificate_roundtrip():
    body, lat = ph.fedorov_fixtures()[ph.FedorovType.HEXAGONAL_PRISM]
    cert = lc.covers(body, lat)
    text = formats.serialize_certificate(cert)
    back = formats.parse_certificate(text)
    assert back == cert and lc.audit_certificate(back)
    assert formats.serialize_certificate(back) == text


def test_witness_roundtrip():
    sq = pt.box((0, 0), ("9/10", "9/10"))
    w = lc.covers(sq, lc.Lattice.integer(2))
    back = formats.parse_certificate(formats.serialize_certificate(w))
    assert back == w and lc.audit_witness(back)


def test_error_locations():
    with pytest.raises(ParseError) as err:
        formats.parse_body('{"dim": 2, "vertices": [["0", "0"], ["1", "0.5"], ["0", "1"]]}')
    assert err.value.where == "body.vertices[1][1]"
    with pytest.raises(ParseError) as err:
        formats.parse_body('{"dim": 2,\n "vertices": [}')
    assert err.value.where.startswith("line 2")
    with pytest.raises(ParseError) as err:
        formats.parse_lattice('{"dim": 2, "basis": [["1", "2"], ["2", "4"]]}')
    assert err.value.where == "lattice.basis"
    with pytest.raises(ParseError):
        formats.parse_body('{"dim": 2, "vertices": [["0", "0"], ["1", "1"], ["2", "2"]]}')
    with pytest.raises(ParseError):
        formats.parse_certificate('{"type": "Other", "body": {"dim": 1, "vertices": [["0"], ["1"]]},'
                                  ' "lattice": {"dim": 1, "basis": [["1"]]},'
                                  ' "domain": {"dim": 1, "vertices": [["0"], ["1"]]}}')


def test_output_is_canonical_json():
    body = ph.cube()
    text = formats.serialize_body(body)
    obj = json.loads(text)
    assert text == json.dumps(obj, indent=2, sort_keys=True) + "\n"
    assert all(isinstance(c, str) for v in obj["vertices"] for c in v)


def test_counterexample_report_json(report_tenth, lift_tenth):
    obj = json.loads(formats.serialize_counterexample(report_tenth, lift_tenth))
    assert obj["status"] == "Valid"
    assert obj["density"]["density"] == "16/15"
    assert obj["venkov"]["verdict"] == "FailFacetSymmetry"
    assert len(obj["forced_vertices"]) == 12
    assert obj["lift"]["dim"] == 4 and obj["lift"]["valid"]
    cert = formats.certificate_from_json(obj["covering"])
    assert lc.audit_certificate(cert)
