import json

import pytest

from curvestab.certificate import CERTIFICATE_VERSION, CertificateError, read_certificate, write_certificate
from curvestab.curves import preset_curve
from curvestab.drawer import draw_all
from curvestab.gallery import builtin_graph, random_maximal_planar
from curvestab.verify import check_adequate


@pytest.fixture(scope="module")
def k4_run():
    return draw_all(builtin_graph("k4"), preset_curve("semicircle"))


@pytest.fixture(scope="module")
def k4_text(k4_run):
    return write_certificate(k4_run.traces, k4_run.state, k4_run.ordering, {"delta": 0.2})


def test_round_trip_traces(k4_run, k4_text):
    cert = read_certificate(k4_text)
    assert cert.traces == tuple(k4_run.traces)
    assert cert.sequence == k4_run.ordering.sequence
    assert cert.steps == k4_run.ordering.steps
    assert cert.options == {"delta": 0.2}


def test_round_trip_is_bit_exact(k4_run, k4_text):
    cert = read_certificate(k4_text)
    s, t = k4_run.state, cert.state
    assert t.positions == s.positions
    assert t.boundary == s.boundary and t.edges == s.edges
    assert t.edge_arcs == s.edge_arcs and t.spanned_arc == s.spanned_arc
    assert t.curve.spec() == s.curve.spec()
    assert write_certificate(cert.traces, cert.state, k4_run.ordering, cert.options) == k4_text


def test_reverified_after_round_trip(k4_run, k4_text):
    assert check_adequate(read_certificate(k4_text).state) == check_adequate(k4_run.state)


def test_larger_run_round_trip():
    r = draw_all(random_maximal_planar(12, seed=1), preset_curve("stadium"))
    cert = read_certificate(write_certificate(r.traces, r.state, r.ordering))
    assert cert.state.positions == r.state.positions
    assert check_adequate(cert.state).passed


def test_version_field(k4_text):
    assert json.loads(k4_text)["version"] == CERTIFICATE_VERSION


def test_truncated_file(k4_text):
    with pytest.raises(CertificateError):
        read_certificate(k4_text[: len(k4_text) // 2])


@pytest.mark.parametrize("edit", [
    lambda d: d.pop("traces"),
    lambda d: d.update(version=99),
    lambda d: d["state"].update(positions={"a": [0.0]}),
    lambda d: d["state"].update(boundary=["zz"]),
    lambda d: d["state"].update(edge_arcs=[[1, 2, 3]]),
    lambda d: d["state"].update(spanned_arc=[0.0]),
    lambda d: d.update(curve={"kind": "spiral"}),
    lambda d: d["traces"][0].update(step="three"),
])
def test_schema_mismatch(k4_text, edit):
    doc = json.loads(k4_text)
    edit(doc)
    with pytest.raises(CertificateError):
        read_certificate(json.dumps(doc))
