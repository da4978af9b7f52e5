"""JSON certificates of a drawing run: the step traces plus the final disk.

Floats are written with ``repr`` precision (17 significant digits), so a
certificate reads back to bit-identical numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .curves import ArcInterval, ConvexCurveModel, CurveError, curve_from_spec
from .drawer import DiskState, StepTrace

__all__ = ["CERTIFICATE_VERSION", "CertificateError", "Certificate", "write_certificate", "read_certificate"]

CERTIFICATE_VERSION = 1


class CertificateError(ValueError):
    """The file does not follow the certificate schema."""


@dataclass(frozen=True)
class Certificate:
    traces: Tuple[StepTrace, ...]
    state: DiskState
    sequence: Tuple[str, ...] = ()
    steps: Tuple[Tuple[str, ...], ...] = ()
    options: Optional[dict] = None

    @property
    def curve(self) -> ConvexCurveModel:
        return self.state.curve

    @property
    def positions(self) -> Dict[str, Tuple[float, float]]:
        return dict(self.state.positions)


def _trace_dict(t: StepTrace) -> dict:
    return {
        "step": t.step,
        "kind": t.kind,
        "vertex": t.vertex,
        "epsilon": t.epsilon,
        "halvings": t.halvings,
        "aux": dict(t.aux),
    }


def write_certificate(traces, state: DiskState, ordering=None, options=None) -> str:
    """Serialise a run to JSON text with sorted keys."""
    doc = {
        "version": CERTIFICATE_VERSION,
        "curve": state.curve.spec(),
        "traces": [_trace_dict(t) for t in traces],
        "state": {
            "positions": {v: [p[0], p[1]] for v, p in state.positions.items()},
            "boundary": list(state.boundary),
            "edges": [list(e) for e in state.edges],
            "edge_arcs": [[e[0], e[1], a.t_start, a.t_end] for e, a in state.edge_arcs.items()],
            "spanned_arc": [state.spanned_arc.t_start, state.spanned_arc.t_end],
        },
    }
    if ordering is not None:
        doc["ordering"] = {"sequence": list(ordering.sequence), "steps": [list(p) for p in ordering.steps]}
    if options is not None:
        doc["options"] = options
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _need(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise CertificateError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise CertificateError(f"field {key!r} has the wrong type")
    return val


def _point(v) -> Tuple[float, float]:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(c, (int, float)) for c in v)):
        raise CertificateError(f"bad point {v!r}")
    return (float(v[0]), float(v[1]))


def read_certificate(text: str) -> Certificate:
    """Parse and validate certificate text; raises :class:`CertificateError`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not valid JSON: {exc}") from exc
    version = _need(doc, "version", int)
    if version != CERTIFICATE_VERSION:
        raise CertificateError(f"unsupported certificate version {version}")
    try:
        curve = curve_from_spec(_need(doc, "curve", dict))
    except CurveError as exc:
        raise CertificateError(str(exc)) from exc

    traces: List[StepTrace] = []
    for t in _need(doc, "traces", list):
        traces.append(StepTrace(
            step=_need(t, "step", int),
            kind=_need(t, "kind", str),
            vertex=_need(t, "vertex", str),
            epsilon=float(_need(t, "epsilon", (int, float))),
            halvings=_need(t, "halvings", int),
            aux=_need(t, "aux", dict),
        ))

    st = _need(doc, "state", dict)
    positions = {str(v): _point(p) for v, p in _need(st, "positions", dict).items()}
    boundary = tuple(_need(st, "boundary", list))
    edges = tuple(tuple(e) for e in _need(st, "edges", list))
    arcs = {}
    for row in _need(st, "edge_arcs", list):
        if not (isinstance(row, list) and len(row) == 4):
            raise CertificateError(f"bad edge arc {row!r}")
        arcs[(row[0], row[1])] = ArcInterval(float(row[2]), float(row[3]))
    span = _need(st, "spanned_arc", list)
    if len(span) != 2:
        raise CertificateError("bad spanned arc")
    for v in boundary:
        if v not in positions:
            raise CertificateError(f"boundary vertex {v!r} has no position")
    if any(len(e) != 2 or e[0] not in positions or e[1] not in positions for e in edges):
        raise CertificateError("edge with unknown endpoint")
    state = DiskState(curve, positions, boundary, edges, arcs, ArcInterval(float(span[0]), float(span[1])))

    order = doc.get("ordering") or {}
    return Certificate(
        tuple(traces),
        state,
        tuple(order.get("sequence", ())),
        tuple(tuple(p) for p in order.get("steps", ())),
        doc.get("options"),
    )
