"""Checks of a drawing against a curve that use only positions and the curve.

Nothing here reads the drawer's bookkeeping: every crossing is recomputed
from the segment endpoints, so these reports can audit the construction.
Findings are plain data, sorted canonically, and serialise to JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .curves import EXTERIOR, ArcInterval, ConvexCurveModel
from .geometry import on_open_segment, orient, points_in_polygon, signed_area, winding_number
from .planegraph import PlaneGraph

__all__ = [
    "Finding",
    "AdequacyReport",
    "FaceWitness",
    "FaceCrossingReport",
    "PlanarityReport",
    "EdgeReport",
    "check_adequate",
    "check_all_faces_crossed",
    "check_straightline_plane",
    "check_edges",
    "WITNESS_TOL",
]

Point = Tuple[float, float]

#: absolute slack for witnesses on unit-scale scenes
WITNESS_TOL = 1e-7


@dataclass(frozen=True)
class Finding:
    """One violation.  ``tag`` names the rule, ``ids`` the vertices or edges involved."""

    tag: str
    ids: Tuple = ()
    value: Optional[float] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"tag": self.tag, "ids": _listify(self.ids), "value": self.value, "detail": self.detail}


def _listify(x):
    if isinstance(x, (list, tuple)):
        return [_listify(v) for v in x]
    return x


def _sort_findings(fs: List[Finding]) -> List[Finding]:
    return sorted(fs, key=lambda f: (f.tag, json.dumps(_listify(f.ids)), f.detail))


@dataclass(frozen=True)
class AdequacyReport:
    passed: bool
    violations: Tuple[Finding, ...]
    spanned_curvature: float
    crossing_counts: Mapping[str, int] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "passed": self.passed,
            "spanned_curvature": self.spanned_curvature,
            "crossing_counts": dict(sorted(self.crossing_counts.items())),
            "violations": [f.to_dict() for f in self.violations],
        }, sort_keys=True)


@dataclass(frozen=True)
class FaceWitness:
    face: Tuple[str, ...]
    crossed: bool
    kind: Optional[str] = None          # "edge" or "interior"
    edge: Optional[Tuple[str, str]] = None
    point: Optional[Point] = None


@dataclass(frozen=True)
class FaceCrossingReport:
    faces: Tuple[FaceWitness, ...]

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_crossed(self) -> int:
        return sum(1 for f in self.faces if f.crossed)

    @property
    def all_crossed(self) -> bool:
        return self.n_crossed == self.n_faces

    def to_json(self) -> str:
        return json.dumps({
            "crossed": self.n_crossed,
            "faces": self.n_faces,
            "witnesses": [_listify(list(asdict(w).values())) for w in self.faces],
        }, sort_keys=True)


@dataclass(frozen=True)
class PlanarityReport:
    passed: bool
    violations: Tuple[Finding, ...]

    def to_json(self) -> str:
        return json.dumps({"passed": self.passed, "violations": [f.to_dict() for f in self.violations]},
                          sort_keys=True)


@dataclass(frozen=True)
class EdgeReport:
    mode: str
    counts: Mapping[Tuple[str, str], int]

    @property
    def hit(self) -> List[Tuple[str, str]]:
        return [e for e, c in self.counts.items() if c > 0]

    @property
    def n_hit(self) -> int:
        return len(self.hit)

    @property
    def all_hit(self) -> bool:
        return self.n_hit == len(self.counts)

    def to_json(self) -> str:
        return json.dumps({"mode": self.mode,
                           "counts": [[list(e), c] for e, c in sorted(self.counts.items())]},
                          sort_keys=True)


# -- adequacy ----------------------------------------------------------------------


def _arc_samples(curve: ConvexCurveModel, t0: float, t1: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    ts = t0 + (t1 - t0) * (np.arange(n) + 0.5) / n
    return curve.points_at(ts)


def _arc_meets_polygon(curve, t0, t1, poly, n0: int = 128, n_max: int = 4096) -> bool:
    """Sampled test whether the open arc (t0, t1) enters the polygon.

    The sample count doubles from ``n0`` until two resolutions agree.
    """
    n = n0
    prev = None
    while True:
        xs, ys = _arc_samples(curve, t0, t1, n)
        inside = bool(points_in_polygon(xs, ys, poly).any())
        if inside == prev or n >= n_max:
            return inside
        prev = inside
        n *= 2


def check_adequate(state, curvature_margin: float = 1e-6, samples: int = 128) -> AdequacyReport:
    """Audit one disk drawing against every clause of adequacy.

    ``state`` needs ``curve``, ``positions``, ``boundary`` (counterclockwise,
    base edge first) and ``edges``.  The spanned arc is rebuilt from the
    crossings of all disk edges, and must turn by less than a half turn by
    at least ``curvature_margin``.
    """
    curve: ConvexCurveModel = state.curve
    pos = state.positions
    bnd = list(state.boundary)
    findings: List[Finding] = []

    for v in bnd:
        side = curve.hull_side(pos[v])
        if side != EXTERIOR:
            findings.append(Finding("BoundaryVertexNotExterior", (v,), curve.hull_value(pos[v]), side))

    path = bnd[1:] + [bnd[0]]
    poly = [pos[v] for v in bnd]
    counts: Dict[str, int] = {}
    arcs: List[Tuple[ArcInterval, Tuple[str, str]]] = []
    for a, b in zip(path, path[1:]):
        cs = curve.proper_crossings(pos[a], pos[b])
        counts[f"{a}-{b}"] = len(cs)
        if len(cs) != 2:
            findings.append(Finding("WrongCrossingCount", (a, b), float(len(cs))))
            continue
        arc = ArcInterval(cs[0].t, cs[1].t)
        arcs.append((arc, (a, b)))
        if _arc_meets_polygon(curve, arc.t_start, arc.t_end, poly, samples):
            findings.append(Finding("ArcNotDisjointFromDisk", (a, b)))

    arcs.sort(key=lambda x: x[0].t_start)
    for (a1, e1), (a2, e2) in zip(arcs, arcs[1:]):
        if a1.overlaps(a2):
            findings.append(Finding("ArcsOverlap", (e1, e2)))

    ts: List[float] = []
    for a, b in state.edges:
        ts.extend(c.t for c in curve.segment_crossings(pos[a], pos[b]))
    spanned = curve.arc_curvature(ArcInterval(min(ts), max(ts))) if ts else 0.0
    if not spanned < math.pi - curvature_margin:
        findings.append(Finding("CurvatureBudgetExceeded", (), spanned))

    findings = _sort_findings(findings)
    return AdequacyReport(not findings, tuple(findings), spanned, counts)


# -- faces -------------------------------------------------------------------------


def _require_positions(g: PlaneGraph, positions) -> None:
    missing = [v for v in g.vertices if v not in positions]
    if missing:
        raise KeyError(f"missing positions for {missing}")


def check_all_faces_crossed(g: PlaneGraph, positions: Mapping[str, Point], curve: ConvexCurveModel) -> FaceCrossingReport:
    """Whether the curve meets the open region of each face, outer face included.

    A proper crossing of a face edge is a witness for both faces beside it.
    A face with no crossed edge can still contain the curve outright; that
    is detected by a winding-number test on one curve point.
    """
    _require_positions(g, positions)
    crossing: Dict[frozenset, Tuple[Tuple[str, str], Point]] = {}
    for u, v in g.edges():
        cs = curve.proper_crossings(positions[u], positions[v])
        if cs:
            crossing[frozenset((u, v))] = ((u, v), cs[0].point)

    probe = curve.point_at(0.5 * (curve.t_lo + curve.t_hi))
    outer = g.outer_face_index()
    out = []
    for k, face in enumerate(g.faces()):
        wit = None
        for i in range(len(face)):
            e = frozenset((face[i], face[(i + 1) % len(face)]))
            if e in crossing:
                edge, pt = crossing[e]
                wit = FaceWitness(tuple(face), True, "edge", edge, pt)
                break
        if wit is None:
            poly = [positions[v] for v in face]
            wn = winding_number(probe, poly)
            on_edge = any(on_open_segment(probe, poly[i - 1], poly[i]) or probe == poly[i] for i in range(len(poly)))
            # bounded faces trace counterclockwise, the outer face clockwise
            inside = (wn == 1) if k != outer else (wn == 0)
            if inside and not on_edge:
                wit = FaceWitness(tuple(face), True, "interior", None, probe)
            else:
                wit = FaceWitness(tuple(face), False)
        out.append(wit)
    return FaceCrossingReport(tuple(out))


# -- planarity -------------------------------------------------------------------


def check_straightline_plane(g: PlaneGraph, positions: Mapping[str, Point]) -> PlanarityReport:
    """Whether the straight-line drawing realises the embedding without crossings."""
    _require_positions(g, positions)
    findings: List[Finding] = []
    edges = list(g.edges())
    P = np.array([positions[u] for u, _ in edges], dtype=float)
    Q = np.array([positions[v] for _, v in edges], dtype=float)

    # vectorised screen, exact predicates on the survivors
    def cross(ax, ay, bx, by):
        return ax * by - ay * bx

    dx = Q[:, 0] - P[:, 0]
    dy = Q[:, 1] - P[:, 1]
    rx = P[None, :, 0] - P[:, None, 0]
    ry = P[None, :, 1] - P[:, None, 1]
    sx = Q[None, :, 0] - P[:, None, 0]
    sy = Q[None, :, 1] - P[:, None, 1]
    o1 = cross(dx[:, None], dy[:, None], rx, ry)
    o2 = cross(dx[:, None], dy[:, None], sx, sy)
    mag = np.abs(dx[:, None]) * (np.abs(rx) + np.abs(sx)) + np.abs(dy[:, None]) * (np.abs(ry) + np.abs(sy))
    sure_apart = (o1 * o2) > (1e-12 * mag) ** 2
    sure_apart = sure_apart | sure_apart.T
    idx = np.argwhere(~sure_apart)
    names = {v: i for i, v in enumerate(g.vertices)}
    for i, j in idx:
        if i >= j:
            continue
        (a, b), (c, d) = edges[i], edges[j]
        if {a, b} & {c, d}:
            # adjacent edges only overlap if collinear and pointing the same way
            shared = ({a, b} & {c, d}).pop()
            x = b if a == shared else a
            y = d if c == shared else c
            ps, px, py = positions[shared], positions[x], positions[y]
            if orient(ps, px, py) == 0 and (px[0] - ps[0]) * (py[0] - ps[0]) + (px[1] - ps[1]) * (py[1] - ps[1]) > 0:
                findings.append(Finding("EdgesOverlap", (edges[i], edges[j])))
            continue
        pa, pb, pc, pd = positions[a], positions[b], positions[c], positions[d]
        o_1, o_2 = orient(pa, pb, pc), orient(pa, pb, pd)
        o_3, o_4 = orient(pc, pd, pa), orient(pc, pd, pb)
        if o_1 * o_2 < 0 and o_3 * o_4 < 0:
            findings.append(Finding("EdgesCross", (edges[i], edges[j])))
        elif o_1 == o_2 == o_3 == o_4 == 0:
            if _collinear_overlap(pa, pb, pc, pd):
                findings.append(Finding("EdgesOverlap", (edges[i], edges[j])))

    for v in g.vertices:
        pv = positions[v]
        for a, b in edges:
            if v not in (a, b) and on_open_segment(pv, positions[a], positions[b]):
                findings.append(Finding("VertexOnEdge", (v, (a, b))))

    seen: Dict[Point, str] = {}
    for v in g.vertices:
        p = tuple(positions[v])
        if p in seen:
            findings.append(Finding("VerticesCoincide", (seen[p], v)))
        seen[p] = v

    outer = g.outer_face_index()
    for k, face in enumerate(g.faces()):
        area = signed_area([positions[v] for v in face])
        if (k == outer and not area < 0) or (k != outer and not area > 0):
            findings.append(Finding("FaceOrientation", tuple(face), area))
    findings = _sort_findings(findings)
    return PlanarityReport(not findings, tuple(findings))


def _collinear_overlap(a, b, c, d) -> bool:
    ax = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
    lo1, hi1 = sorted((a[ax], b[ax]))
    lo2, hi2 = sorted((c[ax], d[ax]))
    return max(lo1, lo2) < min(hi1, hi2)


# -- edges ---------------------------------------------------------------------


def check_edges(g: PlaneGraph, positions: Mapping[str, Point], curve: ConvexCurveModel, mode: str = "crossed") -> EdgeReport:
    """Per-edge count of meetings with the curve.

    ``crossed`` counts proper crossings in the relative interior of the
    edge.  ``touched`` also counts tangencies and meetings at an endpoint;
    a curve through a shared endpoint touches every edge at that vertex.
    """
    if mode not in ("crossed", "touched"):
        raise ValueError(f"mode must be 'crossed' or 'touched', not {mode!r}")
    _require_positions(g, positions)
    counts: Dict[Tuple[str, str], int] = {}
    for u, v in g.edges():
        cs = curve.segment_crossings(positions[u], positions[v])
        if mode == "crossed":
            counts[(u, v)] = sum(1 for c in cs if not c.touch)
        else:
            n = len(cs)
            if n == 0:
                # endpoints on the curve within tolerance count as touches
                for p in (positions[u], positions[v]):
                    if abs(curve.body_value(p)) <= curve.tol and curve._in_domain(curve._fold(curve._param_of_point(p))):
                        n += 1
            counts[(u, v)] = n
    return EdgeReport(mode, counts)
