"""Incremental construction of a drawing whose faces are all crossed by a curve.

The drawing grows along a canonical ordering.  After every step the current
triangulated disk is kept *adequate*: boundary vertices lie outside the
curve's convex hull, every non-base boundary edge is crossed twice by the
curve, the arcs cut off by those edges are pairwise disjoint and avoid the
disk, and all crossings together span less than a half turn of tangent.

Three placements keep that invariant:

* the first triangle is inscribed in a working arc and scaled outward,
* an *ear* vertex goes just outside the point where the curve runs parallel
  to the edge it is attached to,
* a *fan* vertex goes just past the meeting point of the two rays that
  extend the first and last edge of its attachment path.

Every "sufficiently small" distance is found by halving until a local check
passes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .curves import ArcInterval, ConvexCurveModel, Crossing
from .geometry import in_ccw_sweep, on_open_segment, points_in_polygon, segments_cross
from .planegraph import (
    AugmentationRecord,
    CanonicalOrdering,
    PlaneGraph,
    augment_to_maximal,
    canonical_ordering,
    shallow_canonical_orderings,
)

__all__ = [
    "DrawingError",
    "NoCurvedArc",
    "EpsilonExhausted",
    "BaseEdgeForbidden",
    "NotBoundaryEdge",
    "RaysDiverge",
    "PathTouchesBase",
    "DrawOptions",
    "DiskState",
    "StepTrace",
    "DrawResult",
    "inscribe_base_triangle",
    "attach_ear",
    "attach_fan",
    "draw_all",
]

Point = Tuple[float, float]
Edge = Tuple[str, str]


class DrawingError(RuntimeError):
    pass


class NoCurvedArc(DrawingError):
    """The curve has no turning part; it lies on a line."""


class EpsilonExhausted(DrawingError):
    """No placement distance passed the local check before the halving budget ran out."""


class BaseEdgeForbidden(DrawingError):
    pass


class NotBoundaryEdge(DrawingError):
    pass


class RaysDiverge(DrawingError):
    """The rays extending a fan path do not meet; the disk was not adequate."""


class PathTouchesBase(DrawingError):
    pass


@dataclass(frozen=True)
class DrawOptions:
    """Knobs of the construction.

    delta
        Slack below a half turn for the working arc of the first triangle.
    eps_floor
        Give up once the placement distance would drop below this.
    max_halvings
        Give up after this many halvings of the placement distance.
    seed
        Randomises tie-breaking in the reverse-deletion ordering.
    curvature_margin
        Required gap between the spanned tangent turn and a half turn.
    ordering
        ``"shallow"`` (default) or ``"reverse-deletion"``.
    """

    delta: float = 0.2
    eps_floor: float = 0.0
    max_halvings: int = 80
    seed: Optional[int] = None
    curvature_margin: float = 1e-6
    ordering: str = "shallow"
    arc_samples: int = 16


@dataclass(frozen=True)
class DiskState:
    """Snapshot of the drawing of one prefix disk.

    ``boundary`` runs counterclockwise and starts with the base edge
    ``(boundary[0], boundary[1])``.  ``edge_arcs`` holds, for every other
    boundary edge in that orientation, the curve interval between its two
    crossings.  ``spanned_arc`` covers every crossing of the curve with the
    disk so far.
    """

    curve: ConvexCurveModel
    positions: Mapping[str, Point]
    boundary: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    edge_arcs: Mapping[Edge, ArcInterval]
    spanned_arc: ArcInterval

    @property
    def base_edge(self) -> Edge:
        return (self.boundary[0], self.boundary[1])

    def non_base_path(self) -> List[str]:
        """Boundary from the base's second vertex around to its first."""
        return list(self.boundary[1:]) + [self.boundary[0]]

    def non_base_edges(self) -> List[Edge]:
        p = self.non_base_path()
        return list(zip(p, p[1:]))

    def boundary_edges(self) -> List[Edge]:
        b = self.boundary
        return [(b[i - 1], b[i]) for i in range(1, len(b))] + [(b[-1], b[0])]

    def polygon(self) -> List[Point]:
        return [self.positions[v] for v in self.boundary]


@dataclass(frozen=True)
class StepTrace:
    """Record of one placement: which kind of step, which distance, and its helper geometry."""

    step: int
    kind: str
    vertex: str
    epsilon: float
    halvings: int
    aux: Mapping[str, object] = field(default_factory=dict)


class DrawResult(NamedTuple):
    positions: Dict[str, Point]
    traces: List[StepTrace]
    state: DiskState
    graph: PlaneGraph
    ordering: CanonicalOrdering
    augmentation: Optional[AugmentationRecord]


# -- small helpers -------------------------------------------------------------


def _unit(dx: float, dy: float) -> Point:
    n = math.hypot(dx, dy)
    return (dx / n, dy / n)


def _proper(curve: ConvexCurveModel, p: Point, q: Point) -> Optional[List[Crossing]]:
    """The two proper crossings of pq, or None if the edge is not crossed exactly twice."""
    cs = curve.segment_crossings(p, q)
    if len(cs) != 2 or cs[0].touch or cs[1].touch:
        return None
    return cs


def _depth(curve: ConvexCurveModel, cs: Sequence[Crossing]) -> float:
    return _chord_depth(curve, cs[0].point, cs[1].point)


def _chord_depth(curve: ConvexCurveModel, a: Point, b: Point) -> float:
    """How far the chord ab dips into the body, measured at its midpoint."""
    return -curve.body_value((0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])))


def _arc_depth(curve: ConvexCurveModel, arc: ArcInterval) -> float:
    return _chord_depth(curve, curve.point_at(arc.t_start), curve.point_at(arc.t_end))


def _arc_clear_of(curve: ConvexCurveModel, arc: ArcInterval, polys: Sequence[Sequence[Point]], n: int) -> bool:
    ts = arc.t_start + (arc.t_end - arc.t_start) * (np.arange(n) + 0.5) / n
    xs, ys = curve.points_at(ts)
    for poly in polys:
        if points_in_polygon(xs, ys, poly).any():
            return False
    return True


def _edges_clear(new_edges, state: DiskState, positions) -> bool:
    """New edges neither cross old boundary edges nor run through boundary vertices."""
    bedges = state.boundary_edges()
    verts = state.boundary
    for a, b in new_edges:
        pa, pb = positions[a], positions[b]
        for c, d in bedges:
            if c in (a, b) or d in (a, b):
                continue
            if segments_cross(pa, pb, positions[c], positions[d]):
                return False
        for v in verts:
            if v not in (a, b) and on_open_segment(positions[v], pa, pb):
                return False
    return True


def _spanned_ok(curve: ConvexCurveModel, span: ArcInterval, margin: float) -> bool:
    return curve.arc_curvature(span) <= math.pi - margin


def _halvings(eps0: float, options: DrawOptions):
    for k in range(options.max_halvings + 1):
        eps = eps0 * 0.5 ** k
        if eps < options.eps_floor or eps <= 0.0:
            return
        yield k, eps


# -- base case -------------------------------------------------------------------


def inscribe_base_triangle(
    curve: ConvexCurveModel,
    v1: str,
    v2: str,
    v3: str,
    options: DrawOptions = DrawOptions(),
) -> Tuple[DiskState, StepTrace]:
    """Adequate drawing of the triangle v1 v2 v3 with base edge v1 v2.

    The triangle is inscribed in a working arc at the 10%, 50% and 90%
    points of its tangent range, so its three tangent slopes differ, then
    scaled about its centroid by ``1 + eps``.  ``eps`` starts at a quarter
    of the inradius over the largest centroid distance.  On a closed curve
    the parameter window is first re-centred on the working arc.
    """
    lo, hi = curve.angle_range()
    turn = hi - lo
    if not turn > 1e-12:
        raise NoCurvedArc("curve has zero total turn: it lies on a line")
    width = min(turn, math.pi - options.delta)
    if not width > 0:
        raise NoCurvedArc("delta leaves no working arc")
    mid = 0.5 * (lo + hi)
    if curve.closed:
        tm = curve.param_for_angle(mid)
        curve = curve.with_domain(tm - 0.5 * curve.period, tm + 0.5 * curve.period)
        lo, hi = curve.angle_range()
        mid = 0.5 * (lo + hi)
    a0 = mid - 0.5 * width
    thetas = (a0 + 0.1 * width, a0 + 0.5 * width, a0 + 0.9 * width)
    ts = [curve.param_for_angle(th) for th in thetas]
    P = [curve.point_at(t) for t in ts]
    gx = sum(p[0] for p in P) / 3
    gy = sum(p[1] for p in P) / 3
    sides = [math.dist(P[i], P[(i + 1) % 3]) for i in range(3)]
    area = abs((P[1][0] - P[0][0]) * (P[2][1] - P[0][1]) - (P[2][0] - P[0][0]) * (P[1][1] - P[0][1])) / 2
    if area <= 0:
        raise NoCurvedArc("inscribed triangle is degenerate")
    inradius = 2 * area / sum(sides)
    rho = max(math.hypot(p[0] - gx, p[1] - gy) for p in P)
    eps0 = 0.25 * inradius / rho

    # vertex order along the arc: a (v2), b (v3), c (v1)
    names = (v2, v3, v1)
    for k, eps in _halvings(eps0, options):
        Q = [(gx + (1 + eps) * (p[0] - gx), gy + (1 + eps) * (p[1] - gy)) for p in P]
        clear = [curve.hull_value(q) for q in Q]
        if min(clear) <= curve.tol:
            continue
        c_ab = _proper(curve, Q[0], Q[1])
        c_bc = _proper(curve, Q[1], Q[2])
        if c_ab is None or c_bc is None:
            continue
        arc_ab = ArcInterval(c_ab[0].t, c_ab[1].t)
        arc_bc = ArcInterval(c_bc[0].t, c_bc[1].t)
        if not arc_ab.t_end < arc_bc.t_start:
            continue
        if min(_depth(curve, c_ab), _depth(curve, c_bc)) < min(clear):
            continue
        span = arc_ab.union(arc_bc)
        for c in curve.segment_crossings(Q[2], Q[0]):
            span = span.union(ArcInterval(c.t, c.t))
        if not _spanned_ok(curve, span, options.curvature_margin):
            continue
        if not (_arc_clear_of(curve, arc_ab, [Q], options.arc_samples)
                and _arc_clear_of(curve, arc_bc, [Q], options.arc_samples)):
            continue
        positions = dict(zip(names, Q))
        state = DiskState(
            curve=curve,
            positions=positions,
            boundary=(v1, v2, v3),
            edges=((v1, v2), (v2, v3), (v3, v1)),
            edge_arcs={(v2, v3): arc_ab, (v3, v1): arc_bc},
            spanned_arc=span,
        )
        trace = StepTrace(3, "base", v3, eps, k, {
            "working_arc_angles": [a0, a0 + width],
            "tangent_params": ts,
            "inscribed": [list(p) for p in P],
            "centroid": [gx, gy],
        })
        return state, trace
    raise EpsilonExhausted("no scale factor gave an adequate base triangle")


# -- ear -------------------------------------------------------------------------


def _locate_edge(state: DiskState, u: str, v: str) -> Edge:
    if {u, v} == set(state.base_edge):
        raise BaseEdgeForbidden(f"edge {u}-{v} is the base edge")
    for e in state.non_base_edges():
        if e == (u, v):
            return e
        if e == (v, u):
            return e
    raise NotBoundaryEdge(f"{u}-{v} is not a boundary edge")


def _neighbour_arcs(state: DiskState, path: Sequence[str]):
    """Arcs of the boundary edges just before and just after a path, if not the base."""
    nb = state.non_base_path()
    i = nb.index(path[0])
    j = nb.index(path[-1])
    prev_arc = state.edge_arcs[(nb[i - 1], nb[i])] if i > 0 else None
    next_arc = state.edge_arcs[(nb[j], nb[j + 1])] if j + 1 < len(nb) else None
    return prev_arc, next_arc


def _replace_path(state: DiskState, path: Sequence[str], w: str) -> Tuple[str, ...]:
    nb = state.non_base_path()
    i = nb.index(path[0])
    j = nb.index(path[-1])
    nb = nb[:i + 1] + [w] + nb[j:]
    return (nb[-1],) + tuple(nb[:-1])


def attach_ear(
    state: DiskState,
    u: str,
    v: str,
    w: str,
    options: DrawOptions = DrawOptions(),
    step: int = 0,
) -> Tuple[DiskState, StepTrace]:
    """Add vertex ``w`` adjacent to the non-base boundary edge uv only."""
    u, v = _locate_edge(state, u, v)
    curve = state.curve
    arc = state.edge_arcs[(u, v)]
    pu, pv = state.positions[u], state.positions[v]
    c1, c2 = curve.point_at(arc.t_start), curve.point_at(arc.t_end)
    tau1, tau2 = curve.tangent_angle(arc.t_start), curve.tangent_angle(arc.t_end)
    phi = math.atan2(pv[1] - pu[1], pv[0] - pu[0])
    theta = phi + 2 * math.pi * math.ceil((tau1 - phi) / (2 * math.pi))
    theta = min(max(theta, tau1), tau2)
    tx = min(max(curve.param_for_angle(theta), arc.t_start), arc.t_end)
    x = curve.point_at(tx)
    tdir = curve.tangent_angle(tx)
    normal = (math.sin(tdir), -math.cos(tdir))
    eps0 = 0.25 * min(math.dist(x, c1), math.dist(x, c2))
    prev_arc, next_arc = _neighbour_arcs(state, (u, v))

    for k, eps in _halvings(eps0, options):
        if eps <= curve.tol:
            # w sits within eps of the curve, so it can no longer clear the band
            break
        pw = (x[0] + eps * normal[0], x[1] + eps * normal[1])
        clear = curve.hull_value(pw)
        if clear <= curve.tol:
            continue
        cu = _proper(curve, pu, pw)
        cv = _proper(curve, pw, pv)
        if cu is None or cv is None:
            continue
        a1 = ArcInterval(cu[0].t, cu[1].t)
        a2 = ArcInterval(cv[0].t, cv[1].t)
        if not a1.t_end < a2.t_start:
            continue
        if prev_arc is not None and not prev_arc.t_end < a1.t_start:
            continue
        if next_arc is not None and not a2.t_end < next_arc.t_start:
            continue
        if min(_depth(curve, cu), _depth(curve, cv)) < clear:
            continue
        span = state.spanned_arc.union(a1).union(a2)
        if not _spanned_ok(curve, span, options.curvature_margin):
            continue
        tri = [pu, pw, pv]
        if not (_arc_clear_of(curve, a1, [tri], options.arc_samples)
                and _arc_clear_of(curve, a2, [tri], options.arc_samples)):
            continue
        positions = dict(state.positions)
        positions[w] = pw
        if not _edges_clear([(u, w), (w, v)], state, positions):
            continue
        arcs = dict(state.edge_arcs)
        del arcs[(u, v)]
        arcs[(u, w)] = a1
        arcs[(w, v)] = a2
        new = DiskState(
            curve=curve,
            positions=positions,
            boundary=_replace_path(state, (u, v), w),
            edges=state.edges + ((u, w), (w, v)),
            edge_arcs=arcs,
            spanned_arc=span,
        )
        trace = StepTrace(step, "ear", w, eps, k, {
            "edge": [u, v],
            "tangent_point": list(x),
            "tangent_param": tx,
            "tangent_angle": tdir,
            "normal": list(normal),
        })
        return new, trace
    raise EpsilonExhausted(f"no distance placed ear vertex {w} on edge {u}-{v}")


# -- fan -------------------------------------------------------------------------


def _locate_path(state: DiskState, path: Sequence[str]) -> List[str]:
    path = list(path)
    if len(path) < 3:
        raise NotBoundaryEdge("a fan needs a path of at least two edges")
    b1, b2 = state.base_edge
    for a, b in zip(path, path[1:]):
        if {a, b} == {b1, b2}:
            raise PathTouchesBase(f"path {path} uses the base edge")
    nb = state.non_base_path()
    pos = {v: i for i, v in enumerate(nb)}
    if not all(v in pos for v in path):
        raise NotBoundaryEdge(f"path {path} leaves the boundary")
    idx = [pos[v] for v in path]
    if all(b == a + 1 for a, b in zip(idx, idx[1:])):
        return path
    if all(b == a - 1 for a, b in zip(idx, idx[1:])):
        return path[::-1]
    raise NotBoundaryEdge(f"path {path} is not contiguous along the boundary")


def attach_fan(
    state: DiskState,
    path: Sequence[str],
    w: str,
    options: DrawOptions = DrawOptions(),
    step: int = 0,
) -> Tuple[DiskState, StepTrace]:
    """Add vertex ``w`` adjacent to every vertex of a boundary path of two or more edges."""
    path = _locate_path(state, path)
    curve = state.curve
    pos = state.positions
    p0, p1 = pos[path[0]], pos[path[1]]
    pk, pk1 = pos[path[-1]], pos[path[-2]]
    d1 = _unit(p1[0] - p0[0], p1[1] - p0[1])
    d2 = _unit(pk1[0] - pk[0], pk1[1] - pk[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-15:
        raise RaysDiverge(f"rays along path {path} are parallel")
    ex, ey = pk[0] - p0[0], pk[1] - p0[1]
    s = (ex * d2[1] - ey * d2[0]) / den
    r = (ex * d1[1] - ey * d1[0]) / den
    if not (s > 0 and r > 0):
        raise RaysDiverge(f"rays along path {path} diverge")
    x = (p0[0] + s * d1[0], p0[1] + s * d1[1])
    bx, by = d1[0] + d2[0], d1[1] + d2[1]
    if math.hypot(bx, by) < 1e-12:
        raise RaysDiverge(f"rays along path {path} meet head-on")
    bis = _unit(bx, by)
    eps0 = 0.25 * max(curve.hull_value(x), 0.0)
    if eps0 == 0.0:
        eps0 = 0.25 * min(math.dist(x, pos[v]) for v in path if math.dist(x, pos[v]) > 0)
    prev_arc, next_arc = _neighbour_arcs(state, path)
    old_first = state.edge_arcs[(path[0], path[1])]
    old_last = state.edge_arcs[(path[-2], path[-1])]
    depth_first = _arc_depth(curve, old_first)
    depth_last = _arc_depth(curve, old_last)
    new_edges = [(path[0], w)] + [(w, v) for v in path[1:]]

    for k, eps in _halvings(eps0, options):
        pw = (x[0] + eps * bis[0], x[1] + eps * bis[1])
        if curve.hull_value(pw) <= curve.tol:
            continue
        c0 = _proper(curve, p0, pw)
        ck = _proper(curve, pw, pk)
        if c0 is None or ck is None:
            continue
        a1 = ArcInterval(c0[0].t, c0[1].t)
        a2 = ArcInterval(ck[0].t, ck[1].t)
        if not a1.t_end < a2.t_start:
            continue
        if prev_arc is not None and not prev_arc.t_end < a1.t_start:
            continue
        if next_arc is not None and not a2.t_end < next_arc.t_start:
            continue
        if _depth(curve, c0) < 0.5 * depth_first or _depth(curve, ck) < 0.5 * depth_last:
            continue
        if not _fan_visible(state, path, pw):
            continue
        span = state.spanned_arc.union(a1).union(a2)
        for v in path[1:-1]:
            for c in curve.segment_crossings(pw, pos[v]):
                span = span.union(ArcInterval(c.t, c.t))
        if not _spanned_ok(curve, span, options.curvature_margin):
            continue
        tris = [[pw, pos[a], pos[b]] for a, b in zip(path, path[1:])]
        if not (_arc_clear_of(curve, a1, tris, options.arc_samples)
                and _arc_clear_of(curve, a2, tris, options.arc_samples)):
            continue
        positions = dict(pos)
        positions[w] = pw
        if not _edges_clear(new_edges, state, positions):
            continue
        arcs = dict(state.edge_arcs)
        for a, b in zip(path, path[1:]):
            del arcs[(a, b)]
        arcs[(path[0], w)] = a1
        arcs[(w, path[-1])] = a2
        new = DiskState(
            curve=curve,
            positions=positions,
            boundary=_replace_path(state, path, w),
            edges=state.edges + tuple(new_edges),
            edge_arcs=arcs,
            spanned_arc=span,
        )
        trace = StepTrace(step, "fan", w, eps, k, {
            "path": list(path),
            "ray_meet": list(x),
            "ray_dirs": [list(d1), list(d2)],
            "bisector": list(bis),
        })
        return new, trace
    raise EpsilonExhausted(f"no distance placed fan vertex {w} over path {path}")


def _fan_visible(state: DiskState, path: Sequence[str], pw: Point) -> bool:
    """w lies outside the disk angle at every path vertex."""
    pos = state.positions
    cyc = list(state.boundary)
    n = len(cyc)
    for v in path:
        i = cyc.index(v)
        prev_v, next_v = cyc[i - 1], cyc[(i + 1) % n]
        pv = pos[v]
        dn = (pos[next_v][0] - pv[0], pos[next_v][1] - pv[1])
        dp = (pos[prev_v][0] - pv[0], pos[prev_v][1] - pv[1])
        dw = (pw[0] - pv[0], pw[1] - pv[1])
        # interior angle sweeps ccw from the next vertex to the previous one
        if in_ccw_sweep(dn, dp, dw) or dw == (0.0, 0.0):
            return False
    return True


# -- whole graphs ----------------------------------------------------------------


def _orderings_for(g: PlaneGraph, options: DrawOptions) -> List[CanonicalOrdering]:
    if options.ordering == "reverse-deletion":
        rng = random.Random(options.seed) if options.seed is not None else None
        return [canonical_ordering(g, rng=rng)]
    if options.ordering == "shallow":
        return shallow_canonical_orderings(g)
    raise ValueError(f"unknown ordering strategy {options.ordering!r}")


def _draw_ordering(order, curve, options, on_step):
    v1, v2, v3 = order.sequence[:3]
    state, trace = inscribe_base_triangle(curve, v1, v2, v3, options)
    traces = [trace]
    if on_step is not None:
        on_step(state, trace)
    for j, path in enumerate(order.steps):
        w = order.sequence[j + 3]
        if len(path) == 2:
            state, trace = attach_ear(state, path[0], path[1], w, options, step=j + 4)
        else:
            state, trace = attach_fan(state, path, w, options, step=j + 4)
        traces.append(trace)
        if on_step is not None:
            on_step(state, trace)
    return state, traces


def draw_all(
    g: PlaneGraph,
    curve: ConvexCurveModel,
    options: DrawOptions = DrawOptions(),
    on_step: Optional[Callable[[DiskState, StepTrace], None]] = None,
) -> DrawResult:
    """Draw ``g`` so that ``curve`` crosses every face.

    The graph is completed to a triangulation first; the returned positions
    cover all of its vertices.  With the ``shallow`` strategy the orderings
    for the other outer edges are tried in turn if one runs out of
    precision; ``on_step`` sees every intermediate disk of every attempt.
    """
    if g.n_vertices < 3:
        raise DrawingError("need at least 3 vertices")
    if g.is_maximal():
        aug, record = g, None
    else:
        aug, record = augment_to_maximal(g)
    first_error = None
    for order in _orderings_for(aug, options):
        try:
            state, traces = _draw_ordering(order, curve, options, on_step)
        except EpsilonExhausted as e:
            first_error = first_error or e
            continue
        return DrawResult(dict(state.positions), traces, state, aug, order, record)
    raise first_error
