"""Smooth convex curves: circular arcs, elliptical arcs and stadium arcs.

Every curve is a parameter interval on the boundary of a closed convex body,
traversed counterclockwise, so the tangent angle never decreases.  The
queries here are exactly what the drawer and the verifier need: points,
tangent angles and their inverse, hull classification and segment crossings.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "TWO_PI",
    "INTERIOR",
    "BOUNDARY",
    "EXTERIOR",
    "CurveError",
    "ArcInterval",
    "Crossing",
    "ConvexCurveModel",
    "CircularArc",
    "EllipticalArc",
    "StadiumArc",
    "curve_from_spec",
    "curve_from_json",
    "preset_curve",
]

TWO_PI = 2.0 * math.pi

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"

Point = Tuple[float, float]


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class ArcInterval:
    """Parameter interval ``[t_start, t_end]`` of a curve.

    On closed curves ``t_end`` may run past the domain end; parameters are
    then read modulo the period.
    """

    t_start: float
    t_end: float

    def __post_init__(self):
        if not self.t_start <= self.t_end:
            raise CurveError(f"empty arc interval [{self.t_start}, {self.t_end}]")

    def overlaps(self, other: "ArcInterval") -> bool:
        return self.t_start <= other.t_end and other.t_start <= self.t_end

    def union(self, other: "ArcInterval") -> "ArcInterval":
        return ArcInterval(min(self.t_start, other.t_start), max(self.t_end, other.t_end))


class Crossing(NamedTuple):
    """Meeting point of a segment with the curve.

    ``s`` is the position along the segment (0 at ``p``, 1 at ``q``).
    ``touch`` marks tangencies and meetings at a segment endpoint, which are
    not proper crossings.
    """

    t: float
    point: Point
    s: float
    touch: bool = False


class ConvexCurveModel:
    """Common machinery; subclasses supply the body and its parameterisation."""

    kind: str = ""
    t_lo: float
    t_hi: float
    closed: bool
    period: float

    #: classification band, relative to :attr:`scale`
    rel_tol: float = 1e-12

    # -- subclass hooks --------------------------------------------------

    def _point(self, t: float) -> Point:
        raise NotImplementedError

    def _angle(self, t: float) -> float:
        """Tangent angle, continuous and nondecreasing over all real ``t``."""
        raise NotImplementedError

    def _param(self, theta: float) -> float:
        """Inverse of :meth:`_angle` over all real angles."""
        raise NotImplementedError

    def _param_of_point(self, p: Point) -> float:
        raise NotImplementedError

    def body_value(self, p: Point) -> float:
        """Convex function, negative inside the body and zero on its boundary."""
        raise NotImplementedError

    def _line_hits(self, p: Point, d: Point) -> List[float]:
        """Line parameters where ``p + s d`` meets the body boundary."""
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def with_domain(self, t_lo: float, t_hi: float) -> "ConvexCurveModel":
        raise NotImplementedError

    @property
    def scale(self) -> float:
        raise NotImplementedError

    # -- shared --------------------------------------------------------------

    @property
    def tol(self) -> float:
        return self.rel_tol * self.scale

    def _check_domain(self, t_lo: float, t_hi: float) -> None:
        if not (math.isfinite(t_lo) and math.isfinite(t_hi)) or t_hi <= t_lo:
            raise CurveError(f"invalid parameter domain [{t_lo}, {t_hi}]")
        if t_hi - t_lo > self.period * (1 + 1e-12):
            raise CurveError("parameter domain longer than one period")

    @property
    def domain(self) -> Tuple[float, float]:
        return (self.t_lo, self.t_hi)

    def _in_domain(self, t: float) -> bool:
        if self.closed:
            return True
        slack = 1e-12 * self.period
        return self.t_lo - slack <= t <= self.t_hi + slack

    def _require(self, t: float) -> None:
        if not self._in_domain(t):
            raise CurveError(f"parameter {t} outside domain [{self.t_lo}, {self.t_hi}]")

    def point_at(self, t: float) -> Point:
        self._require(t)
        return self._point(t)

    def points_at(self, ts) -> Tuple[np.ndarray, np.ndarray]:
        """Vectorised :meth:`point_at` without the domain check; returns x and y arrays."""
        ts = np.asarray(ts, dtype=float)
        pts = [self._point(float(t)) for t in ts]
        return np.array([p[0] for p in pts]), np.array([p[1] for p in pts])

    def tangent_angle(self, t: float) -> float:
        """Tangent direction at ``t`` in radians, continuous and nondecreasing in ``t``.

        Tangents are oriented with the direction of traversal.  On closed
        curves parameters past the domain end keep adding a full turn per
        period.
        """
        self._require(t)
        return self._angle(t)

    def angle_range(self) -> Tuple[float, float]:
        return (self._angle(self.t_lo), self._angle(self.t_hi))

    @property
    def total_turn(self) -> float:
        lo, hi = self.angle_range()
        return hi - lo

    def param_for_angle(self, theta: float) -> float:
        """Parameter whose tangent angle is ``theta``; the midpoint of a flat stretch."""
        lo, hi = self.angle_range()
        if not lo - 1e-12 <= theta <= hi + 1e-12:
            raise CurveError(f"angle {theta} outside tangent range [{lo}, {hi}]")
        theta = min(max(theta, lo), hi)
        return min(max(self._param(theta), self.t_lo), self.t_hi)

    def _fold(self, t: float) -> float:
        """Bring a body parameter into the period window starting just before ``t_lo``."""
        start = self.t_lo - 1e-9 * self.period
        return start + (t - start) % self.period

    def arc_curvature(self, a: ArcInterval) -> float:
        return self.tangent_angle(a.t_end) - self.tangent_angle(a.t_start)

    def param_of_point(self, p: Point) -> float:
        """Parameter of a point on the body boundary, folded into the domain."""
        return self._fold(self._param_of_point(p))

    # -- hull ----------------------------------------------------------------

    def chord(self) -> Optional[Tuple[Point, Point]]:
        if self.closed:
            return None
        return self._point(self.t_lo), self._point(self.t_hi)

    def hull_value(self, p: Point) -> float:
        """Signed gauge of the closed convex hull: positive outside, negative inside."""
        v = self.body_value(p)
        ch = self.chord()
        if ch is not None:
            (ax, ay), (bx, by) = ch
            dx, dy = bx - ax, by - ay
            norm = math.hypot(dx, dy)
            if norm > 0:
                # the arc lies to the right of the directed chord
                side = (dx * (p[1] - ay) - dy * (p[0] - ax)) / norm
                v = max(v, side)
        return v

    def hull_side(self, p: Point, tol: Optional[float] = None) -> str:
        tol = self.tol if tol is None else tol
        v = self.hull_value(p)
        if v > tol:
            return EXTERIOR
        if v < -tol:
            return INTERIOR
        return BOUNDARY

    # -- crossings -------------------------------------------------------------

    def segment_crossings(self, p: Point, q: Point, method: str = "analytic") -> List[Crossing]:
        """Meetings of segment ``pq`` with the curve, sorted by curve parameter.

        Proper crossings have ``touch=False``.  ``method="numeric"`` brackets
        sign changes of the body function along the segment instead of
        solving for them, and serves as an independent check.
        """
        dx, dy = q[0] - p[0], q[1] - p[1]
        if dx == 0.0 and dy == 0.0:
            raise CurveError("degenerate segment")
        if method == "analytic":
            roots = self._line_hits(p, (dx, dy))
        elif method == "numeric":
            roots = _bracket_roots(lambda s: self.body_value((p[0] + s * dx, p[1] + s * dy)))
        else:
            raise ValueError(f"unknown method {method!r}")
        return self._classify(p, (dx, dy), roots)

    def proper_crossings(self, p: Point, q: Point) -> List[Crossing]:
        return [c for c in self.segment_crossings(p, q) if not c.touch]

    def _classify(self, p: Point, d: Point, roots: Iterable[float]) -> List[Crossing]:
        length = math.hypot(*d)
        s_eps = 1e-13 * self.scale / length
        rs = sorted(r for r in roots if -s_eps <= r <= 1 + s_eps)
        merged: List[float] = []
        for r in rs:
            if merged and r - merged[-1] <= s_eps:
                merged[-1] = 0.5 * (merged[-1] + r)
            else:
                merged.append(r)
        if not merged:
            return []

        def f(s):
            return self.body_value((p[0] + s * d[0], p[1] + s * d[1]))

        cuts = [0.0] + merged + [1.0]
        signs = []
        for a, b in zip(cuts, cuts[1:]):
            signs.append(f(0.5 * (a + b)) if b > a else None)
        out = []
        for i, r in enumerate(merged):
            pt = (p[0] + r * d[0], p[1] + r * d[1])
            t = self.param_of_point(pt)
            if not self._in_domain(t):
                continue
            before, after = signs[i], signs[i + 1]
            at_end = r <= s_eps or r >= 1 - s_eps
            proper = (
                not at_end
                and before is not None
                and after is not None
                and (before < 0) != (after < 0)
            )
            if not self.closed and (abs(t - self.t_lo) <= 1e-13 * self.period or abs(t - self.t_hi) <= 1e-13 * self.period):
                proper = False
            out.append(Crossing(t, pt, min(max(r, 0.0), 1.0), not proper))
        out.sort(key=lambda c: c.t)
        return out

    # -- sampling --------------------------------------------------------------

    def sample_params(self, max_turn: float = 0.01) -> List[float]:
        """Parameters for a polyline whose pieces turn by at most ``max_turn``."""
        raise NotImplementedError

    def to_json(self) -> str:
        return json.dumps(self.spec(), sort_keys=True)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec()})"

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.spec() == other.spec()

    def __hash__(self) -> int:
        return hash(json.dumps(self.spec(), sort_keys=True))


def _bracket_roots(f, n0: int = 64, max_n: int = 4096) -> List[float]:
    """Zeros of a convex function on [0, 1].

    Samples at a doubling density until the sign pattern settles, refines the
    sampled minimum by golden-section search so thin dips are not missed,
    then bisects each side.
    """
    n = n0
    prev = None
    while True:
        xs = [k / n for k in range(n + 1)]
        vals = [f(x) for x in xs]
        k = min(range(n + 1), key=vals.__getitem__)
        lo, hi = xs[max(k - 1, 0)], xs[min(k + 1, n)]
        pattern = sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))
        if pattern == prev or n >= max_n:
            break
        prev = pattern
        n *= 2
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(200):
        if b - a < 1e-15:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    s_min = 0.5 * (a + b)
    f_min = f(s_min)
    for x, v in zip(xs, vals):
        if v < f_min:
            s_min, f_min = x, v
    if f_min > 0:
        return []
    if f_min == 0:
        return [s_min]
    roots = []
    if f(0.0) >= 0:
        roots.append(_bisect(f, 0.0, s_min))
    if f(1.0) >= 0:
        roots.append(_bisect(f, s_min, 1.0))
    return roots


def _bisect(f, a: float, b: float, tol: float = 1e-15) -> float:
    fa = f(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        if b - a <= tol or m == a or m == b:
            break
        fm = f(m)
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _circle_hits(px: float, py: float, dx: float, dy: float) -> List[float]:
    """Line parameters where ``(px, py) + s (dx, dy)`` meets the unit circle."""
    a = dx * dx + dy * dy
    b = px * dx + py * dy
    c = px * px + py * py - 1.0
    disc = b * b - a * c
    if disc < 0:
        # near-tangent lines: keep the foot point so touches are reported
        s = -b / a
        fx, fy = px + s * dx, py + s * dy
        if abs(math.hypot(fx, fy) - 1.0) <= 1e-15:
            return [s]
        return []
    root = math.sqrt(disc)
    qq = -(b + math.copysign(root, b))
    if qq == 0.0:
        return [-b / a]
    s1, s2 = qq / a, c / qq
    return sorted((s1, s2))


# -- circular arcs -------------------------------------------------------------


class CircularArc(ConvexCurveModel):
    """Arc of the circle ``center + radius (cos t, sin t)`` for ``t`` in ``[t_lo, t_hi]``."""

    kind = "circular-arc"

    def __init__(self, center: Point = (0.0, 0.0), radius: float = 1.0,
                 t_lo: float = 0.0, t_hi: float = math.pi):
        if not radius > 0:
            raise CurveError("radius must be positive")
        self.cx, self.cy = float(center[0]), float(center[1])
        self.radius = float(radius)
        self.period = TWO_PI
        self._check_domain(t_lo, t_hi)
        self.t_lo, self.t_hi = float(t_lo), float(t_hi)
        self.closed = t_hi - t_lo >= TWO_PI * (1 - 1e-12)
        if self.closed:
            self.t_hi = self.t_lo + TWO_PI

    @property
    def scale(self) -> float:
        return self.radius

    def _point(self, t):
        return (self.cx + self.radius * math.cos(t), self.cy + self.radius * math.sin(t))

    def points_at(self, ts):
        ts = np.asarray(ts, dtype=float)
        return self.cx + self.radius * np.cos(ts), self.cy + self.radius * np.sin(ts)

    def _angle(self, t):
        return t + 0.5 * math.pi

    def _param(self, theta):
        return theta - 0.5 * math.pi

    def _param_of_point(self, p):
        return math.atan2(p[1] - self.cy, p[0] - self.cx)

    def body_value(self, p):
        return math.hypot(p[0] - self.cx, p[1] - self.cy) - self.radius

    def _line_hits(self, p, d):
        r = self.radius
        return _circle_hits((p[0] - self.cx) / r, (p[1] - self.cy) / r, d[0] / r, d[1] / r)

    def sample_params(self, max_turn=0.01):
        n = max(1, math.ceil((self.t_hi - self.t_lo) / max_turn))
        return [self.t_lo + (self.t_hi - self.t_lo) * k / n for k in range(n + 1)]

    def with_domain(self, t_lo, t_hi):
        return CircularArc((self.cx, self.cy), self.radius, t_lo, t_hi)

    def spec(self):
        return {
            "kind": self.kind,
            "center": [self.cx, self.cy],
            "radius": self.radius,
            "angle_start": self.t_lo,
            "angle_end": self.t_hi,
        }


# -- elliptical arcs -----------------------------------------------------------


class EllipticalArc(ConvexCurveModel):
    """Arc of the axis-aligned ellipse ``center + (a cos t, b sin t)``."""

    kind = "elliptical-arc"

    def __init__(self, center: Point = (0.0, 0.0), semi_axes: Tuple[float, float] = (2.0, 1.0),
                 t_lo: float = 0.0, t_hi: float = math.pi):
        a, b = float(semi_axes[0]), float(semi_axes[1])
        if not (a > 0 and b > 0):
            raise CurveError("semi-axes must be positive")
        self.cx, self.cy = float(center[0]), float(center[1])
        self.a, self.b = a, b
        self.period = TWO_PI
        self._check_domain(t_lo, t_hi)
        self.t_lo, self.t_hi = float(t_lo), float(t_hi)
        self.closed = t_hi - t_lo >= TWO_PI * (1 - 1e-12)
        if self.closed:
            self.t_hi = self.t_lo + TWO_PI

    @property
    def scale(self) -> float:
        return max(self.a, self.b)

    def _point(self, t):
        return (self.cx + self.a * math.cos(t), self.cy + self.b * math.sin(t))

    def points_at(self, ts):
        ts = np.asarray(ts, dtype=float)
        return self.cx + self.a * np.cos(ts), self.cy + self.b * np.sin(ts)

    def _angle(self, t):
        phi = math.atan2(self.b * math.cos(t), -self.a * math.sin(t))
        base = t + 0.5 * math.pi
        return base + math.remainder(phi - base, TWO_PI)

    def _param(self, theta):
        t0 = math.atan2(-math.cos(theta) / self.a, math.sin(theta) / self.b)
        target = theta - 0.5 * math.pi
        return t0 + TWO_PI * round((target - t0) / TWO_PI)

    def _param_of_point(self, p):
        return math.atan2((p[1] - self.cy) / self.b, (p[0] - self.cx) / self.a)

    def body_value(self, p):
        u = (p[0] - self.cx) / self.a
        v = (p[1] - self.cy) / self.b
        return (math.hypot(u, v) - 1.0) * min(self.a, self.b)

    def _line_hits(self, p, d):
        return _circle_hits((p[0] - self.cx) / self.a, (p[1] - self.cy) / self.b,
                            d[0] / self.a, d[1] / self.b)

    def sample_params(self, max_turn=0.01):
        # the tangent turns at most (a/b or b/a) times as fast as t
        ratio = max(self.a / self.b, self.b / self.a)
        n = max(1, math.ceil((self.t_hi - self.t_lo) * ratio / max_turn))
        return [self.t_lo + (self.t_hi - self.t_lo) * k / n for k in range(n + 1)]

    def with_domain(self, t_lo, t_hi):
        return EllipticalArc((self.cx, self.cy), (self.a, self.b), t_lo, t_hi)

    def spec(self):
        return {
            "kind": self.kind,
            "center": [self.cx, self.cy],
            "semi_axes": [self.a, self.b],
            "angle_start": self.t_lo,
            "angle_end": self.t_hi,
        }


# -- stadium arcs ----------------------------------------------------------------


class StadiumArc(ConvexCurveModel):
    """Arc of a stadium boundary, parameterised by arc length.

    The stadium is a ``width`` by ``height`` rectangle with semicircular caps
    of radius ``height / 2`` on its left and right sides.  Arc length 0 is the
    left end of the bottom side; the boundary then runs counterclockwise:
    bottom side, right cap, top side, left cap.
    """

    kind = "stadium-arc"

    def __init__(self, center: Point = (0.0, 0.0), width: float = 2.0, height: float = 2.0,
                 t_lo: Optional[float] = None, t_hi: Optional[float] = None):
        if not (width >= 0 and height > 0):
            raise CurveError("stadium needs width >= 0 and height > 0")
        self.cx, self.cy = float(center[0]), float(center[1])
        self.width = float(width)
        self.height = float(height)
        self.R = 0.5 * self.height
        w, R = self.width, self.R
        self.breaks = (0.0, w, w + math.pi * R, 2 * w + math.pi * R, 2 * w + TWO_PI * R)
        self.period = self.breaks[-1]
        if t_lo is None:
            t_lo = self.breaks[1] + 0.5 * math.pi * R
        if t_hi is None:
            t_hi = self.breaks[3] + 0.5 * math.pi * R
        self._check_domain(t_lo, t_hi)
        self.t_lo, self.t_hi = float(t_lo), float(t_hi)
        self.closed = t_hi - t_lo >= self.period * (1 - 1e-12)
        if self.closed:
            self.t_hi = self.t_lo + self.period

    @classmethod
    def cap(cls, side: str, center: Point = (0.0, 0.0), width: float = 2.0, height: float = 2.0):
        probe = cls(center, width, height)
        b = probe.breaks
        if side == "right":
            return cls(center, width, height, b[1], b[2])
        if side == "left":
            return cls(center, width, height, b[3], b[4])
        raise CurveError(f"unknown cap {side!r}")

    @property
    def scale(self) -> float:
        return 0.5 * self.width + self.R

    def _local(self, t):
        """Piece index and offset for a body parameter."""
        s = t % self.period
        b = self.breaks
        for i in range(4):
            if s < b[i + 1]:
                return i, s - b[i]
        return 3, s - b[3]

    def _point(self, t):
        i, u = self._local(t)
        w2, R = 0.5 * self.width, self.R
        if i == 0:
            return (self.cx - w2 + u, self.cy - R)
        if i == 1:
            phi = -0.5 * math.pi + u / R
            return (self.cx + w2 + R * math.cos(phi), self.cy + R * math.sin(phi))
        if i == 2:
            return (self.cx + w2 - u, self.cy + R)
        phi = 0.5 * math.pi + u / R
        return (self.cx - w2 + R * math.cos(phi), self.cy + R * math.sin(phi))

    def points_at(self, ts):
        s = np.mod(np.asarray(ts, dtype=float), self.period)
        b = self.breaks
        w2, R = 0.5 * self.width, self.R
        piece = np.clip(np.searchsorted(b, s, side="right") - 1, 0, 3)
        u = s - np.take(b, piece)
        phi = np.where(piece == 1, -0.5 * np.pi + u / R, 0.5 * np.pi + u / R)
        xs = np.select([piece == 0, piece == 2], [self.cx - w2 + u, self.cx + w2 - u],
                       np.where(piece == 1, self.cx + w2, self.cx - w2) + R * np.cos(phi))
        ys = np.select([piece == 0, piece == 2], [np.full_like(s, self.cy - R), np.full_like(s, self.cy + R)],
                       self.cy + R * np.sin(phi))
        return xs, ys

    def _body_angle(self, t):
        """Tangent angle in [0, 2pi) from the body origin, as a step-continuous function."""
        i, u = self._local(t)
        if i == 0:
            return 0.0
        if i == 1:
            return u / self.R
        if i == 2:
            return math.pi
        return math.pi + u / self.R

    def _angle(self, t):
        return self._body_angle(t) + math.floor(t / self.period) * TWO_PI

    def _flat_range(self, theta):
        """Parameter range of the flat side with tangent angle ``theta`` (mod 2pi), if any."""
        k = math.floor(theta / TWO_PI)
        r = theta - k * TWO_PI
        if r == 0.0:
            return (self.breaks[0] + k * self.period, self.breaks[1] + k * self.period)
        if r == math.pi:
            return (self.breaks[2] + k * self.period, self.breaks[3] + k * self.period)
        return None

    def param_for_angle(self, theta):
        lo, hi = self.angle_range()
        if not lo - 1e-12 <= theta <= hi + 1e-12:
            raise CurveError(f"angle {theta} outside tangent range [{lo}, {hi}]")
        theta = min(max(theta, lo), hi)
        flat = self._flat_range(theta)
        if flat is not None and flat[1] > flat[0]:
            a = max(flat[0], self.t_lo)
            b = min(flat[1], self.t_hi)
            return 0.5 * (a + b)
        return min(max(self._param(theta), self.t_lo), self.t_hi)

    def _param(self, theta):
        k = math.floor(theta / TWO_PI)
        r = theta - k * TWO_PI
        R = self.R
        b = self.breaks
        if r == 0.0:
            t = 0.5 * (b[0] + b[1])
        elif r < math.pi:
            t = b[1] + r * R
        elif r == math.pi:
            t = 0.5 * (b[2] + b[3])
        else:
            t = b[3] + (r - math.pi) * R
        return t + k * self.period

    def _param_of_point(self, p):
        x, y = p[0] - self.cx, p[1] - self.cy
        w2, R = 0.5 * self.width, self.R
        b = self.breaks
        if x > w2:
            phi = math.atan2(y, x - w2)
            return b[1] + (phi + 0.5 * math.pi) * R
        if x < -w2:
            phi = math.atan2(y, x + w2) % TWO_PI
            return b[3] + (phi - 0.5 * math.pi) * R
        if y < 0:
            return b[0] + (x + w2)
        return b[2] + (w2 - x)

    def body_value(self, p):
        x, y = p[0] - self.cx, p[1] - self.cy
        w2 = 0.5 * self.width
        cx = min(max(x, -w2), w2)
        return math.hypot(x - cx, y) - self.R

    def _line_hits(self, p, d):
        px, py = p[0] - self.cx, p[1] - self.cy
        dx, dy = d
        w2, R = 0.5 * self.width, self.R
        hits = []
        for yline in (-R, R):
            if dy != 0.0:
                s = (yline - py) / dy
                x = px + s * dx
                if -w2 <= x <= w2:
                    hits.append(s)
        for sign in (1.0, -1.0):
            ccx = sign * w2
            for s in _circle_hits((px - ccx) / R, py / R, dx / R, dy / R):
                x = px + s * dx
                if sign * (x - ccx) > 0:
                    hits.append(s)
        return hits

    def sample_params(self, max_turn=0.01):
        b = self.breaks
        cuts = {self.t_lo, self.t_hi}
        k0 = math.floor(self.t_lo / self.period)
        for k in range(k0, k0 + 3):
            for x in b:
                t = x + k * self.period
                if self.t_lo < t < self.t_hi:
                    cuts.add(t)
        cuts = sorted(cuts)
        out = [cuts[0]]
        for a, c in zip(cuts, cuts[1:]):
            mid = 0.5 * (a + c)
            i, _ = self._local(mid)
            n = 1 if i in (0, 2) else max(1, math.ceil((c - a) / (self.R * max_turn)))
            out.extend(a + (c - a) * j / n for j in range(1, n + 1))
        return out

    def with_domain(self, t_lo, t_hi):
        return StadiumArc((self.cx, self.cy), self.width, self.height, t_lo, t_hi)

    def spec(self):
        return {
            "kind": self.kind,
            "center": [self.cx, self.cy],
            "width": self.width,
            "height": self.height,
            "t_start": self.t_lo,
            "t_end": self.t_hi,
        }


# -- construction from JSON ------------------------------------------------------


def curve_from_spec(spec: dict) -> ConvexCurveModel:
    """Build a curve from its JSON object form.

    ``circular-arc``: ``center``, ``radius``, ``angle_start``, ``angle_end``.
    ``elliptical-arc``: ``center``, ``semi_axes``, ``angle_start``, ``angle_end``
    (eccentric anomaly).  ``stadium-arc``: ``center``, ``width``, ``height`` and
    either ``cap`` (``"left"``/``"right"``), ``closed: true``, or arc-length
    bounds ``t_start``/``t_end``.
    """
    try:
        kind = spec["kind"]
        center = tuple(spec.get("center", (0.0, 0.0)))
        if kind == "circular-arc":
            a0 = float(spec.get("angle_start", 0.0))
            a1 = a0 + TWO_PI if spec.get("closed") else float(spec.get("angle_end", math.pi))
            return CircularArc(center, float(spec["radius"]), a0, a1)
        if kind == "elliptical-arc":
            a0 = float(spec.get("angle_start", 0.0))
            a1 = a0 + TWO_PI if spec.get("closed") else float(spec.get("angle_end", math.pi))
            return EllipticalArc(center, tuple(spec["semi_axes"]), a0, a1)
        if kind == "stadium-arc":
            w, h = float(spec["width"]), float(spec["height"])
            if "cap" in spec:
                return StadiumArc.cap(spec["cap"], center, w, h)
            if spec.get("closed"):
                t0 = float(spec.get("t_start", 0.0))
                probe = StadiumArc(center, w, h)
                return StadiumArc(center, w, h, t0, t0 + probe.period)
            return StadiumArc(center, w, h, spec.get("t_start"), spec.get("t_end"))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, CurveError):
            raise
        raise CurveError(f"bad curve spec: {exc}") from exc
    raise CurveError(f"unknown curve kind {spec.get('kind')!r}")


def curve_from_json(text: str) -> ConvexCurveModel:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveError(f"curve file is not valid JSON: {exc}") from exc
    return curve_from_spec(spec)


PRESETS = ("semicircle", "ellipse", "stadium", "circle")


def preset_curve(name: str) -> ConvexCurveModel:
    """Named curves used by the CLI and the test corpus."""
    if name == "semicircle":
        return CircularArc((0.0, 0.0), 1.0, 0.0, math.pi)
    if name == "circle":
        return CircularArc((0.0, 0.0), 1.0, 0.0, TWO_PI)
    if name == "ellipse":
        return EllipticalArc((0.0, 0.0), (2.0, 1.0), 0.0, math.pi)
    if name == "stadium":
        return StadiumArc((0.0, 0.0), 2.0, 2.0)
    raise CurveError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
