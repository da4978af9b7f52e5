"""Planar predicates shared by the drawer and the verifier.

Orientation tests fall back to exact rational arithmetic when the floating
point result is too close to zero to trust.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

Point = Tuple[float, float]

_EPS = 2.0 ** -53
_ORIENT_BOUND = (3.0 + 16.0 * _EPS) * _EPS


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear."""
    acx, acy = a[0] - c[0], a[1] - c[1]
    bcx, bcy = b[0] - c[0], b[1] - c[1]
    left = acx * bcy
    right = acy * bcx
    det = left - right
    bound = _ORIENT_BOUND * (abs(left) + abs(right))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (a[0], a[1], b[0], b[1], c[0], c[1]))
    exact = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (exact > 0) - (exact < 0)


def segments_cross(p: Point, q: Point, r: Point, s: Point) -> bool:
    """Whether the open segments pq and rs cross at a single interior point."""
    o1 = orient(p, q, r)
    o2 = orient(p, q, s)
    if o1 == 0 or o2 == 0 or o1 == o2:
        return False
    o3 = orient(r, s, p)
    o4 = orient(r, s, q)
    return o3 != 0 and o4 != 0 and o3 != o4


def on_open_segment(p: Point, a: Point, b: Point) -> bool:
    """Whether p lies strictly between a and b on segment ab."""
    if orient(a, b, p) != 0:
        return False
    if p == a or p == b:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def signed_area(pts: Sequence[Point]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i - 1]
        x1, y1 = pts[i]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def winding_number(pt: Point, poly: Sequence[Point]) -> int:
    """Winding number of the closed polyline ``poly`` around ``pt``."""
    wn = 0
    x, y = pt
    n = len(poly)
    for i in range(n):
        a = poly[i - 1]
        b = poly[i]
        if a[1] <= y:
            if b[1] > y and orient(a, b, pt) > 0:
                wn += 1
        elif b[1] <= y and orient(a, b, pt) < 0:
            wn -= 1
    return wn


def points_in_polygon(xs: np.ndarray, ys: np.ndarray, poly: Sequence[Point]) -> np.ndarray:
    """Even-odd containment of many points in one simple polygon (vectorised)."""
    P = np.asarray(poly, dtype=float)
    px, py = P[:, 0], P[:, 1]
    qx = np.concatenate((px[-1:], px[:-1]))
    qy = np.concatenate((py[-1:], py[:-1]))
    X = xs[:, None]
    Y = ys[:, None]
    straddle = (py > Y) != (qy > Y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = px + (Y - py) * (qx - px) / (qy - py)
    hits = straddle & (X < xint)
    return (hits.sum(axis=1) % 2) == 1


def dist_point_segment(p: Point, a: Point, b: Point) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    if L2 == 0:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    t = min(max(t, 0.0), 1.0)
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def in_ccw_sweep(a: Point, b: Point, d: Point) -> bool:
    """Whether direction d lies strictly inside the ccw sweep from direction a to b."""
    o = (0.0, 0.0)
    if orient(o, a, b) > 0:
        return orient(o, a, d) > 0 and orient(o, d, b) > 0
    return orient(o, a, d) > 0 or orient(o, d, b) > 0
