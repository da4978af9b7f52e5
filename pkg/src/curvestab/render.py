"""Deterministic SVG pictures of a drawing and its curve.

Coordinates are mapped affinely into a fixed view box for display only.
Bounded faces are shaded by the step that completed them, darker first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from .curves import ConvexCurveModel
from .planegraph import PlaneGraph

__all__ = ["RenderScene", "RenderError", "build_scene", "render_svg", "VIEW_SIZE"]

Point = Tuple[float, float]
VIEW_SIZE = 1000.0
_MARGIN = 40.0


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderScene:
    """Everything the SVG needs, in model coordinates.

    ``faces`` pairs each bounded face with the step index that completed it.
    """

    positions: Mapping[str, Point]
    edges: Tuple[Tuple[str, str], ...]
    curve_points: Tuple[Point, ...]
    markers: Tuple[Point, ...]
    faces: Tuple[Tuple[Tuple[str, ...], int], ...] = ()
    title: str = ""

    def __post_init__(self):
        for u, v in self.edges:
            if u not in self.positions or v not in self.positions:
                raise RenderError(f"edge {u}-{v} has an endpoint without a position")
        for face, _ in self.faces:
            if any(v not in self.positions for v in face):
                raise RenderError(f"face {face} has a vertex without a position")


def build_scene(
    g: PlaneGraph,
    positions: Mapping[str, Point],
    curve: ConvexCurveModel,
    sequence: Optional[Sequence[str]] = None,
    title: str = "",
) -> RenderScene:
    """Scene of ``g`` drawn at ``positions`` with ``curve`` and its edge crossings.

    ``sequence`` is the insertion order; without it faces are not shaded.
    """
    edges = tuple(g.edges())
    markers: List[Point] = []
    for u, v in edges:
        markers.extend(c.point for c in curve.proper_crossings(positions[u], positions[v]))
    faces = []
    if sequence is not None:
        rank = {v: i for i, v in enumerate(sequence)}
        outer = g.outer_face_index()
        for k, face in enumerate(g.faces()):
            if k != outer:
                faces.append((tuple(face), max(rank.get(v, 0) for v in face)))
        faces.sort(key=lambda f: (f[1], f[0]))
    pts = tuple(curve.point_at(t) for t in curve.sample_params(0.01))
    return RenderScene(dict(positions), edges, pts, tuple(markers), tuple(faces), title)


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(scene: RenderScene) -> str:
    """SVG 1.1 text for the scene; identical scenes give identical bytes."""
    if not scene.positions:
        raise RenderError("nothing to draw: the scene has no vertices")
    xs = [p[0] for p in scene.positions.values()] + [p[0] for p in scene.curve_points]
    ys = [p[1] for p in scene.positions.values()] + [p[1] for p in scene.curve_points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    k = (VIEW_SIZE - 2 * _MARGIN) / span
    ox = _MARGIN + 0.5 * ((VIEW_SIZE - 2 * _MARGIN) - k * (x1 - x0))
    oy = _MARGIN + 0.5 * ((VIEW_SIZE - 2 * _MARGIN) - k * (y1 - y0))

    def tx(p: Point) -> Tuple[str, str]:
        return _fmt(ox + k * (p[0] - x0)), _fmt(VIEW_SIZE - (oy + k * (p[1] - y0)))

    size = _fmt(VIEW_SIZE)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
    ]
    if scene.title:
        out.append(f"<title>{escape(scene.title)}</title>")
    out.append('<rect class="background" x="0" y="0" width="100%" height="100%" fill="#ffffff"/>')

    n = max((s for _, s in scene.faces), default=0)
    lo = min((s for _, s in scene.faces), default=0)
    out.append('<g id="faces" stroke="none">')
    for face, step in scene.faces:
        t = 0.0 if n == lo else (step - lo) / (n - lo)
        shade = int(round(150 + 90 * t))
        pts = " ".join(",".join(tx(scene.positions[v])) for v in face)
        out.append(f'<polygon class="face" data-step="{step}" points="{pts}" fill="#{shade:02x}{shade:02x}{shade:02x}"/>')
    out.append("</g>")

    out.append('<g id="edges" stroke="#202020" stroke-width="1.5">')
    for u, v in scene.edges:
        (a, b), (c, d) = tx(scene.positions[u]), tx(scene.positions[v])
        out.append(f'<line class="edge" data-u="{escape(u)}" data-v="{escape(v)}" x1="{a}" y1="{b}" x2="{c}" y2="{d}"/>')
    out.append("</g>")

    if scene.curve_points:
        head, *rest = [tx(p) for p in scene.curve_points]
        d = f"M {head[0]} {head[1]} " + " ".join(f"L {x} {y}" for x, y in rest)
        out.append(f'<path class="curve" d="{d.strip()}" fill="none" stroke="#c0392b" stroke-width="2"/>')

    out.append('<g id="crossings" fill="#2471a3">')
    for p in scene.markers:
        x, y = tx(p)
        out.append(f'<rect class="crossing" x="{_fmt(float(x) - 3)}" y="{_fmt(float(y) - 3)}" width="6" height="6"/>')
    out.append("</g>")

    out.append('<g id="vertices" fill="#000000">')
    for v in sorted(scene.positions, key=str):
        x, y = tx(scene.positions[v])
        out.append(f'<circle class="vertex" data-id="{escape(v)}" cx="{x}" cy="{y}" r="5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
