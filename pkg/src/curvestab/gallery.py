"""Built-in graphs, random triangulations and the edge-crossing falsification run."""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from .curves import CircularArc, EllipticalArc
from .planegraph import GraphError, PlaneGraph

__all__ = [
    "BUILTIN_NAMES",
    "builtin_graph",
    "graph_from_drawing",
    "random_maximal_planar",
    "octahedron_drawing",
    "ExperimentResult",
    "experiment_edge_cross_search",
]

BUILTIN_NAMES = ("triangle", "k4", "octahedron", "g30")


def graph_from_drawing(
    coords: Mapping[str, Tuple[float, float]], edges: Sequence[Tuple[str, str]]
) -> PlaneGraph:
    """Plane graph whose rotation system is read off a straight-line drawing.

    Vertices keep the order of ``coords``; the outer face is the traced face
    with negative signed area.
    """
    rotation: Dict[str, List[str]] = {v: [] for v in coords}
    for u, v in edges:
        rotation[u].append(v)
        rotation[v].append(u)
    for v, nbrs in rotation.items():
        x0, y0 = coords[v]
        nbrs.sort(key=lambda u: math.atan2(coords[u][1] - y0, coords[u][0] - x0))
    probe = PlaneGraph(tuple(coords), rotation, _any_face(rotation))
    outer = min(probe.faces(), key=lambda f: _signed_area([coords[v] for v in f]))
    return PlaneGraph(tuple(coords), rotation, outer)


def _any_face(rotation):
    v = next(iter(rotation))
    u = rotation[v][0]
    walk = [v]
    a, b = v, u
    while True:
        rot = rotation[b]
        a, b = b, rot[rot.index(a) - 1]
        if (a, b) == (v, u):
            return walk
        walk.append(a)


def _signed_area(pts) -> float:
    s = 0.0
    for i in range(len(pts)):
        x0, y0 = pts[i - 1]
        x1, y1 = pts[i]
        s += x0 * y1 - x1 * y0
    return s / 2


def _polar(r, deg, c=(0.0, 0.0)):
    a = math.radians(deg)
    return (c[0] + r * math.cos(a), c[1] + r * math.sin(a))


def octahedron_drawing(prefix: str = "") -> Tuple[Dict[str, Tuple[float, float]], List[Tuple[str, str]]]:
    """Nested-triangle drawing of K_{2,2,2}: outer a,b,c and inner d,e,f.

    Inner vertex d sits opposite c, e opposite a, f opposite b.
    """
    names = [prefix + s for s in "abcdef"]
    a, b, c, d, e, f = names
    coords = {
        a: _polar(2.0, 90),
        b: _polar(2.0, 210),
        c: _polar(2.0, 330),
        d: _polar(0.8, 150),
        e: _polar(0.8, 270),
        f: _polar(0.8, 30),
    }
    edges = [(a, b), (b, c), (c, a), (d, e), (e, f), (f, d),
             (d, a), (d, b), (e, b), (e, c), (f, c), (f, a)]
    return coords, edges


def _g30_drawing():
    coords, edges = octahedron_drawing()
    base = PlaneGraph(tuple(coords), _rot(coords, edges), ("a", "b", "c"))
    count = 0
    for face in base.faces():
        pts = [coords[v] for v in face]
        if _signed_area(pts) > 0:
            cx = sum(p[0] for p in pts) / 3
            cy = sum(p[1] for p in pts) / 3
            news = []
            for k in range(3):
                u, v = face[k], face[(k + 1) % 3]
                mx = (coords[u][0] + coords[v][0]) / 2
                my = (coords[u][1] + coords[v][1]) / 2
                name = f"n{count}"
                count += 1
                coords[name] = (cx + 0.5 * (mx - cx), cy + 0.5 * (my - cy))
                edges += [(name, u), (name, v)]
                news.append(name)
        else:
            news = []
            for k in range(3):
                u, v = face[k], face[(k + 1) % 3]
                mx = (coords[u][0] + coords[v][0]) / 2
                my = (coords[u][1] + coords[v][1]) / 2
                name = f"n{count}"
                count += 1
                coords[name] = (6.0 * mx, 6.0 * my)
                edges += [(name, u), (name, v)]
                news.append(name)
        edges += [(news[0], news[1]), (news[1], news[2]), (news[2], news[0])]
    return coords, edges


def _rot(coords, edges):
    rotation = {v: [] for v in coords}
    for u, v in edges:
        rotation[u].append(v)
        rotation[v].append(u)
    for v, nbrs in rotation.items():
        nbrs.sort(key=lambda u: math.atan2(coords[u][1] - coords[v][1], coords[u][0] - coords[v][0]))
    return rotation


def builtin_graph(name: str) -> PlaneGraph:
    """One of ``triangle``, ``k4``, ``octahedron`` or ``g30``.

    ``g30`` glues a copy of the octahedron into each of the eight faces of a
    central octahedron, the outer face included, giving 30 vertices.
    """
    if name == "triangle":
        coords = {"a": _polar(1, 90), "b": _polar(1, 210), "c": _polar(1, 330)}
        return graph_from_drawing(coords, [("a", "b"), ("b", "c"), ("c", "a")])
    if name == "k4":
        coords = {"a": _polar(2, 90), "b": _polar(2, 210), "c": _polar(2, 330), "d": (0.0, 0.0)}
        edges = [("a", "b"), ("b", "c"), ("c", "a"), ("d", "a"), ("d", "b"), ("d", "c")]
        return graph_from_drawing(coords, edges)
    if name == "octahedron":
        return graph_from_drawing(*octahedron_drawing())
    if name == "g30":
        return graph_from_drawing(*_g30_drawing())
    raise KeyError(f"unknown built-in graph {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def random_maximal_planar(n: int, seed: int = 0) -> PlaneGraph:
    """Random maximal plane graph on ``n`` vertices, built by ear/fan insertion.

    Starts from the triangle 0,1,2 with base edge 0-1 and attaches each new
    vertex to a uniformly chosen sub-path of the non-base boundary; the last
    vertex takes the whole path so the outer face closes to a triangle.
    """
    if n < 3:
        raise GraphError("need n >= 3")
    rng = random.Random(seed)
    names = [str(i) for i in range(n)]
    rotation: Dict[str, List[str]] = {"0": ["1", "2"], "1": ["2", "0"], "2": ["0", "1"]}
    # ccw boundary path from the base's second vertex around to its first
    path = ["1", "2", "0"]
    for k in range(3, n):
        w = names[k]
        m = len(path) - 1
        if k == n - 1:
            i, j = 0, m
        else:
            pairs = m * (m + 1) // 2
            r = rng.randrange(pairs)
            i = 0
            while r >= m - i:
                r -= m - i
                i += 1
            j = i + 1 + r
        sub = path[i:j + 1]
        rotation[w] = sub[::-1]
        for t, p in enumerate(sub):
            rot = rotation[p]
            if t == 0:
                rot.insert(rot.index(sub[1]), w)
            else:
                rot.insert(rot.index(sub[t - 1]) + 1, w)
        path[i + 1:j] = [w]
    outer = ("0", names[n - 1], "1") if n > 3 else ("0", "2", "1")
    return PlaneGraph(tuple(names), rotation, outer)


# -- falsification experiment ------------------------------------------------


@dataclass
class ExperimentResult:
    trials: int
    successes: int
    seed: int
    summaries: List[dict] = field(default_factory=list)
    #: number of trials by how many edges were crossed (index 0..12)
    histogram: List[int] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


_OCTAHEDRON = None


def _octahedron():
    global _OCTAHEDRON
    if _OCTAHEDRON is None:
        _OCTAHEDRON = builtin_graph("octahedron")
    return _OCTAHEDRON


def _sample_inner(rng, outer):
    """Uniform point in the triangle ``outer``."""
    u, v = rng.random(), rng.random()
    if u + v > 1:
        u, v = 1 - u, 1 - v
    (ax, ay), (bx, by), (cx, cy) = outer
    return (ax + u * (bx - ax) + v * (cx - ax), ay + u * (by - ay) + v * (cy - ay))


def _random_curve(rng, bbox):
    (x0, y0), (x1, y1) = bbox
    diam = math.hypot(x1 - x0, y1 - y0)
    center = (x0 + rng.random() * (x1 - x0), y0 + rng.random() * (y1 - y0))
    lo = math.log(0.02 * diam)
    hi = math.log(5.0 * diam)
    t_lo = rng.uniform(0.0, 2 * math.pi)
    span = rng.uniform(0.05, 2 * math.pi) if rng.random() < 0.75 else 2 * math.pi
    if rng.random() < 0.5:
        r = math.exp(rng.uniform(lo, hi))
        return CircularArc(center, r, t_lo, t_lo + span)
    axes = (math.exp(rng.uniform(lo, hi)), math.exp(rng.uniform(lo, hi)))
    return EllipticalArc(center, axes, t_lo, t_lo + span)


def _rotate(p, c, s):
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


def experiment_edge_cross_search(trials: int, seed: int = 0, keep_summaries: bool = False) -> ExperimentResult:
    """Random search for a nested-triangle octahedron drawing whose 12 edges are all crossed.

    Each trial keeps the outer triangle fixed, draws the inner triangle
    uniformly inside it (resampling until the drawing is plane) and pairs
    it with a random circular or elliptical arc.  Ellipses are axis-aligned,
    so the drawing is turned by a random angle instead of the curve.  Trial
    ``i`` uses its own generator seeded by ``(seed, i)``, so results do not
    depend on how trials are scheduled.
    """
    from .verify import check_edges, check_straightline_plane

    if trials < 0:
        raise ValueError("trials must be non-negative")
    g = _octahedron()
    base, _ = octahedron_drawing()
    outer = [base["a"], base["b"], base["c"]]
    xs = [p[0] for p in outer]
    ys = [p[1] for p in outer]
    bbox = ((min(xs), min(ys)), (max(xs), max(ys)))
    successes = 0
    histogram = [0] * 13
    summaries = []
    for i in range(trials):
        rng = random.Random(f"edge-cross:{seed}:{i}")
        while True:
            pos = {"a": outer[0], "b": outer[1], "c": outer[2]}
            for v in "def":
                pos[v] = _sample_inner(rng, outer)
            if check_straightline_plane(g, pos).passed:
                break
        angle = rng.uniform(0.0, 2 * math.pi)
        c, s = math.cos(angle), math.sin(angle)
        pos = {v: _rotate(p, c, s) for v, p in pos.items()}
        curve = _random_curve(rng, bbox)
        report = check_edges(g, pos, curve, "crossed")
        hit = report.n_hit
        histogram[hit] += 1
        if hit == 12:
            successes += 1
        if keep_summaries:
            summaries.append({"trial": i, "edges_crossed": hit, "curve": curve.spec()})
    return ExperimentResult(trials, successes, seed, summaries, histogram)
