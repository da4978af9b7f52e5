"""Embedded planar graphs: parsing, face tracing, triangulation, canonical orderings.

A plane graph is stored as a rotation system: for every vertex the
counterclockwise cyclic order of its neighbours.  Faces are traced with the
face on the left of every dart, so bounded faces come out counterclockwise
and the outer face clockwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "GraphError",
    "GraphFormatError",
    "AsymmetricRotationError",
    "DuplicateEdgeError",
    "EulerCheckError",
    "PlaneGraph",
    "AugmentationRecord",
    "CanonicalOrdering",
    "parse_plane_graph",
    "format_plane_graph",
    "augment_to_maximal",
    "canonical_ordering",
    "shallow_canonical_ordering",
    "shallow_canonical_orderings",
    "ear_stack_depth",
    "is_triangulated_disk",
]


class GraphError(ValueError):
    """Base class for invalid plane graph input."""


class GraphFormatError(GraphError):
    pass


class AsymmetricRotationError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EulerCheckError(GraphError):
    pass


def _canonical_cycle(cycle: Sequence[str]) -> Tuple[str, ...]:
    i = min(range(len(cycle)), key=lambda k: cycle[k])
    return tuple(cycle[i:]) + tuple(cycle[:i])


def _same_cycle(a: Sequence[str], b: Sequence[str]) -> bool:
    if len(a) != len(b):
        return False
    n = len(a)
    for shift in range(n):
        if all(a[(shift + k) % n] == b[k] for k in range(n)):
            return True
    return False


@dataclass(frozen=True)
class PlaneGraph:
    """Simple connected plane graph given by a counterclockwise rotation system.

    ``vertices`` keeps the input order, which doubles as the tie-breaking
    order wherever the algorithms need one.  ``outer_face`` is stored as the
    traced face walk (clockwise), whatever orientation the caller supplied.
    """

    vertices: Tuple[str, ...]
    rotation: Mapping[str, Tuple[str, ...]]
    outer_face: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)
    _faces: Tuple[Tuple[str, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        rotation = {v: tuple(self.rotation[v]) if v in self.rotation else () for v in vertices}
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "rotation", rotation)
        index = {}
        for i, v in enumerate(vertices):
            if v in index:
                raise GraphFormatError(f"vertex {v!r} declared twice")
            index[v] = i
        object.__setattr__(self, "_index", index)
        extra = set(self.rotation) - set(vertices) if isinstance(self.rotation, Mapping) else set()
        if extra:
            raise GraphFormatError(f"rotation given for undeclared vertices {sorted(extra)}")
        for v, nbrs in rotation.items():
            if v in nbrs:
                raise GraphFormatError(f"self-loop at {v!r}")
            if len(set(nbrs)) != len(nbrs):
                raise DuplicateEdgeError(f"parallel edges at {v!r}")
            for u in nbrs:
                if u not in index:
                    raise GraphFormatError(f"unknown neighbour {u!r} of {v!r}")
                if v not in rotation[u]:
                    raise AsymmetricRotationError(
                        f"{u!r} is in rotation({v!r}) but {v!r} is not in rotation({u!r})"
                    )
        if len(vertices) > 1 and any(not nbrs for nbrs in rotation.values()):
            raise EulerCheckError("isolated vertex: embedding is disconnected")
        faces = tuple(_trace_faces(vertices, rotation))
        object.__setattr__(self, "_faces", faces)
        n_e = sum(len(nbrs) for nbrs in rotation.values()) // 2
        if len(vertices) - n_e + len(faces) != 2:
            raise EulerCheckError(
                f"V - E + F = {len(vertices)} - {n_e} + {len(faces)} != 2 "
                "(disconnected or non-planar rotation system)"
            )
        outer = tuple(self.outer_face)
        match = next((f for f in faces if _same_cycle(f, outer)), None)
        if match is None:
            match = next((f for f in faces if _same_cycle(f, outer[::-1])), None)
        if match is None:
            raise GraphFormatError(f"outer face {list(outer)} is not a face of the embedding")
        object.__setattr__(self, "outer_face", match)

    # -- basic queries -----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.rotation.values()) // 2

    @property
    def n_faces(self) -> int:
        return len(self._faces)

    def index(self, v: str) -> int:
        return self._index[v]

    def edges(self) -> List[Tuple[str, str]]:
        """Edges as pairs ordered by vertex index, sorted."""
        out = []
        for v in self.vertices:
            for u in self.rotation[v]:
                if self._index[v] < self._index[u]:
                    out.append((v, u))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.rotation.get(u, ())

    def faces(self) -> List[Tuple[str, ...]]:
        """All face walks, face on the left; the outer face is among them."""
        return list(self._faces)

    def outer_face_index(self) -> int:
        return self._faces.index(self.outer_face)

    def is_maximal(self) -> bool:
        n = self.n_vertices
        return n >= 3 and self.n_edges == 3 * n - 6

    def ccw_outer_cycle(self) -> Tuple[str, ...]:
        """The outer boundary listed counterclockwise (graph interior on the left)."""
        return tuple(reversed(self.outer_face))


def _next_dart(rotation: Mapping[str, Sequence[str]], u: str, v: str) -> Tuple[str, str]:
    rot = rotation[v]
    i = rot.index(u)
    return v, rot[i - 1]


def _trace_faces(vertices: Sequence[str], rotation: Mapping[str, Sequence[str]]):
    seen = set()
    faces = []
    for v in vertices:
        for u in rotation[v]:
            if (v, u) in seen:
                continue
            walk = []
            dart = (v, u)
            while dart not in seen:
                seen.add(dart)
                walk.append(dart[0])
                dart = _next_dart(rotation, *dart)
            faces.append(tuple(walk))
    if not faces and len(vertices) == 1:
        faces.append((vertices[0],))
    return faces


# -- file format -------------------------------------------------------------


def parse_plane_graph(text: str) -> PlaneGraph:
    """Parse the line-based graph format.

    ``v <id>`` declares a vertex, ``rot <id>: <id> ...`` gives the
    counterclockwise neighbour order and ``outer: <id> ...`` the outer face.
    Blank lines and ``#`` comments are ignored.
    """
    vertices: List[str] = []
    rotation: Dict[str, Tuple[str, ...]] = {}
    outer: Optional[Tuple[str, ...]] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "v":
            tokens = rest.split()
            if len(tokens) != 1:
                raise GraphFormatError(f"line {lineno}: expected 'v <id>'")
            vertices.append(tokens[0])
        elif head == "rot" or line.startswith("rot "):
            name, sep, nbrs = rest.partition(":")
            if not sep or not name.strip():
                raise GraphFormatError(f"line {lineno}: expected 'rot <id>: <ids>'")
            name = name.strip()
            if name in rotation:
                raise GraphFormatError(f"line {lineno}: rotation for {name!r} given twice")
            rotation[name] = tuple(nbrs.split())
        elif line.startswith("outer:") or head == "outer:":
            outer = tuple(line[len("outer:"):].split())
        else:
            raise GraphFormatError(f"line {lineno}: unrecognised line {raw!r}")
    if not vertices:
        raise GraphFormatError("no vertices")
    if outer is None:
        raise GraphFormatError("missing 'outer:' line")
    missing = [v for v in vertices if v not in rotation]
    if missing and len(vertices) > 1:
        raise GraphFormatError(f"missing rotation for {missing}")
    for v, nbrs in rotation.items():
        if len(set(nbrs)) != len(nbrs):
            raise DuplicateEdgeError(f"rotation of {v!r} lists a neighbour twice")
    return PlaneGraph(tuple(vertices), rotation, outer)


def format_plane_graph(g: PlaneGraph) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"rot {v}: {' '.join(g.rotation[v])}" for v in g.vertices]
    lines.append("outer: " + " ".join(g.outer_face))
    return "\n".join(lines) + "\n"


# -- augmentation ------------------------------------------------------------


@dataclass(frozen=True)
class AugmentationRecord:
    """Edges added by :func:`augment_to_maximal` and where each new face came from.

    ``face_origin`` maps every face of the augmented graph (a triangle in
    canonical rotation) to the index of the input face, as listed by
    ``PlaneGraph.faces()``, that contains it.
    """

    added_edges: Tuple[Tuple[str, str], ...]
    face_origin: Mapping[Tuple[str, ...], int]


def _insert_after(rot: List[str], anchor: str, new: str) -> None:
    rot.insert(rot.index(anchor) + 1, new)


def _insert_before(rot: List[str], anchor: str, new: str) -> None:
    rot.insert(rot.index(anchor), new)


def augment_to_maximal(g: PlaneGraph) -> Tuple[PlaneGraph, AugmentationRecord]:
    """Triangulate every face of ``g`` by ear cutting, never creating parallel edges.

    The augmented outer face is the triangle cut from the old outer face
    that contains the first dart of its walk.
    """
    if g.n_vertices < 3:
        raise GraphError("augmentation needs at least 3 vertices")
    rotation = {v: list(g.rotation[v]) for v in g.vertices}
    adj = {v: set(g.rotation[v]) for v in g.vertices}
    added: List[Tuple[str, str]] = []
    triangles: List[Tuple[Tuple[str, ...], int]] = []
    outer_index = g.outer_face_index()
    outer_triangle = None

    for fi, face in enumerate(g.faces()):
        walk = list(face)
        first_dart = (walk[0], walk[1 % len(walk)])
        while len(walk) > 3:
            m = len(walk)
            cut = None
            for i in range(m):
                a, b, c = walk[i - 1], walk[i], walk[(i + 1) % m]
                if a != c and c not in adj[a]:
                    cut = i
                    break
            if cut is None:
                raise GraphError(f"cannot triangulate face {face} without parallel edges")
            i = cut
            a, b, c = walk[i - 1], walk[i], walk[(i + 1) % m]
            # corner at a lies between b and its ccw successor; at c just before b
            _insert_after(rotation[a], b, c)
            _insert_before(rotation[c], b, a)
            adj[a].add(c)
            adj[c].add(a)
            added.append((a, c))
            tri = (a, b, c)
            triangles.append((tri, fi))
            if fi == outer_index and outer_triangle is None and _dart_in(tri, first_dart):
                outer_triangle = tri
            del walk[i]
        tri = tuple(walk)
        triangles.append((tri, fi))
        if fi == outer_index and outer_triangle is None:
            outer_triangle = tri

    aug = PlaneGraph(g.vertices, {v: tuple(r) for v, r in rotation.items()}, outer_triangle)
    origin = {_canonical_cycle(t): fi for t, fi in triangles}
    return aug, AugmentationRecord(tuple(added), origin)


def _dart_in(cycle: Sequence[str], dart: Tuple[str, str]) -> bool:
    n = len(cycle)
    return any(cycle[k] == dart[0] and cycle[(k + 1) % n] == dart[1] for k in range(n))


# -- canonical ordering ------------------------------------------------------


@dataclass(frozen=True)
class CanonicalOrdering:
    """Vertex order v1..vn with the boundary path each later vertex attaches to.

    ``steps[j]`` belongs to ``sequence[j + 3]`` and lists its earlier
    neighbours along the counterclockwise boundary of the previous disk.
    A path of one edge is an ear, two or more edges a fan.
    """

    sequence: Tuple[str, ...]
    base_edge: Tuple[str, str]
    steps: Tuple[Tuple[str, ...], ...]

    def kind(self, j: int) -> str:
        return "ear" if len(self.steps[j]) == 2 else "fan"


def canonical_ordering(
    g: PlaneGraph,
    base_edge: Optional[Tuple[str, str]] = None,
    rng: Optional[random.Random] = None,
) -> CanonicalOrdering:
    """Canonical ordering by repeated deletion of chord-free outer vertices.

    ``base_edge`` must be an outer edge; by default the first edge of the
    counterclockwise outer cycle.  Among removable vertices the one with the
    smallest input index goes first, unless ``rng`` is given.
    """
    if not g.is_maximal():
        raise GraphError("canonical ordering requires a maximal planar graph")
    cycle = list(g.ccw_outer_cycle())
    if base_edge is None:
        base_edge = (cycle[0], cycle[1])
    a, b = base_edge
    n_out = len(cycle)
    v1 = v2 = None
    for k in range(n_out):
        x, y = cycle[k], cycle[(k + 1) % n_out]
        if (x, y) == (a, b) or (x, y) == (b, a):
            v1, v2 = x, y
    if v1 is None:
        raise GraphError(f"base edge {base_edge} is not on the outer face")

    n = g.n_vertices
    if n == 3:
        v3 = next(v for v in cycle if v not in (v1, v2))
        return CanonicalOrdering((v1, v2, v3), (v1, v2), ())

    index = g._index
    removed = set()
    # boundary kept as ccw list starting v1, v2
    k0 = cycle.index(v1)
    boundary = cycle[k0:] + cycle[:k0]
    on_boundary = set(boundary)
    chords = {}

    def chord_count(v):
        nbrs = [u for u in g.rotation[v] if u in on_boundary and u not in removed]
        return len(nbrs) - 2

    for v in boundary:
        chords[v] = chord_count(v)

    removal = []
    steps_rev = []
    while len(removal) < n - 3:
        candidates = [v for v in boundary[2:] if chords[v] == 0]
        if not candidates:
            raise GraphError("no removable outer vertex; input is not a valid triangulation")
        if rng is None:
            v = min(candidates, key=index.__getitem__)
        else:
            v = candidates[rng.randrange(len(candidates))]
        pos = boundary.index(v)
        prev_v = boundary[pos - 1]
        next_v = boundary[(pos + 1) % len(boundary)]
        rot = g.rotation[v]
        live = [u for u in rot if u not in removed]
        # interior neighbours run ccw from next_v to prev_v
        i = live.index(next_v)
        ccw_from_next = live[i:] + live[:i]
        j = ccw_from_next.index(prev_v)
        inner = ccw_from_next[1:j]
        path = [prev_v] + inner[::-1] + [next_v]
        steps_rev.append(tuple(path))
        removal.append(v)
        removed.add(v)
        boundary[pos:pos + 1] = inner[::-1]
        on_boundary.discard(v)
        on_boundary.update(inner)
        touched = set(path)
        for u in touched:
            chords[u] = chord_count(u)
        for u in inner:
            for x in g.rotation[u]:
                if x in on_boundary and x not in removed:
                    chords[x] = chord_count(x)

    v3 = boundary[2]
    sequence = (v1, v2, v3) + tuple(reversed(removal))
    return CanonicalOrdering(sequence, (v1, v2), tuple(reversed(steps_rev)))


def ear_stack_depth(order: CanonicalOrdering) -> int:
    """Largest number of ears attached at one end of one boundary edge.

    An ear on edge uv leaves u with a new edge whose curve arc is roughly
    the old arc squared in relative size, so the achievable feature size
    falls doubly exponentially in this count.  Fans keep the count of the
    path's end edges.
    """
    v1, v2, v3 = order.sequence[:3]
    cnt = {(v2, v3): (0, 0), (v3, v1): (0, 0)}
    worst = 0
    for w, p in zip(order.sequence[3:], order.steps):
        n1, n2 = _step_counts(cnt, p)
        cnt[(p[0], w)] = n1
        cnt[(w, p[-1])] = n2
        worst = max(worst, n1[0], n2[1])
    return worst


def _step_counts(cnt, p):
    """Pop the path's edges from ``cnt`` and return the counts of the two new edges."""
    if len(p) == 2:
        a, b = cnt.pop((p[0], p[1]))
        return (a + 1, 0), (0, b + 1)
    a = cnt.pop((p[0], p[1]))[0]
    b = cnt.pop((p[-2], p[-1]))[1]
    for x, y in zip(p[1:-2], p[2:-1]):
        cnt.pop((x, y))
    return (a, 0), (0, b)


def _attachable(g: PlaneGraph, inside, path, touching):
    """Outside vertices whose earlier neighbours form a sub-path of ``path`` bounding faces with it.

    ``touching`` maps outside vertices to their number of inside neighbours.
    """
    pos = {v: i for i, v in enumerate(path)}
    for v, k in touching.items():
        if k < 2:
            continue
        idx = sorted(pos.get(u, -1) for u in g.rotation[v] if u in inside)
        if idx[0] < 0 or idx[-1] - idx[0] != k - 1:
            continue
        sub = path[idx[0]:idx[-1] + 1]
        # each consecutive pair must bound a face with v
        if any(g.rotation[a][g.rotation[a].index(b) - 1] != v for a, b in zip(sub, sub[1:])):
            continue
        yield v, tuple(sub)


def _grow_ordering(g: PlaneGraph, v1: str, v2: str) -> CanonicalOrdering:
    rot = g.rotation[v2]
    v3 = rot[rot.index(v1) - 1]
    inside = {v1, v2, v3}
    touching: Dict[str, int] = {}
    for u in inside:
        for v in g.rotation[u]:
            if v not in inside:
                touching[v] = touching.get(v, 0) + 1
    path = [v2, v3, v1]
    cnt = {(v2, v3): (0, 0), (v3, v1): (0, 0)}
    seq = [v1, v2, v3]
    steps = []
    index = g._index
    while len(seq) < g.n_vertices:
        best = None
        for v, sub in _attachable(g, inside, path, touching):
            # fans cost nothing, ears cost the resulting stack height
            cost = max(cnt[sub]) + 1 if len(sub) == 2 else 0
            key = (cost, index[v])
            if best is None or key < best[0]:
                best = (key, v, sub)
        if best is None:
            raise GraphError("no vertex can be attached; input is not a valid triangulation")
        _, v, sub = best
        n1, n2 = _step_counts(cnt, sub)
        cnt[(sub[0], v)] = n1
        cnt[(v, sub[-1])] = n2
        i = path.index(sub[0])
        j = path.index(sub[-1])
        path[i + 1:j] = [v]
        inside.add(v)
        del touching[v]
        for u in g.rotation[v]:
            if u not in inside:
                touching[u] = touching.get(u, 0) + 1
        seq.append(v)
        steps.append(sub)
    return CanonicalOrdering(tuple(seq), (v1, v2), tuple(steps))


def shallow_canonical_orderings(g: PlaneGraph) -> List[CanonicalOrdering]:
    """One greedy ordering per outer edge, best predicted first.

    Each ordering grows the disk forward, attaching fans whenever possible
    and otherwise the ear that keeps :func:`ear_stack_depth` lowest.  Ties
    go to the smallest vertex index; sorting is stable in outer-cycle order.
    """
    if not g.is_maximal():
        raise GraphError("canonical ordering requires a maximal planar graph")
    cycle = list(g.ccw_outer_cycle())
    if g.n_vertices == 3:
        v1, v2, v3 = cycle
        return [CanonicalOrdering((v1, v2, v3), (v1, v2), ())]
    found = [_grow_ordering(g, cycle[k], cycle[(k + 1) % 3]) for k in range(3)]
    return sorted(found, key=ear_stack_depth)


def shallow_canonical_ordering(g: PlaneGraph, base_edge: Optional[Tuple[str, str]] = None) -> CanonicalOrdering:
    """The best of :func:`shallow_canonical_orderings`, or the one for ``base_edge``."""
    options = shallow_canonical_orderings(g)
    if base_edge is None:
        return options[0]
    for o in options:
        if set(o.base_edge) == set(base_edge):
            return o
    raise GraphError(f"base edge {base_edge} is not on the outer face")


def is_triangulated_disk(g: PlaneGraph, subset: Iterable[str]) -> bool:
    """Whether ``subset`` induces a triangulated disk inside the embedding of ``g``.

    Checks connectivity via a single non-triangular face, that this face is
    a simple cycle (the boundary), and that every other face is a triangle.
    """
    keep = set(subset)
    if len(keep) < 3:
        return False
    rotation = {v: tuple(u for u in g.rotation[v] if u in keep) for v in g.vertices if v in keep}
    verts = [v for v in g.vertices if v in keep]
    if any(not r for r in rotation.values()):
        return False
    faces = _trace_faces(verts, rotation)
    n_e = sum(len(r) for r in rotation.values()) // 2
    if len(verts) - n_e + len(faces) != 2:
        return False
    big = [f for f in faces if len(f) != 3]
    tris = [f for f in faces if len(f) == 3]
    if len(big) > 1:
        return False
    if not big:
        # every face a triangle: a disk whose boundary is one of them
        return True
    boundary = big[0]
    if len(set(boundary)) != len(boundary):
        return False
    return len(tris) == len(faces) - 1
