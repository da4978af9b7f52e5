import itertools
import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvestab.curves import CircularArc, EllipticalArc
from curvestab.gallery import (
    BUILTIN_NAMES,
    _g30_drawing,
    builtin_graph,
    experiment_edge_cross_search,
    random_maximal_planar,
)
from curvestab.planegraph import GraphError, canonical_ordering
from curvestab.verify import check_edges, check_straightline_plane


def _induced_octahedra(g):
    """All 6-vertex sets inducing K_{2,2,2}, found as pairs of disjoint triangles."""
    adj = {v: set(g.rotation[v]) for v in g.vertices}
    tris = {
        frozenset(t)
        for t in itertools.combinations(g.vertices, 3)
        if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]
    }
    found = set()
    for a, b in itertools.combinations(tris, 2):
        s = a | b
        if not a & b and all(len(adj[v] & s) == 4 for v in s):
            found.add(frozenset(s))
    return found


@pytest.mark.parametrize("name,counts", [
    ("triangle", (3, 3, 2)),
    ("k4", (4, 6, 4)),
    ("octahedron", (6, 12, 8)),
    ("g30", (30, 84, 56)),
])
def test_builtin_counts(name, counts):
    g = builtin_graph(name)
    assert (g.n_vertices, g.n_edges, g.n_faces) == counts
    assert g.n_vertices - g.n_edges + g.n_faces == 2
    assert g.is_maximal()


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin_graph("dodecahedron")


def test_builtin_names_listed():
    assert BUILTIN_NAMES == ("triangle", "k4", "octahedron", "g30")


def test_g30_is_nine_glued_octahedra():
    g = builtin_graph("g30")
    octs = _induced_octahedra(g)
    assert len(octs) == 9
    central = [o for o in octs if all(len(o & p) in (3, 6) for p in octs)]
    assert len(central) == 1
    central = central[0]
    others = [o - central for o in octs if o != central]
    # each copy meets the centre in one glued face and brings three new vertices
    assert all(len(o) == 3 for o in others)
    assert len(set().union(*others)) == 24
    glued = {o & central for o in octs if o != central}
    adj = {v: set(g.rotation[v]) for v in g.vertices}
    central_triangles = {
        frozenset(t) for t in itertools.combinations(central, 3)
        if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]
    }
    # one copy on every one of the eight triangles of the centre
    assert glued == central_triangles and len(glued) == 8


def test_random_small_cases():
    g3 = random_maximal_planar(3, seed=9)
    assert (g3.n_vertices, g3.n_edges, g3.n_faces) == (3, 3, 2)
    g4 = random_maximal_planar(4, seed=9)
    assert g4.n_edges == 6 and all(len(r) == 3 for r in g4.rotation.values())


def test_random_rejects_tiny():
    with pytest.raises(GraphError):
        random_maximal_planar(2)


def test_random_is_deterministic():
    a = random_maximal_planar(25, seed=11)
    b = random_maximal_planar(25, seed=11)
    assert a.rotation == b.rotation and a.outer_face == b.outer_face
    c = random_maximal_planar(25, seed=12)
    assert c.rotation != a.rotation


@settings(max_examples=60, deadline=None)
@given(n=st.integers(3, 80), seed=st.integers(0, 2**31))
def test_random_maximal_planar_invariants(n, seed):
    g = random_maximal_planar(n, seed=seed)
    assert g.n_edges == 3 * n - 6
    assert g.n_faces == 2 * n - 4
    for v, nbrs in g.rotation.items():
        assert v not in nbrs and len(set(nbrs)) == len(nbrs)
        assert all(v in g.rotation[u] for u in nbrs)
    assert len(canonical_ordering(g).sequence) == n


def test_experiment_zero_trials():
    r = experiment_edge_cross_search(0, seed=3)
    assert (r.trials, r.successes) == (0, 0)
    assert sum(r.histogram) == 0


def test_experiment_is_reproducible():
    a = experiment_edge_cross_search(200, seed=5, keep_summaries=True)
    b = experiment_edge_cross_search(200, seed=5, keep_summaries=True)
    assert a.to_json() == b.to_json()
    assert len(a.summaries) == 200
    assert sum(a.histogram) == 200
    assert a.successes == a.histogram[12] == 0


def test_experiment_trials_independent_of_count():
    # trial i depends only on (seed, i)
    a = experiment_edge_cross_search(50, seed=2, keep_summaries=True)
    b = experiment_edge_cross_search(80, seed=2, keep_summaries=True)
    assert a.summaries == b.summaries[:50]


def test_experiment_json_shape():
    doc = json.loads(experiment_edge_cross_search(10, seed=1).to_json())
    assert {"trials", "successes", "seed", "summaries", "histogram"} <= set(doc)


def test_experiment_rejects_negative():
    with pytest.raises(ValueError):
        experiment_edge_cross_search(-1)


def test_g30_drawing_not_touched_everywhere():
    # the constructed g30 drawing against a spread of curves: some edge is always missed
    coords, _ = _g30_drawing()
    g = builtin_graph("g30")
    assert check_straightline_plane(g, coords).passed
    rng = random.Random(0)
    for _ in range(200):
        c = (rng.uniform(-6, 6), rng.uniform(-6, 6))
        if rng.random() < 0.5:
            curve = CircularArc(c, math.exp(rng.uniform(-2, 3)), 0.0, 2 * math.pi)
        else:
            curve = EllipticalArc(c, (math.exp(rng.uniform(-2, 3)), math.exp(rng.uniform(-2, 3))), 0.0, 2 * math.pi)
        assert not check_edges(g, coords, curve, "touched").all_hit
