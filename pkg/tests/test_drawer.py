import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvestab.curves import ArcInterval, CircularArc, EllipticalArc, StadiumArc, preset_curve
from curvestab.drawer import (
    BaseEdgeForbidden,
    DiskState,
    DrawOptions,
    EpsilonExhausted,
    NoCurvedArc,
    NotBoundaryEdge,
    RaysDiverge,
    attach_ear,
    attach_fan,
    draw_all,
    inscribe_base_triangle,
)
from curvestab.gallery import builtin_graph, graph_from_drawing, random_maximal_planar
from curvestab.planegraph import canonical_ordering, shallow_canonical_ordering
from curvestab.verify import check_adequate, check_all_faces_crossed, check_straightline_plane

SEMI = preset_curve("semicircle")


def _base(curve=SEMI, options=DrawOptions()):
    return inscribe_base_triangle(curve, "a", "b", "c", options)


def _assert_adequate(state):
    rep = check_adequate(state)
    assert rep.passed, [f.to_dict() for f in rep.violations]
    assert rep.spanned_curvature < math.pi - 1e-6


def test_base_triangle_on_semicircle():
    state, trace = _base()
    assert state.boundary == ("a", "b", "c")
    assert state.base_edge == ("a", "b")
    assert set(state.edge_arcs) == {("b", "c"), ("c", "a")}
    assert trace.kind == "base" and trace.epsilon > 0
    _assert_adequate(state)
    # crossings stay within the working arc, a half turn less the slack
    assert state.curve.arc_curvature(state.spanned_arc) <= math.pi - 0.2 + 1e-12


def test_base_triangle_is_counterclockwise():
    state, _ = _base()
    (ax, ay), (bx, by), (cx, cy) = state.polygon()
    assert (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) > 0


def test_flat_stadium_side_has_no_curved_arc():
    flat = StadiumArc((0.0, 0.0), 2.0, 2.0, 0.1, 1.9)
    with pytest.raises(NoCurvedArc):
        _base(flat)


@pytest.mark.parametrize("curve", [
    StadiumArc.cap("right"),
    StadiumArc.cap("left"),
    preset_curve("stadium"),
    preset_curve("circle"),
    EllipticalArc((5.0, -3.0), (0.1, 4.0), 0.3, 2.0),
    CircularArc((0.0, 0.0), 1e-3, 0.0, 0.5),
])
def test_base_triangle_on_other_curves(curve):
    state, _ = _base(curve)
    _assert_adequate(state)


def test_ear_on_non_base_edge():
    state, _ = _base()
    new, trace = attach_ear(state, "b", "c", "d", step=4)
    assert new.boundary == ("a", "b", "d", "c")
    assert trace.kind == "ear" and trace.vertex == "d"
    for e in [("b", "d"), ("d", "c")]:
        pts = [new.positions[v] for v in e]
        assert len(new.curve.proper_crossings(*pts)) == 2
    _assert_adequate(new)


def test_ear_on_base_edge_forbidden():
    state, _ = _base()
    with pytest.raises(BaseEdgeForbidden):
        attach_ear(state, "a", "b", "d")


def test_ear_on_non_edge_rejected():
    state, _ = _base()
    with pytest.raises(NotBoundaryEdge):
        attach_ear(state, "b", "x", "d")


def test_epsilon_floor_forces_failure():
    state, _ = _base()
    with pytest.raises(EpsilonExhausted):
        attach_ear(state, "b", "c", "d", DrawOptions(eps_floor=1e3))


def test_k4_fan_step():
    state, _ = _base()
    new, trace = attach_fan(state, ["b", "c", "a"], "d", step=4)
    assert trace.kind == "fan"
    assert new.boundary == ("a", "b", "d")
    _assert_adequate(new)
    g = graph_from_drawing(new.positions, [("a", "b"), ("b", "c"), ("c", "a"), ("d", "a"), ("d", "b"), ("d", "c")])
    assert check_straightline_plane(g, new.positions).passed
    assert check_all_faces_crossed(g, new.positions, new.curve).n_crossed == 4


def test_parallel_rays_diverge():
    pos = {"a": (0.5, -1.0), "b": (1.0, 0.0), "c": (1.0, 1.0), "d": (0.0, 1.0), "e": (0.0, 0.0)}
    arcs = {e: ArcInterval(float(i), i + 0.5) for i, e in enumerate([("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])}
    state = DiskState(SEMI, pos, ("a", "b", "c", "d", "e"), (), arcs, ArcInterval(0.0, 3.5))
    with pytest.raises(RaysDiverge):
        attach_fan(state, ["b", "c", "d", "e"], "w")


def test_octahedron_every_step_adequate():
    g = builtin_graph("octahedron")
    kinds = []

    def on_step(state, trace):
        kinds.append(trace.kind)
        _assert_adequate(state)

    result = draw_all(g, SEMI, on_step=on_step)
    assert "fan" in kinds
    assert len(result.traces) == 4
    rep = check_all_faces_crossed(g, result.positions, result.state.curve)
    assert rep.n_crossed == 8


def test_octahedron_reverse_deletion_ordering():
    g = builtin_graph("octahedron")
    result = draw_all(g, SEMI, DrawOptions(ordering="reverse-deletion"))
    assert result.ordering == canonical_ordering(g)
    assert check_all_faces_crossed(g, result.positions, SEMI).all_crossed


def test_seeded_ordering_is_reproducible():
    g = random_maximal_planar(9, seed=2)
    opts = DrawOptions(ordering="reverse-deletion", seed=5)
    assert draw_all(g, SEMI, opts).positions == draw_all(g, SEMI, opts).positions


def test_triangle_both_faces_crossed():
    g = builtin_graph("triangle")
    result = draw_all(g, SEMI)
    assert check_all_faces_crossed(g, result.positions, SEMI).n_crossed == 2


def test_non_maximal_input_is_completed():
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (1.0, 1.0), "d": (0.0, 1.0), "e": (0.5, 0.5)}
    g = graph_from_drawing(coords, [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "e"), ("e", "c")])
    result = draw_all(g, preset_curve("ellipse"))
    assert result.augmentation is not None
    assert set(result.positions) == set(g.vertices)
    assert check_straightline_plane(g, result.positions).passed
    assert check_all_faces_crossed(g, result.positions, preset_curve("ellipse")).all_crossed


def test_random_n30_all_faces_crossed():
    # not every seed fits in double precision at this size; seed 1 does
    g = random_maximal_planar(30, seed=1)
    result = draw_all(g, SEMI)
    rep = check_all_faces_crossed(g, result.positions, result.state.curve)
    assert rep.n_crossed == rep.n_faces == 56


def test_g30_runs_out_of_precision():
    # every ordering of g30 stacks four ears at one end of some edge
    with pytest.raises(EpsilonExhausted):
        draw_all(builtin_graph("g30"), SEMI)


def test_drawing_is_deterministic():
    g = random_maximal_planar(14, seed=6)
    a = draw_all(g, SEMI)
    b = draw_all(g, SEMI)
    assert a.positions == b.positions and a.traces == b.traces


def test_unknown_ordering_rejected():
    with pytest.raises(ValueError):
        draw_all(builtin_graph("k4"), SEMI, DrawOptions(ordering="spiral"))


@settings(max_examples=40, deadline=None, derandomize=True)
@given(
    n=st.integers(4, 12),
    seed=st.integers(0, 199),
    curve=st.sampled_from(["semicircle", "ellipse", "stadium", "circle"]),
)
def test_small_random_graphs(n, seed, curve):
    g = random_maximal_planar(n, seed=seed)
    c = preset_curve(curve)
    result = draw_all(g, c, on_step=lambda s, t: _assert_adequate(s))
    assert check_straightline_plane(g, result.positions).passed
    rep = check_all_faces_crossed(g, result.positions, result.state.curve)
    assert rep.n_crossed == 2 * n - 4


def test_shallow_ordering_used_by_default():
    g = random_maximal_planar(11, seed=4)
    result = draw_all(g, SEMI)
    assert result.ordering in [shallow_canonical_ordering(g, e) for e in
                               zip(g.ccw_outer_cycle(), g.ccw_outer_cycle()[1:] + g.ccw_outer_cycle()[:1])]
