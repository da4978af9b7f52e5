"""Straight-line plane drawings whose every face is crossed by a convex curve."""

from .certificate import Certificate, CertificateError, read_certificate, write_certificate
from .curves import (
    ArcInterval,
    CircularArc,
    ConvexCurveModel,
    Crossing,
    CurveError,
    EllipticalArc,
    StadiumArc,
    curve_from_json,
    curve_from_spec,
    preset_curve,
)
from .drawer import DiskState, DrawingError, DrawOptions, DrawResult, EpsilonExhausted, StepTrace, draw_all
from .gallery import builtin_graph, experiment_edge_cross_search, random_maximal_planar
from .planegraph import (
    CanonicalOrdering,
    GraphError,
    PlaneGraph,
    augment_to_maximal,
    canonical_ordering,
    format_plane_graph,
    parse_plane_graph,
    shallow_canonical_ordering,
)
from .render import RenderScene, build_scene, render_svg
from .verify import check_adequate, check_all_faces_crossed, check_edges, check_straightline_plane

__version__ = "0.1.0"
