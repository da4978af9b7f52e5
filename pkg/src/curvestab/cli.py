"""Command line: draw, verify, gallery and experiment.

Exit status is 0 when every requested check passes, 1 when a check fails
or the construction gives up, and 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .certificate import CertificateError, read_certificate, write_certificate
from .curves import PRESETS, CurveError, curve_from_json, preset_curve
from .drawer import DrawingError, DrawOptions, draw_all
from .gallery import BUILTIN_NAMES, builtin_graph, experiment_edge_cross_search
from .planegraph import GraphError, format_plane_graph, parse_plane_graph
from .render import build_scene, render_svg
from .verify import check_adequate, check_all_faces_crossed, check_edges, check_straightline_plane

__all__ = ["main", "run_cli", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _load_graph(arg: str):
    if arg.startswith("builtin:"):
        name = arg.split(":", 1)[1]
        try:
            return builtin_graph(name)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from exc
    try:
        return parse_plane_graph(Path(arg).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read graph file {arg}: {exc}") from exc
    except GraphError as exc:
        raise InputError(f"bad graph file {arg}: {exc}") from exc


def _load_curve(arg: str):
    if arg in PRESETS:
        return preset_curve(arg)
    try:
        return curve_from_json(Path(arg).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read curve file {arg}: {exc}") from exc
    except CurveError as exc:
        raise InputError(f"bad curve file {arg}: {exc}") from exc


def _load_positions(arg: str):
    try:
        doc = json.loads(Path(arg).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read positions file {arg}: {exc}") from exc
    if isinstance(doc, dict) and "positions" in doc:
        doc = doc["positions"]
    if isinstance(doc, dict) and "state" in doc:
        doc = doc["state"]["positions"]
    try:
        return {str(v): (float(p[0]), float(p[1])) for v, p in doc.items()}
    except (AttributeError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"bad positions file {arg}") from exc


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _say(msg: str, stream=None) -> None:
    print(msg, file=stream or sys.stdout)


# -- subcommands ---------------------------------------------------------------


def cmd_draw(args) -> int:
    g = _load_graph(args.graph)
    curve = _load_curve(args.curve)
    options = DrawOptions(
        delta=args.delta,
        eps_floor=args.eps_floor,
        max_halvings=args.max_halvings,
        seed=args.seed,
        ordering=args.ordering,
    )
    verbose = args.verbose

    def on_step(state, trace):
        if verbose:
            _say(f"step {trace.step:3d} {trace.kind:4s} vertex {trace.vertex} eps={trace.epsilon:.3e} "
                 f"halvings={trace.halvings}", sys.stderr)

    try:
        result = draw_all(g, curve, options, on_step=on_step)
    except DrawingError as exc:
        _say(f"drawing failed: {type(exc).__name__}: {exc}", sys.stderr)
        return EXIT_FAIL

    working = result.state.curve
    faces = check_all_faces_crossed(g, result.positions, working)
    plane = check_straightline_plane(result.graph, result.positions)
    adequate = check_adequate(result.state)
    edges = check_edges(g, result.positions, working, "crossed")

    opts = {"delta": options.delta, "eps_floor": options.eps_floor, "max_halvings": options.max_halvings,
            "seed": options.seed, "ordering": options.ordering}
    _write(args.cert, write_certificate(result.traces, result.state, result.ordering, opts))
    if args.positions:
        body = {v: [p[0], p[1]] for v, p in sorted(result.positions.items())}
        _write(args.positions, json.dumps({"positions": body}, sort_keys=True, indent=1) + "\n")
    if args.out:
        scene = build_scene(g, result.positions, working, result.ordering.sequence, title=args.graph)
        _write(args.out, render_svg(scene))

    _say(f"faces crossed: {faces.n_crossed}/{faces.n_faces}")
    _say(f"edges crossed: {edges.n_hit}/{len(edges.counts)}")
    _say(f"plane drawing: {'yes' if plane.passed else 'NO'}")
    _say(f"final disk adequate: {'yes' if adequate.passed else 'NO'} "
         f"(spanned turn {adequate.spanned_curvature:.6f})")
    ok = faces.all_crossed and plane.passed and adequate.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    curve = _load_curve(args.curve) if args.curve else None
    cert = None
    if args.cert:
        try:
            cert = read_certificate(Path(args.cert).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"cannot read certificate {args.cert}: {exc}") from exc
        except CertificateError as exc:
            raise InputError(f"bad certificate {args.cert}: {exc}") from exc
        if curve is None:
            curve = cert.curve
    if curve is None:
        raise InputError("verify needs --curve or --cert")
    if args.positions:
        positions = _load_positions(args.positions)
    elif cert is not None:
        positions = cert.positions
    else:
        raise InputError("verify needs --positions or --cert")
    missing = [v for v in g.vertices if v not in positions]
    if missing:
        raise InputError(f"positions missing for {', '.join(missing)}")

    plane = check_straightline_plane(g, positions)
    faces = check_all_faces_crossed(g, positions, curve)
    ok = plane.passed and faces.all_crossed
    _say(f"faces crossed: {faces.n_crossed}/{faces.n_faces}")
    _say(f"plane drawing: {'yes' if plane.passed else 'NO'}")
    for f in plane.violations:
        _say(f"  {f.tag} {json.dumps(f.to_dict()['ids'])}")
    for w in faces.faces:
        if not w.crossed:
            _say(f"  FaceNotCrossed {json.dumps(list(w.face))}")
    if cert is not None:
        state = cert.state
        if args.positions:
            state = type(state)(state.curve, {**state.positions, **positions}, state.boundary, state.edges,
                                state.edge_arcs, state.spanned_arc)
        adequate = check_adequate(state)
        _say(f"final disk adequate: {'yes' if adequate.passed else 'NO'}")
        for f in adequate.violations:
            _say(f"  {f.tag} {json.dumps(f.to_dict()['ids'])}")
        ok = ok and adequate.passed
    if args.verbose:
        _say(faces.to_json())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gallery(args) -> int:
    if args.action == "list":
        for name in BUILTIN_NAMES:
            g = builtin_graph(name)
            _say(f"{name}\tV={g.n_vertices}\tE={g.n_edges}\tF={g.n_faces}")
        return EXIT_OK
    if not args.name:
        raise InputError("gallery emit needs a graph name")
    try:
        g = builtin_graph(args.name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from exc
    text = format_plane_graph(g)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.trials < 0:
        raise InputError("--trials must be non-negative")
    result = experiment_edge_cross_search(args.trials, args.seed, keep_summaries=args.verbose)
    text = result.to_json() + "\n"
    _write(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK if result.successes == 0 else EXIT_FAIL


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvestab", description="Plane drawings whose faces are all crossed by a convex curve.")
    sub = p.add_subparsers(dest="command", required=True)

    curve_help = f"curve JSON file or preset ({', '.join(PRESETS)})"
    d = sub.add_parser("draw", help="construct a drawing and check it")
    d.add_argument("--graph", required=True, help="graph file or builtin:NAME")
    d.add_argument("--curve", required=True, help=curve_help)
    d.add_argument("--out", help="write the SVG picture here")
    d.add_argument("--cert", help="write the JSON certificate here")
    d.add_argument("--positions", help="write vertex positions as JSON here")
    d.add_argument("--seed", type=int, default=None, help="tie-breaking seed for the reverse-deletion ordering")
    d.add_argument("--delta", type=float, default=0.2, help="turn kept in reserve below a half turn (radians)")
    d.add_argument("--eps-floor", type=float, default=0.0, help="smallest placement distance to try")
    d.add_argument("--max-halvings", type=int, default=80)
    d.add_argument("--ordering", choices=("shallow", "reverse-deletion"), default="shallow")
    d.add_argument("--verbose", action="store_true")
    d.set_defaults(func=cmd_draw)

    v = sub.add_parser("verify", help="check a drawing against a curve")
    v.add_argument("--graph", required=True, help="graph file or builtin:NAME")
    v.add_argument("--curve", help=curve_help + "; defaults to the certificate's curve")
    v.add_argument("--positions", help="positions JSON file")
    v.add_argument("--cert", help="certificate to re-check")
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gallery", help="list or emit built-in graphs")
    g.add_argument("action", choices=("list", "emit"))
    g.add_argument("name", nargs="?")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gallery)

    e = sub.add_parser("experiment", help="random falsification experiments")
    e.add_argument("which", choices=("edge-cross",))
    e.add_argument("--trials", type=int, default=1000)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", help="also write the JSON result here")
    e.add_argument("--verbose", action="store_true", help="include per-trial summaries")
    e.set_defaults(func=cmd_experiment)
    return p


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv`` and run the subcommand; returns the exit status.

    Usage errors exit through argparse with status 2.
    """
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _say(f"error: {exc}", sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())
