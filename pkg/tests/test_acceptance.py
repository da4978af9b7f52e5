"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line in ``RESULTS`` before
asserting; ``conftest.py`` prints them in the terminal summary.  Running this
file directly prints the same lines.
"""

import math
import random
import subprocess
import sys
import time
from collections import Counter

import numpy as np
import pytest

from curvestab.cli import main
from curvestab.curves import CircularArc, preset_curve
from curvestab.drawer import DrawingError, draw_all
from curvestab.gallery import BUILTIN_NAMES, builtin_graph, experiment_edge_cross_search, random_maximal_planar
from curvestab.verify import check_adequate, check_all_faces_crossed, check_straightline_plane

RESULTS = []

FAMILIES = ("semicircle", "ellipse", "stadium")
SIZES = range(4, 61)
SEEDS = range(25)


def _record(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _corpus():
    for name in BUILTIN_NAMES:
        yield f"builtin:{name}", builtin_graph(name)
    for n in SIZES:
        for s in SEEDS:
            yield f"random:{n}:{s}", random_maximal_planar(n, seed=s)


@pytest.fixture(scope="module")
def corpus():
    """Draw the whole corpus once, auditing every step and timing the audit separately."""
    runs = []
    audit = {"steps": 0, "violations": [], "seconds": 0.0}

    def on_step(state, trace):
        t = time.perf_counter()
        rep = check_adequate(state)
        audit["steps"] += 1
        if not rep.passed:
            audit["violations"].append((trace.step, trace.kind, [f.tag for f in rep.violations]))
        audit["seconds"] += time.perf_counter() - t

    start = time.perf_counter()
    for label, g in _corpus():
        for fam in FAMILIES:
            curve = preset_curve(fam)
            run = {"label": label, "family": fam, "n": g.n_vertices, "error": None}
            try:
                r = draw_all(g, curve, on_step=on_step)
            except DrawingError as exc:
                run["error"] = type(exc).__name__
                runs.append(run)
                continue
            faces = check_all_faces_crossed(g, r.positions, curve)
            run.update(crossed=faces.n_crossed, faces=faces.n_faces, result=r, graph=g)
            runs.append(run)
    elapsed = time.perf_counter() - start - audit["seconds"]
    return {"runs": runs, "audit": audit, "seconds": elapsed}


def test_octahedron_on_semicircle(tmp_path, capsys):
    t = time.perf_counter()
    code = main(["draw", "--graph", "builtin:octahedron", "--curve", "semicircle",
                 "--out", str(tmp_path / "oct.svg"), "--cert", str(tmp_path / "oct.cert.json")])
    dt = time.perf_counter() - t
    out = capsys.readouterr().out
    ok = code == 0 and "faces crossed: 8/8" in out and "plane drawing: yes" in out and dt < 1.0
    g = builtin_graph("octahedron")
    r = draw_all(g, preset_curve("semicircle"))
    rep = check_all_faces_crossed(g, r.positions, preset_curve("semicircle"))
    ok = ok and all(w.crossed and w.point is not None for w in rep.faces)
    assert _record("Octahedron on a semicircle", ok, f"exit {code}, {rep.n_crossed}/{rep.n_faces} faces with witnesses, {dt:.3f} s (limit 1 s)")


def test_drawing_corpus(corpus):
    runs = corpus["runs"]
    done = [r for r in runs if r["error"] is None]
    errors = Counter(r["error"] for r in runs if r["error"])
    full = [r for r in done if r["crossed"] == r["faces"]]
    failed_builtins = sorted({f"{r['label']}/{r['family']}" for r in runs if r["error"] and r["label"].startswith("builtin")})
    ok = len(full) == len(runs) and not errors and corpus["seconds"] < 60
    detail = (f"{len(full)}/{len(runs)} runs drew with every face crossed; "
              f"errors {dict(errors) or 0}; builtin failures {failed_builtins or 'none'}; "
              f"{corpus['seconds']:.1f} s excluding the step audit (limit 60 s)")
    if not ok:
        by_n = Counter(r["n"] // 10 * 10 for r in runs if r["error"])
        detail += f"; failures by n-decade {dict(sorted(by_n.items()))}"
    assert _record("Drawing corpus", ok, detail)


def test_induction_invariant(corpus):
    audit = corpus["audit"]
    incomplete = sum(1 for r in corpus["runs"] if r["error"])
    ok = not audit["violations"] and incomplete == 0
    assert _record(
        "Induction invariant", ok,
        f"{audit['steps']} executed steps audited, {len(audit['violations'])} violations; "
        f"{incomplete} runs stopped early so their later steps were never produced",
    )


def test_planarity(corpus):
    done = [r for r in corpus["runs"] if r["error"] is None]
    bad = [r["label"] for r in done if not check_straightline_plane(r["graph"], r["result"].positions).passed]
    ok = not bad and bool(done)
    assert _record("Planarity", ok, f"{len(done) - len(bad)}/{len(done)} drawer outputs are plane drawings")


def test_structural_counts():
    g = builtin_graph("g30")
    bad = [n for n in range(3, 201) for s in range(3) if random_maximal_planar(n, seed=s).n_edges != 3 * n - 6]
    ok = (g.n_vertices, g.n_edges, g.n_faces) == (30, 84, 56) and not bad
    assert _record("Structural counts", ok,
                   f"g30 V={g.n_vertices} E={g.n_edges} F={g.n_faces}; E=3n-6 for n=3..200 x 3 seeds, {len(bad)} exceptions")


def _crossing_errors(curve, rng, k):
    worst_curve = worst_seg = 0.0
    for _ in range(k):
        p = (rng.uniform(-4, 4), rng.uniform(-4, 4))
        q = (rng.uniform(-4, 4), rng.uniform(-4, 4))
        ax, ay = q[0] - p[0], q[1] - p[1]
        for c in curve.segment_crossings(p, q):
            on = curve.point_at(c.t)
            worst_curve = max(worst_curve, math.dist(on, c.point))
            s = ((c.point[0] - p[0]) * ax + (c.point[1] - p[1]) * ay) / (ax * ax + ay * ay)
            s = min(max(s, 0.0), 1.0)
            worst_seg = max(worst_seg, math.dist(c.point, (p[0] + s * ax, p[1] + s * ay)))
    return worst_curve, worst_seg


def test_curve_math():
    rng = random.Random(20240611)
    k = 10_000
    parts = []
    ok = True
    for fam in FAMILIES:
        c = preset_curve(fam)
        ts = np.sort(np.array([rng.uniform(c.t_lo, c.t_hi) for _ in range(k)]))
        angles = np.array([c.tangent_angle(t) for t in ts])
        mono = bool(np.all(np.diff(angles) >= -1e-12))
        lo, hi = c.angle_range()
        inv = max(abs(c.tangent_angle(c.param_for_angle(th)) - th)
                  for th in (rng.uniform(lo, hi) for _ in range(k)))
        on_curve, on_seg = _crossing_errors(c, rng, k)
        fam_ok = mono and inv < 1e-9 and on_curve < 1e-9 and on_seg < 1e-9
        ok = ok and fam_ok
        parts.append(f"{fam}: monotone={mono} inverse={inv:.1e} on-curve={on_curve:.1e} on-segment={on_seg:.1e}")
    circle = CircularArc((0.0, 0.0), 1.0, 0.0, 2 * math.pi)
    worst = 0.0
    mismatched = 0
    for _ in range(k):
        p = (rng.uniform(-3, 3), rng.uniform(-3, 3))
        q = (rng.uniform(-3, 3), rng.uniform(-3, 3))
        a = sorted(x.point for x in circle.segment_crossings(p, q, "analytic") if not x.touch)
        n = sorted(x.point for x in circle.segment_crossings(p, q, "numeric") if not x.touch)
        if len(a) != len(n):
            mismatched += 1
            continue
        for x, y in zip(a, n):
            worst = max(worst, math.dist(x, y))
    ok = ok and worst < 1e-9 and mismatched == 0
    parts.append(f"circle analytic vs numeric max {worst:.1e}, {mismatched} count mismatches")
    assert _record("Curve math", ok, f"{k} samples per check; " + "; ".join(parts))


def test_edge_cross_falsification():
    t = time.perf_counter()
    r = experiment_edge_cross_search(10_000, seed=1)
    dt = time.perf_counter() - t
    ok = r.successes == 0 and dt < 30
    assert _record("Edge-cross falsification", ok,
                   f"{r.successes}/{r.trials} trials crossed all 12 edges, most crossed {max(i for i, c in enumerate(r.histogram) if c)}; "
                   f"{dt:.1f} s (limit 30 s)")


def _cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "curvestab", *args], cwd=cwd, capture_output=True)


def test_cli_determinism(tmp_path):
    commands = [
        ["draw", "--graph", "builtin:octahedron", "--curve", "semicircle", "--out", "o.svg", "--cert", "o.cert.json",
         "--positions", "o.pos.json"],
        ["draw", "--graph", "builtin:k4", "--curve", "stadium", "--out", "o.svg", "--cert", "o.cert.json", "--seed", "4",
         "--ordering", "reverse-deletion"],
        ["gallery", "emit", "g30", "--out", "g.txt"],
        ["experiment", "edge-cross", "--trials", "300", "--seed", "7", "--out", "e.json"],
    ]
    differing = []
    for i, cmd in enumerate(commands):
        outputs = []
        for k in range(2):
            d = tmp_path / f"cmd{i}-run{k}"
            d.mkdir()
            proc = _cli(cmd, d)
            files = {p.name: p.read_bytes() for p in sorted(d.iterdir())}
            outputs.append((proc.returncode, proc.stdout, files))
        if outputs[0] != outputs[1] or outputs[0][0] != 0:
            differing.append(" ".join(cmd[:2]))
    # verify re-reads a certificate from a draw run
    d = tmp_path / "verify"
    d.mkdir()
    _cli(commands[0], d)
    v = [_cli(["verify", "--graph", "builtin:octahedron", "--cert", "o.cert.json"], d) for _ in range(2)]
    if v[0].stdout != v[1].stdout or v[0].returncode != 0:
        differing.append("verify")
    ok = not differing
    assert _record("Determinism", ok,
                   f"{len(commands) + 1} commands run twice; byte-identical files and output"
                   + (f"; differing: {differing}" if differing else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
