import json
import re
import xml.etree.ElementTree as ET

import pytest

from curvestab.cli import main, run_cli
from curvestab.curves import preset_curve
from curvestab.drawer import draw_all
from curvestab.gallery import builtin_graph
from curvestab.render import RenderError, RenderScene, build_scene, render_svg

SVG = "{http://www.w3.org/2000/svg}"
SEMI = preset_curve("semicircle")


def _count(svg, tag, cls):
    root = ET.fromstring(svg)
    return sum(1 for el in root.iter(SVG + tag) if el.get("class") == cls)


def _scene(name):
    g = builtin_graph(name)
    r = draw_all(g, SEMI)
    return build_scene(g, r.positions, SEMI, r.ordering.sequence, title=name)


# -- rendering -----------------------------------------------------------------


def test_octahedron_element_counts():
    svg = render_svg(_scene("octahedron"))
    assert _count(svg, "circle", "vertex") == 6
    assert _count(svg, "line", "edge") == 12
    assert _count(svg, "path", "curve") == 1
    assert _count(svg, "polygon", "face") == 7


def test_triangle_element_counts():
    svg = render_svg(_scene("triangle"))
    assert _count(svg, "circle", "vertex") == 3
    assert _count(svg, "line", "edge") == 3


def test_one_marker_per_crossing():
    scene = _scene("octahedron")
    svg = render_svg(scene)
    n = sum(len(SEMI.proper_crossings(scene.positions[u], scene.positions[v])) for u, v in scene.edges)
    assert _count(svg, "rect", "crossing") == len(scene.markers) == n
    for p in scene.markers:
        assert abs(SEMI.body_value(p)) < 1e-9


def test_faces_ordered_by_step():
    scene = _scene("octahedron")
    steps = [s for _, s in scene.faces]
    assert steps == sorted(steps)
    svg = render_svg(scene)
    shown = [int(m) for m in re.findall(r'data-step="(\d+)"', svg)]
    assert shown == steps


def test_render_is_deterministic():
    assert render_svg(_scene("k4")) == render_svg(_scene("k4"))


def test_empty_scene_rejected():
    with pytest.raises(RenderError):
        render_svg(RenderScene({}, (), (), ()))


def test_scene_with_unknown_vertex_rejected():
    with pytest.raises(RenderError):
        RenderScene({"a": (0.0, 0.0)}, (("a", "b"),), (), ())


def test_title_is_escaped():
    scene = RenderScene({"a": (0.0, 0.0)}, (), (), (), title="<x & y>")
    assert "<title>&lt;x &amp; y&gt;</title>" in render_svg(scene)


# -- command line --------------------------------------------------------------


@pytest.fixture()
def semicircle_file(tmp_path):
    p = tmp_path / "semicircle.json"
    p.write_text(SEMI.to_json())
    return p


def test_draw_octahedron(tmp_path, semicircle_file, capsys):
    out, cert = tmp_path / "oct.svg", tmp_path / "oct.cert.json"
    code = run_cli(["draw", "--graph", "builtin:octahedron", "--curve", str(semicircle_file),
                    "--out", str(out), "--cert", str(cert)])
    assert code == 0
    assert "faces crossed: 8/8" in capsys.readouterr().out
    assert _count(out.read_text(), "circle", "vertex") == 6
    assert json.loads(cert.read_text())["version"] == 1


def test_draw_is_byte_identical(tmp_path):
    files = []
    for k in range(2):
        svg, cert, pos = (tmp_path / f"{k}.svg", tmp_path / f"{k}.cert.json", tmp_path / f"{k}.pos.json")
        assert main(["draw", "--graph", "builtin:k4", "--curve", "ellipse", "--out", str(svg),
                     "--cert", str(cert), "--positions", str(pos), "--seed", "3"]) == 0
        files.append((svg.read_bytes(), cert.read_bytes(), pos.read_bytes()))
    assert files[0] == files[1]


def test_draw_then_verify(tmp_path, capsys):
    cert, pos = tmp_path / "c.json", tmp_path / "p.json"
    assert main(["draw", "--graph", "builtin:octahedron", "--curve", "stadium",
                 "--cert", str(cert), "--positions", str(pos)]) == 0
    assert main(["verify", "--graph", "builtin:octahedron", "--cert", str(cert)]) == 0
    assert main(["verify", "--graph", "builtin:octahedron", "--curve", "stadium", "--positions", str(pos)]) == 0
    assert "faces crossed: 8/8" in capsys.readouterr().out


def test_verify_tampered_positions(tmp_path, capsys):
    pos = tmp_path / "p.json"
    assert main(["draw", "--graph", "builtin:octahedron", "--curve", "semicircle", "--positions", str(pos)]) == 0
    doc = json.loads(pos.read_text())
    v = sorted(doc["positions"])[0]
    doc["positions"][v] = [40.0, -30.0]
    pos.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", "--graph", "builtin:octahedron", "--curve", "semicircle", "--positions", str(pos)]) == 1
    out = capsys.readouterr().out
    assert "EdgesCross" in out or "FaceNotCrossed" in out


def test_draw_failure_exit_code(capsys):
    assert main(["draw", "--graph", "builtin:octahedron", "--curve", "semicircle", "--eps-floor", "1000"]) == 1
    assert "drawing failed" in capsys.readouterr().err


def test_gallery_list_and_emit(tmp_path, capsys):
    assert main(["gallery", "list"]) == 0
    assert "g30\tV=30\tE=84\tF=56" in capsys.readouterr().out
    target = tmp_path / "g.txt"
    assert main(["gallery", "emit", "octahedron", "--out", str(target)]) == 0
    assert main(["draw", "--graph", str(target), "--curve", "semicircle"]) == 0


def test_experiment_command(tmp_path, capsys):
    out = tmp_path / "e.json"
    assert main(["experiment", "edge-cross", "--trials", "1000", "--seed", "7", "--out", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["successes"] == 0 and doc["trials"] == 1000 and doc["seed"] == 7
    assert json.loads(out.read_text()) == doc


@pytest.mark.parametrize("argv", [
    ["draw", "--graph", "missing-file.txt", "--curve", "semicircle"],
    ["draw", "--graph", "builtin:nope", "--curve", "semicircle"],
    ["draw", "--graph", "builtin:k4", "--curve", "no-such-curve.json"],
    ["verify", "--graph", "builtin:k4", "--curve", "semicircle"],
    ["gallery", "emit"],
    ["experiment", "edge-cross", "--trials", "-5"],
])
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error:" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["paint"], ["draw", "--graph", "builtin:k4"], ["experiment", "vertex-cross"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_bad_certificate_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 1, "curve"')
    assert main(["verify", "--graph", "builtin:k4", "--cert", str(bad)]) == 2
