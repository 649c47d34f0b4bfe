import math
import re
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from sfkit import io
from sfkit.cli import main
from sfkit.complexpack import (layout_complex, octahedron_complex, soccerball_complex,
                               soccerball_label)
from sfkit.families import soccerball_packing_labels, uniform_flower
from sfkit.flower import classify_flower, layout_flower
from sfkit.svg import render_svg

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


# file formats


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(1e-300, 1e300), min_size=3, max_size=12), st.data())
def test_flower_round_trip_exact(u, data):
    n = len(u)
    t = tuple([math.inf] + data.draw(st.lists(finite, min_size=n - 1, max_size=n - 1)))
    r = tuple([math.inf] + data.draw(st.lists(st.floats(1e-300, 1e300), min_size=n - 1,
                                              max_size=n - 1)))
    rec = io.FlowerRecord(n, tuple(u), t, r, "UnBranched")
    assert io.parse_flower(io.flower_text(rec)) == rec


def test_flower_file(tmp_path):
    fl = uniform_flower(7)
    rec = io.flower_record(fl, classify_flower(fl))
    path = tmp_path / "f.txt"
    io.write_flower(path, rec)
    raw = path.read_bytes()
    assert raw.startswith(b"sfkit-flower v1\n") and b"\r" not in raw
    assert io.read_flower(path) == rec
    assert io.read_flower(path).cls == "Univalent"


def test_flower_parse_errors():
    with pytest.raises(ValueError):
        io.parse_flower("sfkit-flower v2\nn=3\nu=1,1,1\n")
    with pytest.raises(ValueError):
        io.parse_flower("sfkit-flower v1\nn=4\nu=1,1,1\n")
    with pytest.raises(ValueError):
        io.parse_flower("sfkit-flower v1\nu=1,1,1\n")
    rec = io.parse_flower("sfkit-flower v1\n# comment\nn=3\ns=0,0,0\n")
    assert rec.u == (1.0, 1.0, 1.0)


def test_complex_round_trip(tmp_path):
    for K in (octahedron_complex(), soccerball_complex()):
        path = tmp_path / "k.txt"
        io.write_complex(path, K)
        back = io.read_complex(path)
        assert back.faces == K.faces and back.n_vertices == K.n_vertices


def test_complex_rejects_bad_lines():
    with pytest.raises(ValueError):
        io.parse_complex("sfkit-complex v1\nV=3\n0 1\n")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1e6, 0.999999), min_size=120, max_size=120))
def test_labels_round_trip_exact(values):
    K = soccerball_complex()
    lab = io.EdgeLabel(zip(K.interior_edges, values))
    assert io.parse_labels(io.labels_text(lab)) == lab


# SVG


def _count(svg, pat):
    return len(re.findall(pat, svg))


def test_svg_uniform_six_counts():
    svg = render_svg(uniform_flower(6))
    assert _count(svg, r'<g class="gencircle') == 7
    assert _count(svg, r"<rect ") == 2
    assert _count(svg, r'class="dot"') == 6
    assert "<text" not in svg


def test_svg_annotations():
    svg = render_svg(uniform_flower(6), annotate=True)
    assert _count(svg, r"<text") == 5


def test_svg_branched_and_half_planes():
    svg = render_svg(uniform_flower(5, 2))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    # u_2 = 1/(3 u_1) turns petal c_3 into a half plane
    fl = layout_flower(6, (2 / math.sqrt(3), 1 / (2 * math.sqrt(3)), 1.0))
    assert fl.is_half_plane(3)
    assert _count(render_svg(fl), r"<rect ") == 3


def test_svg_deterministic():
    assert render_svg(uniform_flower(9)) == render_svg(uniform_flower(9))


def test_svg_layout():
    K = soccerball_complex()
    lay = layout_complex(K, soccerball_label(K, *soccerball_packing_labels()))
    svg = render_svg(lay)
    assert _count(svg, r'<g class="gencircle') == 42
    assert _count(svg, r'class="dot"') == 120
    with pytest.raises(TypeError):
        render_svg(42)


# CLI


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_layout_and_verify(tmp_path, capsys):
    f, s = str(tmp_path / "flower.txt"), str(tmp_path / "flower.svg")
    code, out, _ = run(capsys, "layout", "--n", "6", "--u", "1,1,1", "--out", f, "--svg", s)
    assert code == 0 and out.startswith("u=") and "class=Univalent" in out
    assert len(out.splitlines()[0].split(",")) == 6
    code, out, _ = run(capsys, "label", "verify", "--file", f)
    assert code == 0 and out.strip() == "valid"
    code, out, _ = run(capsys, "label", "verify", "--s", "0,0,0,0,0,0.1")
    assert code == 2 and out.startswith("fails(")
    code, out, _ = run(capsys, "render", "--file", f, "--svg", s)
    assert code == 0


def test_cli_label_verify_batch(tmp_path, capsys):
    files = []
    for n in (5, 6, 7):
        path = str(tmp_path / f"u{n}.txt")
        run(capsys, "family", "uniform", "--n", str(n), "--out", path)
        files.append(path)
    code, out, _ = run(capsys, "label", "verify", "--file", *files)
    assert code == 0 and out.count("valid") == 3


def test_cli_invalid_input(capsys):
    code, _, err = run(capsys, "layout", "--n", "6", "--u", "1,1")
    assert code == 1 and "error" in err
    code, _, _ = run(capsys, "layout", "--n", "6", "--u", "1,x,1")
    assert code == 1
    code, _, _ = run(capsys, "label", "verify", "--file", "/nonexistent/file")
    assert code == 1
    code, _, _ = run(capsys, "bogus")
    assert code == 1


def test_cli_complete_and_classify(capsys):
    code, out, _ = run(capsys, "label", "complete", "--n", "6", "--u", "1,1,1")
    u = [float(x) for x in out.splitlines()[0][2:].split(",")]
    assert code == 0 and u == pytest.approx([1.0] * 6, abs=1e-12)
    code, out, _ = run(capsys, "classify", "--u", ",".join(["0.35682208977308993"] * 5))
    assert code == 0 and out.splitlines()[0] == "Branched(2)"
    code, out, _ = run(capsys, "classify", "--u", "1,1,1,1,1,1.3")
    assert code == 2


def test_cli_families(tmp_path, capsys):
    for argv in (["uniform", "--n", "9"], ["extremal", "--n", "7"], ["ring", "--n", "8"],
                 ["doyle", "--a", "2", "--b", "3"], ["doyle", "--u1", "1", "--u2", "2"]):
        code, out, _ = run(capsys, "family", *argv)
        assert code == 0 and "class=" in out
    code, out, _ = run(capsys, "family", "soccerball", "--labels-out", str(tmp_path / "l.txt"))
    assert code == 0 and "s66=-0.0355" in out
    assert len(io.read_labels(tmp_path / "l.txt")) == 120


def test_cli_pack(tmp_path, capsys):
    code, out, _ = run(capsys, "pack", "--complex", "soccerball", "--labels", "auto:unbranched",
                       "--report")
    assert code == 0
    hmax = float(re.search(r"holonomy max=(\S+)", out).group(1))
    assert hmax < 1e-6
    code, out, _ = run(capsys, "pack", "--complex", "soccerball", "--labels", "reciprocal:unbranched")
    assert code == 2
    K = str(tmp_path / "k.txt")
    io.write_complex(K, octahedron_complex())
    L = str(tmp_path / "l.txt")
    io.write_labels(L, io.EdgeLabel({e: 1 - math.sqrt(2 / 3) for e in octahedron_complex().edges}))
    code, out, _ = run(capsys, "pack", "--complex", K, "--labels", L, "--svg", str(tmp_path / "o.svg"))
    assert code == 0
    code, _, _ = run(capsys, "pack", "--complex", K, "--labels", "auto:branched")
    assert code == 1


def test_cli_random_flower_deterministic(tmp_path, capsys):
    outs = []
    for k in range(2):
        f, s = tmp_path / f"r{k}.txt", tmp_path / f"r{k}.svg"
        code, out, _ = run(capsys, "random-flower", "--n", "9", "--seed", "7",
                           "--out", str(f), "--svg", str(s))
        assert code == 0
        outs.append((f.read_bytes(), s.read_bytes(), out))
    assert outs[0] == outs[1]


def test_cli_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sfkit", "family", "uniform", "--n", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "class=Univalent" in proc.stdout
