"""Tests for SVG, PPM, CSV and JSON output."""

import json
import math
import os

import numpy as np
import pandas as pd
import pytest

from schottkit.cantor import cantor_circles, pants_graph
from schottkit.reporting import (
    CANTOR_VIEW,
    SvgCircle,
    SvgLine,
    SvgPoint,
    cantor_shapes,
    encode_artifact,
    graph_shapes,
    graph_to_dot,
    render_ppm,
    render_svg,
    write_artifacts,
    write_csv,
)
from schottkit.reporting.svg import tree_layout
from schottkit.utils.io import atomic_write_text, dumps_json, to_plain


def test_empty_canvas():
    """Test an empty shape list renders a valid empty document."""
    svg = render_svg([])
    assert svg.startswith("<?xml")
    assert svg.rstrip().endswith("</svg>")
    assert "<circle" not in svg
    assert 'viewBox="-1.000000 -1.000000 2.000000 2.000000"' in svg


def test_cantor_svg_counts():
    """Test k = 2 draws the axis as one line and six circles."""
    svg = render_svg(cantor_shapes(cantor_circles(2)))
    assert svg.count("<line") == 1
    assert svg.count("<circle") == 6


def test_cantor_circles_inside_view():
    """Test every circle up to level 3 fits the fixed ±1.3 view."""
    for shape in cantor_shapes(cantor_circles(3)):
        if isinstance(shape, SvgCircle):
            assert shape.cy == 0.0
            assert -CANTOR_VIEW <= shape.cx - shape.r
            assert shape.cx + shape.r <= CANTOR_VIEW


def test_svg_is_order_independent():
    """Test shuffled input gives byte-identical output."""
    shapes = [
        SvgCircle(1.0, 2.0, 0.5, key=(1, 1)),
        SvgLine(0.0, 0.0, 1.0, 1.0, key=(0, 0)),
        SvgPoint(0.25, -0.25, label="P1", key=(1,)),
        SvgCircle(-1.0, 0.0, 0.25, key=(1, 0)),
    ]
    first = render_svg(shapes, (-2.0, -2.0, 2.0, 2.0), title="t")
    second = render_svg(list(reversed(shapes)), (-2.0, -2.0, 2.0, 2.0), title="t")
    assert first == second
    assert first.index("<line") < first.index('r="0.250000"') < first.index('r="0.500000"')
    assert ">P1</text>" in first


def test_svg_flips_y_and_normalizes_zero():
    """Test world y-up becomes SVG y-down and -0 prints as 0."""
    svg = render_svg([SvgCircle(-0.0, 1.0, 0.5)], (-2.0, -2.0, 2.0, 2.0), precision=3)
    assert 'cx="0.000" cy="-1.000" r="0.500"' in svg


def test_svg_rejects_non_finite():
    """Test NaN and infinite coordinates are refused."""
    with pytest.raises(ValueError):
        render_svg([SvgCircle(math.nan, 0.0, 1.0)])
    with pytest.raises(ValueError):
        render_svg([SvgLine(0.0, 0.0, math.inf, 0.0)])


def test_graph_shapes_and_layout():
    """Test pants graph drawings place P_1 and P_-1 on opposite sides."""
    graph = pants_graph(2).graph
    pos = tree_layout(graph)
    assert pos[1][0] > 0 > pos[-1][0]
    assert pos[2][1] == pos[3][1] == -1.0
    shapes = graph_shapes(graph)
    assert sum(isinstance(s, SvgPoint) for s in shapes) == graph.number_of_nodes()
    assert sum(isinstance(s, SvgLine) for s in shapes) == graph.number_of_edges()


def test_dot_is_sorted_and_stable():
    """Test DOT output lists nodes once and repeats exactly."""
    graph = pants_graph(2).graph
    dot = graph_to_dot(graph, name="g")
    assert dot.startswith('graph "g" {')
    assert dot == graph_to_dot(graph, name="g")
    assert dot.count(" -- ") == graph.number_of_edges()


def test_ppm_header_and_size():
    """Test the P6 header and pixel payload length."""
    data = render_ppm([0j, 0.5 + 0.5j], [0.5, 0.001], [1, 2], (-1.0, -1.0, 1.0, 1.0), size=32)
    header = b"P6\n32 32\n255\n"
    assert data.startswith(header)
    pixels = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(32, 32, 3)
    assert len(data) == len(header) + 32 * 32 * 3
    assert tuple(pixels[16, 16]) != (255, 255, 255)
    assert tuple(pixels[0, 0]) == (255, 255, 255)


def test_dumps_json_is_strict_and_sorted():
    """Test NaN, inf, numpy scalars and complex values become plain JSON."""
    text = dumps_json({"b": math.nan, "a": np.float64(1.5), "c": 1 + 2j, "d": (np.int64(3), math.inf)})
    assert text.endswith("\n")
    data = json.loads(text)
    assert list(data) == ["a", "b", "c", "d"]
    assert data == {"a": 1.5, "b": None, "c": [1.0, 2.0], "d": [3, None]}
    assert to_plain({1: [np.bool_(True)]}) == {"1": [True]}


def test_atomic_write_replaces_and_cleans_up(tmp_path, monkeypatch):
    """Test a failed rename leaves neither the target nor a temp file."""
    target = tmp_path / "nested" / "out.txt"
    atomic_write_text(target, "first\n")
    assert target.read_text() == "first\n"

    def broken_replace(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", broken_replace)
    with pytest.raises(OSError):
        atomic_write_text(tmp_path / "other.txt", "second\n")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["nested"]
    assert sorted(p.name for p in target.parent.iterdir()) == ["out.txt"]


def test_write_csv_columns(tmp_path):
    """Test CSV columns keep their order and float format."""
    path = write_csv(tmp_path / "t.csv", {"n": [0, 1], "radius": [1.0, 1 / 3]}, precision=4)
    assert path.read_text().splitlines() == ["n,radius", "0,1", "1,0.3333"]
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["n", "radius"]


def test_write_artifacts_all_or_nothing(tmp_path, monkeypatch):
    """Test a failed write removes the files already written by the same call."""
    real_replace = os.replace
    calls = []

    def flaky_replace(src, dst):
        calls.append(dst)
        if len(calls) == 2:
            raise OSError("disk full")
        real_replace(src, dst)

    monkeypatch.setattr(os, "replace", flaky_replace)
    files = {tmp_path / "a.json": b"{}\n", tmp_path / "b.svg": b"<svg/>\n", tmp_path / "c.csv": b"n\n"}
    with pytest.raises(OSError):
        write_artifacts(files)
    assert list(tmp_path.iterdir()) == []

    monkeypatch.setattr(os, "replace", real_replace)
    assert write_artifacts(files) == list(files)
    assert (tmp_path / "b.svg").read_bytes() == b"<svg/>\n"


def test_encode_artifact_formats():
    """Test each format is encoded the way it is written."""
    assert encode_artifact("json", {"b": 1, "a": math.nan}) == b'{\n  "a": null,\n  "b": 1\n}\n'
    assert encode_artifact("csv", {"n": [0, 1]}) == b"n\n0\n1\n"
    assert encode_artifact("ppm", b"P6\n") == b"P6\n"
    assert encode_artifact("dot", "graph g {}\n") == b"graph g {}\n"
