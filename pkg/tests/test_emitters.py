"""Tests for JSON, DOT and TikZ output."""

import json

import pytest

from src.app.emitters import diagram_tikz, extension, render, web_dot, web_json, web_tikz
from src.core.littelmann import parse_points
from src.core.triangles import from_path


def test_json_is_stable_and_compact(square_web):
    text = web_json(square_web.shifted(5, 5))
    assert text == web_json(square_web)
    doc = json.loads(text)
    assert doc["n"] == 4
    assert doc["boundary"] == [4, 5, 6, 7]
    assert text.endswith("\n")


def test_dot_marks_boundary_and_doubles_w2(square_web):
    text = web_dot(square_web)
    assert text.startswith("digraph web {")
    assert text.count("shape=point") == 4
    assert text.count("black:invis:black") == 2
    assert 'label="w1"' in text


def test_tikz_draws_the_disk(square_web):
    text = web_tikz(square_web)
    assert text.count("\\draw[ar]") == 6
    assert text.count("\\draw[double]") == 2
    assert "circle (3.0)" in text
    assert text.rstrip().endswith("\\end{tikzpicture}")


def test_diagram_has_one_cell_per_top_edge():
    path = parse_points(
        4,
        [[0, 0, 0, 0], [1, 0, 0, 0], [2, 1, 1, 0], [2, 2, 1, 0], [1, 1, 0, 0], [0, 0, 0, 0]],
    )
    diagram = from_path(path)
    assert path.type == (1, 3, 1, 1, 2)
    text = diagram_tikz(diagram)
    assert sum(line.startswith("% cell") for line in text.splitlines()) == 5


def test_render_dispatch(cup):
    assert render(cup, "json") == web_json(cup)
    assert render(cup, "dot") == web_dot(cup)
    assert render(cup, "tikz") == web_tikz(cup)
    assert [extension(f) for f in ("json", "dot", "tikz")] == [".json", ".dot", ".tex"]
    with pytest.raises(ValueError, match="Unknown render format"):
        render(cup, "svg")  # type: ignore[arg-type]
