"""JSON, Graphviz DOT and TikZ renderings of webs and triangular diagrams."""

import json
import logging
import math
from collections.abc import Mapping

from src.config.models import RenderFormat
from src.core.triangles import TriangularDiagram
from src.core.webs import Web, web_to_dict

logger = logging.getLogger(__name__)

Point = tuple[float, float]

_LAYOUT_ROUNDS = 300


def web_json(web: Web) -> str:
    return json.dumps(web_to_dict(web.compacted()), indent=2) + "\n"


def _doubled(web: Web, label: int) -> bool:
    return web.n == 4 and label == 2


def web_dot(web: Web) -> str:
    web = web.compacted()
    lines = [
        "digraph web {",
        f'  graph [label="SL({web.n}) web", labelloc=t];',
        '  node [shape=circle, width=0.12, label=""];',
    ]
    for i, v in enumerate(web.boundary):
        lines.append(f'  v{v} [shape=point, xlabel="{i}"];')
    for v in web.internal_vertices:
        lines.append(f"  v{v};")
    for eid, e in sorted(web.edges.items()):
        if _doubled(web, e.label):
            attrs = 'label="w2", color="black:invis:black", dir=none'
        else:
            attrs = f'label="w{e.label}"'
        lines.append(f"  v{e.tail} -> v{e.head} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _barycentric(web: Web, fixed: Mapping[int, Point]) -> dict[int, Point]:
    """Tutte layout: internal vertices settle at the mean of their neighbours."""
    pos = dict(fixed)
    if fixed:
        cx = sum(p[0] for p in fixed.values()) / len(fixed)
        cy = sum(p[1] for p in fixed.values()) / len(fixed)
    else:
        cx = cy = 0.0
    internal = web.internal_vertices
    for i, v in enumerate(internal):
        # slight spread so that symmetric configurations do not collapse
        pos[v] = (cx + 0.01 * math.cos(i), cy + 0.01 * math.sin(i))
    for _ in range(_LAYOUT_ROUNDS):
        for v in internal:
            nbrs = [web.dart_vertex(d ^ 1) for d in web.rotations[v]]
            nbrs = [w for w in nbrs if w != v] or [v]
            pos[v] = (
                sum(pos[w][0] for w in nbrs) / len(nbrs),
                sum(pos[w][1] for w in nbrs) / len(nbrs),
            )
    return pos


def _tikz_edges(web: Web, pos: Mapping[int, Point]) -> list[str]:
    lines = []
    for _, e in sorted(web.edges.items()):
        (x0, y0), (x1, y1) = pos[e.tail], pos[e.head]
        if _doubled(web, e.label):
            lines.append(f"\\draw[double] ({x0:.3f},{y0:.3f}) -- ({x1:.3f},{y1:.3f});")
            continue
        label = ""
        if web.n > 4:
            label = f" node[midway, fill=white, inner sep=1pt] {{\\tiny ${e.label}$}}"
        lines.append(f"\\draw[ar] ({x0:.3f},{y0:.3f}) -- ({x1:.3f},{y1:.3f}){label};")
    return lines


_PREAMBLE = (
    "\\begin{tikzpicture}[ar/.style={postaction={decorate,decoration={markings,"
    "mark=at position .5 with {\\arrow{>}}}}},scale=0.75]"
)


def web_tikz(web: Web) -> str:
    """Web in a disk, boundary placed clockwise from the marked point at the bottom."""
    web = web.compacted()
    k = len(web.boundary)
    radius = 3.0
    fixed: dict[int, Point] = {}
    for i, v in enumerate(web.boundary):
        angle = math.radians(270.0 - 360.0 * (i + 0.5) / max(k, 1))
        fixed[v] = (radius * math.cos(angle), radius * math.sin(angle))
    pos = _barycentric(web, fixed)
    lines = [_PREAMBLE, f"\\draw (0,0) circle ({radius:.1f});", "\\fill (0,-3) circle (0.06);"]
    lines += _tikz_edges(web, pos)
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def diagram_tikz(diagram: TriangularDiagram) -> str:
    """Triangle with its apex at the bottom, one cell per top edge."""
    web = diagram.web
    m = max(diagram.length, 1)
    height = float(m)
    fixed: dict[int, Point] = {}
    for i, v in enumerate(diagram.top_stubs):
        fixed[v] = (-m + 2.0 * i + 1.0, height)
    for side, stubs in ((-1.0, diagram.left_stubs), (1.0, diagram.right_stubs)):
        for j, v in enumerate(stubs):
            t = (j + 1) / (len(stubs) + 1)
            fixed[v] = (side * m * t, height * t)
    pos = _barycentric(web, fixed)

    lines = [_PREAMBLE, f"\\draw (0,0) -- ({-m},{m}) -- ({m},{m}) -- cycle;"]
    for i in range(diagram.length):
        x0, x1 = -m + 2 * i, -m + 2 * (i + 1)
        lines.append(f"% cell {i}")
        lines.append(f"\\draw[gray] (0,0) -- ({x0},{m}) ({x1},{m}) -- (0,0);")
    lines += _tikz_edges(web, pos)
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render(web: Web, fmt: RenderFormat) -> str:
    if fmt == "json":
        return web_json(web)
    if fmt == "dot":
        return web_dot(web)
    if fmt == "tikz":
        return web_tikz(web)
    raise ValueError(f"Unknown render format '{fmt}'")


def extension(fmt: RenderFormat) -> str:
    return {"json": ".json", "dot": ".dot", "tikz": ".tex"}[fmt]
