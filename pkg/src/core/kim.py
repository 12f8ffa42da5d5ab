"""
Local SL(4) web relations that preserve the invariant vector up to scale.

Two moves are supported:

- ``square``: an internal square of ω1/ω3 edges whose four corners each
  carry an ω2 leg; the four square edges are reversed.
- ``ih``: an ω2 edge between two trivalent vertices whose other four legs
  all point the same way (all ω1 inward or all ω3 inward); the legs are
  reconnected across the other diagonal.
"""

import logging
from dataclasses import dataclass
from typing import Literal

from src.core.webs import Edge, Web, edge_of, is_head_dart, twin

logger = logging.getLogger(__name__)


class KimPatternError(ValueError):
    """Raised when a rewrite site does not match its pattern."""

    pass


@dataclass(frozen=True)
class KimSite:
    kind: Literal["square", "ih"]
    vertices: tuple[int, ...]
    edges: tuple[int, ...]  # the square's four edges, or the single middle edge


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise KimPatternError(message)


def _check_square(web: Web, vertices: tuple[int, ...], edges: tuple[int, ...]) -> None:
    _require(web.n == 4, "square move needs SL(4)")
    _require(len(set(vertices)) == 4 and len(set(edges)) == 4, "square must have four corners")
    for v in vertices:
        _require(not web.is_boundary(v), f"corner {v} lies on the boundary")
        _require(web.degree(v) == 3, f"corner {v} is not trivalent")
    for e in edges:
        _require(web.edges[e].label in (1, 3), f"square edge {e} is not labelled 1 or 3")
    for v in vertices:
        legs = [d for d in web.rotations[v] if edge_of(d) not in edges]
        _require(len(legs) == 1, f"corner {v} does not meet the square in two edges")
        _require(web.inward_label(legs[0]) == 2, f"corner {v} leg is not labelled 2")


def _check_ih(web: Web, eid: int) -> tuple[int, int, list[int], list[int]]:
    _require(web.n == 4, "H/I move needs SL(4)")
    _require(eid in web.edges, f"edge {eid} does not exist")
    mid = web.edges[eid]
    _require(mid.label == 2, f"edge {eid} is not labelled 2")
    u, v = mid.tail, mid.head
    _require(u != v, f"edge {eid} is a loop")
    for x in (u, v):
        _require(not web.is_boundary(x), f"vertex {x} lies on the boundary")
        _require(web.degree(x) == 3, f"vertex {x} is not trivalent")
    ru = _from_dart(web.rotations[u], 2 * eid)
    rv = _from_dart(web.rotations[v], 2 * eid + 1)
    legs = ru[1:] + rv[1:]
    _require(len({edge_of(d) for d in legs}) == 4, "H/I legs are not four distinct edges")
    inward = {web.inward_label(d) for d in legs}
    _require(inward in ({1}, {3}), f"H/I legs are not uniformly oriented (inward labels {inward})")
    return u, v, ru, rv


def _from_dart(rotation: tuple[int, ...], dart: int) -> list[int]:
    i = rotation.index(dart)
    return list(rotation[i:] + rotation[:i])


def find_kim_sites(web: Web) -> list[KimSite]:
    """Every square and H/I site of an SL(4) web, in a deterministic order."""
    if web.n != 4:
        return []
    sites: list[KimSite] = []
    for face in web.faces:
        if face.external or len(face.darts) != 4:
            continue
        vertices = tuple(web.dart_vertex(d) for d in face.darts)
        edges = tuple(edge_of(d) for d in face.darts)
        try:
            _check_square(web, vertices, edges)
        except KimPatternError:
            continue
        sites.append(KimSite("square", vertices, edges))
    for eid in sorted(web.edges):
        try:
            u, v, _, _ = _check_ih(web, eid)
        except KimPatternError:
            continue
        sites.append(KimSite("ih", (u, v), (eid,)))
    return sites


def kim_rewrite(web: Web, site: KimSite) -> Web:
    """
    Apply a square or H/I move at ``site``.

    Raises:
        KimPatternError: If the site does not match the move's pattern
    """
    rotations = dict(web.rotations)
    edges = dict(web.edges)

    if site.kind == "square":
        _check_square(web, site.vertices, site.edges)
        for e in site.edges:
            old = edges[e]
            edges[e] = Edge(old.head, old.tail, old.label)
            for v in (old.tail, old.head):
                rotations[v] = tuple(twin(d) if edge_of(d) == e else d for d in rotations[v])
    else:
        _require(len(site.edges) == 1, "H/I site names a single edge")
        u, v, ru, rv = _check_ih(web, site.edges[0])
        a, b = ru[1], ru[2]
        c, d = rv[1], rv[2]
        rotations[u] = (ru[0], b, c)
        rotations[v] = (rv[0], d, a)
        for dart, new in ((a, v), (c, u)):
            e = edges[edge_of(dart)]
            edges[edge_of(dart)] = (
                Edge(e.tail, new, e.label) if is_head_dart(dart) else Edge(new, e.head, e.label)
            )
    logger.debug(f"Applied {site.kind} move at vertices {site.vertices}")
    return Web(web.n, rotations, edges, web.boundary)
