"""
Planar webs stored as half-edge rotation systems.

An edge ``e`` owns two darts: ``2e`` at its tail and ``2e + 1`` at its head.
Every vertex lists its darts counter-clockwise. Boundary vertices are
univalent and listed clockwise around the disk, starting right after the
marked point.
"""

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import networkx as nx

from src.core.weights import Weight, fundamental

logger = logging.getLogger(__name__)


class WebCorruptionError(Exception):
    """Raised when a generated web breaks a structural invariant."""

    pass


def edge_of(dart: int) -> int:
    return dart >> 1


def twin(dart: int) -> int:
    return dart ^ 1


def is_head_dart(dart: int) -> bool:
    return bool(dart & 1)


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    label: int


@dataclass(frozen=True)
class Face:
    """A face traced with itself on the left of every dart."""

    darts: tuple[int, ...]
    sectors: tuple[int, ...]  # boundary sectors (0 is the marked one) lying in this face

    @property
    def external(self) -> bool:
        return bool(self.sectors)


@dataclass(eq=False)
class Web:
    """Oriented, labelled, planar trivalent graph in a disk with a marked point."""

    n: int
    rotations: dict[int, tuple[int, ...]]
    edges: dict[int, Edge]
    boundary: tuple[int, ...] = field(default_factory=tuple)

    @cached_property
    def boundary_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.boundary)}

    def dart_vertex(self, dart: int) -> int:
        e = self.edges[edge_of(dart)]
        return e.head if is_head_dart(dart) else e.tail

    def darts(self) -> list[int]:
        return sorted(d for e in self.edges for d in (2 * e, 2 * e + 1))

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def is_boundary(self, v: int) -> bool:
        return v in self.boundary_index

    @property
    def internal_vertices(self) -> list[int]:
        return sorted(v for v in self.rotations if v not in self.boundary_index)

    def boundary_edge(self, v: int) -> int:
        """Edge id attached to boundary vertex ``v``."""
        return edge_of(self.rotations[v][0])

    def inward_label(self, dart: int) -> int:
        """Label of the edge as seen pointing into the vertex holding ``dart``."""
        label = self.edges[edge_of(dart)].label
        return label if is_head_dart(dart) else (self.n - label) % self.n

    def outward_label(self, v: int) -> int:
        """Label read at boundary vertex ``v`` with its edge pointing out of the disk."""
        return self.inward_label(self.rotations[v][0])

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        darts = self.darts()
        if not darts:
            return (Face((), (0,)),)
        k = len(self.boundary)
        visited: set[int] = set()
        faces: list[Face] = []
        for start in darts:
            if start in visited:
                continue
            trail: list[int] = []
            sectors: list[int] = []
            d = start
            while d not in visited:
                visited.add(d)
                trail.append(d)
                back = twin(d)
                w = self.dart_vertex(back)
                j = self.boundary_index.get(w)
                if j is not None:
                    sectors.append(j)
                    d = self.rotations[self.boundary[(j - 1) % k]][0]
                else:
                    rot = self.rotations[w]
                    d = rot[(rot.index(back) - 1) % len(rot)]
            if d != start:
                raise WebCorruptionError(f"Face tracing from dart {start} did not close")
            faces.append(Face(tuple(trail), tuple(sorted(sectors))))
        return tuple(faces)

    @cached_property
    def dart_face(self) -> dict[int, int]:
        return {d: i for i, f in enumerate(self.faces) for d in f.darts}

    def shifted(self, vertex_offset: int, edge_offset: int) -> "Web":
        """Copy with every vertex and edge id moved by the given offsets."""
        dshift = 2 * edge_offset
        return Web(
            self.n,
            {v + vertex_offset: tuple(d + dshift for d in r) for v, r in self.rotations.items()},
            {
                e + edge_offset: Edge(ed.tail + vertex_offset, ed.head + vertex_offset, ed.label)
                for e, ed in self.edges.items()
            },
            tuple(v + vertex_offset for v in self.boundary),
        )

    def compacted(self) -> "Web":
        """Renumber vertices and edges to 0..N-1 keeping their relative order."""
        vmap = {v: i for i, v in enumerate(sorted(self.rotations))}
        emap = {e: i for i, e in enumerate(sorted(self.edges))}

        def dart(d: int) -> int:
            return 2 * emap[edge_of(d)] + (d & 1)

        return Web(
            self.n,
            {vmap[v]: tuple(dart(d) for d in r) for v, r in self.rotations.items()},
            {emap[e]: Edge(vmap[ed.tail], vmap[ed.head], ed.label) for e, ed in self.edges.items()},
            tuple(vmap[v] for v in self.boundary),
        )

    def next_ids(self) -> tuple[int, int]:
        return (
            max(self.rotations, default=-1) + 1,
            max(self.edges, default=-1) + 1,
        )


class WebBuilder:
    """Incremental construction of a web from edges placed at angles."""

    def __init__(self, n: int) -> None:
        self.n = n
        self._slots: dict[int, list[tuple[float, int]]] = {}
        self._edges: dict[int, Edge] = {}

    def add_vertex(self) -> int:
        v = len(self._slots)
        self._slots[v] = []
        return v

    def add_edge(
        self,
        tail: int,
        head: int,
        label: int,
        tail_angle: float = 0.0,
        head_angle: float = 0.0,
    ) -> int:
        e = len(self._edges)
        self._edges[e] = Edge(tail, head, label % self.n)
        self._slots[tail].append((tail_angle % 360.0, 2 * e))
        self._slots[head].append((head_angle % 360.0, 2 * e + 1))
        return e

    def build(self, boundary: Sequence[int]) -> Web:
        rotations = {v: tuple(d for _, d in sorted(s)) for v, s in self._slots.items()}
        return Web(self.n, rotations, dict(self._edges), tuple(boundary))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(web: Web) -> ValidationReport:
    """Check the structural, balance and Euler invariants of a web."""
    n = web.n
    problems: list[str] = []

    for eid, e in web.edges.items():
        if not 0 <= e.label < n:
            problems.append(f"edge {eid} has label {e.label} outside [0, {n - 1}]")
        for end, dart in ((e.tail, 2 * eid), (e.head, 2 * eid + 1)):
            if end not in web.rotations:
                problems.append(f"edge {eid} references missing vertex {end}")
            elif dart not in web.rotations[end]:
                problems.append(f"dart {dart} of edge {eid} missing from vertex {end}")

    seen: dict[int, int] = {}
    for v, rot in web.rotations.items():
        for d in rot:
            if edge_of(d) not in web.edges:
                problems.append(f"vertex {v} lists dart {d} of unknown edge")
            elif d in seen:
                problems.append(f"dart {d} appears at vertices {seen[d]} and {v}")
            seen[d] = v

    if len(set(web.boundary)) != len(web.boundary):
        problems.append("boundary lists a vertex twice")
    for v in web.boundary:
        if v not in web.rotations:
            problems.append(f"boundary vertex {v} does not exist")
        elif web.degree(v) != 1:
            problems.append(f"boundary vertex {v} has degree {web.degree(v)}")

    for v in web.internal_vertices:
        if web.degree(v) != 3:
            problems.append(f"internal vertex {v} has degree {web.degree(v)}")
        inflow = sum(web.inward_label(d) for d in web.rotations[v] if edge_of(d) in web.edges)
        if inflow % n:
            problems.append(f"vertex {v} is unbalanced (inward sum {inflow})")

    if not problems:
        k = len(web.boundary)
        expected = 1 if k or not web.rotations else 2
        euler = len(web.rotations) - len(web.edges) - k + len(web.faces)
        if euler != expected:
            problems.append(f"Euler characteristic {euler} != {expected}")

    return ValidationReport(tuple(problems))


def boundary(web: Web) -> tuple[int, ...]:
    """Orbit classes read clockwise from the marked point, skipping 0-edges."""
    labels = (web.outward_label(v) for v in web.boundary)
    return tuple(lab for lab in labels if lab)


def normalize(web: Web) -> Web:
    """
    Delete 0-labelled edges and smooth 2-valent internal vertices.

    Raises:
        WebCorruptionError: If a 2-valent vertex joins edges whose labels
            cannot be merged
    """
    n = web.n
    rot = {v: list(r) for v, r in web.rotations.items()}
    edges = dict(web.edges)
    bset = set(web.boundary)

    for eid in sorted(e for e, ed in edges.items() if ed.label % n == 0):
        ed = edges.pop(eid)
        rot[ed.tail].remove(2 * eid)
        rot[ed.head].remove(2 * eid + 1)

    for v in sorted(v for v in rot if v not in bset and len(rot[v]) == 2):
        d1, d2 = rot[v]
        e1, e2 = edge_of(d1), edge_of(d2)
        if e1 == e2:
            continue  # closed loop through one bend
        if e1 > e2:
            d1, d2, e1, e2 = d2, d1, e2, e1
        a, b = edges[e1], edges[e2]
        into1, into2 = is_head_dart(d1), is_head_dart(d2)
        if into1 != into2:
            consistent = a.label == b.label
        else:
            consistent = (a.label + b.label) % n == 0
        if not consistent:
            raise WebCorruptionError(
                f"Cannot smooth vertex {v}: edges {e1} (label {a.label}) and "
                f"{e2} (label {b.label}) do not balance"
            )
        far = twin(d2)
        x2 = b.head if is_head_dart(far) else b.tail
        slots = rot[x2]
        slots[slots.index(far)] = d1
        edges[e1] = Edge(a.tail, x2, a.label) if into1 else Edge(x2, a.head, a.label)
        del edges[e2]
        del rot[v]

    isolated = {v for v, r in rot.items() if not r}
    if isolated:
        logger.debug(f"Dropping {len(isolated)} isolated vertices")
    return Web(
        n,
        {v: tuple(r) for v, r in rot.items() if v not in isolated},
        edges,
        tuple(v for v in web.boundary if v not in isolated),
    )


def rotate_marking(web: Web, k: int) -> Web:
    """Move the marked point ``k`` boundary vertices clockwise."""
    if not web.boundary:
        return web
    k %= len(web.boundary)
    return Web(web.n, dict(web.rotations), dict(web.edges), web.boundary[k:] + web.boundary[:k])


def internal_face_degrees(web: Web) -> list[int]:
    return [len(f.darts) for f in web.faces if not f.external]


def is_non_elliptic(web: Web) -> bool:
    """SL(3) check: no internal face with fewer than six sides."""
    return all(deg >= 6 for deg in internal_face_degrees(web))


def is_crossless_matching(web: Web) -> bool:
    """SL(2) check: only boundary-to-boundary arcs, pairwise non-crossing."""
    if web.internal_vertices:
        return False
    pos = web.boundary_index
    arcs = []
    for e in web.edges.values():
        i, j = sorted((pos[e.tail], pos[e.head]))
        arcs.append((i, j))
    for i, j in arcs:
        for k, m in arcs:
            if i < k < j < m:
                return False
    return True


@dataclass
class DualDiskoid:
    """
    Planar dual of a web.

    Nodes are face indices of the web. A dual edge keyed by the web edge id
    runs from the face on the left of that edge to the face on its right and
    carries the edge label.
    """

    n: int
    graph: nx.MultiDiGraph
    external: tuple[int, ...]  # face of each boundary sector, clockwise from the marked one

    @property
    def marked(self) -> int:
        return self.external[0]

    @property
    def internal(self) -> list[int]:
        return sorted(u for u, data in self.graph.nodes(data=True) if not data["sectors"])

    def steps(self, u: int) -> Iterator[tuple[int, Weight]]:
        """Neighbours of ``u`` with the cost of stepping there."""
        for _, v, label in self.graph.out_edges(u, data="label"):
            yield v, fundamental(self.n, label)
        for w, _, label in self.graph.in_edges(u, data="label"):
            yield w, fundamental(self.n, self.n - label)

    def to_undirected(self) -> nx.MultiGraph:
        """Undirected view keeping each edge's original tail for costing."""
        g = nx.MultiGraph()
        g.add_nodes_from(self.graph.nodes)
        for a, b, key, label in self.graph.edges(keys=True, data="label"):
            g.add_edge(a, b, key=key, tail=a, label=label)
        return g

    def step_cost(self, frm: int, label: int, tail: int) -> Weight:
        return fundamental(self.n, label if frm == tail else self.n - label)


def dual_diskoid(web: Web) -> DualDiskoid:
    g = nx.MultiDiGraph()
    sector_face: dict[int, int] = {}
    for i, face in enumerate(web.faces):
        g.add_node(i, sectors=face.sectors, size=len(face.darts))
        for s in face.sectors:
            sector_face[s] = i
    for eid, e in web.edges.items():
        left, right = web.dart_face[2 * eid], web.dart_face[2 * eid + 1]
        g.add_edge(left, right, key=eid, label=e.label)
    k = max(len(web.boundary), 1)
    if not web.boundary and 0 not in sector_face:
        sector_face[0] = 0  # closed web: the face of the lowest dart stands in for the rim
    return DualDiskoid(web.n, g, tuple(sector_face[s] for s in range(k)))


def isomorphic(w1: Web, w2: Web) -> bool:
    """
    Marked-point-preserving isomorphism test.

    Labels match when equal on equally oriented edges, or when they sum to
    n on oppositely oriented ones.
    """
    if w1.n != w2.n or len(w1.boundary) != len(w2.boundary):
        return False
    if len(w1.edges) != len(w2.edges) or len(w1.rotations) != len(w2.rotations):
        return False
    if w1.boundary:
        seed = [(w1.rotations[a][0], w2.rotations[b][0]) for a, b in zip(w1.boundary, w2.boundary)]
        return _match_from(w1, w2, seed)
    if not w1.edges:
        return True
    first = w1.darts()[0]
    return any(_match_from(w1, w2, [(first, d)]) for d in w2.darts())


def _match_from(w1: Web, w2: Web, seed: list[tuple[int, int]]) -> bool:
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}
    stack = list(seed)
    n = w1.n
    while stack:
        d1, d2 = stack.pop()
        if d1 in fwd:
            if fwd[d1] != d2:
                return False
            continue
        if d2 in back:
            return False
        fwd[d1], back[d2] = d2, d1

        lab1, lab2 = w1.edges[edge_of(d1)].label, w2.edges[edge_of(d2)].label
        if is_head_dart(d1) == is_head_dart(d2):
            if lab1 != lab2:
                return False
        elif (lab1 + lab2) % n:
            return False
        stack.append((twin(d1), twin(d2)))

        v1, v2 = w1.dart_vertex(d1), w2.dart_vertex(d2)
        b1, b2 = w1.boundary_index.get(v1), w2.boundary_index.get(v2)
        if b1 != b2:
            return False
        if b1 is not None:
            continue
        r1, r2 = w1.rotations[v1], w2.rotations[v2]
        if len(r1) != len(r2):
            return False
        i1, i2 = r1.index(d1), r2.index(d2)
        for s in range(1, len(r1)):
            stack.append((r1[(i1 + s) % len(r1)], r2[(i2 + s) % len(r2)]))
    return len(fwd) == 2 * len(w1.edges)


def web_to_dict(web: Web) -> dict[str, Any]:
    return {
        "n": web.n,
        "vertices": [{"id": v, "rotation": list(web.rotations[v])} for v in sorted(web.rotations)],
        "edges": [
            {"id": e, "tail": ed.tail, "head": ed.head, "label": ed.label}
            for e, ed in sorted(web.edges.items())
        ],
        "boundary": list(web.boundary),
        "marked": 0,
    }


def web_from_dict(data: Mapping[str, Any]) -> Web:
    """
    Parse the JSON form of a web.

    Raises:
        ValueError: If a required key is missing or malformed
    """
    try:
        n = int(data["n"])
        rotations = {int(v["id"]): tuple(int(d) for d in v["rotation"]) for v in data["vertices"]}
        edges = {
            int(e["id"]): Edge(int(e["tail"]), int(e["head"]), int(e["label"]))
            for e in data["edges"]
        }
        bnd = tuple(int(v) for v in data.get("boundary", []))
        marked = int(data.get("marked", 0))
    except (KeyError, TypeError) as e:
        raise ValueError(f"Malformed web document: {e}") from e
    if bnd:
        marked %= len(bnd)
        bnd = bnd[marked:] + bnd[:marked]
    return Web(n, rotations, edges, bnd)
