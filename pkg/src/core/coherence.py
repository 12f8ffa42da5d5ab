"""
Weight-valued geodesics on dual diskoids and the coherence conditions.

Path lengths are sums of fundamental weights compared in dominance order,
so the minimal lengths between two faces form an antichain rather than a
single value. A web is coherent when the antichains seen from the marked
face collapse to single weights and behave like distances in a building.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

import networkx as nx

from src.core.littelmann import MinusculePath
from src.core.webs import DualDiskoid, Web, WebCorruptionError, dual_diskoid, normalize
from src.core.weights import Comparison, Weight, dominance_compare, orbit_class, zero

logger = logging.getLogger(__name__)

Predecessor = tuple[int, Weight] | None
Minima = dict[Weight, Predecessor]


class IncoherentWebError(Exception):
    """Raised when a web has no well-defined associated path."""

    pass


def _offer(bucket: Minima, candidate: Weight, pred: Predecessor) -> bool:
    """Insert ``candidate`` unless some stored weight is <= it. Returns True on insert."""
    for w in bucket:
        if dominance_compare(w, candidate) in (Comparison.LESS, Comparison.EQUAL):
            return False
    for w in [w for w in bucket if dominance_compare(candidate, w) is Comparison.LESS]:
        del bucket[w]
    bucket[candidate] = pred
    return True


def _ordered(weights: Iterable[Weight]) -> tuple[Weight, ...]:
    return tuple(sorted(weights, key=lambda w: w.coords))


def distances_from(dual: DualDiskoid, src: int) -> dict[int, Minima]:
    """
    Minimal path lengths from ``src`` to every face, with predecessors.

    Raises:
        WebCorruptionError: If the passes do not stabilise
    """
    minima: dict[int, Minima] = {src: {zero(dual.n): None}}
    order = sorted(dual.graph.nodes)
    for _ in range(len(order) + 1):
        changed = False
        for u in order:
            if u not in minima:
                continue
            for w in list(minima[u]):
                if w not in minima[u]:
                    continue
                for v, cost in dual.steps(u):
                    if v == u:
                        continue
                    if _offer(minima.setdefault(v, {}), w + cost, (u, w)):
                        changed = True
        if not changed:
            return minima
    raise WebCorruptionError(f"Distance antichains from face {src} did not stabilise")


def distance_antichain(dual: DualDiskoid, src: int, dst: int) -> tuple[Weight, ...]:
    """
    Antichain of minimal path lengths between two faces.

    Raises:
        WebCorruptionError: If ``dst`` cannot be reached from ``src``
    """
    found = distances_from(dual, src).get(dst)
    if not found:
        raise WebCorruptionError(f"Face {dst} is unreachable from face {src}")
    return _ordered(found)


def geodesic_witness(dual: DualDiskoid, src: int, dst: int) -> list[int]:
    """Faces along one geodesic from ``src`` to the smallest minimum at ``dst``."""
    minima = distances_from(dual, src)
    if not minima.get(dst):
        raise WebCorruptionError(f"Face {dst} is unreachable from face {src}")
    node, weight = dst, _ordered(minima[dst])[0]
    trail = [dst]
    while (pred := minima[node][weight]) is not None:
        node, weight = pred
        trail.append(node)
    return trail[::-1]


def simple_path_minima(dual: DualDiskoid, src: int, dst: int) -> tuple[Weight, ...]:
    """Brute-force oracle: minima over every simple path."""
    if src == dst:
        return (zero(dual.n),)
    graph = dual.to_undirected()
    bucket: Minima = {}
    for path in nx.all_simple_edge_paths(graph, src, dst):
        total, here = zero(dual.n), src
        for a, b, key in path:
            data = graph.edges[a, b, key]
            total = total + dual.step_cost(here, data["label"], data["tail"])
            here = b if a == here else a
        _offer(bucket, total, None)
    return _ordered(bucket)


@dataclass
class CoherenceReport:
    cond1: bool
    cond2: bool
    cond3: bool
    failures: list[str] = field(default_factory=list)
    associated: MinusculePath | None = None

    @property
    def coherent(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    def describe(self) -> str:
        lines = [
            f"coherent geodesics at marked face: {'yes' if self.cond1 else 'no'}",
            f"internal faces on boundary geodesics: {'yes' if self.cond2 else 'no'}",
            f"adjacent distances are minuscule: {'yes' if self.cond3 else 'no'}",
        ]
        lines.extend(f"  {f}" for f in self.failures)
        if self.associated is not None:
            lines.append(f"associated path: {self.associated.format()}")
        return "\n".join(lines)


def _path_from(
    dual: DualDiskoid, from_marked: dict[int, Minima], sectors: int
) -> MinusculePath:
    points = []
    for i, face in enumerate(dual.external[:sectors]):
        found = from_marked.get(face, {})
        if len(found) != 1:
            shown = ", ".join(w.format() for w in _ordered(found))
            raise IncoherentWebError(f"Sector {i} (face {face}) has distance antichain {{{shown}}}")
        points.append(next(iter(found)))
    points.append(zero(dual.n))
    try:
        return MinusculePath(dual.n, tuple(points))
    except ValueError as e:
        raise IncoherentWebError(f"Boundary distances do not form a minuscule path: {e}") from e


def associated_path(web: Web) -> MinusculePath:
    """
    Read off μ_i = d(•, v_i) around the boundary.

    Raises:
        IncoherentWebError: If a boundary distance is not a single weight
    """
    web = normalize(web)
    dual = dual_diskoid(web)
    return _path_from(dual, distances_from(dual, dual.marked), len(web.boundary))


def is_coherent(web: Web) -> CoherenceReport:
    """Evaluate the three coherence conditions on the normal form of ``web``."""
    web = normalize(web)
    dual = dual_diskoid(web)
    from_marked = distances_from(dual, dual.marked)
    failures: list[str] = []

    cond1 = True
    for face in sorted(dual.graph.nodes):
        found = from_marked.get(face, {})
        if len(found) != 1:
            cond1 = False
            shown = ", ".join(w.format() for w in _ordered(found)) or "unreachable"
            failures.append(f"face {face}: distance antichain {{{shown}}}")
            break

    cond2 = True
    for u in dual.internal:
        from_u = distances_from(dual, u)
        on_geodesic = any(
            (w1 + w2) in from_marked.get(v, {})
            for v in set(dual.external)
            for w1 in from_marked.get(u, {})
            for w2 in from_u.get(v, {})
        )
        if not on_geodesic:
            cond2 = False
            failures.append(f"face {u}: not on a geodesic from the marked face to the boundary")
            break

    cond3 = True
    for a, b, key, label in dual.graph.edges(keys=True, data="label"):
        da, db = from_marked.get(a, {}), from_marked.get(b, {})
        if len(da) != 1 or len(db) != 1:
            continue
        step = next(iter(db)) - next(iter(da))
        if orbit_class(step) != label:
            cond3 = False
            failures.append(
                f"edge {key} ({a}->{b}, label {label}): distance step {step.format()}"
            )
            break

    report = CoherenceReport(cond1, cond2, cond3, failures)
    if report.coherent:
        try:
            report.associated = _path_from(dual, from_marked, len(web.boundary))
        except IncoherentWebError as e:
            report.failures.append(str(e))
            report.cond1 = False
    logger.debug(f"Coherence: cond1={cond1} cond2={cond2} cond3={cond3}")
    return report
