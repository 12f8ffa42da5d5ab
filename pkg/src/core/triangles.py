"""
Triangular diagrams: the growth construction of basis webs.

A diagram is a web drawn in a triangle with its apex at the bottom. The top
side carries the boundary of the final web; the two remaining sides carry
the open edges that later diamonds glue onto. Side and top labels are
recorded as the cost of crossing the stub when walking outward from the
apex: left stubs point out of the triangle, right stubs point into it and
top stubs point out through the top.
"""

import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Literal

from src.core.littelmann import MinusculePath
from src.core.webs import Edge, Web, WebBuilder, WebCorruptionError, edge_of, normalize
from src.core.weights import Weight, decompose_lr, fundamental, orbit_class, weight_sum

logger = logging.getLogger(__name__)


class Variant(Enum):
    """Vertical order of the spine in a length-one diagram."""

    STANDARD = "standard"
    REVERSED = "reversed"


@dataclass(frozen=True)
class SpineStep:
    value: int  # side label attached at this spine vertex
    side: Literal["l", "r"]
    label: int  # label of the spine edge above this vertex (the top edge for the last one)


@dataclass(eq=False)
class TriangularDiagram:
    web: Web
    left: tuple[int, ...]  # bottom -> top
    top: tuple[int, ...]  # left -> right
    right: tuple[int, ...]  # bottom -> top

    @property
    def n(self) -> int:
        return self.web.n

    @property
    def length(self) -> int:
        return len(self.top)

    @property
    def left_stubs(self) -> tuple[int, ...]:
        return self.web.boundary[: len(self.left)]

    @property
    def top_stubs(self) -> tuple[int, ...]:
        start = len(self.left)
        return self.web.boundary[start : start + len(self.top)]

    @property
    def right_stubs(self) -> tuple[int, ...]:
        return tuple(reversed(self.web.boundary[len(self.left) + len(self.top) :]))

    @cached_property
    def left_weight(self) -> Weight:
        return weight_sum(self.n, (fundamental(self.n, x) for x in self.left))

    @cached_property
    def right_weight(self) -> Weight:
        return weight_sum(self.n, (fundamental(self.n, x) for x in self.right))


@dataclass(eq=False)
class DiamondFill:
    web: Web
    new_left: tuple[int, ...]
    new_right: tuple[int, ...]


def empty_diagram(n: int) -> TriangularDiagram:
    return TriangularDiagram(Web(n, {}, {}, ()), (), (), ())


def spine_labels(n: int, w: Weight, variant: Variant = Variant.STANDARD) -> list[SpineStep]:
    """
    Spine of the length-one diagram for ``w``, listed bottom to top.

    Raises:
        ValueError: If ``w`` is not an orbit weight of SL(n)
    """
    if w.n != n:
        raise ValueError(f"Weight {w.coords} does not belong to SL({n})")
    lr = decompose_lr(w)
    spine: list[tuple[int, Literal["l", "r"]]] = sorted(
        [(x, "l") for x in lr.l] + [(x, "r") for x in lr.r]
    )
    if variant is Variant.REVERSED:
        spine.reverse()

    steps: list[SpineStep] = []
    below = 0
    for j, (x, side) in enumerate(spine):
        if j < len(spine) - 1:
            label = (x - below) % n
        else:
            label = (x - below) % n if side == "r" else (below - x) % n
        steps.append(SpineStep(x, side, label))
        below = label
    return steps


def length_one(n: int, w: Weight, variant: Variant = Variant.STANDARD) -> TriangularDiagram:
    """
    Build the length-one diagram of an orbit weight.

    Raises:
        ValueError: If ``w`` is not an orbit weight
        WebCorruptionError: If the balance-forced top label is not the orbit class
    """
    k = orbit_class(w)
    if k is None:
        raise ValueError(f"Weight {w.coords} is not an orbit weight")
    steps = spine_labels(n, w, variant)
    if steps[-1].label != k:
        raise WebCorruptionError(f"Top label {steps[-1].label} of {w.format()} is not {k}")

    builder = WebBuilder(n)
    spine = [builder.add_vertex() for _ in steps]
    left_ids: list[int] = []
    right_ids: list[int] = []
    for v, st in zip(spine, steps):
        stub = builder.add_vertex()
        if st.side == "l":
            builder.add_edge(v, stub, st.value, tail_angle=180)
            left_ids.append(stub)
        else:
            builder.add_edge(stub, v, st.value, head_angle=0)
            right_ids.append(stub)
    for j in range(len(steps) - 1):
        lo, hi = spine[j], spine[j + 1]
        if steps[j].side == "r":
            builder.add_edge(lo, hi, steps[j].label, tail_angle=90, head_angle=270)
        else:
            builder.add_edge(hi, lo, steps[j].label, tail_angle=270, head_angle=90)
    top = builder.add_vertex()
    builder.add_edge(spine[-1], top, k, tail_angle=90)

    raw = builder.build(left_ids + [top] + right_ids[::-1])
    return _diagram(normalize(raw), left_ids, [top], right_ids)


@dataclass(frozen=True)
class _Grid:
    web: Web
    upper_left: tuple[int, ...]  # s = 1..l, from the left corner upward
    upper_right: tuple[int, ...]  # t = 1..l', from the right corner upward
    lower_left: tuple[int, ...]  # t = 1..l', from the bottom corner upward
    lower_right: tuple[int, ...]  # s = 1..l, from the bottom corner upward
    new_left: tuple[int, ...]
    new_right: tuple[int, ...]


def _diamond_grid(n: int, a: Sequence[int], b: Sequence[int]) -> _Grid:
    """Unnormalized diamond; A-strands enter from the lower right, B-strands leave lower left."""
    la, lb = len(a), len(b)
    builder = WebBuilder(n)
    ul = [builder.add_vertex() for _ in a]
    ur = [builder.add_vertex() for _ in b]
    ll = [builder.add_vertex() for _ in b]
    lr = [builder.add_vertex() for _ in a]

    se: dict[tuple[int, int], int] = {}
    sw: dict[tuple[int, int], int] = {}
    lower: dict[tuple[int, int], int] = {}
    for s in range(la, 0, -1):
        for t in range(lb, 0, -1):
            nw = a[s - 1] if t == lb else se[s, t + 1]
            ne = b[t - 1] if s == la else sw[s + 1, t]
            upper, low = builder.add_vertex(), builder.add_vertex()
            lower[s, t] = low
            same = (nw - ne) % n == 0
            se[s, t] = 0 if same else nw
            sw[s, t] = 0 if same else ne
            builder.add_edge(upper, low, ne - nw, tail_angle=270, head_angle=90)
            if t == lb:
                builder.add_edge(upper, ul[s - 1], nw, tail_angle=135)
            else:
                builder.add_edge(upper, lower[s, t + 1], nw, tail_angle=135, head_angle=315)
            if s == la:
                builder.add_edge(ur[t - 1], upper, ne, head_angle=45)
            else:
                builder.add_edge(lower[s + 1, t], upper, ne, tail_angle=225, head_angle=45)

    if lb:
        for s in range(1, la + 1):
            builder.add_edge(lr[s - 1], lower[s, 1], se[s, 1], head_angle=315)
        new_right = tuple(se[s, 1] for s in range(1, la + 1))
    else:
        for s in range(1, la + 1):
            builder.add_edge(lr[s - 1], ul[s - 1], a[s - 1])
        new_right = tuple(a)
    if la:
        for t in range(1, lb + 1):
            builder.add_edge(lower[1, t], ll[t - 1], sw[1, t], tail_angle=225)
        new_left = tuple(sw[1, t] for t in range(1, lb + 1))
    else:
        for t in range(1, lb + 1):
            builder.add_edge(ur[t - 1], ll[t - 1], b[t - 1])
        new_left = tuple(b)

    web = builder.build(ll + ul + ur[::-1] + lr[::-1])
    return _Grid(web, tuple(ul), tuple(ur), tuple(ll), tuple(lr), new_left, new_right)


def fill_diamond(n: int, a: Sequence[int], b: Sequence[int]) -> DiamondFill:
    """
    Fill the diamond between a right side ``a`` and a left side ``b``.

    The returned web is normalized; its boundary runs clockwise from the
    bottom corner over the lower-left, upper-left, upper-right and
    lower-right sides.
    """
    for x in (*a, *b):
        if not 1 <= x <= n - 1:
            raise ValueError(f"Side label {x} outside [1, {n - 1}]")
    grid = _diamond_grid(n, a, b)
    return DiamondFill(
        normalize(grid.web),
        tuple(x for x in grid.new_left if x),
        tuple(x for x in grid.new_right if x),
    )


def _glue(rot: dict[int, list[int]], edges: dict[int, Edge], keep: int, drop: int) -> None:
    """Identify two stub vertices; ``keep`` becomes a 2-valent internal vertex."""
    for d in rot[drop]:
        e = edges[edge_of(d)]
        edges[edge_of(d)] = Edge(
            keep if e.tail == drop else e.tail,
            keep if e.head == drop else e.head,
            e.label,
        )
    rot[keep].extend(rot.pop(drop))


def product(first: TriangularDiagram, second: TriangularDiagram) -> TriangularDiagram:
    """Place two diagrams side by side and fill the diamond under them."""
    if first.n != second.n:
        raise ValueError(f"Rank mismatch: SL({first.n}) vs SL({second.n})")
    n = first.n
    grid = _diamond_grid(n, first.right, second.left)

    va, ea = first.web.next_ids()
    wb = second.web.shifted(va, ea)
    vb, eb = wb.next_ids()
    vb, eb = max(va, vb), max(ea, eb)
    wd = grid.web.shifted(vb, eb)

    rot = {v: list(r) for w in (first.web, wb, wd) for v, r in w.rotations.items()}
    edges = {e: ed for w in (first.web, wb, wd) for e, ed in w.edges.items()}
    for keep, drop in zip(first.right_stubs, grid.upper_left):
        _glue(rot, edges, keep, drop + vb)
    for keep, drop in zip(second.left_stubs, grid.upper_right):
        _glue(rot, edges, keep + va, drop + vb)

    left_ids = [v + vb for v in grid.lower_left] + list(first.left_stubs)
    top_ids = list(first.top_stubs) + [v + va for v in second.top_stubs]
    right_ids = [v + vb for v in grid.lower_right] + [v + va for v in second.right_stubs]
    merged = Web(
        n,
        {v: tuple(r) for v, r in rot.items()},
        edges,
        tuple(left_ids + top_ids + right_ids[::-1]),
    )
    return _diagram(normalize(merged), left_ids, top_ids, right_ids)


def _diagram(
    web: Web, left_ids: Sequence[int], top_ids: Sequence[int], right_ids: Sequence[int]
) -> TriangularDiagram:
    alive = web.rotations.keys()
    left = [v for v in left_ids if v in alive]
    top = [v for v in top_ids if v in alive]
    right = [v for v in right_ids if v in alive]
    if tuple(left + top + right[::-1]) != web.boundary:
        raise WebCorruptionError("Diagram sides do not match the web boundary")
    n = web.n
    return TriangularDiagram(
        web,
        tuple(web.outward_label(v) for v in left),
        tuple(web.outward_label(v) for v in top),
        tuple((n - web.outward_label(v)) % n for v in right),
    )


def from_path(
    path: MinusculePath, choices: Sequence[Variant] | None = None
) -> TriangularDiagram:
    """
    Grow the diagram T_μ of a path, one length-one diagram per step.

    Args:
        path: Minuscule path, dominant or not
        choices: Variant per step; Standard everywhere when omitted

    Raises:
        ValueError: If ``choices`` has the wrong length
    """
    steps = path.steps
    if choices is None:
        choices = [Variant.STANDARD] * len(steps)
    if len(choices) != len(steps):
        raise ValueError(f"Expected {len(steps)} variant choices, got {len(choices)}")
    diagram = empty_diagram(path.n)
    for i, (step, variant) in enumerate(zip(steps, choices)):
        piece = length_one(path.n, step, variant)
        diagram = piece if i == 0 else product(diagram, piece)
    logger.debug(
        f"Built diagram for {path.format()}: {len(diagram.web.internal_vertices)} internal vertices"
    )
    return diagram


def to_web(diagram: TriangularDiagram) -> Web:
    return diagram.web.compacted()


def side_multisets(n: int, steps: Sequence[Weight]) -> tuple[Counter[int], Counter[int]]:
    """Side label multisets of the product of length-one diagrams, without building webs."""
    left: Counter[int] = Counter()
    right: Counter[int] = Counter()
    for step in steps:
        lr = decompose_lr(step)
        step_left, step_right = Counter(lr.l), Counter(lr.r)
        left, right = (step_left - right) + left, (right - step_left) + step_right
    return left, right
