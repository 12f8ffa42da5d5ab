"""Minuscule Littelmann paths: enumeration, comparison and Pieri counting."""

import itertools
import logging
import random
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass

from src.core.weights import (
    Comparison,
    Weight,
    canonicalize,
    dominance_compare,
    orbit_class,
    weyl_orbit,
    zero,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinusculePath:
    """
    Sequence of weights μ_0 = 0, μ_1, ..., μ_k whose steps are orbit weights.

    A path is dominant when every point is dominant; only dominant paths index
    basis webs, but arbitrary paths are allowed for side-label bookkeeping.
    """

    n: int
    points: tuple[Weight, ...]
    dominant: bool = True

    def __post_init__(self) -> None:
        if not self.points or not self.points[0].is_zero:
            raise ValueError("A path must start at the zero weight")
        for p in self.points:
            if p.n != self.n:
                raise ValueError(f"Point {p.coords} is not a weight of SL({self.n})")
        for i, step in enumerate(self.steps, start=1):
            if orbit_class(step) is None:
                raise ValueError(f"Step {i} ({step.coords}) is not in a minuscule orbit")
        if self.dominant:
            for i, p in enumerate(self.points):
                if not p.is_dominant:
                    raise ValueError(f"Point {i} ({p.coords}) is not dominant")

    def __len__(self) -> int:
        return len(self.points) - 1

    @property
    def steps(self) -> tuple[Weight, ...]:
        return tuple(b - a for a, b in zip(self.points, self.points[1:]))

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(orbit_class(s) or 0 for s in self.steps)

    @property
    def end(self) -> Weight:
        return self.points[-1]

    def format(self) -> str:
        return " ".join(p.format() for p in self.points)

    @classmethod
    def from_steps(cls, n: int, steps: Sequence[Weight], dominant: bool = True) -> "MinusculePath":
        points = [zero(n)]
        for s in steps:
            points.append(points[-1] + s)
        return cls(n, tuple(points), dominant)


def enumerate_paths(
    n: int, boundary: Sequence[int], endpoint: Weight | None = None
) -> list[MinusculePath]:
    """
    Enumerate dominant minuscule paths of a given type.

    Args:
        n: Rank
        boundary: Orbit classes λ_1, ..., λ_k
        endpoint: Final weight; the zero weight when omitted

    Returns:
        All dominant paths from 0 to ``endpoint``, sorted lexicographically on
        their canonical coordinates

    Raises:
        ValueError: If a boundary entry lies outside [1, n-1]
    """
    for k in boundary:
        if not 1 <= k <= n - 1:
            raise ValueError(f"Boundary label {k} outside [1, {n - 1}] for SL({n})")
    target = endpoint if endpoint is not None else zero(n)
    if target.n != n:
        raise ValueError(f"Endpoint {target.coords} is not a weight of SL({n})")
    if (sum(boundary) - sum(target.coords)) % n:
        logger.debug(f"Boundary {list(boundary)} cannot reach {target.format()} in SL({n})")
        return []

    orbits = {k: weyl_orbit(n, k) for k in set(boundary)}
    found: list[MinusculePath] = []
    prefix = [zero(n)]

    def extend(i: int) -> None:
        if i == len(boundary):
            if prefix[-1] == target:
                found.append(MinusculePath(n, tuple(prefix)))
            return
        for step in orbits[boundary[i]]:
            nxt = prefix[-1] + step
            if nxt.is_dominant:
                prefix.append(nxt)
                extend(i + 1)
                prefix.pop()

    extend(0)
    found.sort(key=lambda p: tuple(q.coords for q in p.points))
    logger.debug(f"Enumerated {len(found)} dominant paths for boundary {list(boundary)}")
    return found


def path_compare(a: MinusculePath, b: MinusculePath) -> Comparison:
    """
    Compare two paths of the same type pointwise in dominance order.

    Raises:
        ValueError: If rank, length or type differ
    """
    if a.n != b.n or len(a) != len(b) or a.type != b.type:
        raise ValueError("Paths must share rank, length and type to be compared")
    outcomes = {dominance_compare(p, q) for p, q in zip(a.points, b.points)}
    if Comparison.INCOMPARABLE in outcomes:
        return Comparison.INCOMPARABLE
    if Comparison.LESS in outcomes and Comparison.GREATER in outcomes:
        return Comparison.INCOMPARABLE
    if Comparison.LESS in outcomes:
        return Comparison.LESS
    if Comparison.GREATER in outcomes:
        return Comparison.GREATER
    return Comparison.EQUAL


def pieri_dimension(n: int, boundary: Sequence[int]) -> int:
    """
    Dimension of the invariant space of ⊗ Λ^{λ_i} C^n.

    Counts chains of vertical strips from the empty partition to a rectangle
    with n equal rows.
    """
    total = sum(boundary)
    if total % n:
        return 0
    counts: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for k in boundary:
        nxt: defaultdict[tuple[int, ...], int] = defaultdict(int)
        for shape, c in counts.items():
            for rows in itertools.combinations(range(n), k):
                grown = list(shape)
                for r in rows:
                    grown[r] += 1
                if all(x >= y for x, y in zip(grown, grown[1:])):
                    nxt[tuple(grown)] += c
        counts = dict(nxt)
    return counts.get((total // n,) * n, 0)


def random_minuscule_path(n: int, length: int, rng: random.Random) -> MinusculePath:
    """Uniformly chosen steps; the result is generally not dominant."""
    steps = []
    for _ in range(length):
        k = rng.randint(1, n - 1)
        steps.append(rng.choice(weyl_orbit(n, k)))
    return MinusculePath.from_steps(n, steps, dominant=False)


def random_dominant_path(
    n: int, boundary: Sequence[int], rng: random.Random
) -> MinusculePath | None:
    paths = enumerate_paths(n, boundary)
    return rng.choice(paths) if paths else None


def sample_paths(
    paths: Sequence[MinusculePath], count: int, rng: random.Random
) -> list[tuple[int, MinusculePath]]:
    """Draw up to ``count`` distinct paths; the result keeps enumeration order and indices."""
    if count < 1:
        raise ValueError(f"Sample size must be >= 1, got {count}")
    picked = sorted(rng.sample(range(len(paths)), min(count, len(paths))))
    return [(i, paths[i]) for i in picked]


def is_gamma_dominant(points: Sequence[Weight], gamma: Weight) -> bool:
    """True if μ_i + γ is dominant for every point μ_i."""
    return all((p + gamma).is_dominant for p in points)


def parse_points(n: int, rows: Sequence[Sequence[int]]) -> MinusculePath:
    return MinusculePath(n, tuple(canonicalize(r, n) for r in rows))
