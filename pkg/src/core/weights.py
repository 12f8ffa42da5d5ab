"""Weight lattice arithmetic for SL(n).

Weights are stored as canonical coset representatives: an integer vector of
length n whose minimum coordinate is 0. Two integer vectors describe the same
weight when they differ by a multiple of (1, ..., 1).
"""

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

logger = logging.getLogger(__name__)


class Comparison(Enum):
    """Outcome of comparing two weights in dominance order."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class LRCase(Enum):
    """Which label family comes first in a length-one diagram."""

    R_FIRST = "r-first"
    L_FIRST = "l-first"


@dataclass(frozen=True)
class Weight:
    """Canonical weight of SL(n)."""

    n: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"Rank n must be at least 2, got {self.n}")
        if len(self.coords) != self.n:
            raise ValueError(f"Expected {self.n} coordinates, got {len(self.coords)}")
        if min(self.coords) != 0:
            raise ValueError(f"Weight {self.coords} is not canonical (minimum must be 0)")

    def __add__(self, other: "Weight") -> "Weight":
        _check_rank(self, other)
        return canonicalize([a + b for a, b in zip(self.coords, other.coords)], self.n)

    def __sub__(self, other: "Weight") -> "Weight":
        _check_rank(self, other)
        return canonicalize([a - b for a, b in zip(self.coords, other.coords)], self.n)

    def __neg__(self) -> "Weight":
        return canonicalize([-c for c in self.coords], self.n)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_dominant(self) -> bool:
        return all(a >= b for a, b in zip(self.coords, self.coords[1:]))

    @property
    def coset(self) -> int:
        """Residue of the coordinate sum mod n."""
        return sum(self.coords) % self.n

    def fundamental_coefficients(self) -> tuple[int, ...]:
        """Coefficients of ω_1, ..., ω_{n-1} in this weight."""
        return tuple(a - b for a, b in zip(self.coords, self.coords[1:]))

    def format(self) -> str:
        """Render as a sum of fundamental weights, e.g. ``w1+w3`` or ``2w2-w1``."""
        parts: list[str] = []
        for j, c in enumerate(self.fundamental_coefficients(), start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}w{j}")
        return "".join(parts) or "0"


def _check_rank(a: Weight, b: Weight) -> None:
    if a.n != b.n:
        raise ValueError(f"Rank mismatch: SL({a.n}) vs SL({b.n})")


def canonicalize(raw: Sequence[int], n: int | None = None) -> Weight:
    """
    Reduce an integer vector to its canonical weight.

    Args:
        raw: Integer coordinates
        n: Expected rank; defaults to ``len(raw)``

    Returns:
        Weight with minimum coordinate 0

    Raises:
        ValueError: If the length does not match n or n < 2
    """
    if n is None:
        n = len(raw)
    if len(raw) != n:
        raise ValueError(f"Expected {n} coordinates, got {len(raw)}")
    if n < 2:
        raise ValueError(f"Rank n must be at least 2, got {n}")
    low = min(raw)
    return Weight(n, tuple(int(c) - low for c in raw))


def zero(n: int) -> Weight:
    return Weight(n, (0,) * n)


def fundamental(n: int, k: int) -> Weight:
    """ω_k = (1^k, 0^(n-k)); k is read mod n and ω_0 is the zero weight."""
    k %= n
    return Weight(n, (1,) * k + (0,) * (n - k)) if k else zero(n)


def weight_sum(n: int, weights: Iterable[Weight]) -> Weight:
    total = zero(n)
    for w in weights:
        total = total + w
    return total


def dominance_compare(a: Weight, b: Weight) -> Comparison:
    """
    Compare two weights in dominance order.

    The weights are comparable only when their coordinate sums agree mod n.
    In that case ``b`` is shifted by a multiple of (1, ..., 1) so that both
    lifts have equal sums, and a <= b iff every prefix sum of b - a is >= 0.

    Raises:
        ValueError: If the ranks differ
    """
    _check_rank(a, b)
    n = a.n
    sa, sb = sum(a.coords), sum(b.coords)
    if (sa - sb) % n:
        return Comparison.INCOMPARABLE
    t = (sa - sb) // n
    diff = [bc + t - ac for ac, bc in zip(a.coords, b.coords)]
    prefixes = list(itertools.accumulate(diff[:-1]))
    if all(p == 0 for p in prefixes):
        return Comparison.EQUAL
    if all(p >= 0 for p in prefixes):
        return Comparison.LESS
    if all(p <= 0 for p in prefixes):
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def leq(a: Weight, b: Weight) -> bool:
    return dominance_compare(a, b) in (Comparison.LESS, Comparison.EQUAL)


def weyl_orbit(n: int, k: int) -> tuple[Weight, ...]:
    """All 0/1 vectors with k ones, in lexicographically decreasing order."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"Orbit class must lie in [1, {n - 1}], got {k}")
    orbit = []
    for ones in itertools.combinations(range(n), k):
        orbit.append(Weight(n, tuple(1 if i in ones else 0 for i in range(n))))
    return tuple(orbit)


def orbit_class(w: Weight) -> int | None:
    """Return k if ``w`` lies in the Weyl orbit of ω_k, otherwise None."""
    if any(c not in (0, 1) for c in w.coords):
        return None
    k = sum(w.coords)
    return k if 1 <= k <= w.n - 1 else None


@dataclass(frozen=True)
class LRDecomposition:
    """
    Splitting of an orbit weight into ω_r - ω_l pieces.

    ``l`` holds the indices j with coefficient -1 on ω_j, ``r`` those with
    coefficient +1; ``case`` records which of the two contains the smallest
    index.
    """

    l: tuple[int, ...]  # noqa: E741
    r: tuple[int, ...]
    case: LRCase


def decompose_lr(w: Weight) -> LRDecomposition:
    """
    Write an orbit weight as Σ(ω_r - ω_l).

    Raises:
        ValueError: If ``w`` is not in a minuscule orbit
    """
    if orbit_class(w) is None:
        raise ValueError(f"Weight {w.coords} is not an orbit weight")
    coeffs = w.fundamental_coefficients()
    ls = tuple(j for j, c in enumerate(coeffs, start=1) if c == -1)
    rs = tuple(j for j, c in enumerate(coeffs, start=1) if c == 1)
    case = LRCase.L_FIRST if ls and (not rs or ls[0] < rs[0]) else LRCase.R_FIRST
    return LRDecomposition(l=ls, r=rs, case=case)
