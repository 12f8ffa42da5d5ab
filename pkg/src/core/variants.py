"""
Variant selection for SL(4) steps with two possible length-one diagrams.

The steps (1,0,1,0) and (0,1,0,1) each admit a Standard and a Reversed
spine. The Standard and Reversed spines carry the same side labels in
opposite vertical order, so a choice only decides which oriented strand
sits on top where the spine meets the rest of the diagram. A (1,0,1,0)
step faces the left side of the steps after it; a (0,1,0,1) step faces the
right side of the diagram before it. The strand on top should be the one
that cancels first.
"""

import itertools
import logging
from collections.abc import Sequence

from src.core.littelmann import MinusculePath, is_gamma_dominant
from src.core.triangles import Variant, from_path, side_multisets, spine_labels
from src.core.weights import Weight, fundamental, zero

logger = logging.getLogger(__name__)

Assignment = tuple[Variant, ...]

_OPENING = (1, 0, 1, 0)
_CLOSING = (0, 1, 0, 1)
_AMBIGUOUS = {_OPENING: _CLOSING, _CLOSING: _OPENING}


def ambiguous_steps(path: MinusculePath) -> list[int]:
    """Indices of the steps that admit two non-isomorphic length-one diagrams."""
    if path.n != 4:
        return []
    return [i for i, s in enumerate(path.steps) if s.coords in _AMBIGUOUS]


def vertex_count(path: MinusculePath, choices: Sequence[Variant]) -> int:
    return len(from_path(path, choices).web.internal_vertices)


def _multiple(w: Weight, k: int) -> Weight:
    total = zero(w.n)
    for _ in range(k):
        total = total + w
    return total


def _window_end(steps: Sequence[Weight], i: int) -> int:
    """Largest j >= i such that the partial sums of steps i+1..j are kω2-dominant for some k."""
    n = steps[i].n
    # coordinates of a partial sum differ by at most its length
    gamma = _multiple(fundamental(n, 2), len(steps) + 1)
    partial = [zero(n)]
    j = i
    for nxt in range(i + 1, len(steps)):
        partial.append(partial[-1] + steps[nxt])
        if not is_gamma_dominant(partial, gamma):
            break
        j = nxt
    return j


def _oriented(labels: Sequence[int]) -> list[int]:
    return [x for x in labels if x != 2]


def facing_variant(step: Weight, side: str, label: int) -> Variant:
    """
    Variant of ``step`` whose topmost strand on ``side`` ("l" or "r") is ``label``.

    Raises:
        ValueError: If no variant puts ``label`` on top of that side
    """
    for variant in Variant:
        strands = [s.value for s in spine_labels(4, step, variant) if s.side == side]
        if strands and strands[-1] == label:
            return variant
    raise ValueError(f"No spine of {step.coords} has {label} on top of side {side}")


def _opening_choice(
    steps: Sequence[Weight], i: int, taken: set[int]
) -> tuple[Variant, int | None]:
    """Variant of an opening step and the closing step it pairs with, if any."""
    j = _window_end(steps, i)
    if j + 1 >= len(steps):
        logger.debug(f"Step {i}: window runs to the end of the path, keeping Standard")
        return Variant.STANDARD, None
    left, _ = side_multisets(4, steps[i + 1 : j + 2])
    oriented = _oriented(sorted(left.elements()))
    if len(oriented) == 1:
        return facing_variant(steps[i], "r", oriented[0]), None
    partner = j + 1
    if len(oriented) == 2 and steps[partner].coords == _CLOSING and partner not in taken:
        return Variant.STANDARD, partner
    logger.warning(
        f"Step {i}: {len(oriented)} oriented strands close the window at {partner}, "
        f"keeping Standard"
    )
    return Variant.STANDARD, None


def _closing_choice(path: MinusculePath, i: int, choices: Sequence[Variant]) -> Variant:
    prefix = MinusculePath(path.n, path.points[: i + 1], path.dominant)
    oriented = _oriented(from_path(prefix, choices[:i]).right)
    if not oriented:
        return Variant.STANDARD
    return facing_variant(path.steps[i], "l", oriented[-1])


def sl4_select_variants(path: MinusculePath) -> list[Assignment]:
    """
    Choose variants for the ambiguous steps of an SL(4) path.

    An opening step (1,0,1,0) looks ahead over the longest kω2-dominant
    stretch that follows it, plus one step. If the left side of that
    stretch carries one oriented strand, the spine whose top right strand
    carries the same label is chosen. Two oriented strands mean the
    stretch closes with (0,1,0,1): both spines of the pair must match, and
    either matching pair is minimal. A closing step that is not paired
    puts on top the label of the highest oriented strand on the right side
    of the diagram grown so far.

    Returns:
        One assignment, or both choices for every pair (all combinations)

    Raises:
        ValueError: If the path is not an SL(4) path
    """
    if path.n != 4:
        raise ValueError(f"Variant selection applies to SL(4), got SL({path.n})")
    steps = path.steps
    choices = [Variant.STANDARD] * len(path)
    pairs: list[tuple[int, int]] = []
    taken: set[int] = set()

    for i in ambiguous_steps(path):
        if i in taken:
            continue
        if steps[i].coords == _OPENING:
            variant, partner = _opening_choice(steps, i, taken)
            if partner is not None:
                pairs.append((i, partner))
                taken.update((i, partner))
                continue
            choices[i] = variant
        else:
            choices[i] = _closing_choice(path, i, choices)
        taken.add(i)
    logger.debug(f"Variant choices for {path.format()}: {choices}, pairs {pairs}")

    emitted: list[Assignment] = []
    for flips in itertools.product((Variant.STANDARD, Variant.REVERSED), repeat=len(pairs)):
        trial = list(choices)
        for (i, partner), variant in zip(pairs, flips):
            trial[i] = trial[partner] = variant
        emitted.append(tuple(trial))
    return emitted


def minimal_assignments(path: MinusculePath) -> list[Assignment]:
    """Brute force over all variant assignments of the ambiguous steps."""
    amb = ambiguous_steps(path)
    scored = []
    for combo in itertools.product(list(Variant), repeat=len(amb)):
        trial = [Variant.STANDARD] * len(path)
        for idx, v in zip(amb, combo):
            trial[idx] = v
        scored.append((tuple(trial), vertex_count(path, trial)))
    best = min(c for _, c in scored)
    return [a for a, c in scored if c == best]
