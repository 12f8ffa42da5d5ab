"""
Exact evaluation of webs to SL(n)-invariant tensors.

Basis vectors of Λ^k C^n are indexed by k-subsets of {1..n}, stored as
bitmasks with element j at bit j-1. Each edge carries the subset of its
tail leg; its head leg sees the complement. A vertex whose outward legs
have sizes summing to n contributes the sign of the shuffle that lists its
subsets in order; a vertex with legs summing to 2n is treated through the
complements.
"""

import itertools
import logging
import math
import os
from collections import defaultdict, deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from src.core.webs import Web, boundary, edge_of, is_head_dart, normalize

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 1_000_000
BUDGET_ENV = "WEBBASIS_EVAL_BUDGET"

Key = tuple[int, ...]


class EvaluationBudgetError(Exception):
    """Raised when a tensor contraction would exceed the configured size budget."""

    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {BUDGET_ENV}={raw!r}")
        return DEFAULT_BUDGET
    return value if value > 0 else DEFAULT_BUDGET


def elements(mask: int) -> list[int]:
    """1-based elements of a subset bitmask, increasing."""
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def to_mask(subset: Iterable[int]) -> int:
    mask = 0
    for j in subset:
        mask |= 1 << (j - 1)
    return mask


def shuffle_sign(masks: Sequence[int]) -> int:
    """Sign of the permutation listing each subset in order, one after another."""
    seq = [x for m in masks for x in elements(m)]
    inversions = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def _subsets(n: int, k: int) -> tuple[int, ...]:
    return tuple(to_mask(c) for c in itertools.combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def local_tensor(n: int, sizes: tuple[int, ...]) -> dict[Key, int]:
    """
    Invariant tensor of a vertex with outward legs of the given sizes.

    Returns:
        Mapping from one subset per leg (in leg order) to its coefficient

    Raises:
        ValueError: If the sizes do not sum to a multiple of n, or the vertex
            has degree four or more with a sum other than 0 or n
    """
    full = (1 << n) - 1
    total = sum(sizes)
    if total % n:
        raise ValueError(f"Leg sizes {sizes} are unbalanced for SL({n})")
    if total == 0:
        return {(0,) * len(sizes): 1}
    if total == n:
        table: dict[Key, int] = {}

        def place(i: int, used: int, chosen: list[int]) -> None:
            if i == len(sizes):
                table[tuple(chosen)] = shuffle_sign(chosen)
                return
            for s in _subsets(n, sizes[i]):
                if not s & used:
                    chosen.append(s)
                    place(i + 1, used | s, chosen)
                    chosen.pop()

        place(0, 0, [])
        return table
    if total == n * len(sizes):
        return {(full,) * len(sizes): 1}
    dual_sizes = tuple(n - k for k in sizes)
    if sum(dual_sizes) >= total:
        raise ValueError(f"Unsupported vertex with leg sizes {sizes} for SL({n})")
    table = {}
    for key, coeff in local_tensor(n, dual_sizes).items():
        comp = tuple(full ^ m for m in key)
        sign = coeff
        for m in key:
            sign *= shuffle_sign((m, full ^ m))
        table[comp] = sign
    return table


def cap(n: int, k: int) -> dict[tuple[int, int], int]:
    """Arc between two boundary points: Σ sign(S, S^c) e_S ⊗ e_{S^c} with |S| = k."""
    full = (1 << n) - 1
    return {(s, full ^ s): shuffle_sign((s, full ^ s)) for s in _subsets(n, k)}


@dataclass(frozen=True)
class InvariantVector:
    n: int
    boundary: tuple[int, ...]
    coefficients: Mapping[Key, Fraction]

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients.values())

    def items(self) -> list[tuple[Key, Fraction]]:
        return sorted((k, c) for k, c in self.coefficients.items() if c)

    def format(self) -> str:
        lines = []
        for key, c in self.items():
            legs = "|".join("{" + ",".join(map(str, elements(m))) + "}" for m in key)
            lines.append(f"{c} {legs}")
        return "\n".join(lines)


def _vertex_order(web: Web) -> list[int]:
    """Internal vertices in breadth-first order, seeded from the boundary clockwise."""
    internal = set(web.internal_vertices)
    seeds = [web.dart_vertex(web.rotations[b][0] ^ 1) for b in web.boundary]
    order: list[int] = []
    seen: set[int] = set()
    for seed in seeds + sorted(internal):
        if seed not in internal or seed in seen:
            continue
        seen.add(seed)
        queue = deque([seed])
        while queue:
            v = queue.popleft()
            order.append(v)
            for d in web.rotations[v]:
                w = web.dart_vertex(d ^ 1)
                if w in internal and w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def evaluate(web: Web, budget: int | None = None, leg_offset: int = 0) -> InvariantVector:
    """
    Contract the vertex tensors of a web into its invariant vector.

    The web is normalized first. ``leg_offset`` rotates the leg order used
    for every vertex tensor, which rescales the result by a nonzero
    constant.

    Raises:
        EvaluationBudgetError: If the boundary space or an intermediate
            contraction exceeds the budget
    """
    if budget is None:
        budget = default_budget()
    web = normalize(web)
    n = web.n
    full = (1 << n) - 1
    labels = boundary(web)

    ambient = math.prod(math.comb(n, k) for k in labels)
    if ambient > budget:
        raise EvaluationBudgetError(
            f"Boundary space of dimension {ambient} exceeds the budget {budget}"
        )

    open_edges: list[int] = []
    state: dict[Key, int] = {(): 1}

    # arcs joining two boundary vertices
    pos = web.boundary_index
    for eid, e in sorted(web.edges.items()):
        if e.tail in pos and e.head in pos:
            grown: dict[Key, int] = {}
            for s in _subsets(n, e.label):
                tail_leg, head_leg = full ^ s, s
                first, second = (
                    (tail_leg, head_leg) if pos[e.tail] < pos[e.head] else (head_leg, tail_leg)
                )
                w = shuffle_sign((first, second))
                for key, c in state.items():
                    grown[key + (s,)] = c * w
            state = grown
            open_edges.append(eid)

    done: set[int] = set()
    for v in _vertex_order(web):
        legs = web.rotations[v]
        deg = len(legs)
        shift = leg_offset % deg
        legs = legs[shift:] + legs[:shift]
        sizes = tuple(
            web.edges[edge_of(d)].label if not is_head_dart(d) else n - web.edges[edge_of(d)].label
            for d in legs
        )
        table = local_tensor(n, sizes)
        slot = {e: i for i, e in enumerate(open_edges)}
        known = [i for i, d in enumerate(legs) if edge_of(d) in slot]
        index: defaultdict[Key, list[tuple[Key, int]]] = defaultdict(list)
        for key, coeff in table.items():
            index[tuple(key[i] for i in known)].append((key, coeff))

        fresh: list[int] = []
        for d in legs:
            e = edge_of(d)
            if e not in slot and e not in fresh:
                fresh.append(e)
        done.add(v)
        closing = [
            e
            for e in dict.fromkeys(edge_of(d) for d in legs)
            if web.edges[e].tail in done and web.edges[e].head in done
        ]
        keep_edges = [e for e in open_edges + fresh if e not in closing]

        nxt: defaultdict[Key, int] = defaultdict(int)
        for key, c in state.items():
            pattern = []
            for i in known:
                d = legs[i]
                s = key[slot[edge_of(d)]]
                pattern.append(full ^ s if is_head_dart(d) else s)
            for leg_key, coeff in index.get(tuple(pattern), ()):
                assigned = dict(zip(open_edges, key))
                consistent = True
                for d, m in zip(legs, leg_key):
                    s = full ^ m if is_head_dart(d) else m
                    e = edge_of(d)
                    if assigned.setdefault(e, s) != s:
                        consistent = False
                        break
                if not consistent:
                    continue
                weight = c * coeff
                for e in closing:
                    weight *= _edge_weight(web, e, assigned[e], full)
                nxt[tuple(assigned[e] for e in keep_edges)] += weight
        state = {k: c for k, c in nxt.items() if c}
        open_edges = keep_edges
        if len(state) > budget:
            raise EvaluationBudgetError(
                f"Intermediate contraction has {len(state)} terms, over the budget {budget}"
            )

    # read the open edges off at the boundary, clockwise from the marked point
    coefficients: defaultdict[Key, Fraction] = defaultdict(Fraction)
    slot = {e: i for i, e in enumerate(open_edges)}
    for key, c in state.items():
        out = []
        for b in web.boundary:
            eid = web.boundary_edge(b)
            s = key[slot[eid]]
            out.append(s if web.edges[eid].head == b else full ^ s)
        coefficients[tuple(out)] += c
    vec = InvariantVector(n, labels, {k: c for k, c in coefficients.items() if c})
    logger.debug(f"Evaluated web with boundary {labels}: {len(vec.coefficients)} terms")
    return vec


def _edge_weight(web: Web, eid: int, state: int, full: int) -> int:
    e = web.edges[eid]
    if e.tail <= e.head:
        return shuffle_sign((state, full ^ state))
    return shuffle_sign((full ^ state, state))


def _shift(vec: InvariantVector, j: int, lowering: bool) -> InvariantVector:
    src, dst = (j, j + 1) if lowering else (j + 1, j)
    src_bit, dst_bit = 1 << (src - 1), 1 << (dst - 1)
    out: defaultdict[Key, Fraction] = defaultdict(Fraction)
    for key, c in vec.coefficients.items():
        for p, m in enumerate(key):
            if m & src_bit and not m & dst_bit:
                moved = key[:p] + ((m ^ src_bit) | dst_bit,) + key[p + 1 :]
                out[moved] += c
    return InvariantVector(vec.n, vec.boundary, {k: c for k, c in out.items() if c})


def apply_lowering(vec: InvariantVector, j: int) -> InvariantVector:
    """Action of F_j, which replaces e_j by e_{j+1}, summed over tensor factors."""
    return _shift(vec, j, lowering=True)


def apply_raising(vec: InvariantVector, j: int) -> InvariantVector:
    return _shift(vec, j, lowering=False)


def is_invariant(vec: InvariantVector) -> bool:
    """True if every raising and lowering operator kills ``vec``."""
    return all(
        apply_lowering(vec, j).is_zero and apply_raising(vec, j).is_zero for j in range(1, vec.n)
    )


def _integer_row(vec: InvariantVector) -> dict[Key, int]:
    scale = math.lcm(*(c.denominator for c in vec.coefficients.values())) if vec.coefficients else 1
    return {k: int(c * scale) for k, c in vec.coefficients.items() if c}


def rank(vectors: Sequence[InvariantVector]) -> int:
    """
    Exact rank of a family of invariant vectors.

    Rows are scaled to integers and stacked into a sparse matrix over ZZ;
    columns are the tensor keys in sorted order.

    Raises:
        ValueError: If the vectors do not share rank and boundary
    """
    if not vectors:
        return 0
    n, labels = vectors[0].n, vectors[0].boundary
    for v in vectors:
        if v.n != n or v.boundary != labels:
            raise ValueError("All vectors must share rank and boundary to compare them")

    rows = [row for row in (_integer_row(v) for v in vectors) if row]
    if not rows:
        return 0
    columns = {key: j for j, key in enumerate(sorted({k for row in rows for k in row}))}
    entries = {i: {columns[k]: ZZ(c) for k, c in row.items()} for i, row in enumerate(rows)}
    matrix = DomainMatrix(entries, (len(rows), len(columns)), ZZ)
    return int(matrix.rank())


def proportionality(u: InvariantVector, v: InvariantVector) -> Fraction | None:
    """Return c with u = c·v, or None when the vectors are not proportional."""
    if u.n != v.n or u.boundary != v.boundary:
        return None
    if u.is_zero or v.is_zero:
        return Fraction(0) if u.is_zero and not v.is_zero else None
    if set(u.coefficients) != set(v.coefficients):
        return None
    key = min(u.coefficients)
    c = u.coefficients[key] / v.coefficients[key]
    if all(u.coefficients[k] == c * v.coefficients[k] for k in u.coefficients):
        return c
    return None
