"""Tests for web evaluation and exact rank."""

from fractions import Fraction

import pytest

from src.core.evaluation import (
    BUDGET_ENV,
    DEFAULT_BUDGET,
    EvaluationBudgetError,
    InvariantVector,
    apply_lowering,
    cap,
    default_budget,
    elements,
    evaluate,
    is_invariant,
    local_tensor,
    proportionality,
    rank,
    shuffle_sign,
    to_mask,
)
from src.core.littelmann import enumerate_paths, pieri_dimension
from src.core.triangles import from_path, to_web


def test_masks():
    assert to_mask([1, 3]) == 0b101
    assert elements(0b1010) == [2, 4]


def test_shuffle_sign():
    assert shuffle_sign((to_mask([1]), to_mask([2]))) == 1
    assert shuffle_sign((to_mask([2]), to_mask([1]))) == -1
    assert shuffle_sign((to_mask([2, 3]), to_mask([1]))) == 1
    assert shuffle_sign((to_mask([3]), to_mask([1, 2]))) == 1


def test_local_tensor_of_determinant_vertex():
    table = local_tensor(3, (1, 1, 1))
    assert len(table) == 6
    assert table[(1, 2, 4)] == 1
    assert table[(2, 1, 4)] == -1


def test_local_tensor_rejects_unbalanced_sizes():
    with pytest.raises(ValueError, match="unbalanced"):
        local_tensor(4, (1, 1, 1))


def test_dual_vertex_tensor_is_supported_on_complements():
    table = local_tensor(4, (3, 3, 2))
    assert len(table) == len(local_tensor(4, (1, 1, 2)))
    assert all(bin(m).count("1") == k for key in table for m, k in zip(key, (3, 3, 2)))


def test_cap_pairs_complements():
    arcs = cap(4, 1)
    assert len(arcs) == 4
    assert all(a | b == 0b1111 and not a & b for a, b in arcs)


def test_cup_evaluates_to_the_pairing(cup):
    vec = evaluate(cup)
    assert vec.boundary == (2, 1)
    assert len(vec.coefficients) == 3
    assert is_invariant(vec)


def test_square_web_is_invariant(square_web):
    assert is_invariant(evaluate(square_web))


@pytest.mark.parametrize(
    ("n", "labels"),
    [(2, [1] * 6), (3, [1, 1, 1]), (3, [1, 2, 1, 2]), (4, [1, 3, 1, 3]), (4, [2, 2, 2, 2])],
)
def test_basis_vectors_are_invariant(n, labels):
    for path in enumerate_paths(n, labels):
        vec = evaluate(to_web(from_path(path)))
        assert not vec.is_zero
        assert is_invariant(vec)


@pytest.mark.parametrize(
    ("n", "labels", "expected"),
    [
        (2, [1] * 4, 2),
        (2, [1] * 6, 5),
        (3, [1, 1, 1, 2, 2, 2], 6),
        (4, [1, 3, 1, 3], 2),
        (4, [2, 2, 2, 2], 3),
    ],
)
def test_basis_rank_equals_pieri(n, labels, expected):
    vectors = [evaluate(to_web(from_path(p))) for p in enumerate_paths(n, labels)]
    assert pieri_dimension(n, labels) == expected
    assert rank(vectors) == expected


def test_leg_offset_rescales_without_changing_rank():
    paths = enumerate_paths(4, [2, 2, 2, 2])
    webs = [to_web(from_path(p)) for p in paths]
    plain = [evaluate(w) for w in webs]
    shifted = [evaluate(w, leg_offset=1) for w in webs]
    assert rank(shifted) == rank(plain) == 3
    for a, b in zip(plain, shifted):
        assert proportionality(a, b) not in (None, Fraction(0))


def test_rank_of_dependent_family(cup):
    vec = evaluate(cup)
    doubled = InvariantVector(vec.n, vec.boundary, {k: 2 * c for k, c in vec.coefficients.items()})
    assert rank([vec, doubled]) == 1
    assert proportionality(doubled, vec) == Fraction(2)
    assert rank([]) == 0


def test_rank_handles_fractions_and_zero_rows():
    half = Fraction(1, 2)
    vectors = [
        InvariantVector(2, (1, 1), {(1, 2): half, (2, 1): -half}),
        InvariantVector(2, (1, 1), {(1, 2): Fraction(1), (2, 1): Fraction(1)}),
        InvariantVector(2, (1, 1), {(1, 2): Fraction(3), (2, 1): Fraction(-1)}),
        InvariantVector(2, (1, 1), {}),
    ]
    assert rank(vectors) == 2
    assert rank(vectors[:1] + vectors[3:]) == 1
    assert rank(vectors[3:]) == 0


def test_rank_rejects_mixed_boundaries(cup, square_web):
    with pytest.raises(ValueError, match="share"):
        rank([evaluate(cup), evaluate(square_web)])


def test_lowering_operator_moves_one_index():
    vec = InvariantVector(3, (1,), {(to_mask([1]),): Fraction(1)})
    lowered = apply_lowering(vec, 1)
    assert lowered.coefficients == {(to_mask([2]),): Fraction(1)}
    assert not is_invariant(vec)


def test_budget_is_enforced(square_web):
    with pytest.raises(EvaluationBudgetError, match="budget"):
        evaluate(square_web, budget=10)


def test_default_budget_reads_environment(monkeypatch):
    monkeypatch.delenv(BUDGET_ENV, raising=False)
    assert default_budget() == DEFAULT_BUDGET
    monkeypatch.setenv(BUDGET_ENV, "5000")
    assert default_budget() == 5000
    monkeypatch.setenv(BUDGET_ENV, "lots")
    assert default_budget() == DEFAULT_BUDGET


def test_format_lists_subsets(cup):
    lines = evaluate(cup).format().splitlines()
    assert len(lines) == 3
    assert all("|" in line for line in lines)
