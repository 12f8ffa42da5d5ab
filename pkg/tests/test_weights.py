"""Tests for weight lattice arithmetic."""

import itertools

import pytest

from src.core.weights import (
    Comparison,
    LRCase,
    Weight,
    canonicalize,
    decompose_lr,
    dominance_compare,
    fundamental,
    leq,
    orbit_class,
    weight_sum,
    weyl_orbit,
    zero,
)


def test_canonicalize_shifts_minimum_to_zero():
    assert canonicalize([2, 1, 1]).coords == (1, 0, 0)
    assert canonicalize([-1, -1, 0], 3).coords == (0, 0, 1)


def test_canonicalize_rejects_wrong_length():
    with pytest.raises(ValueError, match="Expected 4"):
        canonicalize([1, 0], 4)


def test_weight_rejects_non_canonical_coordinates():
    with pytest.raises(ValueError, match="not canonical"):
        Weight(3, (1, 1, 1))


def test_fundamental_reads_index_mod_n():
    assert fundamental(4, 2).coords == (1, 1, 0, 0)
    assert fundamental(4, 4).is_zero
    assert fundamental(4, 5) == fundamental(4, 1)


def test_arithmetic_is_modulo_the_all_ones_vector():
    w1, w3 = fundamental(4, 1), fundamental(4, 3)
    assert (w1 + w3).coords == (2, 1, 1, 0)
    assert w1 + fundamental(4, 3) - w3 == w1
    assert (-w1).coords == (0, 1, 1, 1)
    assert (fundamental(3, 1) + fundamental(3, 2)).fundamental_coefficients() == (1, 1)


def test_rank_mismatch_is_rejected():
    with pytest.raises(ValueError, match="Rank mismatch"):
        _ = fundamental(3, 1) + fundamental(4, 1)


def test_format_uses_fundamental_weights():
    assert zero(4).format() == "0"
    assert (fundamental(4, 1) + fundamental(4, 3)).format() == "w1+w3"
    assert weight_sum(4, [fundamental(4, 2)] * 2).format() == "2w2"


def test_dominance_on_the_square_corner():
    n = 4
    w1, w2, w3 = (fundamental(n, k) for k in (1, 2, 3))
    assert dominance_compare(w2, w1 + w1) is Comparison.LESS
    assert dominance_compare(w1 + w3, w2 + w2) is Comparison.LESS
    assert dominance_compare(w2 + w2, w1 + w3) is Comparison.GREATER
    assert dominance_compare(w1, w1) is Comparison.EQUAL
    assert dominance_compare(w1, w2) is Comparison.INCOMPARABLE
    assert leq(w1, w2 + w3)
    assert not leq(w2 + w3, w1)


def test_zero_is_below_every_root_lattice_dominant_weight():
    n = 3
    assert leq(zero(n), fundamental(n, 1) + fundamental(n, 2))
    assert leq(zero(n), weight_sum(n, [fundamental(n, 1)] * 3))


def test_weyl_orbit_sizes_and_order():
    orbit = weyl_orbit(4, 2)
    assert len(orbit) == 6
    assert orbit[0].coords == (1, 1, 0, 0)
    assert orbit[-1].coords == (0, 0, 1, 1)
    assert all(orbit_class(w) == 2 for w in orbit)


def test_weyl_orbit_rejects_trivial_classes():
    with pytest.raises(ValueError):
        weyl_orbit(4, 0)


def test_orbit_class():
    assert orbit_class(canonicalize([0, 1, 0, 1])) == 2
    assert orbit_class(zero(4)) is None
    assert orbit_class(canonicalize([2, 0, 0, 0])) is None


def test_decompose_lr():
    lr = decompose_lr(canonicalize([1, 0, 1, 0]))
    assert lr.r == (1, 3)
    assert lr.l == (2,)
    assert lr.case is LRCase.R_FIRST

    lr = decompose_lr(canonicalize([0, 1, 0, 1]))
    assert lr.l == (1, 3)
    assert lr.r == (2,)
    assert lr.case is LRCase.L_FIRST


def test_decompose_lr_of_negated_fundamental():
    lr = decompose_lr(-fundamental(4, 3))
    assert lr.l == (3,)
    assert lr.r == ()


def test_decompose_lr_rejects_non_orbit_weight():
    with pytest.raises(ValueError, match="not an orbit weight"):
        decompose_lr(canonicalize([2, 0, 0]))


def _small_weights(n: int) -> list[Weight]:
    return [canonicalize(c, n) for c in itertools.product(range(3), repeat=n) if min(c) == 0]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dominance_is_a_partial_order(n):
    weights = _small_weights(n)
    for a in weights:
        assert dominance_compare(a, a) is Comparison.EQUAL
        for b in weights:
            forward, backward = dominance_compare(a, b), dominance_compare(b, a)
            assert (forward, backward) in {
                (Comparison.EQUAL, Comparison.EQUAL),
                (Comparison.LESS, Comparison.GREATER),
                (Comparison.GREATER, Comparison.LESS),
                (Comparison.INCOMPARABLE, Comparison.INCOMPARABLE),
            }
            if leq(a, b) and leq(b, a):
                assert a == b
            if leq(a, b):
                assert all(leq(a, c) for c in weights if leq(b, c))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_sum_of_fundamentals_dominates_their_merge(n):
    for a in range(1, n):
        for b in range(1, n):
            assert leq(fundamental(n, a + b), fundamental(n, a) + fundamental(n, b))
