"""Tests for minuscule path enumeration and Pieri counting."""

import random

import pytest

from src.core.littelmann import (
    MinusculePath,
    enumerate_paths,
    is_gamma_dominant,
    parse_points,
    path_compare,
    pieri_dimension,
    random_dominant_path,
    random_minuscule_path,
    sample_paths,
)
from src.core.weights import Comparison, fundamental, weight_sum, zero

CATALAN = [1, 1, 2, 5, 14, 42, 132]


@pytest.mark.parametrize("m", range(1, 7))
def test_sl2_path_count_is_catalan(m):
    assert len(enumerate_paths(2, [1] * (2 * m))) == CATALAN[m]


@pytest.mark.parametrize(
    ("n", "boundary", "expected"),
    [
        (2, [1] * 6, 5),
        (4, [2] * 4, 3),
        (4, [1, 3, 1, 3], 2),
        (3, [1, 1, 1], 1),
        (3, [1, 2, 1, 2], 2),
        (4, [1, 1], 0),
    ],
)
def test_path_count_matches_pieri(n, boundary, expected):
    assert pieri_dimension(n, boundary) == expected
    assert len(enumerate_paths(n, boundary)) == expected


def test_wrong_coset_has_no_paths():
    assert enumerate_paths(3, [1, 1]) == []
    assert pieri_dimension(3, [1, 1]) == 0


def test_enumeration_is_sorted_and_deterministic():
    paths = enumerate_paths(4, [1, 3, 1, 3])
    keys = [tuple(p.coords for p in path.points) for path in paths]
    assert keys == sorted(keys)
    assert [p.format() for p in paths] == [p.format() for p in enumerate_paths(4, [1, 3, 1, 3])]


def test_sl4_alternating_paths():
    formatted = {p.format() for p in enumerate_paths(4, [1, 3, 1, 3])}
    assert formatted == {"0 w1 0 w1 0", "0 w1 w1+w3 w1 0"}


def test_every_enumerated_path_is_dominant_and_typed():
    for path in enumerate_paths(4, [2, 1, 3, 2]):
        assert all(p.is_dominant for p in path.points)
        assert path.type == (2, 1, 3, 2)
        assert path.end.is_zero


def test_open_endpoint():
    w2 = fundamental(4, 2)
    paths = enumerate_paths(4, [1, 1], endpoint=w2)
    assert [p.format() for p in paths] == ["0 w1 w2"]
    assert enumerate_paths(4, [1, 1], endpoint=fundamental(4, 1)) == []


def test_boundary_label_out_of_range():
    with pytest.raises(ValueError, match="outside"):
        enumerate_paths(3, [1, 3])


def test_path_rejects_non_dominant_points():
    with pytest.raises(ValueError, match="not dominant"):
        MinusculePath.from_steps(3, [fundamental(3, 2) - fundamental(3, 1)])


def test_path_rejects_non_minuscule_steps():
    with pytest.raises(ValueError, match="minuscule orbit"):
        parse_points(3, [[0, 0, 0], [2, 0, 0]])


def test_path_must_start_at_zero():
    with pytest.raises(ValueError, match="start at the zero weight"):
        MinusculePath(3, (fundamental(3, 1),))


def test_non_dominant_paths_are_allowed_when_requested():
    path = MinusculePath.from_steps(3, [fundamental(3, 2) - fundamental(3, 1)], dominant=False)
    assert len(path) == 1
    assert path.type == (1,)


def test_path_compare_on_alternating_boundary():
    low, high = enumerate_paths(4, [1, 3, 1, 3])
    assert path_compare(low, high) is Comparison.LESS
    assert path_compare(high, low) is Comparison.GREATER
    assert path_compare(low, low) is Comparison.EQUAL


def test_path_compare_requires_same_type():
    a = enumerate_paths(4, [1, 3, 1, 3])[0]
    b = enumerate_paths(4, [2, 2, 2, 2])[0]
    with pytest.raises(ValueError):
        path_compare(a, b)


def test_random_paths_have_orbit_steps(rng):
    for _ in range(20):
        path = random_minuscule_path(5, 6, rng)
        assert len(path) == 6
        assert all(1 <= k <= 4 for k in path.type)


def test_random_dominant_path(rng):
    path = random_dominant_path(3, [1, 1, 1, 2, 2, 2], rng)
    assert path is not None
    assert path.type == (1, 1, 1, 2, 2, 2)
    assert random_dominant_path(3, [1, 1], rng) is None


def test_gamma_dominance():
    n = 4
    points = [zero(n), -fundamental(n, 1)]
    assert not is_gamma_dominant(points, zero(n))
    assert is_gamma_dominant(points, fundamental(n, 1))
    assert not is_gamma_dominant(points, weight_sum(n, [fundamental(n, 2)] * 2))


def test_sample_paths_is_seeded_and_ordered():
    paths = enumerate_paths(2, [1] * 10)
    picked = sample_paths(paths, 5, random.Random(3))
    assert picked == sample_paths(paths, 5, random.Random(3))
    assert [i for i, _ in picked] == sorted({i for i, _ in picked})
    assert all(paths[i] == p for i, p in picked)
    assert len(sample_paths(paths, 100, random.Random(3))) == len(paths)
    with pytest.raises(ValueError, match="Sample size"):
        sample_paths(paths, 0, random.Random(3))
