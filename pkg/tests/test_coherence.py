"""Tests for weighted geodesics and the coherence conditions."""

import pytest

from src.core.coherence import (
    IncoherentWebError,
    associated_path,
    distance_antichain,
    distances_from,
    geodesic_witness,
    is_coherent,
    simple_path_minima,
)
from src.core.littelmann import enumerate_paths, random_dominant_path
from src.core.triangles import from_path, to_web
from src.core.webs import Web, WebCorruptionError, boundary, dual_diskoid, rotate_marking
from src.core.weights import fundamental, zero


def _face_with_sector(web: Web, sector: int) -> int:
    return next(i for i, f in enumerate(web.faces) if sector in f.sectors)


def test_square_distances(square_web):
    dual = dual_diskoid(square_web)
    [centre] = dual.internal
    assert distance_antichain(dual, dual.marked, centre) == (fundamental(4, 2),)
    top = _face_with_sector(square_web, 2)
    w1, w3 = fundamental(4, 1), fundamental(4, 3)
    assert distance_antichain(dual, dual.marked, top) == (w1 + w3,)
    assert distance_antichain(dual, dual.marked, dual.marked) == (zero(4),)


def test_square_fails_only_the_geodesic_cover_condition(square_web):
    report = is_coherent(square_web)
    assert report.cond1
    assert not report.cond2
    assert report.cond3
    assert not report.coherent
    assert report.associated is None
    assert "not on a geodesic" in report.describe()


def test_square_associated_path(square_web):
    path = associated_path(square_web)
    assert path.format() == "0 w1 w1+w3 w1 0"
    assert path.type == boundary(square_web)


def test_cup_reads_the_dual_path(cup):
    path = associated_path(cup)
    assert path.format() == "0 w2 0"
    assert path.type == boundary(cup)
    assert is_coherent(cup).coherent


def test_geodesic_witness_ends_at_the_target(square_web):
    dual = dual_diskoid(square_web)
    [centre] = dual.internal
    trail = geodesic_witness(dual, dual.marked, centre)
    assert trail[0] == dual.marked
    assert trail[-1] == centre


def test_geodesics_have_geodesic_subpaths(square_web):
    dual = dual_diskoid(square_web)
    top = _face_with_sector(square_web, 2)
    trail = geodesic_witness(dual, dual.marked, top)
    from_marked = distances_from(dual, dual.marked)
    for i, face in enumerate(trail):
        [head] = from_marked[face]
        [rest] = distances_from(dual, face)[top]
        [total] = from_marked[top]
        assert head + rest == total, f"split at position {i}"


@pytest.mark.parametrize(
    ("n", "labels"),
    [(4, [1, 3, 1, 3]), (4, [2, 2, 2, 2]), (3, [1, 1, 1, 2, 2, 2]), (2, [1] * 6)],
)
def test_antichains_match_the_simple_path_oracle(n, labels):
    for path in enumerate_paths(n, labels):
        dual = dual_diskoid(to_web(from_path(path)))
        for dst in dual.graph.nodes:
            assert distance_antichain(dual, dual.marked, dst) == simple_path_minima(
                dual, dual.marked, dst
            )


@pytest.mark.parametrize(
    ("n", "labels"),
    [(2, [1] * 8), (3, [1, 1, 1]), (3, [1, 2, 1, 2]), (3, [1, 1, 1, 1, 1, 1]), (4, [2, 2, 2, 2])],
)
def test_basis_webs_are_coherent_with_their_path(n, labels):
    for path in enumerate_paths(n, labels):
        web = to_web(from_path(path))
        report = is_coherent(web)
        assert report.coherent, report.describe()
        assert report.associated == path


@pytest.mark.parametrize(("n", "labels"), [(2, [1] * 6), (3, [1, 1, 1, 2, 2, 2])])
def test_rotated_marking_keeps_coherence(n, labels):
    for path in enumerate_paths(n, labels):
        web = to_web(from_path(path))
        for k in range(len(labels)):
            rotated = rotate_marking(web, k)
            assert associated_path(rotated).type == boundary(rotated)


def test_uniform_ih_web_is_incoherent(kim_ih):
    web, _ = kim_ih
    report = is_coherent(web)
    assert not report.cond1
    assert not report.coherent
    with pytest.raises(IncoherentWebError, match="antichain"):
        associated_path(web)


def test_closed_empty_web_has_trivial_path():
    path = associated_path(Web(3, {}, {}, ()))
    assert len(path) == 0


def test_unreachable_face_raises():
    dual = dual_diskoid(Web(3, {}, {}, ()))
    with pytest.raises(WebCorruptionError, match="unreachable"):
        distance_antichain(dual, 0, 5)


def test_random_basis_webs_are_coherent(rng):
    checked = 0
    while checked < 300:
        n = rng.randint(2, 5)
        labels = [rng.randint(1, n - 1) for _ in range(rng.randint(1, 6))]
        path = random_dominant_path(n, labels, rng)
        if path is None:
            continue
        web = to_web(from_path(path))
        report = is_coherent(web)
        assert report.coherent, f"{labels}: {report.describe()}"
        assert associated_path(web) == path
        checked += 1
