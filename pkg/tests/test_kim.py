"""Tests for the SL(4) square and H/I moves."""

from fractions import Fraction

import pytest

from src.core.evaluation import evaluate, proportionality
from src.core.kim import KimPatternError, KimSite, find_kim_sites, kim_rewrite
from src.core.littelmann import enumerate_paths
from src.core.triangles import from_path, to_web
from src.core.webs import boundary, isomorphic, validate


def _proportional(a, b) -> bool:
    return proportionality(evaluate(a), evaluate(b)) not in (None, Fraction(0))


def test_square_site_is_found(kim_square):
    web, corners, edges = kim_square
    [site] = [s for s in find_kim_sites(web) if s.kind == "square"]
    assert set(site.vertices) == set(corners)
    assert set(site.edges) == set(edges)


def test_square_move_reverses_the_square(kim_square):
    web, corners, edges = kim_square
    moved = kim_rewrite(web, KimSite("square", corners, edges))
    assert validate(moved).ok
    assert boundary(moved) == boundary(web)
    for e in edges:
        assert (moved.edges[e].tail, moved.edges[e].head) == (web.edges[e].head, web.edges[e].tail)
    assert _proportional(moved, web)


def test_square_move_is_an_involution(kim_square):
    web, corners, edges = kim_square
    site = KimSite("square", corners, edges)
    assert isomorphic(kim_rewrite(kim_rewrite(web, site), site), web)


def test_ih_site_is_found(kim_ih):
    web, mid = kim_ih
    sites = find_kim_sites(web)
    assert [(s.kind, s.edges) for s in sites] == [("ih", (mid,))]


def test_ih_move_preserves_the_invariant(kim_ih):
    web, mid = kim_ih
    site = KimSite("ih", (web.edges[mid].tail, web.edges[mid].head), (mid,))
    moved = kim_rewrite(web, site)
    assert validate(moved).ok
    assert boundary(moved) == boundary(web) == (3, 3, 3, 3)
    assert not evaluate(web).is_zero
    assert _proportional(moved, web)
    assert not isomorphic(moved, web)


def test_ih_site_must_be_labelled_two(kim_ih):
    web, mid = kim_ih
    leg = next(e for e in web.edges if e != mid)
    with pytest.raises(KimPatternError, match="not labelled 2"):
        kim_rewrite(web, KimSite("ih", (0, 1), (leg,)))


def test_square_site_must_have_two_legs(kim_ih):
    web, mid = kim_ih
    with pytest.raises(KimPatternError):
        kim_rewrite(web, KimSite("square", (0, 1, 2, 3), (mid, 0, 1, 2)))


def test_moves_need_sl4(cup):
    assert find_kim_sites(cup) == []


def test_moves_on_basis_webs_keep_the_invariant():
    checked = 0
    for labels in ([1] * 8, [2] * 6, [1, 1, 1, 1, 2, 2], [1, 3] * 3):
        for path in enumerate_paths(4, labels):
            web = to_web(from_path(path))
            for site in find_kim_sites(web):
                moved = kim_rewrite(web, site)
                assert validate(moved).ok
                assert boundary(moved) == boundary(web)
                assert _proportional(moved, web)
                checked += 1
    assert checked > 0
