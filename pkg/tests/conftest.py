"""Shared fixtures: small hand-built webs and a seeded random source."""

import random

import pytest

from src.core.webs import Web, WebBuilder


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def square_web() -> Web:
    """SL(4) web with boundary w1,w3,w1,w3: a square with two w2 sides."""
    wb = WebBuilder(4)
    a, b, c, d = (wb.add_vertex() for _ in range(4))  # NE, SW, NW, SE corners
    sw, nw, ne, se = (wb.add_vertex() for _ in range(4))
    wb.add_edge(a, d, 1, tail_angle=270, head_angle=90)
    wb.add_edge(a, c, 2, tail_angle=180, head_angle=0)
    wb.add_edge(a, ne, 1, tail_angle=45)
    wb.add_edge(b, d, 2, tail_angle=0, head_angle=180)
    wb.add_edge(b, c, 1, tail_angle=90, head_angle=270)
    wb.add_edge(b, sw, 1, tail_angle=225)
    wb.add_edge(nw, c, 1, head_angle=135)
    wb.add_edge(se, d, 1, head_angle=315)
    return wb.build([sw, nw, ne, se])


@pytest.fixture
def cup() -> Web:
    """A single SL(3) arc; reads w2,w1 from the marked point."""
    wb = WebBuilder(3)
    x, y = wb.add_vertex(), wb.add_vertex()
    wb.add_edge(x, y, 1)
    return wb.build([x, y])


@pytest.fixture
def kim_square() -> tuple[Web, tuple[int, ...], tuple[int, ...]]:
    """Square of w1 edges with alternating sources and sinks and four w2 legs."""
    wb = WebBuilder(4)
    c0, c1, c2, c3 = (wb.add_vertex() for _ in range(4))  # (0,0) (1,0) (1,1) (0,1)
    b0, b1, b2, b3 = (wb.add_vertex() for _ in range(4))
    edges = (
        wb.add_edge(c0, c1, 1, tail_angle=0, head_angle=180),
        wb.add_edge(c0, c3, 1, tail_angle=90, head_angle=270),
        wb.add_edge(c2, c1, 1, tail_angle=270, head_angle=90),
        wb.add_edge(c2, c3, 1, tail_angle=180, head_angle=0),
    )
    wb.add_edge(c0, b0, 2, tail_angle=225)
    wb.add_edge(c1, b1, 2, tail_angle=315)
    wb.add_edge(c2, b2, 2, tail_angle=45)
    wb.add_edge(c3, b3, 2, tail_angle=135)
    return wb.build([b0, b3, b2, b1]), (c0, c1, c2, c3), edges


@pytest.fixture
def kim_ih() -> tuple[Web, int]:
    """Vertical w2 edge whose four w1 legs all point inward."""
    wb = WebBuilder(4)
    u, v = wb.add_vertex(), wb.add_vertex()
    b_sw, b_se, b_ne, b_nw = (wb.add_vertex() for _ in range(4))
    wb.add_edge(b_sw, u, 1, head_angle=225)
    wb.add_edge(b_se, u, 1, head_angle=315)
    wb.add_edge(b_ne, v, 1, head_angle=45)
    wb.add_edge(b_nw, v, 1, head_angle=135)
    mid = wb.add_edge(u, v, 2, tail_angle=90, head_angle=270)
    return wb.build([b_sw, b_nw, b_ne, b_se]), mid
