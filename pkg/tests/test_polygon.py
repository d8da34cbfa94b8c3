from __future__ import annotations

from fractions import Fraction

import pytest

from polybilliard.polygon import (
    Polygon,
    PolygonError,
    catalog,
    dumps_polygon,
    loads_polygon,
    random_convex_polygon,
    read_polygon,
    write_polygon,
)
from polybilliard.qfield import QuadScalar, point


def make(*coords, d=0):
    return Polygon(tuple(point(x, y) for x, y in coords), d)


@pytest.mark.parametrize(
    "coords, code",
    [
        ([(0, 0), (1, 0)], "too-few-vertices"),
        ([(0, 0), (1, 0), (1, 0), (0, 1)], "repeated-vertex"),
        ([(0, 0), (1, 0), (2, 0), (0, 1)], "collinear"),
        ([(0, 0), (0, 1), (1, 1), (1, 0)], "orientation"),
        ([(0, 0), (2, 0), (1, Fraction(1, 2)), (1, 2), (0, 1)], "non-convex"),
        # a pentagram: every turn is a left turn but it winds twice
        ([(0, 0), (2, 1), (-1, 1), (1, 0), (0, 2)], "self-intersecting"),
    ],
)
def test_validation_codes(coords, code):
    with pytest.raises(PolygonError) as err:
        make(*coords)
    assert err.value.code == code


def test_field_checks():
    with pytest.raises(PolygonError) as err:
        Polygon((point(0, 0), point(1, 0), point(0, QuadScalar.sqrt(2))), 3)
    assert err.value.code == "field"
    with pytest.raises(PolygonError):
        Polygon((point(0, 0), point(1, 0), point(0, 1)), 4)


def test_vertex_zero_is_lexicographic_minimum():
    P = make((1, 1), (0, 1), (0, 0), (1, 0))
    assert P.vertices[0] == point(0, 0)
    assert P.edge(0) == (point(0, 0), point(1, 0))


def test_catalog_shapes():
    sq = catalog("square")
    assert sq.r == 4 and sq.squared_side_lengths() == [1, 1, 1, 1]
    eq = catalog("equilateral")
    assert eq.d == 3 and eq.squared_side_lengths() == [1, 1, 1]
    ri = catalog("right-isosceles")
    assert sorted(ri.squared_side_lengths()) == [1, 1, 2]
    he = catalog("half-equilateral")
    assert sorted(he.squared_side_lengths()) == [1, 3, 4]
    with pytest.raises(KeyError):
        catalog("hexagon")


@pytest.mark.parametrize("name", ["square", "equilateral", "right-isosceles", "half-equilateral"])
def test_edge_reflections_fix_their_edge(name):
    P = catalog(name)
    for i in range(P.r):
        f = P.edge_reflection(i)
        p, q = P.edge(i)
        assert f(p) == p and f(q) == q and f.det() == -1
    with pytest.raises(IndexError):
        P.edge(P.r)


def test_random_polygons_deterministic():
    a, b = random_convex_polygon(1), random_convex_polygon(1)
    assert a == b and a.r == 4
    assert random_convex_polygon(2) != a
    assert random_convex_polygon(5, r=6).r == 6


def test_file_round_trip(tmp_path):
    for P in [catalog("equilateral"), random_convex_polygon(2)]:
        path = tmp_path / "p.poly"
        write_polygon(P, path)
        Q = read_polygon(path)
        assert Q.vertices == P.vertices and Q.d == P.d


def test_file_comments_and_sqrt():
    text = """# half of an equilateral triangle
QFIELD 3
V 0 0   # origin
V 1 0
V 0 0+1/1*sqrt(3)
"""
    assert loads_polygon(text).vertices == catalog("half-equilateral").vertices


@pytest.mark.parametrize(
    "text, code",
    [
        ("V 0 0\n", "syntax"),
        ("QFIELD 4\nV 0 0\nV 1 0\nV 0 1\n", "field"),
        ("QFIELD 0\nV 0 0\nV 1\n", "syntax"),
        ("QFIELD 0\nV 0 0\nV 1 0\nV 0 1/0\n", "syntax"),
        ("QFIELD 0\nV 0 0\nV 0 1\nV 1 0\n", "orientation"),
        ("QFIELD 2\nV 0 0\nV 1 0\nV 0 1+1/1*sqrt(3)\n", "syntax"),
        ("", "syntax"),
    ],
)
def test_file_errors(text, code):
    with pytest.raises(PolygonError) as err:
        loads_polygon(text)
    assert err.value.code == code


def test_dumps_format():
    assert dumps_polygon(catalog("right-isosceles")) == "QFIELD 0\nV 0/1 0/1\nV 1/1 0/1\nV 0/1 1/1\n"
