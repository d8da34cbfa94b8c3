from __future__ import annotations

from itertools import product
from math import gcd

import pytest

from conftest import POLYGONS, POLYGON_IDS
from polybilliard.diagonals import (
    GeneralizedDiagonal,
    check_diagonal,
    diagonals_with_code,
    enumerate_diagonals,
    gd,
    index_of,
    verify_diagonal_increment,
    verify_geometric_lemma,
    verify_theorem1,
)
from polybilliard.language import ResourceLimitError, enumerate_language
from polybilliard.polygon import catalog

SQUARE = catalog("square")

# N_c(0..5), frozen from the diagonal counter
FROZEN_NC = {
    "square": [4, 8, 16, 24, 40, 48],
    "equilateral": [3, 3, 6, 6, 12, 12],
    "right-isosceles": [3, 3, 4, 8, 10, 10],
    "half-equilateral": [3, 3, 4, 6, 8, 12],
    "random-4gon-seed1": [4, 8, 18, 34, 48, 66],
    "random-4gon-seed2": [4, 8, 16, 34, 54, 76],
}


def phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@pytest.fixture(scope="module")
def tables():
    return {str(P): enumerate_language(P, 9) for P in POLYGONS}


def test_square_examples():
    t = enumerate_diagonals(SQUARE, 2)
    assert t.exact == [4, 4, 8]
    assert [t.Nc(j) for j in range(3)] == [4, 8, 16]
    assert enumerate_diagonals(catalog("equilateral"), 1).exact[1] == 0


def test_square_lattice_oracle(backend):
    t = enumerate_diagonals(SQUARE, 20)
    assert t.exact[1:] == [4 * phi(j + 1) for j in range(1, 21)]


@pytest.mark.parametrize("P", POLYGONS, ids=POLYGON_IDS)
def test_frozen_Nc(P, backend):
    t = enumerate_diagonals(P, 5)
    assert [t.Nc(j) for j in range(6)] == FROZEN_NC[str(P)]


def test_listing_is_geometrically_exact(any_polygon):
    t = enumerate_diagonals(any_polygon, 6, listing=True)
    assert len(t.diagonals) == sum(t.exact[1:])
    keys = [(g.start, g.word, g.end_vertex) for g in t.diagonals]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for g in t.diagonals:
        check_diagonal(any_polygon, g)


def test_completeness_against_brute_force(any_polygon):
    """Every (start, code, end) triple that passes the exact test is found."""
    P = any_polygon
    found = {(g.start, g.word, g.end_vertex) for g in enumerate_diagonals(P, 4, listing=True).diagonals}
    brute = set()
    for k in range(0, 4):
        for v in product(range(P.r), repeat=k):
            if any(a == b for a, b in zip(v, v[1:])):
                continue
            for g in _candidates(P, v):
                try:
                    check_diagonal(P, g)
                except AssertionError:
                    continue
                brute.add((g.start, g.word, g.end_vertex))
    assert brute == found


def _candidates(P, v):
    from polybilliard.diagonals import _frames

    last = _frames(P, v)[-1]
    for s in range(P.r):
        for i in range(P.r):
            yield GeneralizedDiagonal(s, v, i, last(P.vertices[i]))


def test_reversal_pairs(any_polygon):
    t = enumerate_diagonals(any_polygon, 6, listing=True)
    keys = {(g.start, g.word, g.end_vertex) for g in t.diagonals}
    assert {(e, w[::-1], s) for s, w, e in keys} == keys


def test_square_start_vertices_balanced():
    t = enumerate_diagonals(SQUARE, 8, listing=True)
    per = [sum(1 for g in t.diagonals if g.start == s) for s in range(4)]
    assert len(set(per)) == 1


def test_gd_examples():
    assert gd(SQUARE, (0,)) == 2
    assert gd(SQUARE, ()) == 4
    assert gd(SQUARE, (1, 0, 1)) == 0
    assert index_of(SQUARE, (0,)) == (2, 2, 2)
    assert index_of(SQUARE, ()) == (3, 3, 4)
    with pytest.raises(ValueError):
        index_of(catalog("right-isosceles"), (0, 1, 0, 1, 0))


def test_gd_matches_listing(any_polygon, tables):
    P = any_polygon
    t = enumerate_diagonals(P, 5, listing=True)
    for w in tables[str(P)].language(3):
        listed = [g for g in t.diagonals if g.word == w]
        assert gd(P, w) == len(listed)
        assert sorted(diagonals_with_code(P, w), key=lambda g: (g.start, g.end_vertex)) == listed


def test_gd_reversal(any_polygon, tables):
    P = any_polygon
    for n in range(0, 7):
        for w in tables[str(P)].language(n):
            assert gd(P, w) == gd(P, w[::-1])


def test_gd_zero_forces_lemma_shape(any_polygon, tables):
    from polybilliard.language import bispecial_words

    for n in range(1, 6):
        for e in bispecial_words(any_polygon, n, tables[str(any_polygon)]):
            if gd(any_polygon, e.word) == 0:
                assert e.m_b == e.m_l + e.m_r - 1


def test_lemma_square_n1(tables):
    rep = verify_geometric_lemma(SQUARE, 1, tables["square"])
    assert rep.holds and rep.lhs == rep.rhs == 28


def test_lemma_small(any_polygon, tables):
    for n in range(1, 8):
        assert verify_geometric_lemma(any_polygon, n, tables[str(any_polygon)]).holds


def test_lemma_at_length_zero_is_off_by_one(any_polygon, tables):
    # the empty word has m_b = r(r - 1) while the right side gives r(r - 1) - 1
    P = any_polygon
    rep = verify_geometric_lemma(P, 0, tables[str(P)])
    r = P.r
    assert not rep.holds
    assert rep.lhs == r * (r - 1) and rep.lhs - rep.rhs == 1


def test_diagonal_increment(any_polygon, tables):
    d = enumerate_diagonals(any_polygon, 8)
    for n in range(0, 7):
        assert verify_diagonal_increment(any_polygon, n, tables[str(any_polygon)], d).holds


def test_theorem1_small(any_polygon):
    v = verify_theorem1(any_polygon, 10)
    assert v.passed and len(v.checks) == 10
    sq = verify_theorem1(SQUARE, 3)
    assert [(c.lhs, c.rhs) for c in sq.checks] == [(4, 4), (12, 12), (28, 28)]


def test_threads_and_cap():
    assert enumerate_diagonals(SQUARE, 9, threads=3).exact == enumerate_diagonals(SQUARE, 9).exact
    with pytest.raises(ResourceLimitError):
        enumerate_diagonals(SQUARE, 12, cap=20)
    with pytest.raises(ValueError):
        enumerate_diagonals(SQUARE, -1)
    with pytest.raises(ValueError):
        enumerate_diagonals(SQUARE, 2).Nc(3)
