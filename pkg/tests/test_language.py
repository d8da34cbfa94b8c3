from __future__ import annotations

from math import gcd

import pytest

from conftest import POLYGONS, POLYGON_IDS
from polybilliard.language import (
    Corridor,
    ResourceLimitError,
    bispecial_words,
    corridor,
    enumerate_language,
    extend,
    extension_counts,
    format_word,
    parse_word,
    right_special_sum,
    reversed_words,
    sample_words,
    verify_difference_identity,
    word_feasible,
)
from polybilliard.polygon import catalog, random_convex_polygon

SQUARE = catalog("square")

# p(1..12), frozen from the enumerator; the square row is also the totient oracle
FROZEN = {
    "square": [4, 12, 28, 52, 92, 140, 212, 300, 412, 540, 708, 892],
    "equilateral": [3, 6, 12, 18, 30, 42, 60, 78, 108, 138, 174, 210],
    "right-isosceles": [3, 6, 10, 18, 28, 38, 54, 74, 96, 122, 156, 194],
    "half-equilateral": [3, 6, 10, 16, 24, 36, 52, 70, 92, 118, 150, 184],
    "random-4gon-seed1": [4, 12, 30, 64, 112, 178, 271, 386, 530, 718, 930, 1184],
    "random-4gon-seed2": [4, 12, 28, 62, 116, 192, 286, 408, 555, 734, 959, 1222],
}


def phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def square_oracle(n: int) -> int:
    return 4 * sum((n - i + 1) * phi(i) for i in range(1, n + 1))


@pytest.fixture(scope="module")
def tables():
    return {str(P): enumerate_language(P, 10) for P in POLYGONS}


def test_square_matches_totient_oracle(backend):
    table = enumerate_language(SQUARE, 16, mode="count")
    assert [table.p(n) for n in range(1, 17)] == [square_oracle(n) for n in range(1, 17)]


@pytest.mark.parametrize("P", POLYGONS, ids=POLYGON_IDS)
def test_frozen_complexity(P, backend):
    table = enumerate_language(P, 12, mode="count")
    assert [table.p(n) for n in range(1, 13)] == FROZEN[str(P)]


def test_table_conventions():
    t = enumerate_language(SQUARE, 4)
    assert t.p(0) == 0 and t.p(1) == 4
    assert t.s(1) == 8 and t.s(3) == 24
    assert t.rows()[-1] == (4, 52, None)
    assert t.language(0) == frozenset({()})
    with pytest.raises(ValueError):
        t.p(5)
    with pytest.raises(ValueError):
        t.s(0)
    with pytest.raises(ValueError):
        enumerate_language(SQUARE, 4, mode="count").language(2)
    with pytest.raises(ValueError):
        enumerate_language(SQUARE, 0)


def test_words_are_lexicographic(tables):
    words = tables["square"].words[4]
    assert words == sorted(words)


def test_extend_examples():
    c = Corridor.start(SQUARE, 0)
    assert extend(c, 2).feasible
    with pytest.raises(ValueError):
        extend(corridor(SQUARE, (0, 1)), 1)
    dead = extend(corridor(SQUARE, (1, 0)), 1)
    assert not dead.feasible
    # an empty window stays empty
    assert not extend(dead, 2).feasible


def test_word_feasible_examples():
    assert word_feasible(SQUARE, (0,))
    assert not word_feasible(SQUARE, (1, 0, 1))
    assert word_feasible(SQUARE, (2, 0, 2))
    assert word_feasible(SQUARE, ())
    assert not word_feasible(SQUARE, (0, 0))
    with pytest.raises(ValueError):
        word_feasible(SQUARE, (4,))


def test_corridor_invariants(any_polygon, tables):
    for w in tables[str(any_polygon)].language(7):
        c = corridor(any_polygon, w)
        assert c.feasible
        c.verify()


def test_debug_mode_checks_every_step(monkeypatch):
    monkeypatch.setenv("POLYBILLIARD_DEBUG", "1")
    P = random_convex_polygon(2)
    for w in sorted(enumerate_language(P, 6).language(6))[:40]:
        assert corridor(P, w).feasible


def test_witness_line_separates_endpoints():
    c = corridor(SQUARE, (0, 2, 0, 2))
    assert c.witness_line() is not None
    assert len(c.segments()) == 4 and len(c.frames()) == 3


def test_extension_examples():
    e = extension_counts(SQUARE, (0,))
    assert (e.m_l, e.m_r, e.m_b) == (3, 3, 7)
    eq = catalog("equilateral")
    e = extension_counts(eq, (0,))
    assert (e.m_l, e.m_r) == (2, 2)
    empty = extension_counts(SQUARE, ())
    assert (empty.m_l, empty.m_r, empty.m_b) == (4, 4, 12)
    with pytest.raises(ValueError):
        extension_counts(SQUARE, (1, 0, 1))


def test_m_b_brute_force():
    pairs = [(x, y) for x in range(4) for y in range(4) if word_feasible(SQUARE, (x, 0, y))]
    assert len(pairs) == 7
    assert (1, 1) not in pairs and (3, 3) not in pairs


def test_bispecial_examples(tables):
    t = tables["square"]
    b1 = bispecial_words(SQUARE, 1, t)
    assert [e.word for e in b1] == [(0,), (1,), (2,), (3,)]
    assert all((e.m_l, e.m_r, e.m_b) == (3, 3, 7) for e in b1)
    (b0,) = bispecial_words(SQUARE, 0, t)
    assert (b0.word, b0.m_l, b0.m_r, b0.m_b) == ((), 4, 4, 12)


def test_bispecial_m_b_dominates(any_polygon, tables):
    t = tables[str(any_polygon)]
    for n in range(0, 7):
        for e in bispecial_words(any_polygon, n, t):
            assert e.m_b >= max(e.m_l, e.m_r)


def test_difference_identity_square_n1(tables):
    rep = verify_difference_identity(SQUARE, 1, tables["square"])
    assert (rep.lhs, rep.rhs, rep.holds) == (8, 8, True)
    with pytest.raises(ValueError):
        verify_difference_identity(SQUARE, 0)


def test_difference_identity_small(any_polygon, tables):
    t = tables[str(any_polygon)]
    for n in range(1, 9):
        assert verify_difference_identity(any_polygon, n, t).holds


def test_factorial_and_extendable(any_polygon, tables):
    t = tables[str(any_polygon)]
    for n in range(1, 10):
        prev, cur, nxt = t.language(n - 1), t.language(n), t.language(n + 1)
        for w in cur:
            assert w[1:] in prev and w[:-1] in prev
        lefts = {w[1:] for w in nxt}
        rights = {w[:-1] for w in nxt}
        assert lefts == cur and rights == cur


def test_reversal_closure(any_polygon, tables):
    t = tables[str(any_polygon)]
    for n in range(1, 11):
        assert reversed_words(t.language(n)) == t.language(n)


def test_right_special_sum(any_polygon, tables):
    t = tables[str(any_polygon)]
    for n in range(1, 10):
        assert right_special_sum(t, n) == t.s(n)


def test_square_quarter_turn_symmetry(tables):
    t = tables["square"]
    for n in range(1, 9):
        assert {tuple((a + 1) % 4 for a in w) for w in t.language(n)} == t.language(n)


def test_monotone_windows(any_polygon, tables):
    t = tables[str(any_polygon)]
    for w in t.language(6):
        for b in range(any_polygon.r):
            if b != w[-1] and word_feasible(any_polygon, w + (b,)):
                assert word_feasible(any_polygon, w)


def test_sampling_sound(any_polygon, tables, backend):
    t = tables[str(any_polygon)]
    words = sample_words(any_polygon, 8, 2000, seed=3)
    assert words and words <= t.language(8)


def test_sampling_saturates_square():
    # L(5) has 92 words and dense exact sampling finds all of them
    assert sample_words(SQUARE, 5, 20000, seed=1) == enumerate_language(SQUARE, 5).language(5)
    assert sample_words(SQUARE, 2, 0) == set()
    assert sample_words(SQUARE, 2, 500, seed=9) <= enumerate_language(SQUARE, 2).language(2)


def test_sampling_deterministic():
    P = random_convex_polygon(2)
    assert sample_words(P, 6, 300, seed=4) == sample_words(P, 6, 300, seed=4)


def test_threads_match_serial():
    P = random_convex_polygon(1)
    a = enumerate_language(P, 9, threads=2)
    b = enumerate_language(P, 9)
    assert a.counts == b.counts and a.words == b.words


def test_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        enumerate_language(SQUARE, 10, cap=50)
    monkeypatch.setenv("BILLIARD_MAX_WORDS", "30")
    with pytest.raises(ResourceLimitError):
        enumerate_language(SQUARE, 6)


def test_word_text():
    assert format_word((0, 2, 1)) == "0,2,1"
    assert parse_word("0,2,1") == (0, 2, 1) and parse_word("") == ()
