"""Coding language of a convex polygon by exact beam tracing through unfoldings.

A word ``w_0 w_1 ... w_k`` is feasible iff some straight line in the
unfolded plane crosses the open edge copies ``S_0, ..., S_k`` of its
corridor.  Crossing order comes for free: each copy is convex, so a line
meeting two of its open edges enters through one and leaves through the
other.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import kernel
from .polygon import Polygon
from .qfield import AffineIsometry, Point2, QuadScalar, scalar_sign
from .reports import IdentityReport

Word = tuple[int, ...]

DEFAULT_MAX_WORDS = 20_000_000


class ResourceLimitError(RuntimeError):
    """A search produced more objects than the configured cap."""


def word_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("BILLIARD_MAX_WORDS")
    return int(env) if env else DEFAULT_MAX_WORDS


def check_word(polygon: Polygon, word: Sequence[int]) -> Word:
    word = tuple(int(a) for a in word)
    for a in word:
        if not 0 <= a < polygon.r:
            raise ValueError(f"letter {a} is not an edge of a {polygon.r}-gon")
    return word


def format_word(word: Word) -> str:
    return ",".join(str(a) for a in word)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(a) for a in text.split(","))


def _debug() -> bool:
    return os.environ.get("POLYBILLIARD_DEBUG", "") not in ("", "0")


# -- corridors -----------------------------------------------------------------


@dataclass(frozen=True)
class Corridor:
    """Unfolded corridor of a word together with its window of lines.

    ``feasible`` is False for the empty-window marker returned by
    :func:`extend` when no line crosses all edge copies.
    """

    polygon: Polygon
    word: Word
    feasible: bool = True
    _frame: tuple = field(default=None, repr=False, compare=False)
    _positive: bool = field(default=True, repr=False, compare=False)
    _images: tuple = field(default=None, repr=False, compare=False)
    _window: object = field(default=None, repr=False, compare=False)
    _left: tuple = field(default=None, repr=False, compare=False)
    _right: tuple = field(default=None, repr=False, compare=False)

    @classmethod
    def start(cls, polygon: Polygon, edge: int) -> Corridor:
        check_word(polygon, (edge,))
        kp = kernel.to_kernel(polygon)
        r = polygon.r
        return cls(
            polygon,
            (edge,),
            True,
            kp.identity,
            True,
            tuple(kp.verts),
            None,
            kp.verts[edge],
            kp.verts[(edge + 1) % r],
        )

    def frames(self) -> list[AffineIsometry]:
        """Exact frames F_0..F_k; copy C_j is F_j applied to the polygon."""
        out = [AffineIsometry.identity()]
        for b in self.word[1:-1]:
            out.append(out[-1] @ self.polygon.edge_reflection(b))
        return out

    def segments(self) -> list[tuple[Point2, Point2]]:
        """Edge copies S_0..S_k as (left, right) endpoint pairs."""
        frames = self.frames()
        P = self.polygon
        first = P.edge(self.word[0])
        segs = [(first[0], first[1])]
        for j, b in enumerate(self.word[1:]):
            f = frames[j]
            p, q = (f(v) for v in P.edge(b))
            segs.append((q, p) if f.det() > 0 else (p, q))
        return segs

    def witness_line(self) -> tuple | None:
        """Integer 3-vector (a, b, c) strictly inside the window, if any."""
        if not self.feasible or self._window is None:
            return None
        verts = self._window[1]
        return tuple(sum(v[t] for v in verts) for t in range(6))

    def verify(self) -> None:
        """Check the corridor invariants exactly; raise AssertionError otherwise."""
        frames = self.frames()
        for f in frames:
            assert f.is_orthogonal(), "frame is not an isometry"
        for j, b in enumerate(self.word[1:-1], start=1):
            # C_j is the reflection of C_{j-1} across their common edge S_j
            prev = frames[j - 1]
            shared = {prev(v) for v in self.polygon.edge(b)}
            cur = set(frames[j](v) for v in self.polygon.vertices)
            assert shared <= cur, "consecutive copies do not share their edge"
        if self.feasible and len(self.word) >= 2:
            _check_crossing_order(self)


def _scalar(a: int, b: int, d: int) -> QuadScalar:
    return QuadScalar(a) if b == 0 or d == 0 else QuadScalar(a, b, d)


def _check_crossing_order(c: Corridor) -> None:
    """A window line meets the edge copies strictly inside, in index order."""
    h = c.witness_line()
    d = c.polygon.d
    a, b, cc = (_scalar(h[t], h[t + 1], d) for t in (0, 2, 4))
    direction = Point2(-b, a)
    params = []
    for left, right in c.segments():
        fl = a * left.x + b * left.y + cc
        fr = a * right.x + b * right.y + cc
        assert scalar_sign(fl) > 0 > scalar_sign(fr), "window line misses an edge copy"
        x = left + (right - left).scale(fl / (fl - fr))
        params.append(direction.dot(x))
    signs = {scalar_sign(t - s) for s, t in zip(params, params[1:])}
    assert len(signs) == 1 and 0 not in signs, "edge copies crossed out of order"


def extend(corridor: Corridor, next_edge: int) -> Corridor:
    """Append edge ``next_edge`` to the corridor and shrink its window."""
    P = corridor.polygon
    check_word(P, (next_edge,))
    if next_edge == corridor.word[-1]:
        raise ValueError("a chord cannot hit the same edge twice in a row")
    word = corridor.word + (next_edge,)
    if not corridor.feasible:
        return Corridor(P, word, False)
    K = kernel.active
    kp = kernel.to_kernel(P)
    d, r = P.d, P.r
    left, right = K._segment(list(corridor._images), next_edge, r, corridor._positive)
    if corridor._window is None:
        win = K.window_init(
            [corridor._left, K.neg(corridor._right), left, K.neg(right)], d
        )
    else:
        win = corridor._window
        if left != corridor._left:
            win = K.window_clip(win, left, d)
        if win is not None and right != corridor._right:
            win = K.window_clip(win, K.neg(right), d)
    if win is None:
        return Corridor(P, word, False)
    frame = K.compose(corridor._frame, kp.refl[next_edge], d)
    images = tuple(K.apply_map(frame, v, d) for v in kp.verts)
    out = Corridor(P, word, True, frame, not corridor._positive, images, win, left, right)
    if _debug():
        out.verify()
    return out


def corridor(polygon: Polygon, word: Sequence[int]) -> Corridor:
    word = check_word(polygon, word)
    if not word:
        raise ValueError("a corridor needs at least one edge")
    c = Corridor.start(polygon, word[0])
    for b in word[1:]:
        c = extend(c, b)
    return c


def word_feasible(polygon: Polygon, word: Sequence[int]) -> bool:
    """True iff some billiard orbit hits the edges of ``word`` in order.

    Orbits through a vertex do not count.  The empty word is feasible.
    """
    word = check_word(polygon, word)
    if len(word) <= 1:
        return True
    kp = kernel.to_kernel(polygon)
    return kernel.active.corridor_window(kp, word) is not None


# -- the language table --------------------------------------------------------


@dataclass
class LanguageTable:
    """p(n) for 1 <= n <= n_max, and the words themselves in store mode.

    ``p(0)`` is 0 by convention, although the empty word is the only word of
    length 0.
    """

    polygon: Polygon
    n_max: int
    counts: list[int]
    words: list[list[Word]] | None = None

    def p(self, n: int) -> int:
        if n == 0:
            return 0
        if not 1 <= n <= self.n_max:
            raise ValueError(f"p({n}) is outside the table (n_max={self.n_max})")
        return self.counts[n]

    def s(self, n: int) -> int:
        """s(n) = p(n+1) - p(n), defined for n >= 1."""
        if n < 1:
            raise ValueError("s(n) is defined for n >= 1")
        return self.p(n + 1) - self.p(n)

    def language(self, n: int) -> frozenset[Word]:
        if self.words is None:
            raise ValueError("words were not stored (count mode)")
        return self._sets[n]

    @cached_property
    def _sets(self) -> dict[int, frozenset[Word]]:
        out = {0: frozenset({()})}
        for n in range(1, self.n_max + 1):
            out[n] = frozenset(self.words[n])
        return out

    def rows(self) -> list[tuple[int, int, int | None]]:
        out = []
        for n in range(1, self.n_max + 1):
            s = self.s(n) if n < self.n_max else None
            out.append((n, self.p(n), s))
        return out


def _language_branch(args):
    polygon, n_max, store, cap, letter = args
    kp = kernel.to_kernel(polygon)
    return kernel.active.language(kp, n_max, store, cap, first=(letter,))


def enumerate_language(
    polygon: Polygon,
    n_max: int,
    mode: str = "store",
    cap: int | None = None,
    threads: int = 1,
) -> LanguageTable:
    """Exact p(n) for n <= n_max by depth-first search with window pruning."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if mode not in ("store", "count"):
        raise ValueError(f"mode must be 'store' or 'count', not {mode!r}")
    store = mode == "store"
    cap = word_cap(cap)
    kp = kernel.to_kernel(polygon)
    try:
        if threads > 1 and polygon.r > 1:
            jobs = [(polygon, n_max, store, cap, a) for a in range(polygon.r)]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(_language_branch, jobs))
            counts = [sum(c[n] for c, _ in parts) for n in range(n_max + 1)]
            if sum(counts) > cap:
                raise kernel.CapExceeded(sum(counts))
            words = None
            if store:
                words = [[w for _, ws in parts for w in ws[n]] for n in range(n_max + 1)]
        else:
            counts, words = kernel.active.language(kp, n_max, store, cap)
    except kernel.CapExceeded as exc:
        raise ResourceLimitError(
            f"word cap {cap} exceeded while enumerating {polygon} up to n={n_max}"
        ) from exc
    return LanguageTable(polygon, n_max, list(counts), words)


# -- extensions and bispecial words -------------------------------------------


@dataclass(frozen=True)
class Extensions:
    word: Word
    m_l: int
    m_r: int
    m_b: int


class _Oracle:
    """Membership in L(n), from a stored table when it is deep enough."""

    def __init__(self, polygon: Polygon, table: LanguageTable | None, depth: int):
        self.polygon = polygon
        self.table = table if table is not None and table.words is not None and table.n_max >= depth else None

    def __call__(self, word: Word) -> bool:
        if self.table is not None:
            return word in self.table.language(len(word))
        return word_feasible(self.polygon, word)


def extension_counts(
    polygon: Polygon, v: Sequence[int], table: LanguageTable | None = None
) -> Extensions:
    """(m_l, m_r, m_b) of a feasible word ``v``."""
    v = check_word(polygon, v)
    feasible = _Oracle(polygon, table, len(v) + 2)
    if not feasible(v):
        raise ValueError(f"word {format_word(v)} is not in the language")
    A = range(polygon.r)
    lefts = [a for a in A if feasible((a,) + v)]
    rights = [b for b in A if feasible(v + (b,))]
    both = sum(1 for a in lefts for b in rights if feasible((a,) + v + (b,)))
    return Extensions(v, len(lefts), len(rights), both)


def bispecial_words(
    polygon: Polygon, n: int, table: LanguageTable | None = None
) -> list[Extensions]:
    """Words of length n with m_l > 1 and m_r > 1, in lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if table is None or table.words is None or table.n_max < n + 2:
        table = enumerate_language(polygon, n + 2)
    words = sorted(table.language(n)) if n else [()]
    out = []
    for v in words:
        ext = extension_counts(polygon, v, table)
        if ext.m_l > 1 and ext.m_r > 1:
            out.append(ext)
    return out


def verify_difference_identity(
    polygon: Polygon, n: int, table: LanguageTable | None = None
) -> IdentityReport:
    """s(n+1) - s(n) against the sum over bispecial words of m_b - m_l - m_r + 1."""
    if n < 1:
        raise ValueError("the identity is stated for n >= 1")
    if table is None or table.words is None or table.n_max < n + 2:
        table = enumerate_language(polygon, n + 2)
    lhs = table.s(n + 1) - table.s(n)
    terms = [(e.word, e.m_b - e.m_l - e.m_r + 1) for e in bispecial_words(polygon, n, table)]
    rhs = sum(t for _, t in terms)
    witnesses = [] if lhs == rhs else [format_word(w) for w, t in terms if t]
    return IdentityReport("difference-identity", n, lhs, rhs, lhs == rhs, witnesses)


def right_special_sum(table: LanguageTable, n: int) -> int:
    """Sum over u in L(n) of (m_r(u) - 1), read off the table."""
    nxt = table.language(n + 1)
    total = 0
    r = table.polygon.r
    for u in table.language(n):
        total += sum(1 for b in range(r) if u + (b,) in nxt) - 1
    return total


# -- sampling oracle -------------------------------------------------------------


def sample_words(
    polygon: Polygon,
    n: int,
    trials: int,
    seed: int = 0,
    dir_bound: int = 1 << 20,
    pos_den: int = 1 << 20,
) -> set[Word]:
    """Codes of length n of ``trials`` random exact billiard orbits.

    Orbits start at a rational point of a random edge and move in a random
    integer direction; orbits that hit a vertex are redrawn.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if trials <= 0:
        return set()
    kp = kernel.to_kernel(polygon)
    words, _ = kernel.active.sample(kp, n, trials, seed, dir_bound, pos_den)
    return words


def reversed_words(words: Iterable[Word]) -> set[Word]:
    return {tuple(reversed(w)) for w in words}
