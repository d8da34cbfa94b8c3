"""Generalized diagonals: billiard segments that start and end at vertices.

A diagonal with code ``v`` has ``|v| + 1`` links.  Diagonals are oriented, so
A->B and B->A count separately, and sides of the polygon are never counted.
``N_c(j)`` is the number of vertices plus the number of diagonals with at
most ``j`` links.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import kernel
from .language import (
    LanguageTable,
    ResourceLimitError,
    Word,
    bispecial_words,
    check_word,
    enumerate_language,
    extension_counts,
    format_word,
    word_cap,
)
from .polygon import Polygon
from .qfield import AffineIsometry, Point2, format_scalar, orient
from .reports import IdentityReport, Verification


@dataclass(frozen=True)
class GeneralizedDiagonal:
    start: int
    word: Word
    end_vertex: int
    end: Point2

    @property
    def links(self) -> int:
        return len(self.word) + 1

    def row(self) -> tuple[int, str, str, str]:
        return (self.start, format_word(self.word), format_scalar(self.end.x), format_scalar(self.end.y))


@dataclass
class DiagonalTable:
    polygon: Polygon
    max_links: int
    exact: list[int]
    diagonals: list[GeneralizedDiagonal] | None = None

    def Nc(self, j: int) -> int:
        if not 0 <= j <= self.max_links:
            raise ValueError(f"N_c({j}) is outside the table (max_links={self.max_links})")
        return self.polygon.r + sum(self.exact[1 : j + 1])

    def rows(self) -> list[tuple[int, int, int]]:
        return [(j, self.exact[j], self.Nc(j)) for j in range(self.max_links + 1)]


def _from_start(args):
    polygon, start, max_links, cap, listing = args
    kp = kernel.to_kernel(polygon)
    return kernel.active.diagonals_from(kp, start, max_links, cap, listing)


def enumerate_diagonals(
    polygon: Polygon,
    max_links: int,
    listing: bool = False,
    cap: int | None = None,
    threads: int = 1,
) -> DiagonalTable:
    """Count oriented generalized diagonals with at most ``max_links`` links.

    ``exact[0]`` is the vertex count, matching the convention for ``N_c(0)``.
    With ``listing`` the diagonals are returned sorted by start vertex, then
    word, then end vertex.
    """
    if max_links < 0:
        raise ValueError("max_links must be nonnegative")
    cap = word_cap(cap)
    jobs = [(polygon, s, max_links, cap, listing) for s in range(polygon.r)]
    try:
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(_from_start, jobs))
        else:
            parts = [_from_start(job) for job in jobs]
    except kernel.CapExceeded as exc:
        raise ResourceLimitError(
            f"corridor cap {cap} exceeded while tracing diagonals of {polygon}"
        ) from exc
    exact = [0] * (max_links + 1)
    exact[0] = polygon.r
    for part_exact, _, _ in parts:
        for j in range(1, max_links + 1):
            exact[j] += part_exact[j]
    diagonals = None
    if listing:
        diagonals = []
        for s, (_, _, found) in enumerate(parts):
            for word, i, pt in found:
                end = kernel.point_from_kernel(pt, polygon.d)
                diagonals.append(GeneralizedDiagonal(s, tuple(word), i, end))
        diagonals.sort(key=lambda g: (g.start, g.word, g.end_vertex))
    return DiagonalTable(polygon, max_links, exact, diagonals)


def _frames(polygon: Polygon, v: Word) -> list[AffineIsometry]:
    """G_0 = id and G_j = G_{j-1} o R_{v[j-1]}; edge v[j] is crossed in copy G_j."""
    out = [AffineIsometry.identity()]
    for b in v:
        out.append(out[-1] @ polygon.edge_reflection(b))
    return out


def diagonals_with_code(polygon: Polygon, v: Sequence[int]) -> list[GeneralizedDiagonal]:
    v = check_word(polygon, v)
    kp = kernel.to_kernel(polygon)
    last = _frames(polygon, v)[-1]
    out = []
    for s in range(polygon.r):
        for i in kernel.active.diagonal_ends(kp, s, v):
            out.append(GeneralizedDiagonal(s, v, i, last(polygon.vertices[i])))
    return out


def gd(polygon: Polygon, v: Sequence[int]) -> int:
    """Number of oriented diagonals whose code is exactly ``v``."""
    v = check_word(polygon, v)
    kp = kernel.to_kernel(polygon)
    return sum(len(kernel.active.diagonal_ends(kp, s, v)) for s in range(polygon.r))


def check_diagonal(polygon: Polygon, g: GeneralizedDiagonal) -> None:
    """Assert that the straightened segment crosses the open edge copies of its code.

    Also checks that the segment stays off every edge line of the polygon
    when it has one link.
    """
    A = polygon.vertices[g.start]
    B = g.end
    if not g.word:
        r = polygon.r
        assert g.end_vertex not in (g.start, (g.start + 1) % r, (g.start - 1) % r), "a side is not a diagonal"
        assert B == polygon.vertices[g.end_vertex]
        return
    frames = _frames(polygon, g.word)
    assert B == frames[-1](polygon.vertices[g.end_vertex])
    for f, b in zip(frames, g.word):
        p, q = (f(x) for x in polygon.edge(b))
        left, right = (q, p) if f.det() > 0 else (p, q)
        assert orient(A, B, left) > 0 and orient(A, B, right) < 0, "segment misses an edge copy"
        assert orient(left, right, A) * orient(left, right, B) < 0, "edge copy not between the endpoints"


def index_of(polygon: Polygon, v: Sequence[int], table: LanguageTable | None = None) -> tuple[int, int, int]:
    """(I_l, I_r, gd) of a bispecial word."""
    ext = extension_counts(polygon, v, table)
    if ext.m_l < 2 or ext.m_r < 2:
        raise ValueError(f"word {format_word(tuple(v))} is not bispecial")
    return ext.m_l - 1, ext.m_r - 1, gd(polygon, v)


def verify_geometric_lemma(
    polygon: Polygon, n: int, table: LanguageTable | None = None
) -> IdentityReport:
    """m_b(v) = I_l(v) + I_r(v) + gd(v) + 1 for every bispecial v of length n.

    ``lhs`` and ``rhs`` are totals over the bispecial words; witnesses list
    the words where the two sides differ.  At ``n = 0`` the identity fails by
    exactly one for every polygon (the empty word has ``m_b = r(r-1)``), and
    the report says so rather than hiding it.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if table is None or table.words is None or table.n_max < n + 2:
        table = enumerate_language(polygon, n + 2)
    lhs = rhs = 0
    witnesses = []
    for ext in bispecial_words(polygon, n, table):
        right = (ext.m_l - 1) + (ext.m_r - 1) + gd(polygon, ext.word) + 1
        lhs += ext.m_b
        rhs += right
        if ext.m_b != right:
            witnesses.append(f"{format_word(ext.word) or '<empty>'}: {ext.m_b} != {right}")
    return IdentityReport("geometric-lemma", n, lhs, rhs, not witnesses, witnesses)


def verify_diagonal_increment(
    polygon: Polygon, n: int, table: LanguageTable | None = None, diagonals: DiagonalTable | None = None
) -> IdentityReport:
    """N_c(n+1) - N_c(n) against the sum of gd over bispecial words of length n."""
    if diagonals is None or diagonals.max_links < n + 1:
        diagonals = enumerate_diagonals(polygon, n + 1)
    lhs = diagonals.Nc(n + 1) - diagonals.Nc(n)
    rhs = sum(gd(polygon, e.word) for e in bispecial_words(polygon, n, table))
    return IdentityReport("diagonal-increment", n, lhs, rhs, lhs == rhs)


def verify_theorem1(
    polygon: Polygon,
    n_max: int,
    table: LanguageTable | None = None,
    diagonals: DiagonalTable | None = None,
    threads: int = 1,
) -> Verification:
    """p(n) = N_c(0) + ... + N_c(n-1) for 1 <= n <= n_max, both sides computed independently."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if table is None or table.n_max < n_max:
        table = enumerate_language(polygon, n_max, mode="count", threads=threads)
    if diagonals is None or diagonals.max_links < n_max - 1:
        diagonals = enumerate_diagonals(polygon, n_max - 1, threads=threads)
    out = Verification(str(polygon), notes=[f"N_c(0) = {polygon.r} counts the vertices"])
    for n in range(1, n_max + 1):
        rhs = sum(diagonals.Nc(j) for j in range(n))
        lhs = table.p(n)
        out.checks.append(IdentityReport("theorem1", n, lhs, rhs, lhs == rhs))
    return out
