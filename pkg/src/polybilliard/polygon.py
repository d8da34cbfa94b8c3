"""Convex polygons over Q(sqrt(d)): validation, catalog, reflections, file IO."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .qfield import (
    AffineIsometry,
    Point2,
    QuadScalar,
    format_scalar,
    is_squarefree,
    orient,
    parse_scalar,
    point,
    reflect_across,
)


class PolygonError(ValueError):
    """A polygon violates one of the model invariants.

    ``code`` is one of ``too-few-vertices``, ``repeated-vertex``,
    ``collinear``, ``orientation``, ``non-convex``, ``self-intersecting``,
    ``field`` or ``syntax``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def validate(vertices: list[Point2], d: int = 0) -> None:
    """Raise :class:`PolygonError` for the first violated invariant."""
    r = len(vertices)
    if r < 3:
        raise PolygonError("too-few-vertices", f"need at least 3 vertices, got {r}")
    for v in vertices:
        if v.field() not in (0, d):
            raise PolygonError("field", f"vertex {v} is not in Q(sqrt({d}))")
    seen = set()
    for i, v in enumerate(vertices):
        if v in seen:
            raise PolygonError("repeated-vertex", f"vertex {i} {v} repeats an earlier vertex")
        seen.add(v)
    turns = []
    for i in range(r):
        t = orient(vertices[i - 1], vertices[i], vertices[(i + 1) % r])
        if t == 0:
            raise PolygonError("collinear", f"vertices {(i - 1) % r}, {i}, {(i + 1) % r} are collinear")
        turns.append(t)
    if all(t < 0 for t in turns):
        raise PolygonError("orientation", "vertices are listed clockwise")
    if any(t < 0 for t in turns):
        i = turns.index(-1)
        raise PolygonError("non-convex", f"reflex turn at vertex {i}")
    # all left turns; a star polygon still winds more than once
    for i in range(r):
        a, b = vertices[i], vertices[(i + 1) % r]
        for k in range(r):
            if k in (i, (i + 1) % r):
                continue
            if orient(a, b, vertices[k]) <= 0:
                raise PolygonError(
                    "self-intersecting", f"vertex {k} is not left of edge {i}"
                )


@dataclass(frozen=True)
class Polygon:
    """Strictly convex polygon with CCW vertices; edge ``i`` joins ``i`` to ``i+1``.

    Vertex 0 is the lexicographically smallest vertex, so edge labels (the
    coding alphabet) are reproducible.
    """

    vertices: tuple[Point2, ...]
    d: int = 0
    name: str = ""

    def __post_init__(self):
        verts = tuple(
            v if isinstance(v, Point2) else point(*v) for v in self.vertices
        )
        if self.d and not is_squarefree(self.d):
            raise PolygonError("field", f"d={self.d} is not square-free")
        validate(list(verts), self.d)
        start = min(range(len(verts)), key=lambda i: verts[i].key())
        verts = verts[start:] + verts[:start]
        object.__setattr__(self, "vertices", verts)

    @property
    def r(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point2, Point2]:
        if not 0 <= i < self.r:
            raise IndexError(f"edge index {i} out of range 0..{self.r - 1}")
        return self.vertices[i], self.vertices[(i + 1) % self.r]

    def edge_reflection(self, i: int) -> AffineIsometry:
        return edge_reflection(self, i)

    def squared_side_lengths(self) -> list[QuadScalar]:
        out = []
        for i in range(self.r):
            p, q = self.edge(i)
            e = q - p
            out.append(e.dot(e))
        return out

    def transformed(self, f: AffineIsometry) -> list[Point2]:
        return [f(v) for v in self.vertices]

    def __str__(self):
        return self.name or dumps_polygon(self)


def edge_reflection(polygon: Polygon, i: int) -> AffineIsometry:
    """Reflection across the line supporting edge ``i``."""
    p, q = polygon.edge(i)
    return reflect_across(p, q)


# -- catalog -----------------------------------------------------------------

SQRT3 = QuadScalar.sqrt(3)

CATALOG_NAMES = ("square", "equilateral", "right-isosceles", "half-equilateral")


def catalog(name: str) -> Polygon:
    """The four polygons whose reflections tile the plane."""
    half = Fraction(1, 2)
    if name == "square":
        return Polygon((point(0, 0), point(1, 0), point(1, 1), point(0, 1)), 0, name)
    if name == "equilateral":
        return Polygon((point(0, 0), point(1, 0), Point2(QuadScalar(half), SQRT3 * half)), 3, name)
    if name == "right-isosceles":
        return Polygon((point(0, 0), point(1, 0), point(0, 1)), 0, name)
    if name == "half-equilateral":
        # right angle at the origin, pi/3 at (1, 0), pi/6 at (0, sqrt 3)
        return Polygon((point(0, 0), point(1, 0), Point2(QuadScalar(0), SQRT3)), 3, name)
    raise KeyError(f"unknown catalog polygon {name!r}; choose from {', '.join(CATALOG_NAMES)}")


def random_convex_polygon(seed: int, r: int = 4, grid: int = 24) -> Polygon:
    """Pseudo-random strictly convex rational polygon with ``r`` vertices.

    Vertices are picked from the convex hull of random points of the
    ``1/grid`` lattice in the unit square; deterministic in ``seed``.
    """
    rng = random.Random(seed)
    while True:
        pts = set()
        while len(pts) < 3 * r:
            pts.add((rng.randint(0, grid), rng.randint(0, grid)))
        hull = _integer_hull(sorted(pts))
        if len(hull) < r:
            continue
        picked = sorted(rng.sample(range(len(hull)), r))
        verts = [hull[k] for k in picked]
        try:
            return Polygon(
                tuple(point(Fraction(x, grid), Fraction(y, grid)) for x, y in verts),
                0,
                f"random-{r}gon-seed{seed}",
            )
        except PolygonError:
            continue


def _integer_hull(pts):
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


# -- file format -------------------------------------------------------------


def dumps_polygon(polygon: Polygon) -> str:
    lines = [f"QFIELD {polygon.d}"]
    for v in polygon.vertices:
        lines.append(f"V {format_scalar(v.x)} {format_scalar(v.y)}")
    return "\n".join(lines) + "\n"


def loads_polygon(text: str, name: str = "") -> Polygon:
    d = None
    verts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if d is None:
            if parts[0] != "QFIELD" or len(parts) != 2:
                raise PolygonError("syntax", f"line {lineno}: expected 'QFIELD <d>'")
            try:
                d = int(parts[1])
            except ValueError:
                raise PolygonError("syntax", f"line {lineno}: bad field {parts[1]!r}") from None
            if d < 0 or (d and not is_squarefree(d)):
                raise PolygonError("field", f"line {lineno}: d={d} is not square-free")
            continue
        if parts[0] != "V" or len(parts) != 3:
            raise PolygonError("syntax", f"line {lineno}: expected 'V <x> <y>'")
        try:
            x = parse_scalar(parts[1], d)
            y = parse_scalar(parts[2], d)
        except ValueError as exc:
            raise PolygonError("syntax", f"line {lineno}: {exc}") from None
        verts.append(Point2(x, y))
    if d is None:
        raise PolygonError("syntax", "missing QFIELD header")
    return Polygon(tuple(verts), d, name)


def read_polygon(path: str | Path) -> Polygon:
    path = Path(path)
    return loads_polygon(path.read_text(encoding="utf-8"), path.stem)


def write_polygon(polygon: Polygon, path: str | Path) -> None:
    Path(path).write_text(dumps_polygon(polygon), encoding="utf-8")
