"""Kernel selection and conversion of polygons to the kernels' integer form.

The compiled kernel (``_ckernel``) is used when it imports; otherwise the
pure-Python kernel runs the same algorithms.  Set ``POLYBILLIARD_KERNEL`` to
``python`` to force the fallback.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

from . import _pykernel
from .polygon import Polygon
from .qfield import Point2, QuadScalar

pykernel = _pykernel
ckernel = None
if os.environ.get("POLYBILLIARD_KERNEL", "").lower() != "python":
    try:
        from . import _ckernel as ckernel  # type: ignore[no-redef]
    except ImportError:  # extension not built
        ckernel = None

active = ckernel if ckernel is not None else pykernel
IMPL = active.IMPL
CapExceeded = _pykernel.CapExceeded


def backends() -> dict:
    """Available kernel modules by name."""
    out = {"python": pykernel}
    if ckernel is not None:
        out["cython"] = ckernel
    return out


def _parts(s: QuadScalar) -> tuple[Fraction, Fraction]:
    return s.a, s.b


def point_to_kernel(p: Point2) -> tuple:
    parts = [*_parts(p.x), *_parts(p.y)]
    den = lcm(*(f.denominator for f in parts))
    xa, xb, ya, yb = (int(f * den) for f in parts)
    return (xa, xb, ya, yb, den, 0)


def point_from_kernel(h: tuple, d: int) -> Point2:
    xa, xb, ya, yb, w, wb = h
    if wb:
        raise ValueError("point weight must be rational")
    if d == 0:
        return Point2(QuadScalar(Fraction(xa, w)), QuadScalar(Fraction(ya, w)))
    return Point2(
        QuadScalar(Fraction(xa, w), Fraction(xb, w), d),
        QuadScalar(Fraction(ya, w), Fraction(yb, w), d),
    )


def map_to_kernel(f) -> tuple:
    entries = [f.m11, f.m12, f.m21, f.m22, f.tx, f.ty]
    parts = [x for s in entries for x in _parts(s)]
    den = lcm(*(x.denominator for x in parts))
    return tuple(int(x * den) for x in parts) + (den,)


_cache: dict = {}


def to_kernel(polygon: Polygon, backend=None):
    """Integer form of ``polygon`` for ``backend`` (default: active kernel)."""
    backend = backend or active
    key = (id(backend), polygon.d, polygon.vertices)
    kp = _cache.get(key)
    if kp is None:
        verts = [point_to_kernel(v) for v in polygon.vertices]
        refl = [map_to_kernel(polygon.edge_reflection(i)) for i in range(polygon.r)]
        kp = backend.KPolygon(polygon.d, verts, refl)
        _cache[key] = kp
    return kp
