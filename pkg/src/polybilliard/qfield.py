"""Exact arithmetic in Q(sqrt(d)) and the planar predicates built on it.

Every scalar is ``a + b*sqrt(d)`` with rational ``a`` and ``b``.  Signs are
decided with integer comparisons only, so all predicates are exact.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

_SCALAR_RE = re.compile(
    r"""^(?:
        (?P<a>[+-]?\d+(?:/\d+)?)
        (?:(?P<bsign>[+-])(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\))?
      |
        (?P<b_only>[+-]?\d+(?:/\d+)?)\*sqrt\((?P<d_only>\d+)\)
      |
        (?P<bare_sign>[+-]?)sqrt\((?P<d_bare>\d+)\)
    )$""",
    re.VERBOSE,
)


def is_squarefree(d: int) -> bool:
    if d < 0:
        return False
    if d in (0, 1):
        return d == 0
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def sign_of(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for integers a, b."""
    if b == 0 or d == 0:
        return (a > 0) - (a < 0)
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a^2 with d*b^2
    diff = a * a - d * b * b
    if a > 0:
        return (diff > 0) - (diff < 0)
    return (diff < 0) - (diff > 0)


class QuadScalar:
    """Immutable element ``a + b*sqrt(d)`` of a real quadratic field.

    ``d == 0`` means the element is a plain rational; any element with
    ``b == 0`` is stored with ``d == 0`` so rationals mix freely with every
    field.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        if d < 0 or not (d == 0 or is_squarefree(d)):
            raise ValueError(f"d must be a square-free nonnegative integer, got {d}")
        if d == 0 and b != 0:
            raise ValueError("b must be 0 when d = 0")
        if b == 0:
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    def __reduce__(self):
        return (QuadScalar._raw, (self.a, self.b, self.d))

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> QuadScalar:
        obj = object.__new__(cls)
        if b == 0:
            d = 0
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    @classmethod
    def sqrt(cls, d: int) -> QuadScalar:
        return cls(0, 1, d)

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> QuadScalar | None:
        if isinstance(other, QuadScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar._raw(Fraction(other), Fraction(0), 0)
        return None

    def _field(self, other: QuadScalar) -> int:
        if self.d == other.d or other.d == 0:
            return self.d
        if self.d == 0:
            return other.d
        raise ValueError(f"mixing Q(sqrt({self.d})) and Q(sqrt({other.d}))")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar._raw(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar._raw(self.a - o.a, self.b - o.b, self._field(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadScalar._raw(
            self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadScalar:
        return QuadScalar._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d*b^2`` (a rational)."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadScalar._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        return scalar_sign(self)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.d == o.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadScalar with {type(other).__name__}")
        return scalar_sign(self - o)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    # -- text form --------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"QuadScalar({format_scalar(self)!r})"


def _frac_text(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def format_scalar(s: QuadScalar) -> str:
    """Canonical text: ``p/q`` or ``p/q+r/s*sqrt(d)``."""
    text = _frac_text(s.a)
    if s.b != 0:
        sign = "-" if s.b < 0 else "+"
        text += f"{sign}{_frac_text(abs(s.b))}*sqrt({s.d})"
    return text


def parse_scalar(text: str, d: int | None = None) -> QuadScalar:
    """Parse the text form.  Also accepts ``p``, ``sqrt(d)`` and ``r/s*sqrt(d)``.

    If ``d`` is given, any square root in the text must match it.
    """
    try:
        return _parse_scalar(text, d)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def _parse_scalar(text: str, d: int | None) -> QuadScalar:
    m = _SCALAR_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed scalar: {text!r}")
    if m.group("a") is not None:
        a = Fraction(m.group("a"))
        if m.group("b") is None:
            return QuadScalar(a)
        b = Fraction(m.group("b"))
        if m.group("bsign") == "-":
            b = -b
        root = int(m.group("d"))
    elif m.group("b_only") is not None:
        a, b, root = Fraction(0), Fraction(m.group("b_only")), int(m.group("d_only"))
    else:
        a = Fraction(0)
        b = Fraction(-1 if m.group("bare_sign") == "-" else 1)
        root = int(m.group("d_bare"))
    if d is not None and b != 0 and root != d:
        raise ValueError(f"scalar {text!r} uses sqrt({root}) in a Q(sqrt({d})) context")
    return QuadScalar(a, b, root)


def scalar_sign(s: QuadScalar) -> int:
    """Exact sign of ``a + b*sqrt(d)`` in {-1, 0, +1}."""
    if s.b == 0:
        return (s.a > 0) - (s.a < 0)
    # scaling by the positive common denominator keeps the sign
    a = s.a.numerator * s.b.denominator
    b = s.b.numerator * s.a.denominator
    return sign_of(a, b, s.d)


def as_scalar(x) -> QuadScalar:
    if isinstance(x, QuadScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadScalar(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to QuadScalar")


# -- points and maps -------------------------------------------------------


@dataclass(frozen=True)
class Point2:
    x: QuadScalar
    y: QuadScalar

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "y", as_scalar(self.y))
        self.field()  # raises on mixed fields

    def field(self) -> int:
        if self.x.d and self.y.d and self.x.d != self.y.d:
            raise ValueError("point components live in different fields")
        return self.x.d or self.y.d

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point2:
        return Point2(-self.x, -self.y)

    def scale(self, k) -> Point2:
        return Point2(self.x * k, self.y * k)

    def dot(self, other: Point2) -> QuadScalar:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point2) -> QuadScalar:
        return self.x * other.y - self.y * other.x

    def key(self) -> tuple:
        """Sort key for exact lexicographic order (x first, then y)."""
        return (_OrderKey(self.x), _OrderKey(self.y))

    def __str__(self):
        return f"({self.x}, {self.y})"


Vector2 = Point2


class _OrderKey:
    __slots__ = ("s",)

    def __init__(self, s: QuadScalar):
        self.s = s

    def __lt__(self, other):
        return self.s < other.s

    def __eq__(self, other):
        return self.s == other.s


def point(x, y) -> Point2:
    return Point2(as_scalar(x), as_scalar(y))


@dataclass(frozen=True)
class Segment:
    p: Point2
    q: Point2

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("degenerate segment")


def orient(p: Point2, q: Point2, r: Point2) -> int:
    """Sign of (q - p) x (r - p); +1 means counterclockwise."""
    return scalar_sign((q - p).cross(r - p))


@dataclass(frozen=True)
class AffineIsometry:
    """``x -> M x + t`` with ``M = ((m11, m12), (m21, m22))`` orthogonal."""

    m11: QuadScalar
    m12: QuadScalar
    m21: QuadScalar
    m22: QuadScalar
    tx: QuadScalar
    ty: QuadScalar

    def __post_init__(self):
        for name in ("m11", "m12", "m21", "m22", "tx", "ty"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not self.is_orthogonal():
            raise ValueError("linear part is not orthogonal")

    @classmethod
    def identity(cls) -> AffineIsometry:
        return cls(1, 0, 0, 1, 0, 0)

    def __call__(self, p: Point2) -> Point2:
        return Point2(
            self.m11 * p.x + self.m12 * p.y + self.tx,
            self.m21 * p.x + self.m22 * p.y + self.ty,
        )

    def compose(self, other: AffineIsometry) -> AffineIsometry:
        """``self o other``: apply ``other`` first."""
        return AffineIsometry(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
            self.m11 * other.tx + self.m12 * other.ty + self.tx,
            self.m21 * other.tx + self.m22 * other.ty + self.ty,
        )

    __matmul__ = compose

    def det(self) -> int:
        value = self.m11 * self.m22 - self.m12 * self.m21
        if value == 1:
            return 1
        if value == -1:
            return -1
        raise ValueError(f"isometry with determinant {value}")

    def is_orthogonal(self) -> bool:
        # M^T M == I
        return (
            self.m11 * self.m11 + self.m21 * self.m21 == 1
            and self.m12 * self.m12 + self.m22 * self.m22 == 1
            and self.m11 * self.m12 + self.m21 * self.m22 == 0
        )

    def inverse(self) -> AffineIsometry:
        # M^-1 = M^T
        return AffineIsometry(
            self.m11,
            self.m21,
            self.m12,
            self.m22,
            -(self.m11 * self.tx + self.m21 * self.ty),
            -(self.m12 * self.tx + self.m22 * self.ty),
        )

    def __eq__(self, other):
        if not isinstance(other, AffineIsometry):
            return NotImplemented
        return all(
            getattr(self, k) == getattr(other, k)
            for k in ("m11", "m12", "m21", "m22", "tx", "ty")
        )

    def __hash__(self):
        return hash((self.m11, self.m12, self.m21, self.m22, self.tx, self.ty))


def reflect_across(p: Point2, q: Point2) -> AffineIsometry:
    """Euclidean reflection fixing the line through ``p`` and ``q``."""
    if p == q:
        raise ValueError("reflection line needs two distinct points")
    e = q - p
    n2 = e.dot(e)
    inv = n2.inverse()
    exx, eyy, exy = e.x * e.x, e.y * e.y, e.x * e.y
    m11 = (exx - eyy) * inv
    m12 = (exy + exy) * inv
    m21 = m12
    m22 = (eyy - exx) * inv
    # fixes p: t = p - M p
    tx = p.x - (m11 * p.x + m12 * p.y)
    ty = p.y - (m21 * p.x + m22 * p.y)
    return AffineIsometry(m11, m12, m21, m22, tx, ty)
