"""Coprime lattice-point counts and the closed-form growth of the tiling polygons.

For the square, the equilateral triangle and the right isosceles triangle,
generalized diagonals from a corner correspond to primitive lattice vectors
in a region of the unfolded grid.  Counting those with a Moebius sieve gives
closed forms for ``N_c`` and hence for ``p(n)``, whose cubic growth constants
are ``4/pi^2``, ``3/(4 pi^2)`` and ``2/(3 pi^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
import numpy as np

CASES = ("square", "equilateral", "right-isosceles")
DEFAULT_DPS = 64


# -- sieves --------------------------------------------------------------------


def _primes(m: int) -> np.ndarray:
    is_p = np.ones(m + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, int(m**0.5) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.nonzero(is_p)[0]


class MobiusTable:
    """mu(k) for 0 <= k <= M, with mu(0) stored as 0."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("M must be at least 1")
        mu = np.ones(m + 1, dtype=np.int8)
        mu[0] = 0
        for p in _primes(m):
            mu[p::p] *= -1
            if p * p <= m:
                mu[p * p :: p * p] = 0
        self.M = m
        self.values = mu

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.M:
            raise IndexError(f"mu({k}) is outside 1..{self.M}")
        return int(self.values[k])

    def __len__(self) -> int:
        return self.M


@lru_cache(maxsize=8)
def mobius_sieve(m: int) -> MobiusTable:
    return MobiusTable(m)


def totients(m: int) -> np.ndarray:
    """phi(k) for 0 <= k <= m as int64 (phi(0) = 0)."""
    phi = np.arange(m + 1, dtype=np.int64)
    for p in _primes(m):
        phi[p::p] -= phi[p::p] // p
    return phi


# -- regions -----------------------------------------------------------------------


@dataclass(frozen=True)
class RegionSpec:
    """A bounded lattice region.

    ``simplex``: points (i, j) with i, j >= 0 and i + j <= size, the origin
    excluded; with ``include_axes=False`` both coordinates must be positive.

    ``isosceles``: points with 1 <= j < i and 2i + j < size, i.e. strictly
    inside the triangle bounded by the x-axis, the diagonal y = x and the
    line x = n/2 - y/2.
    """

    kind: str
    size: int
    include_axes: bool = True

    def __post_init__(self):
        if self.kind not in ("simplex", "isosceles"):
            raise ValueError(f"unknown region kind {self.kind!r}")

    @classmethod
    def simplex(cls, n: int, include_axes: bool = True) -> RegionSpec:
        return cls("simplex", n, include_axes)

    @classmethod
    def isosceles(cls, n: int) -> RegionSpec:
        return cls("isosceles", n, False)

    def contains(self, i: int, j: int) -> bool:
        if self.kind == "simplex":
            lo = 0 if self.include_axes else 1
            return i >= lo and j >= lo and (i, j) != (0, 0) and i + j <= self.size
        return 1 <= j < i and 2 * i + j < self.size

    def bounding_box(self) -> int:
        return max(self.size, 0)

    def scaled_count(self, dd: int) -> int:
        """Lattice points of the region (origin excluded) that are multiples of ``dd``."""
        if self.kind == "simplex":
            m = self.size // dd
            if m <= 0:
                return 0
            if self.include_axes:
                return (m + 1) * (m + 2) // 2 - 1
            return m * (m - 1) // 2
        # 2i + j < n/dd  <=>  2i + j <= L with L the largest integer below n/dd
        L = -(-self.size // dd) - 1
        return _isosceles_points(L)


def _isosceles_points(L: int) -> int:
    """#{(i, j): 1 <= j < i, 2i + j <= L}."""
    if L < 5:
        return 0
    j = np.arange(1, L // 3 + 1, dtype=np.int64)
    per = (L - j) // 2 - j
    return int(per[per > 0].sum())


def coprime_count(region: RegionSpec) -> int:
    """Points of ``region`` with gcd(i, j) = 1, by Moebius inversion."""
    n = region.bounding_box()
    if n <= 0:
        return 0
    mu = mobius_sieve(n).values
    total = 0
    for dd in range(1, n + 1):
        if mu[dd]:
            c = region.scaled_count(dd)
            if c == 0 and region.kind == "simplex":
                break
            total += int(mu[dd]) * c
    return total


def coprime_count_direct(region: RegionSpec) -> int:
    """Same count by a direct gcd loop; the oracle for :func:`coprime_count`."""
    n = region.bounding_box()
    return sum(
        1
        for i in range(0, n + 1)
        for j in range(0, n + 1)
        if region.contains(i, j) and gcd(i, j) == 1
    )


# -- closed forms ------------------------------------------------------------------


def _coprime_simplex_table(m: int) -> np.ndarray:
    """t[N] = coprime_count(simplex N, axes) for 0 <= N <= m; equals 1 + sum phi."""
    phi = totients(max(m, 1))
    t = np.cumsum(phi) + 1
    t[0] = 0
    return t[: m + 1]


def square_Nc_closed(n: int) -> int:
    """4 * #{(i, j) >= 0 : i + j <= n + 1, gcd(i, j) = 1}.

    Axis points stand for sides, so this exceeds the exact ``N_c(n)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 4 * coprime_count(RegionSpec.simplex(n + 1))


def equilateral_Nc_closed(n: int) -> int:
    """3 * M_c(n), where M_c(2k) = M_c(2k + 1) counts the coprime simplex of size k + 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 3 * coprime_count(RegionSpec.simplex(n // 2 + 1))


def isosceles_region_count(n: int) -> int:
    """Coprime lattice points strictly inside the isosceles region of size n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return coprime_count(RegionSpec.isosceles(n))


def isosceles_Nc_closed(n: int) -> int:
    """2 * M~1(n), with M~1(n) twice the coprime count of the isosceles region."""
    return 4 * isosceles_region_count(n) if n >= 1 else 0


def _isosceles_count_table(m: int) -> np.ndarray:
    """c[n] = isosceles_region_count(n) for 0 <= n <= m, in O(m log m).

    Points are binned by s = 2i + j; the coprime ones on each level come from
    a Dirichlet convolution of the level histogram with mu.
    """
    size = max(m, 1)
    s = np.arange(size + 1, dtype=np.int64)
    # j in [1, ceil(s/3) - 1] with j = s mod 2
    jmax = (s + 2) // 3 - 1
    first = np.where(s % 2 == 1, 1, 2)
    g = np.where(jmax >= first, (jmax - first) // 2 + 1, 0)
    mu = mobius_sieve(size).values.astype(np.int64)
    h = np.zeros(size + 1, dtype=np.int64)
    for dd in range(1, size + 1):
        if mu[dd]:
            h[dd::dd] += mu[dd] * g[1 : size // dd + 1]
    c = np.concatenate(([0], np.cumsum(h)[:-1]))
    return c[: m + 1]


def closed_Nc_table(case: str, m: int) -> list[int]:
    """Closed-form N_c(j) for 0 <= j < m."""
    if case == "square":
        t = _coprime_simplex_table(m)
        return [4 * int(t[j + 1]) for j in range(m)]
    if case == "equilateral":
        t = _coprime_simplex_table(m // 2 + 1)
        return [3 * int(t[j // 2 + 1]) for j in range(m)]
    if case == "right-isosceles":
        c = _isosceles_count_table(m)
        return [4 * int(c[j]) for j in range(m)]
    raise KeyError(f"no closed form for {case!r}; choose from {', '.join(CASES)}")


def closed_p(case: str, n: int) -> int:
    """p(n) = N_c(0) + ... + N_c(n - 1) with the closed-form N_c."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return sum(closed_Nc_table(case, n))


def square_p_oracle(n: int) -> int:
    """4 * sum_{i <= n} (n - i + 1) phi(i), the exact square complexity."""
    phi = totients(n)
    i = np.arange(n + 1, dtype=np.int64)
    return 4 * int(((n - i + 1) * phi)[1:].sum())


# -- the right isosceles link length -------------------------------------------------


def _check_condition(i: int, j: int) -> int:
    if not (j >= 0 and i > j and (i + j) % 2 == 1):
        raise ValueError(f"({i}, {j}) needs i > j >= 0 and i + j odd")
    return (i + j - 1) // 2


def isosceles_link_length(i: int, j: int) -> int:
    """Links of the diagonal from the origin to grid point (i, j): 3k + floor((i - j)/2)."""
    k = _check_condition(i, j)
    return 3 * k + (i - j) // 2


def isosceles_shifted_length(i: int, j: int, m: int) -> int:
    """l(i - m, j) from the base point (i, j): l(i, j) - 2m + (m mod 2)."""
    if not 0 <= m <= i - 1:
        raise ValueError("need 0 <= m <= i - 1")
    return isosceles_link_length(i, j) - 2 * m + m % 2


@dataclass(frozen=True)
class M0Check:
    i: int
    j: int
    n: int
    m0: int
    lower_ok: bool
    upper_ok: bool
    distance: Fraction
    distance_ok: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok and self.distance_ok


def isosceles_m0(i: int, j: int) -> M0Check:
    """Smallest shift m with l(i - m, j) <= n = 3k, with the bound checks."""
    k = _check_condition(i, j)
    n = 3 * k
    m0 = next((m for m in range(i) if isosceles_shifted_length(i, j, m) <= n), None)
    if m0 is None:
        raise ValueError(f"no admissible shift for ({i}, {j})")
    q = Fraction(i - j, 4)
    dist = abs(i + Fraction(j, 2) - Fraction(n, 2) - m0)
    return M0Check(i, j, n, m0, m0 >= q - Fraction(1, 2), m0 <= q + 1, dist, dist <= Fraction(5, 4))


def shift_implications_hold(i: int, j: int) -> bool:
    """Both one-sided shift implications, for every admissible m."""
    k = _check_condition(i, j)
    n = 3 * k
    q = Fraction(i - j, 4)
    for m in range(i):
        length = isosceles_shifted_length(i, j, m)
        if m > q and length > n:
            return False
        if m <= q - Fraction(1, 2) and length < n + 1:
            return False
        # an even shift keeps i + j odd, so the direct formula applies too
        if m % 2 == 0 and i - m > j and length != isosceles_link_length(i - m, j):
            return False
    return True


# -- limits ------------------------------------------------------------------------------


def theorem2_constant(case: str, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """lim p(n)/n^3 for the three lattice cases."""
    num, den = _constant_parts(case)
    with mpmath.workdps(dps):
        return +(mpmath.mpf(num) / (den * mpmath.pi**2))


def _constant_parts(case: str) -> tuple[int, int]:
    table = {"square": (4, 1), "equilateral": (3, 4), "right-isosceles": (2, 3)}
    if case not in table:
        raise KeyError(f"no limit constant for {case!r}; choose from {', '.join(CASES)}")
    return table[case]


@dataclass(frozen=True)
class AsymptoticReport:
    case: str
    n: int
    count: int
    prediction: str
    rel_dev: str
    rel_dev_upper: float

    def within(self, tol: float) -> bool:
        return self.rel_dev_upper <= tol

    def row(self) -> tuple[int, int, str, str]:
        return (self.n, self.count, self.prediction, self.rel_dev)


def _report(case: str, n: int, count: int, scale: int, num: int, den: int, dps: int) -> AsymptoticReport:
    """Compare count / scale with num / (den * pi^2) in interval arithmetic."""
    iv = mpmath.iv
    saved = iv.dps
    iv.dps = dps
    try:
        c = iv.mpf(num) / (den * iv.pi**2)
        dev = abs(iv.mpf(count) / scale - c) / c
        upper = float(dev.b)
        with mpmath.workdps(dps):
            mid = mpmath.mpf(dev.mid)
            pred = mpmath.nstr(mpmath.mpf(c.mid), 20)
            rel = mpmath.nstr(mid, 12)
    finally:
        iv.dps = saved
    return AsymptoticReport(case, n, count, pred, rel, upper)


def estimate_limit(case: str, n: int, dps: int = DEFAULT_DPS) -> AsymptoticReport:
    """p(n)/n^3 from the closed-form N_c against the limit constant."""
    if n < 1:
        raise ValueError("n must be at least 1")
    num, den = _constant_parts(case)
    return _report(case, n, closed_p(case, n), n**3, num, den, dps)


def mertens_report(n: int, dps: int = DEFAULT_DPS) -> AsymptoticReport:
    """Positive coprime pairs with i + j <= n against (6/pi^2) n^2 / 2."""
    count = coprime_count(RegionSpec.simplex(n, include_axes=False))
    return _report("mertens", n, count * 2, n * n, 6, 1, dps)
