"""Lattice points in circle and hyperbolic sectors, with parity/coprimality filters.

Membership is decided in exact integer arithmetic.  A sector's slope is a
rational p/q (tan of the angle for circles, tanh for hyperbolas) and its
squared radius a rational N/D, so ``F(sqrt(n/d))``-style arguments stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath
import numpy as np

from ._parallel import run_chunks, split_range
from .littlewood import RECIPROCAL, SKEW, check_family

CIRCLE = "circle"
HYPERBOLA = "hyperbola"
HYPERBOLA_STAR = "hyperbola_star"
KINDS = (CIRCLE, HYPERBOLA, HYPERBOLA_STAR)

OPPOSITE = "opposite"
ANY = "any"

# Largest admissible tanh slope for the hyperbolic kinds (just above sqrt(2) - 1).
HYPERBOLIC_SLOPE_GUARD = Fraction(414214, 1000000)


@dataclass(frozen=True)
class SectorSpec:
    """A sector of the open positive quadrant.

    circle:          x^2 + y^2 < R^2,  y <= x * slope
    hyperbola:       x^2 - y^2 < R^2,  y <= x * slope
    hyperbola_star:  2xy < R^2,        y < x <= y (1 + slope) / (1 - slope)

    ``closed_radius`` turns the strict radius inequality into ``<=``.
    """

    kind: str
    slope: Fraction
    radius_sq: Fraction
    closed_radius: bool = False

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "radius_sq", Fraction(self.radius_sq))
        if self.kind not in KINDS:
            raise ValueError(f"unknown sector kind {self.kind!r}")
        if self.radius_sq <= 0:
            raise ValueError("radius_sq must be positive")
        top = 1 if self.kind == CIRCLE else HYPERBOLIC_SLOPE_GUARD
        if not 0 <= self.slope <= top:
            raise ValueError(f"slope must lie in [0, {top}] for {self.kind}")

    @classmethod
    def with_radius(cls, kind: str, slope, radius, closed_radius: bool = False) -> SectorSpec:
        radius = Fraction(radius)
        return cls(kind, Fraction(slope), radius * radius, closed_radius)

    def scaled(self, d: int) -> SectorSpec:
        """The same sector with radius divided by d."""
        return replace(self, radius_sq=self.radius_sq / (d * d))

    @property
    def angle(self) -> float:
        """Opening angle, recovered in floating point for reference values."""
        t = float(self.slope)
        return math.atan(t) if self.kind == CIRCLE else math.atanh(t)


@dataclass(frozen=True)
class LatticeFilter:
    parity: str = OPPOSITE
    coprime: bool = False

    def __post_init__(self):
        if self.parity not in (OPPOSITE, ANY):
            raise ValueError(f"unknown parity filter {self.parity!r}")


def mobius_sieve(limit: int) -> np.ndarray:
    """mu(d) for 0 <= d <= limit (entry 0 is 0), by a prime sieve."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    composite = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if composite[p]:
            continue
        composite[p * p :: p] = True
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def _column_count(x: int, lo: int, hi: int, flt: LatticeFilter) -> int:
    """Points (x, y) with lo <= y <= hi passing the filter."""
    if hi < lo:
        return 0
    if not flt.coprime:
        if flt.parity == ANY:
            return hi - lo + 1
        # y must have parity opposite to x
        want = 1 - x % 2
        first = lo if lo % 2 == want else lo + 1
        return 0 if first > hi else (hi - first) // 2 + 1
    y = np.arange(lo, hi + 1, dtype=np.int64)
    keep = np.gcd(y, x) == 1
    if flt.parity == OPPOSITE:
        keep &= (y + x) % 2 == 1
    return int(np.count_nonzero(keep))


def _columns(spec: SectorSpec) -> tuple[int, int]:
    """Range [1, stop) of the column variable that can hold points."""
    N, D = spec.radius_sq.numerator, spec.radius_sq.denominator
    p, q = spec.slope.numerator, spec.slope.denominator
    if spec.kind == CIRCLE:
        return 1, math.isqrt(N // D) + 2
    if spec.kind == HYPERBOLA:
        if p == 0:
            return 1, 1
        # beyond this every admissible y has x^2 - y^2 >= x^2 (1 - t^2) > R^2
        return 1, math.isqrt(N * q * q // (D * (q * q - p * p))) + 2
    # star: column variable is the smaller coordinate y, 2 y (y + 1) < R^2
    return 1, math.isqrt(N // (2 * D)) + 2


def _count_columns(spec: SectorSpec, flt: LatticeFilter, start: int, stop: int) -> int:
    N, D = spec.radius_sq.numerator, spec.radius_sq.denominator
    p, q = spec.slope.numerator, spec.slope.denominator
    closed = spec.closed_radius
    total = 0
    for c in range(start, stop):
        if spec.kind == CIRCLE:
            # D (x^2 + y^2) < N
            room = N - D * c * c - (0 if closed else 1)
            if room < D:
                continue
            hi = min(math.isqrt(room // D), c * p // q)
            lo = 1
        elif spec.kind == HYPERBOLA:
            # D (x^2 - y^2) < N  <=>  D y^2 > D x^2 - N
            m = D * c * c - N
            if m < 0 or (closed and m == 0):
                lo = 1
            elif closed:
                lo = math.isqrt(-(-m // D) - 1) + 1
            else:
                lo = math.isqrt(m // D) + 1
            hi = c * p // q
        else:
            # column c is the smaller coordinate y; x ranges over (y, y(q+p)/(q-p)]
            cap = N // (2 * D * c) if closed else (N - 1) // (2 * D * c)
            hi = min(cap, c * (q + p) // (q - p))
            lo = c + 1
            if hi < lo:
                continue
            if not flt.coprime and flt.parity == ANY:
                total += hi - lo + 1
            else:
                total += _star_row(c, lo, hi, flt)
            continue
        total += _column_count(c, max(lo, 1), hi, flt)
    return total


def _star_row(y: int, lo: int, hi: int, flt: LatticeFilter) -> int:
    if not flt.coprime:
        want = 1 - y % 2
        first = lo if lo % 2 == want else lo + 1
        return 0 if first > hi else (hi - first) // 2 + 1
    x = np.arange(lo, hi + 1, dtype=np.int64)
    keep = np.gcd(x, y) == 1
    if flt.parity == OPPOSITE:
        keep &= (x + y) % 2 == 1
    return int(np.count_nonzero(keep))


def count_sector(spec: SectorSpec, flt: LatticeFilter = LatticeFilter(), parallel: int = 1) -> int:
    """Exact number of filtered lattice points (x, y), x, y > 0, in the sector."""
    if spec.slope == 0:
        return 0
    start, stop = _columns(spec)
    chunks = [(spec, flt, a, b) for a, b in split_range(start, stop, parallel)]
    return sum(run_chunks(_count_columns, chunks, parallel))


def boundary_points(spec: SectorSpec, flt: LatticeFilter = LatticeFilter()) -> int:
    """Points lying exactly on the radius curve: closed count minus strict count."""
    closed = count_sector(replace(spec, closed_radius=True), flt)
    return closed - count_sector(replace(spec, closed_radius=False), flt)


def mobius_sector_count(spec: SectorSpec, parity: str = OPPOSITE, count_fn=None, mu: np.ndarray | None = None) -> int:
    """Coprime count via Moebius inversion over the scaled sectors.

    With opposite parity every common divisor is odd, so the sum runs over
    odd d only (all d <= R, not just divisors).  ``count_fn(spec)`` supplies
    the non-coprime counts; by default :func:`count_sector`.
    """
    if count_fn is None:
        flt = LatticeFilter(parity, coprime=False)

        def count_fn(s):
            return count_sector(s, flt)

    dmax = math.isqrt(spec.radius_sq.numerator // spec.radius_sq.denominator)
    if dmax < 1:
        return 0
    if mu is None or len(mu) <= dmax:
        mu = mobius_sieve(dmax)
    step = 2 if parity == OPPOSITE else 1
    total = 0
    for d in range(1, dmax + 1, step):
        if mu[d]:
            total += int(mu[d]) * count_fn(spec.scaled(d))
    return total


# ---------------------------------------------------------------------------
# Box counts of the Sigma_1 decomposition

_SCALE_DIGITS = 45
_SCALE = 10 ** _SCALE_DIGITS


class IntervalAmbiguity(ArithmeticError):
    """A lattice slope fell inside the uncertainty interval of a threshold."""


@dataclass(frozen=True)
class _Threshold:
    exact: Fraction | None
    lo: int = 0
    hi: int = 0

    def compare(self, s: int, r: int) -> int:
        """Sign of s/r - threshold."""
        if self.exact is not None:
            v = s * self.exact.denominator - r * self.exact.numerator
            return (v > 0) - (v < 0)
        if s * _SCALE < r * self.lo:
            return -1
        if s * _SCALE > r * self.hi:
            return 1
        raise IntervalAmbiguity(f"s/r = {s}/{r} inside threshold interval; raise precision")


def _approx_threshold(value) -> _Threshold:
    scaled = int(mpmath.floor(value * _SCALE))
    # true value lies in [scaled - 1, scaled + 1] / SCALE, width far below 1e-30
    return _Threshold(None, scaled - 1, scaled + 1)


def _alpha_mp():
    return mpmath.log(mpmath.sqrt(1 + mpmath.sqrt(2)))


@dataclass(frozen=True)
class BoxGrid:
    """Angle/shell grid with N angular slices and N^2 shells of width sqrt(n)/N."""

    N: int
    family: str
    n: int

    def __post_init__(self):
        check_family(self.family)
        if self.N < 1 or self.n < 1:
            raise ValueError("N and n must be positive")

    @property
    def epsilon(self) -> Fraction:
        return Fraction(1, self.N)

    def theta(self, i: int) -> float:
        base = math.pi / 4 if self.family == RECIPROCAL else math.asinh(1.0) / 2
        return i * base / self.N

    def slope_thresholds(self, part: str = "plain") -> list[_Threshold]:
        """Thresholds t_0 < ... < t_N on s/r, ascending.

        Slice i holds t_{i-1} < s/r <= t_i.  Star slices run the other way in
        s/r; :meth:`slice_index` maps them back.
        """
        N = self.N
        with mpmath.workdps(_SCALE_DIGITS + 15):
            if self.family == RECIPROCAL:
                out = [_Threshold(Fraction(0))]
                for i in range(1, N):
                    out.append(_approx_threshold(mpmath.tan(mpmath.pi * i / (4 * N))))
                out.append(_Threshold(Fraction(1)))
                return out
            alpha = _alpha_mp()
            if part == "plain":
                out = [_Threshold(Fraction(0))]
                for i in range(1, N + 1):
                    out.append(_approx_threshold(mpmath.tanh(alpha * i / N)))
                return out
            # star: e^{-2 theta_i} < s/r <= e^{-2 theta_{i-1}}, listed ascending in s/r
            out = [_approx_threshold(mpmath.exp(-2 * alpha * i / N)) for i in range(N, 0, -1)]
            out.append(_Threshold(Fraction(1)))
            return out

    def slice_index(self, thresholds: list[_Threshold], s: int, r: int, part: str = "plain") -> int | None:
        """Slice i in 1..N containing s/r, or None when outside every slice."""
        if thresholds[0].compare(s, r) <= 0 or thresholds[-1].compare(s, r) > 0:
            return None
        lo, hi = 1, self.N
        while lo < hi:
            mid = (lo + hi) // 2
            if thresholds[mid].compare(s, r) <= 0:
                hi = mid
            else:
                lo = mid + 1
        if self.family == SKEW and part == "star":
            return self.N + 1 - lo
        return lo


def _shell_index(value: int, N: int, n: int) -> int:
    """Smallest j with value <= j sqrt(n) / N, in exact integers."""
    x2 = (value * N) ** 2
    m = -(-x2 // n)
    return math.isqrt(m - 1) + 1


def _s_candidates(family: str, part: str, r: int) -> range:
    start = 1 if r % 2 == 0 else 2
    if family == RECIPROCAL:
        return range(start, r, 2)
    # plain boxes need s/r <= sqrt(2) - 1, star boxes s/r > sqrt(2) - 1
    cut = (41422 * r) // 100000
    if part == "plain":
        return range(start, min(cut + 2, r), 2)
    first = max(start, cut - 1)
    if (first - start) % 2:
        first += 1
    return range(first, r, 2)


def _box_table(grid: BoxGrid, part: str, j_range: tuple[int, int] | None = None) -> np.ndarray:
    N, n = grid.N, grid.n
    table = np.zeros((N + 1, N * N + 1), dtype=np.int64)
    thresholds = grid.slope_thresholds(part)
    top_sq = N * N * n  # k^2 scale^2 <= N^2 n
    jlo, jhi = j_range if j_range else (1, N * N)
    r = 2
    while True:
        if grid.family == RECIPROCAL:
            if (r * r + 1) ** 2 > top_sq:
                break
        # both skew scales exceed 0.82 r^2 inside their slope windows
        elif (41 * r * r) ** 2 > 2500 * top_sq:
            break
        for s in _s_candidates(grid.family, part, r):
            if math.gcd(r, s) != 1:
                continue
            if grid.family == RECIPROCAL:
                scale = r * r + s * s
            elif part == "plain":
                scale = r * r - s * s
            else:
                scale = 2 * r * s
            if scale * scale > top_sq:
                continue
            i = grid.slice_index(thresholds, s, r, part)
            if i is None:
                continue
            kmax = math.isqrt(top_sq // (scale * scale))
            for k in range(1, kmax + 1, 2):
                j = _shell_index(k * scale, N, n)
                if jlo <= j <= jhi:
                    table[i, j] += 1
        r += 1
    return table


def box_table(grid: BoxGrid, part: str = "both") -> np.ndarray:
    """Counts for every box at once; entry [i, j] for 1 <= i <= N, 1 <= j <= N^2.

    For skew grids ``part`` selects the plain hyperbolic boxes, the star
    boxes, or their sum ("both").
    """
    if grid.family == RECIPROCAL or part in ("plain", "star"):
        return _box_table(grid, "plain" if grid.family == RECIPROCAL else part)
    if part != "both":
        raise ValueError(f"unknown part {part!r}")
    return _box_table(grid, "plain") + _box_table(grid, "star")


def count_box(grid: BoxGrid, i: int, j: int, part: str = "both") -> int:
    """Admissible tuples (k, r, s) in box (i, j) of the grid."""
    if not (1 <= i <= grid.N and 1 <= j <= grid.N * grid.N):
        raise ValueError("box index out of range")
    if grid.family == RECIPROCAL:
        return int(_box_table(grid, "plain", (j, j))[i, j])
    parts = ("plain", "star") if part == "both" else (part,)
    return sum(int(_box_table(grid, p, (j, j))[i, j]) for p in parts)
