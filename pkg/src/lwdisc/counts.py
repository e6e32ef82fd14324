"""Closed binomial-sum counts of (skew-)reciprocal Littlewood polynomials.

Every count is a central term plus twice a sum over Pythagorean tuples
(k, r, s): k odd, r > s > 0 coprime with r + s odd.  The hypotenuse scale
k(r^2+s^2) drives the reciprocal formulas, the legs k(r^2-s^2) and 2krs the
skew ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from ._parallel import run_chunks
from .littlewood import RECIPROCAL, SKEW, check_family

REGION_B = "B"
REGION_D = "D"
CLOSED = "closed"
OPEN = "open"


@dataclass(frozen=True)
class PythTuple:
    k: int
    r: int
    s: int

    def __post_init__(self):
        k, r, s = self.k, self.r, self.s
        if k <= 0 or k % 2 == 0:
            raise ValueError("k must be odd and positive")
        if not r > s > 0 or math.gcd(r, s) != 1 or (r + s) % 2 == 0:
            raise ValueError("need r > s > 0 coprime of opposite parity")

    @property
    def circle_norm(self) -> int:
        return self.k * (self.r * self.r + self.s * self.s)

    @property
    def leg(self) -> int:
        return self.k * (self.r * self.r - self.s * self.s)

    @property
    def twice_area(self) -> int:
        return 2 * self.k * self.r * self.s


@dataclass(frozen=True)
class CountResult:
    family: str
    degree: int
    count: int
    tuple_terms: int
    central_term: int
    tuple_sum: int

    def __post_init__(self):
        assert self.count == self.central_term + 2 * self.tuple_sum
        assert self.count >= 0


def _check_region(region: str, boundary: str) -> None:
    if region not in (REGION_B, REGION_D):
        raise ValueError(f"unknown region {region!r}")
    if boundary not in (CLOSED, OPEN):
        raise ValueError(f"unknown boundary mode {boundary!r}")


def enumerate_tuples(
    region: str, bound: int, boundary: str = CLOSED, k_classes: tuple[int, int] = (0, 1)
) -> Iterator[PythTuple]:
    """Stream the tuples of B_bound or D_bound, k ascending, then r, then s.

    ``k_classes=(i, p)`` keeps only the i-th of p interleaved classes of odd k
    (k = 2j + 1 with j = i mod p).
    """
    _check_region(region, boundary)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    lim = bound if boundary == CLOSED else bound - 1
    part, parts = k_classes
    smallest = 5 if region == REGION_B else 4  # (r, s) = (2, 1)
    k = 2 * part + 1
    while smallest * k <= lim:
        r = 2
        while not _past_last_r(region, k, r, lim):
            for s in range(1 if r % 2 == 0 else 2, r, 2):
                if math.gcd(r, s) != 1:
                    continue
                if region == REGION_B:
                    if k * (r * r + s * s) > lim:
                        break
                elif k * (r * r - s * s) > lim or 2 * k * r * s > lim:
                    continue
                yield PythTuple(k, r, s)
            r += 1
        k += 2 * parts


def _past_last_r(region: str, k: int, r: int, lim: int) -> bool:
    if region == REGION_B:
        return k * (r * r + 1) > lim
    # max(r^2 - s^2, 2rs) >= (2*sqrt(2) - 2) r^2 > 0.82 r^2 for every s < r
    return 41 * k * r * r > 50 * lim


def _pairs_for_r(r: int) -> np.ndarray:
    s = np.arange(1 if r % 2 == 0 else 2, r, 2, dtype=np.int64)
    return s[np.gcd(s, r) == 1]


def primitive_pairs(region: str, bound: int, boundary: str = CLOSED) -> tuple[np.ndarray, np.ndarray]:
    """Arrays (r, s) of primitive pairs whose k = 1 tuple lies in the region."""
    _check_region(region, boundary)
    lim = bound if boundary == CLOSED else bound - 1
    rs, ss = [], []
    r = 2
    while not _past_last_r(region, 1, r, lim):
        s = _pairs_for_r(r)
        if region == REGION_B:
            s = s[r * r + s * s <= lim]
        else:
            s = s[(r * r - s * s <= lim) & (2 * r * s <= lim)]
        if s.size:
            rs.append(np.full(s.size, r, dtype=np.int64))
            ss.append(s)
        r += 1
    if not rs:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(rs), np.concatenate(ss)


def pair_scale(region: str, r: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Per-pair quantity that k multiplies against the bound."""
    if region == REGION_B:
        return r * r + s * s
    return np.maximum(r * r - s * s, 2 * r * s)


def region_size(region: str, bound: int, boundary: str = CLOSED) -> int:
    """|B_bound| or |D_bound|.

    Counts the odd multipliers k <= bound / scale for each primitive pair
    instead of materialising every tuple; equal to the length of
    :func:`enumerate_tuples`.
    """
    _check_region(region, boundary)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    lim = bound if boundary == CLOSED else bound - 1
    r, s = primitive_pairs(region, bound, boundary)
    if r.size == 0:
        return 0
    kmax = lim // pair_scale(region, r, s)
    return int(((kmax + 1) // 2).sum())


def exact_binomial(a: int, b: int) -> int:
    if a < 0:
        raise ValueError("a must be nonnegative")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


@lru_cache(maxsize=8)
def binomial_row(top: int) -> tuple[int, ...]:
    """C(top, j) for j = 0..top, built outward from the central value."""
    mid = top // 2
    row = [0] * (top + 1)
    row[mid] = math.comb(top, mid)
    for j in range(mid, top):
        row[j + 1] = row[j] * (top - j) // (j + 1)
    for j in range(mid, 0, -1):
        row[j - 1] = row[j] * j // (top - j + 1)
    return tuple(row)


def _row_value(row: tuple[int, ...], j: int) -> int:
    return row[j] if 0 <= j < len(row) else 0


def split_degree(degree: int) -> tuple[int, bool]:
    """Return (n, shifted) with degree = 8n (shifted False) or 8n - 2 (True)."""
    if degree % 2:
        raise ValueError("odd degree unsupported")
    if degree % 8 in (2, 4):
        raise ValueError(
            f"degree {degree} is 2 or 4 mod 8: no Littlewood polynomial of this degree has square discriminant"
        )
    if degree < 6:
        raise ValueError("degree must be at least 6")
    if degree % 8 == 0:
        return degree // 8, False
    return (degree + 2) // 8, True


def second_offset(family: str, shifted: bool, k: int, r: int, s: int) -> int:
    """Offset of the second binomial; raises if it is not an integer."""
    base = k * (r * r + s * s) if family == RECIPROCAL else k * (r * r - s * s)
    e = (k - 1) // 2 if shifted else (k + 1) // 2
    if family == SKEW:
        e += s
    num = base + (-1) ** (e % 2) - (2 if shifted else 0)
    if num % 4:
        raise ArithmeticError(f"non-integral offset for tuple {(k, r, s)} ({family}, shifted={shifted})")
    return num // 4


def first_offset(k: int, r: int, s: int) -> int:
    if (k * r * s) % 2:
        raise ArithmeticError(f"non-integral offset for tuple {(k, r, s)}")
    return k * r * s // 2


def _tuple_sum(family: str, n: int, shifted: bool, bound: int, part: int, parts: int) -> tuple[int, int]:
    region = REGION_B if family == RECIPROCAL else REGION_D
    row_a = binomial_row(2 * n)
    row_b = binomial_row(2 * n - 1) if shifted else row_a
    total = terms = 0
    for t in enumerate_tuples(region, bound, CLOSED, (part, parts)):
        a = _row_value(row_a, n + first_offset(t.k, t.r, t.s))
        if not a:
            continue
        b = _row_value(row_b, n + second_offset(family, shifted, t.k, t.r, t.s))
        if b:
            total += a * b
            terms += 1
    return total, terms


def count_family(family: str, degree: int, bound: int | None = None, parallel: int = 1) -> CountResult:
    """Exact number of monic family members of ``degree`` with square discriminant.

    Tuples are taken from B_{4n+1} (reciprocal) or D_{4n+1} (skew); every
    tuple outside pushes a binomial past its top row and contributes zero.
    """
    check_family(family)
    n, shifted = split_degree(degree)
    if bound is None:
        bound = 4 * n + 1
    central = 2 ** (2 * n - 1 if shifted else 2 * n) * math.comb(2 * n, n)
    chunks = [(family, n, shifted, bound, i, parallel) for i in range(parallel)]
    parts = run_chunks(_tuple_sum, chunks, parallel)
    tuple_sum = sum(p[0] for p in parts)
    terms = sum(p[1] for p in parts)
    return CountResult(family, degree, central + 2 * tuple_sum, terms, central, tuple_sum)


def family_probability(family: str, degree: int) -> Fraction:
    """Fraction of the 2^(degree/2) monic seeds with square discriminant."""
    p = Fraction(count_family(family, degree).count, 2 ** (degree // 2))
    assert 0 <= p <= 1
    return p


def halving_identity_check(n: int, n0: int) -> bool:
    """Check both top-row halving identities for C(2n-1, .) against C(2n, n+n0)."""
    if n < 1 or not 0 <= n0 <= n:
        raise ValueError("need n >= 1 and 0 <= n0 <= n")
    full = Fraction(exact_binomial(2 * n, n + n0))
    lower = exact_binomial(2 * n - 1, n + n0) == (Fraction(1, 2) - Fraction(n0, 2 * n)) * full
    upper = exact_binomial(2 * n - 1, n + n0 - 1) == (Fraction(1, 2) + Fraction(n0, 2 * n)) * full
    return lower and upper
