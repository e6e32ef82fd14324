"""Floating-point side: Gaussian ratio estimator, limit constants, quadrature.

Everything is normalized by 16^n log n / sqrt(n); 16^n itself never appears
as a float.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._parallel import run_chunks
from .counts import (
    REGION_B,
    REGION_D,
    binomial_row,
    enumerate_tuples,
    first_offset,
    pair_scale,
    primitive_pairs,
    second_offset,
)
from .littlewood import RECIPROCAL, SKEW, check_family

GAUSSIAN = "gaussian"
EXACT = "exact"

# 30 significant digits each; checked against the C library at import.
GAMMA_QUARTER = 3.62560990822190831193068515586767
ALPHA = 0.440686793509771512616304662489  # log(sqrt(1 + sqrt 2)) = asinh(1)/2


def _self_check() -> None:
    if abs(GAMMA_QUARTER / math.gamma(0.25) - 1) > 1e-14:
        raise RuntimeError("embedded Gamma(1/4) disagrees with math.gamma")
    if abs(ALPHA / (math.asinh(1.0) / 2) - 1) > 1e-14:
        raise RuntimeError("embedded alpha disagrees with asinh(1)/2")


_self_check()

MIN_GAUSSIAN_N = 10**4
MAX_EXACT_N = 20000
# tuples expanded per numpy block; bounds peak memory, not the result
_BLOCK = 1 << 21


@dataclass(frozen=True)
class EstimatorConfig:
    n: int
    T: float = 20
    mode: str = GAUSSIAN
    # the n >= 10^4 floor is lifted only for cross-checks against exact counts
    enforce_range: bool = True

    def __post_init__(self):
        if self.mode not in (GAUSSIAN, EXACT):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.T < 8:
            raise ValueError("truncation multiplier T must be >= 8")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.mode == GAUSSIAN and self.enforce_range and self.n < MIN_GAUSSIAN_N:
            raise ValueError(f"gaussian mode needs n >= {MIN_GAUSSIAN_N}")
        if self.mode == EXACT and self.n > MAX_EXACT_N:
            raise ValueError(f"exact mode supports n <= {MAX_EXACT_N}")
        if self.n == 1:
            raise ValueError("n must be at least 2 (log n normalization)")

    @property
    def bound(self) -> int:
        """floor(T sqrt(n)), the largest admissible scale k(r^2+s^2) or leg."""
        return math.isqrt(math.floor(Fraction(self.T) ** 2 * self.n))


@dataclass(frozen=True)
class EstimateReport:
    n: int
    family: str
    ratio: float
    central_share: float
    tuple_share: float
    tuples_used: int

    def __post_init__(self):
        assert self.ratio > 0
        assert math.isclose(self.central_share + self.tuple_share, self.ratio, rel_tol=1e-12)


def approx_shifted_binomial_log(n: int, k: int) -> float:
    """log C(2n, n+k) ~ n log 4 - log(pi n)/2 - k^2/n."""
    if abs(k) > n:
        raise ValueError("need |k| <= n")
    return n * math.log(4) - 0.5 * math.log(math.pi * n) - k * k / n


def _region(family: str) -> str:
    return REGION_B if family == RECIPROCAL else REGION_D


def _expand(r: np.ndarray, s: np.ndarray, scale: np.ndarray, lim: int):
    """All (k, r, s) with k odd and k * scale <= lim, grouped by pair."""
    counts = (lim // scale + 1) // 2
    total = int(counts.sum())
    starts = np.cumsum(counts) - counts
    pos = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
    return 2 * pos + 1, np.repeat(r, counts), np.repeat(s, counts)


def _gaussian_terms(family: str, n: int, lo: int, hi: int, r: np.ndarray, s: np.ndarray) -> np.ndarray:
    """exp(-(first^2 + second^2)/n) for tuples of the pairs with lo < scale*k <= hi.

    first = krs/2 and second = (k c + sigma)/4, c = r^2 +- s^2.
    """
    region = _region(family)
    scale = pair_scale(region, r, s)
    k, rr, ss = _expand(r, s, scale, hi)
    if lo > 0:
        keep = k * pair_scale(region, rr, ss) > lo
        k, rr, ss = k[keep], rr[keep], ss[keep]
    sigma = np.where(k % 4 == 1, -1, 1)
    if family == RECIPROCAL:
        c = rr * rr + ss * ss
    else:
        c = rr * rr - ss * ss
        sigma = np.where(ss % 2 == 1, -sigma, sigma)
    a = (k * rr * ss).astype(np.float64)
    b = (k * c + sigma).astype(np.float64)
    return np.exp(-(4.0 * a * a + b * b) / (16.0 * n))


def _gaussian_chunk(family: str, n: int, lo: int, hi: int, r: np.ndarray, s: np.ndarray) -> list[np.ndarray]:
    region = _region(family)
    scale = pair_scale(region, r, s)
    per_pair = (hi // scale + 1) // 2
    out = []
    i = 0
    while i < r.size:
        # cut the pair list so that each block expands to about _BLOCK tuples
        acc = np.cumsum(per_pair[i:])
        j = i + max(int(np.searchsorted(acc, _BLOCK, side="right")), 1)
        out.append(_gaussian_terms(family, n, lo, hi, r[i:j], s[i:j]))
        i = j
    return out


def gaussian_tuple_sum(family: str, n: int, lo: int, hi: int, parallel: int = 1) -> tuple[float, int]:
    """Correctly rounded sum of the Gaussian tuple weights with lo < scale <= hi.

    The weights are summed with math.fsum, so the result does not depend on
    how the pairs are split between workers.
    """
    check_family(family)
    region = _region(family)
    r, s = primitive_pairs(region, hi)
    chunks = [(family, n, lo, hi, r[i::parallel], s[i::parallel]) for i in range(parallel)]
    arrays = list(itertools.chain.from_iterable(run_chunks(_gaussian_chunk, chunks, parallel)))
    used = sum(a.size for a in arrays)
    total = math.fsum(itertools.chain.from_iterable(a.tolist() for a in arrays))
    return total, used


def _exact_estimate(family: str, cfg: EstimatorConfig) -> EstimateReport:
    n = cfg.n
    row = binomial_row(2 * n)
    total = terms = 0
    for t in enumerate_tuples(_region(family), cfg.bound):
        a = n + first_offset(t.k, t.r, t.s)
        b = n + second_offset(family, False, t.k, t.r, t.s)
        if a <= 2 * n and 0 <= b <= 2 * n:
            total += row[a] * row[b]
            terms += 1
    norm = math.sqrt(n) / math.log(n)
    central = float(Fraction(row[n], 4**n)) * norm
    tuple_share = float(Fraction(2 * total, 16**n)) * norm
    return EstimateReport(n, family, central + tuple_share, central, tuple_share, terms)


def ratio_estimate(family: str, config: EstimatorConfig, parallel: int = 1) -> EstimateReport:
    """|R_8n| or |S_8n| divided by 16^n log n / sqrt(n).

    Gaussian mode replaces every binomial by C(2n, n) e^{-k^2/n} with
    C(2n, n) ~ 4^n / sqrt(pi n); exact mode keeps the integers but the same
    truncation k * scale <= T sqrt(n).
    """
    check_family(family)
    if config.mode == EXACT:
        return _exact_estimate(family, config)
    n = config.n
    weights, used = gaussian_tuple_sum(family, n, 0, config.bound, parallel)
    log_n = math.log(n)
    central = 1.0 / (math.sqrt(math.pi) * log_n)
    tuple_share = 2.0 * weights / (math.pi * math.sqrt(n) * log_n)
    return EstimateReport(n, family, central + tuple_share, central, tuple_share, used)


def limit_constant(family: str) -> float:
    check_family(family)
    if family == RECIPROCAL:
        return GAMMA_QUARTER**2 / (4 * math.sqrt(2) * math.pi**3)
    return 1 / (2 * math.pi**1.5)


def _simpson(f, a, b, fa, fm, fb, whole, tol, depth):
    m = (a + b) / 2
    lm, rm = (a + m) / 2, (m + b) / 2
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6 * (fa + 4 * flm + fm)
    right = (b - m) / 6 * (fm + 4 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15 * tol:
        return left + right + delta / 15
    return _simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) + _simpson(
        f, m, b, fm, frm, fb, right, tol / 2, depth - 1
    )


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-12, max_depth: int = 50) -> float:
    """Adaptive Simpson rule with Richardson correction."""
    fa, fb = f(a), f(b)
    m = (a + b) / 2
    fm = f(m)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    return _simpson(f, a, b, fa, fm, fb, whole, tol, max_depth)


@dataclass(frozen=True)
class IntegralReport:
    family: str
    quadrature: float
    closed_form: float

    @property
    def error(self) -> float:
        return abs(self.quadrature - self.closed_form)


def _integrand(family: str):
    if family == RECIPROCAL:
        return lambda t: 1.0 / math.sqrt(1.0 + math.sin(math.pi * t / 2) ** 2)
    return lambda t: 1.0 / math.sqrt(1.0 + math.sinh(2 * ALPHA * t) ** 2)


def integral_closed_form(family: str) -> float:
    check_family(family)
    if family == RECIPROCAL:
        return GAMMA_QUARTER**2 / math.sqrt(8 * math.pi**3)
    return math.pi / (8 * ALPHA)


def quadrature_limit_integral(family: str, tol: float = 1e-12) -> IntegralReport:
    check_family(family)
    value = adaptive_simpson(_integrand(family), 0.0, 1.0, tol)
    return IntegralReport(family, value, integral_closed_form(family))


def integral_prefactor(family: str) -> float:
    """Constant turning the limit integral into the limit constant."""
    if family == RECIPROCAL:
        return 1 / (2 * math.pi**1.5)
    return 4 * ALPHA / math.pi**2.5


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    ratio: float
    limit: float

    @property
    def ratio_over_limit(self) -> float:
        return self.ratio / self.limit


def convergence_table(family: str, n_values, T: float = 20, parallel: int = 1) -> list[ConvergenceRow]:
    limit = limit_constant(family)
    rows = []
    for n in n_values:
        rep = ratio_estimate(family, EstimatorConfig(n, T), parallel)
        rows.append(ConvergenceRow(n, rep.ratio, limit))
    return rows


@dataclass(frozen=True)
class SigmaSplit:
    n: int
    N: int
    sigma1: float
    sigma2: float
    sigma3_bound: float


def sigma_split_diagnostic(n: int, N: int, family: str = RECIPROCAL, parallel: int = 1) -> SigmaSplit:
    """Normalized Gaussian Sigma_1, Sigma_2 and the crude Sigma_3 bound.

    Sigma_1 takes scale <= N sqrt(n), Sigma_2 the rest up to 5 sqrt(n log n).
    The Sigma_3 bound is (number of tuples in the 5n container, from its
    asymptotic size) times the largest possible term C(2n, n)^2 e^{-log n}.
    """
    check_family(family)
    if n < 10**6:
        raise ValueError("diagnostic needs n >= 10^6")
    if N < 1:
        raise ValueError("N must be positive")
    log_n = math.log(n)
    cut = math.isqrt(N * N * n)
    top = math.isqrt(math.floor(25 * n * log_n))
    norm = 1.0 / (math.pi * math.sqrt(n) * log_n)
    s1, _ = gaussian_tuple_sum(family, n, 0, cut, parallel)
    s2 = 0.0
    if top > cut:
        s2, _ = gaussian_tuple_sum(family, n, cut, top, parallel)
    size = 5 * n * math.log(5 * n)
    size *= 1 / (4 * math.pi) if family == RECIPROCAL else 2 * ALPHA / math.pi**2
    s3 = size * norm / n
    return SigmaSplit(n, N, s1 * norm, s2 * norm, s3)
