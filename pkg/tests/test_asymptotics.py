import math
from fractions import Fraction

import gmpy2
import mpmath
import pytest

from lwdisc import asymptotics as asy
from lwdisc.counts import count_family
from lwdisc.littlewood import RECIPROCAL, SKEW

FAMILIES = [RECIPROCAL, SKEW]


def exact_ratio(family, n):
    c = count_family(family, 8 * n).count
    return float(Fraction(c, 16**n)) * math.sqrt(n) / math.log(n)


def exact_binomial_log(n, k):
    """log C(2n, n+k) from the exact integer."""
    c = int(gmpy2.comb(2 * n, n + k))
    shift = max(c.bit_length() - 60, 0)
    return math.log(c >> shift) + shift * math.log(2)


def test_embedded_constants():
    mpmath.mp.dps = 40
    assert abs(mpmath.mpf(asy.GAMMA_QUARTER) - mpmath.gamma(0.25)) < 1e-15
    assert abs(mpmath.mpf(asy.ALPHA) - mpmath.log(mpmath.sqrt(1 + mpmath.sqrt(2)))) < 1e-15
    assert round(asy.GAMMA_QUARTER, 10) == 3.6256099082


def test_binomial_approximation():
    n = 10**6
    central = exact_binomial_log(n, 0)
    assert abs(asy.approx_shifted_binomial_log(n, 0) / central - 1) < 1e-6
    shift = exact_binomial_log(n, 1000) - central
    approx = asy.approx_shifted_binomial_log(n, 1000) - asy.approx_shifted_binomial_log(n, 0)
    assert abs(math.exp(shift - approx) - 1) < 1e-3
    with pytest.raises(ValueError):
        asy.approx_shifted_binomial_log(10, 11)


def test_central_binomial_stirling():
    # log C(2n, n) = n log 4 - log(pi n)/2 - 1/(8n) + O(n^-3)
    for n in (10, 100, 1000):
        gap = exact_binomial_log(n, 0) - asy.approx_shifted_binomial_log(n, 0)
        assert abs(gap + 1 / (8 * n)) < 1 / n**2


def test_config_invariants():
    with pytest.raises(ValueError):
        asy.EstimatorConfig(10**5, T=5)
    with pytest.raises(ValueError):
        asy.EstimatorConfig(500)
    with pytest.raises(ValueError):
        asy.EstimatorConfig(10**6, mode="exact")
    assert asy.EstimatorConfig(500, mode="exact").bound == math.isqrt(400 * 500)


def test_ratio_at_1e11():
    rep = asy.ratio_estimate(RECIPROCAL, asy.EstimatorConfig(10**11))
    assert abs(rep.ratio - 0.099) <= 0.003
    assert math.isclose(rep.central_share + rep.tuple_share, rep.ratio, rel_tol=1e-12)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [250, 500, 1000])
def test_exact_and_gaussian_modes(family, n):
    target = exact_ratio(family, n)
    exact = asy.ratio_estimate(family, asy.EstimatorConfig(n, mode=asy.EXACT)).ratio
    assert abs(exact / target - 1) < 1e-10
    gauss = asy.ratio_estimate(family, asy.EstimatorConfig(n, enforce_range=False)).ratio
    assert abs(gauss / target - 1) < 0.01


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [10**4, 10**6, 10**9])
def test_truncation_stability(family, n):
    a = asy.ratio_estimate(family, asy.EstimatorConfig(n, T=20)).ratio
    b = asy.ratio_estimate(family, asy.EstimatorConfig(n, T=40)).ratio
    assert abs(a / b - 1) < 1e-9


def test_truncation_stability_at_1e11():
    a = asy.ratio_estimate(RECIPROCAL, asy.EstimatorConfig(10**11, T=20)).ratio
    b = asy.ratio_estimate(RECIPROCAL, asy.EstimatorConfig(10**11, T=28)).ratio
    assert abs(a / b - 1) < 1e-9


def test_estimator_partition_independent():
    cfg = asy.EstimatorConfig(10**8)
    assert asy.ratio_estimate(SKEW, cfg, parallel=1) == asy.ratio_estimate(SKEW, cfg, parallel=3)


def test_limit_constants():
    assert math.floor(asy.limit_constant(RECIPROCAL) * 10**4) == 749
    assert math.floor(asy.limit_constant(SKEW) * 10**4) == 897
    assert round(asy.limit_constant(SKEW), 4) == 0.0898
    mpmath.mp.dps = 30
    assert abs(asy.limit_constant(RECIPROCAL) - float(mpmath.gamma(0.25) ** 2 / (4 * mpmath.sqrt(2) * mpmath.pi**3))) < 1e-15


@pytest.mark.parametrize("family,value", [(RECIPROCAL, 0.834627), (SKEW, 0.891107)])
def test_quadrature(family, value):
    rep = asy.quadrature_limit_integral(family)
    assert abs(rep.quadrature - value) < 1e-6
    assert rep.error < 1e-9
    mpmath.mp.dps = 30
    if family == RECIPROCAL:
        f = lambda t: 1 / mpmath.sqrt(1 + mpmath.sin(mpmath.pi * t / 2) ** 2)
    else:
        a = mpmath.asinh(1) / 2
        f = lambda t: 1 / mpmath.sqrt(1 + mpmath.sinh(2 * a * t) ** 2)
    assert abs(rep.quadrature - float(mpmath.quad(f, [0, 1]))) < 1e-12
    assert abs(asy.integral_prefactor(family) * rep.quadrature - asy.limit_constant(family)) < 1e-9


def test_adaptive_simpson_polynomial_and_exp():
    assert abs(asy.adaptive_simpson(lambda t: t**3, 0.0, 2.0) - 4.0) < 1e-12
    assert abs(asy.adaptive_simpson(math.exp, 0.0, 1.0) - (math.e - 1)) < 1e-12


def test_convergence_table():
    rows = asy.convergence_table(RECIPROCAL, [10**6, 10**8, 10**10, 10**11])
    assert abs(rows[-1].ratio - 0.099) <= 0.003
    assert all(a.ratio > b.ratio for a, b in zip(rows, rows[1:]))
    skew = asy.convergence_table(SKEW, [10**6, 10**11])
    assert skew[0].ratio > skew[1].ratio
    limit = asy.limit_constant(SKEW)
    assert limit < skew[1].ratio < 3 * limit
    assert skew[1].ratio_over_limit == skew[1].ratio / limit


def test_sigma_split():
    d = asy.sigma_split_diagnostic(10**8, 20)
    assert d.sigma2 / d.sigma1 < 1e-3
    assert d.sigma3_bound / d.sigma1 < 1e-2
    assert asy.sigma_split_diagnostic(10**6, 1).sigma1 > 0
    with pytest.raises(ValueError):
        asy.sigma_split_diagnostic(10**5, 4)


def test_sigma_split_adds_up():
    # with N large enough Sigma_1 holds the whole truncated tuple share
    n = 10**6
    d = asy.sigma_split_diagnostic(n, 20)
    rep = asy.ratio_estimate(RECIPROCAL, asy.EstimatorConfig(n, T=20))
    assert math.isclose(2 * d.sigma1, rep.tuple_share, rel_tol=1e-12)
