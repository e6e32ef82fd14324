"""Acceptance suite shared by ``lwdisc verify`` and the test-suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import asymptotics as asy
from .counts import REGION_B, REGION_D, count_family, halving_identity_check, region_size
from .lattice import HYPERBOLA, HYPERBOLA_STAR, CIRCLE, LatticeFilter, SectorSpec, count_sector
from .littlewood import FAMILIES, RECIPROCAL, SKEW, build_family, enumerate_family, square_criterion
from .oracle import brute_count, disc_pn_check, odd_degree_scan, verify_entin, verify_showcase
from .poly import discriminant, is_perfect_square

FORMULA_DEGREES = (6, 8, 14, 16, 22, 24)
# rational stand-in for tanh(alpha) = sqrt(2) - 1, just inside the hyperbolic guard
TANH_ALPHA = Fraction(41421356, 100000000)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: dict[str, str] = field(default_factory=dict)

    def line(self) -> str:
        values = ", ".join(f"{k}={v}" for k, v in self.measured.items())
        return f"{'PASS' if self.passed else 'FAIL'} [{self.number}] {self.name}: {values}"


def formula_oracle(parallel: int = 1) -> CriterionResult:
    ok = True
    measured = {}
    for family in FAMILIES:
        for d in FORMULA_DEGREES:
            formula = count_family(family, d, parallel=parallel).count
            brute = brute_count(family, d, True, parallel)
            ok = ok and formula == brute
            measured[f"{family}{d}"] = f"{formula}/{brute}"
    return CriterionResult(1, "formula-oracle", ok, measured)


def criterion_mismatches(family: str, degree: int) -> list[int]:
    """Seed masks where the square criterion and the discriminant disagree."""
    bad = []
    for seed in enumerate_family(family, degree):
        f = build_family(seed)
        if square_criterion(f, family) != is_perfect_square(discriminant(f)):
            bad.append(seed.mask)
    return bad


def criterion_equivalence(parallel: int = 1) -> CriterionResult:
    checked = 0
    mismatches = 0
    for family in FAMILIES:
        for d in range(2, 17, 2):
            mismatches += len(criterion_mismatches(family, d))
            checked += 1 << (d // 2)
    return CriterionResult(2, "criterion-equivalence", mismatches == 0, {"seeds": str(checked), "mismatches": str(mismatches)})


def entin(parallel: int = 1) -> CriterionResult:
    a = verify_entin([2, 4, 10, 12], parallel)
    b = disc_pn_check(range(2, 51, 2))
    return CriterionResult(3, "entin", a and b, {"no_square_disc": str(a), "disc_pn": str(b)})


def finite_n_ratio(parallel: int = 1) -> CriterionResult:
    rep = asy.ratio_estimate(RECIPROCAL, asy.EstimatorConfig(10**11), parallel)
    ok = abs(rep.ratio - 0.099) <= 0.003
    return CriterionResult(4, "ratio-1e11", ok, {"ratio": f"{rep.ratio:.12f}", "tuples": str(rep.tuples_used)})


def _truncate4(x: float) -> float:
    return math.floor(x * 10**4) / 10**4


def limits(parallel: int = 1) -> CriterionResult:
    rec = asy.limit_constant(RECIPROCAL)
    skew = asy.limit_constant(SKEW)
    ok = _truncate4(rec) == 0.0749 and _truncate4(skew) == 0.0897
    return CriterionResult(5, "limit-constants", ok, {"reciprocal": f"{rec:.10f}", "skew": f"{skew:.10f}"})


def quadrature(parallel: int = 1) -> CriterionResult:
    ok = True
    measured = {}
    for family in FAMILIES:
        rep = asy.quadrature_limit_integral(family)
        consistent = abs(asy.integral_prefactor(family) * rep.quadrature - asy.limit_constant(family)) < 1e-9
        ok = ok and rep.error < 1e-9 and consistent
        measured[family] = f"{rep.quadrature:.12f}"
        measured[f"{family}_err"] = f"{rep.error:.1e}"
    return CriterionResult(6, "integral-identities", ok, measured)


def lattice_asymptotics(parallel: int = 1) -> CriterionResult:
    radius = 10**4
    ok = True
    measured = {}
    cases = [(CIRCLE, Fraction(1)), (HYPERBOLA, TANH_ALPHA), (HYPERBOLA_STAR, TANH_ALPHA)]
    for kind, slope in cases:
        spec = SectorSpec.with_radius(kind, slope, radius)
        theta = math.pi / 4 if kind == CIRCLE else asy.ALPHA
        area = theta * radius**2
        opp = count_sector(spec, LatticeFilter(), parallel) / (area / 4) - 1
        cop = count_sector(spec, LatticeFilter(coprime=True), parallel) / (2 * area / math.pi**2) - 1
        ok = ok and abs(opp) < 0.01 and abs(cop) < 0.01
        measured[f"{kind}_opposite"] = f"{opp:+.2e}"
        measured[f"{kind}_coprime"] = f"{cop:+.2e}"
    return CriterionResult(7, "lattice-asymptotics", ok, measured)


def region_growth(parallel: int = 1) -> CriterionResult:
    n = 10**7
    b = region_size(REGION_B, n) / (n * math.log(n) / (4 * math.pi))
    d = region_size(REGION_D, n) / (2 * asy.ALPHA / math.pi**2 * n * math.log(n))
    ok = abs(b - 1) <= 0.25 and abs(d - 1) <= 0.25
    return CriterionResult(8, "region-growth", ok, {"B_ratio": f"{b:.6f}", "D_ratio": f"{d:.6f}"})


def halving(parallel: int = 1) -> CriterionResult:
    identities = all(halving_identity_check(n, n0) for n in range(1, 101) for n0 in range(n + 1))
    ok = identities
    measured = {"identities": str(identities)}
    for family in FAMILIES:
        full = count_family(family, 8000, parallel=parallel).count
        shifted = count_family(family, 7998, parallel=parallel).count
        q = float(Fraction(shifted, full))
        ok = ok and 0.45 <= q <= 0.55
        measured[family] = f"{q:.10f}"
    return CriterionResult(9, "halving", ok, measured)


def odd_degree(parallel: int = 1) -> CriterionResult:
    reps = odd_degree_scan(17, parallel)
    witnesses = sum(r.square_disc_count for r in reps)
    linear = all(w.has_linear_factor for r in reps for w in r.witnesses)
    showcase = verify_showcase()
    measured = {"witnesses": str(witnesses), "all_divisible_by_x_pm_1": str(linear), "showcase": str(showcase)}
    return CriterionResult(10, "odd-degree", linear and showcase, measured)


CRITERIA: dict[str, Callable[[int], CriterionResult]] = {
    "formula": formula_oracle,
    "criterion": criterion_equivalence,
    "entin": entin,
    "ratio": finite_n_ratio,
    "limits": limits,
    "quadrature": quadrature,
    "lattice": lattice_asymptotics,
    "regions": region_growth,
    "halving": halving,
    "odd": odd_degree,
}
DETERMINISM = "determinism"
NAMES = tuple(CRITERIA) + (DETERMINISM,)


def determinism(base: dict[str, CriterionResult], parallel: int = 8) -> CriterionResult:
    """Rerun criteria 1-10 at another parallelism and compare measured values."""
    differing = []
    for name, fn in CRITERIA.items():
        first = base[name] if name in base else fn(1)
        if fn(parallel).measured != first.measured:
            differing.append(name)
    return CriterionResult(11, "determinism", not differing, {"parallel": f"1 vs {parallel}", "differing": ",".join(differing) or "none"})


def run_suite(only: list[str] | None = None, parallel: int = 1) -> list[CriterionResult]:
    selected = list(only) if only else list(NAMES)
    for name in selected:
        if name not in NAMES:
            raise ValueError(f"unknown criterion {name!r}")
    results: dict[str, CriterionResult] = {}
    for name in selected:
        if name != DETERMINISM:
            results[name] = CRITERIA[name](parallel)
    if DETERMINISM in selected:
        baseline = dict(results) if parallel == 1 else {}
        results[DETERMINISM] = determinism(baseline)
    return [results[name] for name in selected]
