"""Brute-force ground truth from full discriminants.

Nothing here uses the family square criterion; that path is what the
oracle checks.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field

from ._parallel import run_chunks, split_range
from .littlewood import (
    FAMILIES,
    LittlewoodCode,
    build_family,
    enumerate_family,
    guard_bits,
    mask_coeffs,
)
from .poly import IntPolynomial, X, cyclotomic_factors, discriminant, evaluate, is_perfect_square

ALL = "all"
SCOPES = FAMILIES + (ALL,)
ORACLE_GUARD_BITS = 25
DEFAULT_SCAN_DEGREE = 21
LONG_SCAN_DEGREE = 29
# masks per checkpoint step
_STEP = 1 << 14


def _guard(free: int, limit: int | None = None) -> None:
    if free > (guard_bits(ORACLE_GUARD_BITS) if limit is None else limit):
        raise ValueError(f"enumeration of 2^{free} polynomials exceeds the guard")


def _square_hit(d: int, require_nonzero: bool) -> bool:
    return is_perfect_square(d) and (d != 0 or not require_nonzero)


def _count_family_range(family: str, degree: int, require_nonzero: bool, start: int, stop: int) -> int:
    hits = 0
    for seed in enumerate_family(family, degree, start=start, stop=stop, guard=degree // 2):
        hits += _square_hit(discriminant(build_family(seed)), require_nonzero)
    return hits


def _count_all_range(degree: int, require_nonzero: bool, start: int, stop: int) -> int:
    hits = 0
    top = 1 << degree
    for mask in range(start, stop):
        f = IntPolynomial(mask_coeffs(degree, mask | top))
        hits += _square_hit(discriminant(f), require_nonzero)
    return hits


def brute_count(scope: str, degree: int, require_nonzero: bool = True, parallel: int = 1) -> int:
    """Monic polynomials in ``scope`` whose discriminant is a perfect square."""
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    if degree < 1:
        raise ValueError("degree must be positive")
    if scope == ALL:
        _guard(degree)
        chunks = [(degree, require_nonzero, a, b) for a, b in split_range(0, 1 << degree, parallel)]
        return sum(run_chunks(_count_all_range, chunks, parallel))
    if degree % 2:
        raise ValueError("family scopes need even degree")
    free = degree // 2
    _guard(free)
    chunks = [(scope, degree, require_nonzero, a, b) for a, b in split_range(0, 1 << free, parallel)]
    return sum(run_chunks(_count_family_range, chunks, parallel))


def verify_entin(degrees, parallel: int = 1) -> bool:
    """No Littlewood polynomial of degree 2 or 4 mod 8 has square discriminant."""
    for d in degrees:
        if d % 8 not in (2, 4):
            raise ValueError(f"degree {d} is not 2 or 4 mod 8")
    ok = True
    for d in degrees:
        rep = scan_degree(d, parallel)
        # even degree reduces mod 2 to the separable p_d, so zero never occurs
        assert rep.vanishing_disc_count == 0, f"vanishing discriminant at even degree {d}"
        ok = ok and rep.square_disc_count == 0
    return ok


def all_ones(n: int) -> IntPolynomial:
    """p_n = X^n + ... + X + 1."""
    return IntPolynomial([1] * (n + 1))


def disc_pn_closed_form(n: int) -> int:
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * (n + 1) ** (n - 1)


def disc_pn_check(n_values) -> bool:
    for n in n_values:
        if not 1 <= n <= 200:
            raise ValueError("need 1 <= n <= 200")
        d = discriminant(all_ones(n))
        if d != disc_pn_closed_form(n):
            return False
        if n % 2 == 0 and d % 8 != (5 if n % 8 in (2, 4) else 1):
            return False
    return True


@dataclass(frozen=True)
class Witness:
    mask: int
    square: bool
    cyclotomic: tuple[int, ...]
    divisible_by_x_plus_1: bool
    divisible_by_x_minus_1: bool

    @property
    def has_linear_factor(self) -> bool:
        return self.divisible_by_x_plus_1 or self.divisible_by_x_minus_1


@dataclass
class ScanReport:
    degree: int
    total_polys: int = 0
    square_disc_count: int = 0
    vanishing_disc_count: int = 0
    witnesses: list[Witness] = field(default_factory=list)

    def merge(self, other: ScanReport) -> None:
        assert other.degree == self.degree
        self.total_polys += other.total_polys
        self.square_disc_count += other.square_disc_count
        self.vanishing_disc_count += other.vanishing_disc_count
        self.witnesses.extend(other.witnesses)
        self.witnesses.sort(key=lambda w: w.mask)

    def check(self) -> None:
        assert self.square_disc_count <= self.total_polys
        assert len(self.witnesses) == self.square_disc_count
        for w in self.witnesses:
            code = LittlewoodCode(self.degree, w.mask)
            assert code.is_monic and code.to_polynomial().degree == self.degree


def _witness(mask: int, f: IntPolynomial) -> Witness:
    return Witness(mask, True, tuple(cyclotomic_factors(f)), evaluate(f, -1) == 0, evaluate(f, 1) == 0)


def _scan_range(degree: int, start: int, stop: int) -> ScanReport:
    rep = ScanReport(degree, total_polys=stop - start)
    top = 1 << degree
    for m in range(start, stop):
        mask = m | top
        f = IntPolynomial(mask_coeffs(degree, mask))
        d = discriminant(f)
        if d == 0:
            rep.vanishing_disc_count += 1
        elif is_perfect_square(d):
            rep.square_disc_count += 1
            rep.witnesses.append(_witness(mask, f))
    return rep


def scan_degree(
    degree: int, parallel: int = 1, start: int = 0, stop: int | None = None, guard: int | None = None
) -> ScanReport:
    """Scan monic Littlewood polynomials of ``degree`` with free masks in [start, stop)."""
    if degree < 1:
        raise ValueError("degree must be positive")
    _guard(degree, guard)
    stop = (1 << degree) if stop is None else stop
    rep = ScanReport(degree)
    chunks = [(degree, a, b) for a, b in split_range(start, stop, parallel)]
    for part in run_chunks(_scan_range, chunks, parallel):
        rep.merge(part)
    return rep


def _format_line(rep: ScanReport, next_mask: int) -> str:
    masks = ",".join(str(w.mask) for w in rep.witnesses)
    return f"{rep.degree}\t{next_mask}\t{rep.total_polys}\t{rep.square_disc_count}\t{rep.vanishing_disc_count}\t{masks}"


def _parse_line(line: str) -> tuple[ScanReport, int]:
    fields = line.rstrip("\n").split("\t")
    degree, next_mask, total, square, vanishing = (int(x) for x in fields[:5])
    rep = ScanReport(degree, total, square, vanishing)
    if len(fields) > 5 and fields[5]:
        for mask in map(int, fields[5].split(",")):
            rep.witnesses.append(_witness(mask, LittlewoodCode(degree, mask).to_polynomial()))
    return rep, next_mask


def read_checkpoint(path: str) -> dict[int, tuple[ScanReport, int]]:
    state: dict[int, tuple[ScanReport, int]] = {}
    if not os.path.exists(path):
        return state
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rep, nxt = _parse_line(line)
                state[rep.degree] = (rep, nxt)
    return state


def write_checkpoint(path: str, state: dict[int, tuple[ScanReport, int]]) -> None:
    """Replace the checkpoint file in one rename."""
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".scan-", suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        for degree in sorted(state):
            rep, nxt = state[degree]
            fh.write(_format_line(rep, nxt) + "\n")
    os.replace(tmp, path)


def odd_degree_scan(
    max_degree: int = DEFAULT_SCAN_DEGREE,
    parallel: int = 1,
    checkpoint: str | None = None,
    long_run: bool = False,
    min_degree: int = 1,
) -> list[ScanReport]:
    """Scan every odd degree from ``min_degree`` to ``max_degree``.

    Degrees above the default stop need ``long_run``.  With a checkpoint
    file, progress is saved every few thousand masks and a rerun resumes
    where the last one stopped.
    """
    if max_degree % 2 == 0 or max_degree < 1:
        raise ValueError("max_degree must be odd and positive")
    if max_degree > DEFAULT_SCAN_DEGREE and not long_run:
        raise ValueError(f"degrees above {DEFAULT_SCAN_DEGREE} need the long-run flag")
    if max_degree > LONG_SCAN_DEGREE:
        raise ValueError(f"max_degree is capped at {LONG_SCAN_DEGREE}")
    guard = max(LONG_SCAN_DEGREE, guard_bits(ORACLE_GUARD_BITS)) if long_run else None
    state = read_checkpoint(checkpoint) if checkpoint else {}
    reports = []
    for degree in range(min_degree | 1, max_degree + 1, 2):
        _guard(degree, guard)
        end = 1 << degree
        rep, pos = state.get(degree, (ScanReport(degree), 0))
        while pos < end:
            stop = min(end, pos + _STEP) if checkpoint else end
            rep.merge(scan_degree(degree, parallel, pos, stop, guard))
            pos = stop
            if checkpoint:
                state[degree] = (rep, pos)
                write_checkpoint(checkpoint, state)
        rep.check()
        reports.append(rep)
    return reports


def repeated_factor_example(n: int) -> IntPolynomial:
    """(X^(n+1) - 1)(X^n + ... + 1), a degree 2n+1 Littlewood polynomial."""
    return (X ** (n + 1) - 1) * all_ones(n)


TAYLOR_COFACTOR = IntPolynomial([1, 0, 0, 2, 0, 2, 1, 2, 3, 0, 3, 2, 1, 2, 0, 2, 1, 0, 1])
TAYLOR_REPEATED = IntPolynomial([-1, 0, 1, 1])  # X^3 + X^2 - 1
SEPTIC = IntPolynomial([1, 0, 1, -1, 1, -1, 0, 1])  # X^7 - X^5 + X^4 - X^3 + X^2 + 1


def taylor_polynomial(cofactor: IntPolynomial = TAYLOR_COFACTOR) -> IntPolynomial:
    return cofactor * (X**2 + 1) * (X - 1) * TAYLOR_REPEATED**2


def vanishing_example() -> IntPolynomial:
    return (X + 1) ** 2 * (X**2 - X + 1) * SEPTIC


@dataclass
class ShowcaseReport:
    taylor_degree: int
    taylor_littlewood: bool
    taylor_repeated_factor: bool
    repeated_factor_cyclotomic: tuple[int, ...]
    example_degree: int
    example_littlewood: bool
    example_discriminant: int
    bad_coefficients: list[tuple[str, int, int]]

    @property
    def ok(self) -> bool:
        return (
            self.taylor_littlewood
            and self.taylor_repeated_factor
            and not self.repeated_factor_cyclotomic
            and self.example_littlewood
            and self.example_discriminant == 0
        )


def _bad(name: str, f: IntPolynomial) -> list[tuple[str, int, int]]:
    return [(name, j, c) for j, c in enumerate(f.coeffs) if c not in (1, -1)]


def showcase_report(cofactor: IntPolynomial = TAYLOR_COFACTOR) -> ShowcaseReport:
    t = taylor_polynomial(cofactor)
    e = vanishing_example()
    bad = _bad("taylor", t) + _bad("example", e)
    _, rem = divmod(t, TAYLOR_REPEATED**2)
    return ShowcaseReport(
        taylor_degree=t.degree,
        taylor_littlewood=not _bad("taylor", t),
        taylor_repeated_factor=rem.is_zero,
        repeated_factor_cyclotomic=tuple(cyclotomic_factors(TAYLOR_REPEATED)),
        example_degree=e.degree,
        example_littlewood=not _bad("example", e),
        example_discriminant=discriminant(e),
        bad_coefficients=bad,
    )


def verify_showcase(cofactor: IntPolynomial = TAYLOR_COFACTOR) -> bool:
    return showcase_report(cofactor).ok
