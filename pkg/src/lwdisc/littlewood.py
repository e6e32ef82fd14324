"""(Skew-)reciprocal Littlewood polynomials and their square-discriminant test."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

from .poly import IntPolynomial, evaluate, is_perfect_square

RECIPROCAL = "reciprocal"
SKEW = "skew"
FAMILIES = (RECIPROCAL, SKEW)

# Free sign bits allowed before an enumeration refuses to start.
FAMILY_GUARD_BITS = 32
GUARD_ENV = "LWD_GUARD_BITS"


def guard_bits(default: int) -> int:
    """Enumeration guard, overridable through the ``LWD_GUARD_BITS`` variable."""
    raw = os.environ.get(GUARD_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{GUARD_ENV} must be an integer, got {raw!r}") from None


def check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return family


@dataclass(frozen=True)
class FamilySeed:
    """Upper half of a degree-2m family member.

    ``half_coeffs[t]`` is the coefficient of X^(m+t): entry 0 is the middle
    coefficient and entry m the leading one.
    """

    family: str
    degree: int
    half_coeffs: tuple[int, ...]

    def __post_init__(self):
        check_family(self.family)
        if self.degree <= 0 or self.degree % 2:
            raise ValueError("even degree required")
        if len(self.half_coeffs) != self.degree // 2 + 1:
            raise ValueError("half_coeffs must have degree/2 + 1 entries")
        if any(a not in (1, -1) for a in self.half_coeffs):
            raise ValueError("coefficients must be +1 or -1")

    @property
    def is_monic(self) -> bool:
        return self.half_coeffs[-1] == 1

    @property
    def mask(self) -> int:
        return sum(1 << t for t, a in enumerate(self.half_coeffs) if a == 1)


@dataclass(frozen=True)
class LittlewoodCode:
    """Bitmask encoding of a Littlewood polynomial: bit j set means +X^j."""

    degree: int
    mask: int

    def __post_init__(self):
        if self.degree < 0 or not 0 <= self.mask < (1 << (self.degree + 1)):
            raise ValueError("mask does not fit the degree")

    @property
    def is_monic(self) -> bool:
        return bool(self.mask >> self.degree & 1)

    def to_polynomial(self) -> IntPolynomial:
        return IntPolynomial(mask_coeffs(self.degree, self.mask))

    @classmethod
    def from_polynomial(cls, f: IntPolynomial) -> LittlewoodCode:
        if any(a not in (1, -1) for a in f.coeffs):
            raise ValueError("not a Littlewood polynomial")
        return cls(f.degree, sum(1 << j for j, a in enumerate(f.coeffs) if a == 1))


def mask_coeffs(degree: int, mask: int) -> list[int]:
    return [1 if mask >> j & 1 else -1 for j in range(degree + 1)]


def family_coeffs(family: str, half_coeffs) -> list[int]:
    """Full coefficient list (low degree first) from the upper half."""
    m = len(half_coeffs) - 1
    coeffs = [0] * (2 * m + 1)
    for t, a in enumerate(half_coeffs):
        coeffs[m + t] = a
        # skew: c_{2m-j} = (-1)^(m+j) c_j, i.e. c_{m-t} = (-1)^t c_{m+t}
        coeffs[m - t] = a if family == RECIPROCAL or t % 2 == 0 else -a
    return coeffs


def satisfies_functional_equation(family: str, f: IntPolynomial) -> bool:
    n = f.degree
    c = f.coeffs
    if family == RECIPROCAL:
        return all(c[n - j] == c[j] for j in range(n + 1))
    m = n // 2
    return n % 2 == 0 and all(c[n - j] == (-1) ** ((m + j) % 2) * c[j] for j in range(n + 1))


def build_family(seed: FamilySeed) -> IntPolynomial:
    f = IntPolynomial(family_coeffs(seed.family, seed.half_coeffs))
    assert satisfies_functional_equation(seed.family, f)
    return f


def even_odd_split(f: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """(f_e, f_o) with f(X) = f_e(X^2) + X f_o(X^2)."""
    return IntPolynomial(f.coeffs[0::2]), IntPolynomial(f.coeffs[1::2])


def criterion_value(f: IntPolynomial, family: str) -> int:
    """The integer whose squareness decides squareness of the discriminant.

    Reciprocal: (-1)^n f(1) f(-1) for degree 2n.  Skew: f(i) f(-i), computed
    as f_e(-1)^2 + f_o(-1)^2.
    """
    check_family(family)
    if f.degree % 2:
        raise ValueError("even degree required")
    if family == RECIPROCAL:
        n = f.degree // 2
        v = evaluate(f, 1) * evaluate(f, -1)
        return -v if n % 2 else v
    fe, fo = even_odd_split(f)
    return evaluate(fe, -1) ** 2 + evaluate(fo, -1) ** 2


def square_criterion(f: IntPolynomial, family: str) -> bool:
    return is_perfect_square(criterion_value(f, family))


def family_size(degree: int, monic: bool = True) -> int:
    m = degree // 2
    return 1 << (m if monic else m + 1)


def enumerate_family(
    family: str,
    degree: int,
    monic: bool = True,
    start: int = 0,
    stop: int | None = None,
    guard: int | None = None,
) -> Iterator[FamilySeed]:
    """Yield seeds in ascending bitmask order over ``[start, stop)``.

    In monic mode the mask covers a_0..a_{m-1} and a_m is fixed to +1;
    otherwise a_m is bit m of the mask.  Splitting the range into disjoint
    sub-ranges gives disjoint seed sets.
    """
    check_family(family)
    if degree <= 0 or degree % 2:
        raise ValueError("even degree required")
    m = degree // 2
    free = m if monic else m + 1
    limit = guard_bits(FAMILY_GUARD_BITS) if guard is None else guard
    if free > limit:
        raise ValueError("enumeration too large")
    total = 1 << free
    stop = total if stop is None else min(stop, total)
    for mask in range(start, stop):
        bits = mask | (1 << m) if monic else mask
        yield FamilySeed(family, degree, tuple(1 if bits >> t & 1 else -1 for t in range(m + 1)))
