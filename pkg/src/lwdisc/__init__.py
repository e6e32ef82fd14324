"""Exact counts of (skew-)reciprocal Littlewood polynomials with square discriminant."""

from .counts import CountResult, PythTuple, count_family, enumerate_tuples, family_probability, region_size
from .littlewood import FAMILIES, RECIPROCAL, SKEW, FamilySeed, build_family, square_criterion
from .poly import IntPolynomial, discriminant, resultant

__all__ = [
    "CountResult",
    "FAMILIES",
    "FamilySeed",
    "IntPolynomial",
    "PythTuple",
    "RECIPROCAL",
    "SKEW",
    "build_family",
    "count_family",
    "discriminant",
    "enumerate_tuples",
    "family_probability",
    "region_size",
    "resultant",
    "square_criterion",
]
