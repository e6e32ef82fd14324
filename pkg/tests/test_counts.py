import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lwdisc.counts import (
    CLOSED,
    OPEN,
    REGION_B,
    REGION_D,
    PythTuple,
    binomial_row,
    count_family,
    enumerate_tuples,
    exact_binomial,
    family_probability,
    first_offset,
    halving_identity_check,
    region_size,
    second_offset,
    split_degree,
)
from lwdisc.littlewood import RECIPROCAL, SKEW, build_family, enumerate_family, square_criterion

FAMILIES = [RECIPROCAL, SKEW]


def naive_tuples(region, bound, strict=False):
    out = []
    for k in range(1, bound + 1, 2):
        for r in range(2, bound + 1):
            for s in range(1, r):
                if math.gcd(r, s) != 1 or (r + s) % 2 == 0:
                    continue
                vals = [k * (r * r + s * s)] if region == REGION_B else [k * (r * r - s * s), 2 * k * r * s]
                if all(v < bound if strict else v <= bound for v in vals):
                    out.append((k, r, s))
    return out


def criterion_count(family, degree):
    return sum(square_criterion(build_family(s), family) for s in enumerate_family(family, degree))


def test_tuple_examples():
    as_triples = lambda it: [(t.k, t.r, t.s) for t in it]
    assert as_triples(enumerate_tuples(REGION_B, 5)) == [(1, 2, 1)]
    assert as_triples(enumerate_tuples(REGION_B, 25)) == [(1, 2, 1), (1, 3, 2), (1, 4, 1), (1, 4, 3), (3, 2, 1), (5, 2, 1)]
    assert as_triples(enumerate_tuples(REGION_D, 12)) == [(1, 2, 1), (1, 3, 2), (3, 2, 1)]
    assert list(enumerate_tuples(REGION_B, 4)) == []


def test_tuple_invariants():
    with pytest.raises(ValueError):
        PythTuple(2, 2, 1)
    with pytest.raises(ValueError):
        PythTuple(1, 3, 1)
    with pytest.raises(ValueError):
        PythTuple(1, 4, 2)
    t = PythTuple(3, 2, 1)
    assert (t.circle_norm, t.leg, t.twice_area) == (15, 9, 12)
    assert t.leg**2 + t.twice_area**2 == t.circle_norm**2


@pytest.mark.parametrize("region", [REGION_B, REGION_D])
@pytest.mark.parametrize("bound", [0, 5, 12, 37, 100, 257])
def test_enumeration_matches_naive(region, bound):
    got = [(t.k, t.r, t.s) for t in enumerate_tuples(region, bound)]
    assert got == naive_tuples(region, bound)
    opened = [(t.k, t.r, t.s) for t in enumerate_tuples(region, bound, OPEN)]
    assert opened == naive_tuples(region, bound, strict=True)


def test_k_classes_partition():
    whole = sorted((t.k, t.r, t.s) for t in enumerate_tuples(REGION_D, 500))
    parts = []
    for i in range(3):
        parts += [(t.k, t.r, t.s) for t in enumerate_tuples(REGION_D, 500, CLOSED, (i, 3))]
    assert sorted(parts) == whole


def test_region_size_examples():
    assert region_size(REGION_B, 4) == 0
    assert region_size(REGION_B, 25) == 6
    assert region_size(REGION_D, 4) == 1


@pytest.mark.parametrize("region", [REGION_B, REGION_D])
@pytest.mark.parametrize("boundary", [CLOSED, OPEN])
def test_region_size_matches_enumeration(region, boundary):
    for bound in (1, 50, 1000, 5000):
        assert region_size(region, bound, boundary) == sum(1 for _ in enumerate_tuples(region, bound, boundary))


def test_region_growth_envelope():
    n = 10**7
    alpha = math.asinh(1) / 2
    assert 0.75 <= region_size(REGION_B, n) / (n * math.log(n) / (4 * math.pi)) <= 1.25
    assert 0.75 <= region_size(REGION_D, n) / (2 * alpha / math.pi**2 * n * math.log(n)) <= 1.25


def test_exact_binomial():
    assert exact_binomial(4, 2) == 6
    assert exact_binomial(2, 5) == 0
    assert exact_binomial(2, -1) == 0
    c = exact_binomial(2000, 1000)
    incremental = 1
    for j in range(1000):
        incremental = incremental * (2000 - j) // (j + 1)
    assert c == incremental == math.factorial(2000) // math.factorial(1000) ** 2


def test_binomial_row():
    for top in (0, 1, 7, 40):
        assert binomial_row(top) == tuple(math.comb(top, j) for j in range(top + 1))


def test_split_degree():
    assert split_degree(8) == (1, False)
    assert split_degree(14) == (2, True)
    for bad in (12, 10, 7, 2, 4):
        with pytest.raises(ValueError):
            split_degree(bad)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("degree", [6, 8, 14, 16, 22, 24, 30, 32])
def test_count_matches_criterion_enumeration(family, degree):
    res = count_family(family, degree)
    assert res.count == criterion_count(family, degree)


def test_count_examples():
    assert count_family(RECIPROCAL, 8).count == 10
    assert count_family(RECIPROCAL, 8).tuple_terms == 1
    assert family_probability(RECIPROCAL, 8) == Fraction(10, 16)


def test_count_rejects_unsupported_degrees():
    with pytest.raises(ValueError, match="2 or 4 mod 8"):
        count_family(RECIPROCAL, 12)
    with pytest.raises(ValueError, match="odd"):
        count_family(SKEW, 9)


@pytest.mark.parametrize("family", FAMILIES)
def test_truncation_bound_is_tight(family):
    # the container 5n used for the asymptotics gives the same totals
    for degree in (64, 302, 1000):
        n = (degree + 2) // 8
        assert count_family(family, degree).count == count_family(family, degree, bound=5 * n).count


@pytest.mark.parametrize("family", FAMILIES)
def test_count_partition_independent(family):
    base = count_family(family, 2000)
    assert count_family(family, 2000, parallel=3) == base


@pytest.mark.parametrize("family", FAMILIES)
def test_offsets_integral_up_to_2000(family):
    for degree in range(6, 2001, 8):
        for shifted, d in ((True, degree), (False, degree + 2)):
            n = (d + 2) // 8 if shifted else d // 8
            region = REGION_B if family == RECIPROCAL else REGION_D
            for t in enumerate_tuples(region, 4 * n + 1):
                first_offset(t.k, t.r, t.s)
                second_offset(family, shifted, t.k, t.r, t.s)


def test_probability_in_unit_interval():
    for degree in range(6, 201, 2):
        if degree % 8 in (0, 6):
            for family in FAMILIES:
                assert 0 <= family_probability(family, degree) <= 1


def test_halving_examples():
    assert halving_identity_check(2, 1)
    assert halving_identity_check(5, 5)
    assert halving_identity_check(100, 37)


@given(st.integers(1, 120), st.data())
def test_halving_property(n, data):
    n0 = data.draw(st.integers(0, n))
    assert halving_identity_check(n, n0)


@pytest.mark.parametrize("family", FAMILIES)
def test_shifted_ratio_near_half(family):
    q = Fraction(count_family(family, 7998).count, count_family(family, 8000).count)
    assert 0.45 <= q <= 0.55
