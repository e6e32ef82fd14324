import pytest
from hypothesis import given
from hypothesis import strategies as st

from lwdisc.littlewood import (
    RECIPROCAL,
    SKEW,
    FamilySeed,
    LittlewoodCode,
    build_family,
    criterion_value,
    enumerate_family,
    even_odd_split,
    family_size,
    satisfies_functional_equation,
    square_criterion,
)
from lwdisc.poly import IntPolynomial, discriminant, evaluate, is_perfect_square


def test_seed_validation():
    with pytest.raises(ValueError, match="even degree"):
        FamilySeed(RECIPROCAL, 7, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        FamilySeed(RECIPROCAL, 4, (1, 0, 1))
    with pytest.raises(ValueError):
        FamilySeed("cubic", 4, (1, 1, 1))


def test_reciprocal_build():
    f = build_family(FamilySeed(RECIPROCAL, 4, (1, -1, 1)))
    assert f.coeffs == (1, -1, 1, -1, 1)


def test_skew_build():
    f = build_family(FamilySeed(SKEW, 4, (1, 1, 1)))
    # c_{m-t} = (-1)^t c_{m+t}
    assert f.coeffs == (1, -1, 1, 1, 1)
    assert satisfies_functional_equation(SKEW, f)


@given(st.sampled_from([RECIPROCAL, SKEW]), st.integers(1, 10), st.data())
def test_functional_equation(family, m, data):
    half = tuple(data.draw(st.lists(st.sampled_from([1, -1]), min_size=m + 1, max_size=m + 1)))
    f = build_family(FamilySeed(family, 2 * m, half))
    assert f.degree == 2 * m
    assert set(f.coeffs) <= {1, -1}
    assert satisfies_functional_equation(family, f)
    n = f.degree
    if family == RECIPROCAL:
        assert f.reverse() == f
    else:
        # f(X) = (-1)^{n(n-1)/2} X^n f(-1/X)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        mirrored = IntPolynomial([(-1) ** (n - j) * c for j, c in enumerate(f.coeffs)][::-1])
        assert f == mirrored * sign


def test_enumeration_sizes_and_order():
    seeds = list(enumerate_family(RECIPROCAL, 8))
    assert len(seeds) == family_size(8) == 16
    assert all(s.is_monic for s in seeds)
    assert [s.mask for s in seeds] == sorted(s.mask for s in seeds)
    assert len(list(enumerate_family(SKEW, 8, monic=False))) == 32


def test_enumeration_partition_is_disjoint():
    full = [s.mask for s in enumerate_family(SKEW, 10)]
    parts = [s.mask for s in enumerate_family(SKEW, 10, start=0, stop=13)] + [
        s.mask for s in enumerate_family(SKEW, 10, start=13)
    ]
    assert parts == full


def test_enumeration_guard(monkeypatch):
    with pytest.raises(ValueError, match="too large"):
        next(enumerate_family(RECIPROCAL, 200))
    monkeypatch.setenv("LWD_GUARD_BITS", "3")
    with pytest.raises(ValueError, match="too large"):
        next(enumerate_family(RECIPROCAL, 8))


def test_even_odd_split():
    f = IntPolynomial([1, 2, 3, 4, 5])
    fe, fo = even_odd_split(f)
    assert fe.coeffs == (1, 3, 5) and fo.coeffs == (2, 4)
    for x in range(-3, 4):
        assert evaluate(f, x) == evaluate(fe, x * x) + x * evaluate(fo, x * x)


def test_skew_criterion_is_norm_at_i():
    f = build_family(FamilySeed(SKEW, 6, (1, -1, 1, 1)))
    fe, fo = even_odd_split(f)
    # f(i) = fe(-1) + i fo(-1)
    assert criterion_value(f, SKEW) == evaluate(fe, -1) ** 2 + evaluate(fo, -1) ** 2


@pytest.mark.parametrize("family", [RECIPROCAL, SKEW])
def test_criterion_matches_discriminant(family):
    for degree in range(2, 17, 2):
        for seed in enumerate_family(family, degree):
            f = build_family(seed)
            d = discriminant(f)
            assert d != 0
            assert square_criterion(f, family) == is_perfect_square(d)


def test_code_roundtrip():
    f = IntPolynomial([1, -1, -1, 1])
    code = LittlewoodCode.from_polynomial(f)
    assert code.mask == 0b1001 and code.is_monic
    assert code.to_polynomial() == f
    with pytest.raises(ValueError):
        LittlewoodCode(2, 8)
