import pytest

from lwdisc import oracle
from lwdisc.counts import count_family
from lwdisc.littlewood import RECIPROCAL, SKEW, LittlewoodCode, build_family, enumerate_family, square_criterion
from lwdisc.poly import IntPolynomial, discriminant, is_perfect_square, is_squarefree


def test_brute_examples():
    assert oracle.brute_count(RECIPROCAL, 8) == 10
    assert oracle.brute_count(oracle.ALL, 4) == 0
    assert oracle.brute_count(oracle.ALL, 2) == 0
    # the four monic quadratics
    assert sorted(discriminant(IntPolynomial([a, b, 1])) for a in (1, -1) for b in (1, -1)) == [-3, -3, 5, 5]


@pytest.mark.parametrize("family", [RECIPROCAL, SKEW])
@pytest.mark.parametrize("degree", [6, 8, 14, 16, 22, 24])
def test_formula_equals_oracle(family, degree):
    assert oracle.brute_count(family, degree) == count_family(family, degree).count


def test_brute_partition_independent():
    assert oracle.brute_count(oracle.ALL, 9, False, parallel=1) == oracle.brute_count(oracle.ALL, 9, False, parallel=3)


def test_brute_guard(monkeypatch):
    with pytest.raises(ValueError, match="guard"):
        oracle.brute_count(oracle.ALL, 26)
    monkeypatch.setenv("LWD_GUARD_BITS", "4")
    with pytest.raises(ValueError, match="guard"):
        oracle.brute_count(oracle.ALL, 5)


def test_brute_rejects_bad_scope():
    with pytest.raises(ValueError):
        oracle.brute_count("cubic", 4)
    with pytest.raises(ValueError):
        oracle.brute_count(SKEW, 7)


@pytest.mark.parametrize("degree", range(2, 15, 2))
def test_all_scope_agrees_with_criterion_on_family_members(degree):
    square = set()
    top = 1 << degree
    for m in range(top):
        f = LittlewoodCode(degree, m | top).to_polynomial()
        if is_perfect_square(discriminant(f)):
            square.add(f.coeffs)
    for family in (RECIPROCAL, SKEW):
        for seed in enumerate_family(family, degree):
            f = build_family(seed)
            assert (f.coeffs in square) == square_criterion(f, family)


def test_entin():
    assert oracle.verify_entin([2, 4])
    assert oracle.verify_entin([10, 12])
    with pytest.raises(ValueError):
        oracle.verify_entin([6])


def test_disc_pn():
    assert oracle.disc_pn_closed_form(2) == -3
    assert oracle.disc_pn_closed_form(4) == 125
    assert oracle.disc_pn_check(range(1, 51))
    assert oracle.disc_pn_check([199, 200])
    with pytest.raises(ValueError):
        oracle.disc_pn_check([201])


def test_disc_pn_mod8_dichotomy():
    for n in range(2, 51, 2):
        d = discriminant(oracle.all_ones(n))
        assert d % 8 == (5 if n % 8 in (2, 4) else 1)


def test_degree_one_scan():
    (rep,) = oracle.odd_degree_scan(1)
    assert rep.total_polys == 2 and rep.square_disc_count == 2
    assert {(w.divisible_by_x_plus_1, w.divisible_by_x_minus_1) for w in rep.witnesses} == {(True, False), (False, True)}


@pytest.mark.slow
def test_scan_to_17():
    reps = oracle.odd_degree_scan(17)
    assert [r.degree for r in reps] == list(range(1, 18, 2))
    for r in reps:
        r.check()
        assert r.total_polys == 1 << r.degree
        assert all(w.has_linear_factor for w in r.witnesses)
        assert all(w.cyclotomic for w in r.witnesses)
        if r.degree >= 3:
            # (X^(n+1) - 1)(X^n + ... + 1) is Littlewood with a repeated factor
            f = oracle.repeated_factor_example((r.degree - 1) // 2)
            assert set(f.coeffs) <= {1, -1} and f.degree == r.degree
            assert not is_squarefree(f) and discriminant(f) == 0
            assert r.vanishing_disc_count >= 1


def test_scan_partition_independent():
    a = oracle.scan_degree(11, parallel=1)
    b = oracle.scan_degree(11, parallel=4)
    assert a == b


def test_scan_guards():
    with pytest.raises(ValueError):
        oracle.odd_degree_scan(23)
    with pytest.raises(ValueError):
        oracle.odd_degree_scan(8)
    with pytest.raises(ValueError):
        oracle.odd_degree_scan(31, long_run=True)


def test_checkpoint_resume(tmp_path, monkeypatch):
    path = tmp_path / "scan.tsv"
    monkeypatch.setattr(oracle, "_STEP", 256)
    full = oracle.odd_degree_scan(11, checkpoint=str(path))
    lines = path.read_text().splitlines()
    assert len(lines) == 6
    assert lines[-1].split("\t")[:2] == ["11", str(1 << 11)]
    # pretend the run died halfway through degree 11
    state = oracle.read_checkpoint(str(path))
    partial = oracle.scan_degree(11, start=0, stop=1024)
    state[11] = (partial, 1024)
    oracle.write_checkpoint(str(path), state)
    resumed = oracle.odd_degree_scan(11, checkpoint=str(path))
    assert resumed == full
    assert not list(tmp_path.glob(".scan-*"))


def test_showcase():
    rep = oracle.showcase_report()
    assert rep.ok and oracle.verify_showcase()
    assert rep.taylor_degree == 27
    assert rep.example_discriminant == 0 and rep.example_degree == 11


def test_showcase_mutation():
    coeffs = list(oracle.TAYLOR_COFACTOR.coeffs)
    coeffs[10] = 2
    rep = oracle.showcase_report(IntPolynomial(coeffs))
    assert not rep.ok
    assert rep.bad_coefficients
