import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from strangeq.exact import (
    NonUnitSeriesError,
    TruncatedSeries,
    compare_series,
    product_series,
    ps_f,
    ps_inv,
    ps_mul,
    ps_phi_minus,
    ps_phi_plus,
    ps_pochhammer,
    ps_sigma,
    ps_theorem3_check,
    strange_term_series,
    theorem3_rhs_series,
)
from strangeq.params import FTILDE, GRANDI, PHITILDE, ParamSet

ENTRIES = [Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2")]


def test_series_mul_polynomial():
    x = TruncatedSeries(10, [1, -1])
    y = TruncatedSeries(10, [1, 0, -1])
    z = TruncatedSeries(10, [1, 0, 0, -1])
    assert list(ps_mul(ps_mul(x, y), z).coeffs[:7]) == [1, -1, -1, 0, 1, 1, -1]


def test_series_inverse_geometric():
    inv = ps_inv(TruncatedSeries(8, [1, -1]))
    assert list(inv.coeffs) == [1] * 9


def test_nonunit_inverse():
    with pytest.raises(NonUnitSeriesError):
        ps_inv(TruncatedSeries(5, [0, 1]))


def test_rational_coefficients_kept_exact():
    x = TruncatedSeries(4, [Fraction(1, 3), Fraction(2, 7)])
    y = ps_inv(x)
    assert ps_mul(x, y) == TruncatedSeries.one(4)
    assert y.coeffs[1] == Fraction(-18, 7)


def test_json_roundtrip():
    x = TruncatedSeries(5, [Fraction(1, 2), -3, 0, Fraction(7, 9)])
    assert TruncatedSeries.from_json(x.to_json()) == x


def test_shift_and_valuation():
    x = TruncatedSeries(6, [0, 0, 5, 1])
    assert x.valuation() == 2
    assert list(x.shift(3).coeffs) == [0, 0, 0, 0, 0, 5, 1]


def pentagonal(n):
    out = [0] * (n + 1)
    k = 0
    while True:
        hit = False
        for kk in {k, -k}:
            e = kk * (3 * kk - 1) // 2
            if e <= n:
                out[e] = (-1) ** (abs(kk) % 2)
                hit = True
        if not hit:
            break
        k += 1
    return out


def test_euler_pentagonal():
    assert list(ps_pochhammer(1, 120).coeffs) == pentagonal(120)


@pytest.mark.parametrize("a", [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-2)])
def test_pochhammer_matches_naive(a):
    assert list(ps_pochhammer(a, 25).coeffs) == oracle.poch(a, 25)


def test_pochhammer_shift_recurrence():
    # (a q; q)_inf = (1 - a q) (a q^2; q)_inf, checked at a = 1: (q;q) = (1-q) (q^2;q)
    n = 40
    full = ps_pochhammer(1, n)
    tail = TruncatedSeries.one(n)
    for k in range(2, n + 1):
        tail = ps_mul(tail, TruncatedSeries.sparse({0: 1, k: -1}, n))
    assert ps_mul(TruncatedSeries(n, [1, -1]), tail) == full


def test_phi_plus_examples():
    assert list(ps_phi_plus(FTILDE, 8).coeffs) == [0, 1, 0, 1, -1, 0, 0, 0, -1]
    assert list(ps_phi_plus(PHITILDE, 8).coeffs) == [0, 1, -1, 2, -2, 2, -3, 4, -4]


@pytest.mark.parametrize(
    "params",
    [FTILDE, PHITILDE, ParamSet((Fraction(1, 2), -2), (Fraction(-1, 2),)), ParamSet((), (2, Fraction(1, 2)))],
)
def test_phi_plus_matches_naive(params):
    n = 14
    assert list(ps_phi_plus(params, n).coeffs) == oracle.strange_plus(params.a, params.b, n)


def test_parity_limits_differ_by_product():
    p = ParamSet((Fraction(1, 2), 1), (-1,))
    n = 30
    assert ps_phi_minus(p, n) - ps_phi_plus(p, n) == product_series(p, n)


def test_grandi_limits():
    assert ps_phi_plus(GRANDI, 6) == TruncatedSeries.zero(6)
    assert ps_phi_minus(GRANDI, 6) == TruncatedSeries.one(6)


def test_strange_term_series():
    t = strange_term_series(FTILDE, 3, 8)
    expected = oracle.mul(oracle.mul(oracle.factor(1, 1, 8), oracle.factor(1, 2, 8), 8), oracle.factor(1, 3, 8), 8)
    assert list(t.coeffs) == expected


@pytest.mark.parametrize("params", [FTILDE, PHITILDE, GRANDI])
def test_named_identities(params):
    assert ps_theorem3_check(params, 60).ok


def test_thm1_against_sigma():
    n = 60
    lhs = ps_phi_plus(FTILDE, n) * 2 + product_series(FTILDE, n)
    assert lhs == ps_sigma(n)[0]


def test_thm2_against_f():
    n = 60
    lhs = ps_phi_plus(PHITILDE, n) * 2 + product_series(PHITILDE, n)
    assert lhs == ps_f(n)[0]


def test_sigma_and_f_two_forms():
    s1, s2 = ps_sigma(120)
    assert s1 == s2
    f1, f2 = ps_f(120)
    assert f1 == f2


def test_sigma_first_coefficients():
    # direct expansion of sum q^(n(n+1)/2) / (-q;q)_n
    n = 12
    total = [Fraction(0)] * (n + 1)
    den = oracle.one(n)
    k = 0
    while k * (k + 1) // 2 <= n:
        term = oracle.inv(den, n)
        shift = k * (k + 1) // 2
        for i in range(n + 1 - shift):
            total[i + shift] += term[i]
        k += 1
        den = oracle.mul(den, [Fraction(1)] + [Fraction(0)] * (k - 1) + [Fraction(1)], n)
    assert list(ps_sigma(n)[0].coeffs) == total


def test_compare_reports_first_mismatch():
    x = TruncatedSeries(5, [1, 2, 3])
    y = TruncatedSeries(5, [1, 2, 4])
    chk = compare_series(x, y)
    assert not chk.ok and chk.index == 2 and chk.lhs == 3 and chk.rhs == 4


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.sampled_from(ENTRIES), max_size=3),
    st.lists(st.sampled_from(ENTRIES), max_size=3),
)
def test_generalized_identity_random(a, b):
    assert ps_theorem3_check(ParamSet(tuple(a), tuple(b)), 24).ok


@settings(max_examples=100, deadline=None)
@given(
    st.fractions(max_denominator=50).filter(lambda x: x != 0),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=20), max_size=30),
)
def test_inverse_property(c0, rest):
    x = TruncatedSeries(30, [c0] + rest)
    assert ps_mul(x, ps_inv(x)) == TruncatedSeries.one(30)


def test_rhs_series_trivial_when_alpha_equals_beta():
    p = ParamSet((2,), (2,))
    assert theorem3_rhs_series(p, 10) == TruncatedSeries.one(10)


def test_random_sets_seeded():
    rng = random.Random(3)
    for _ in range(5):
        p = ParamSet(tuple(rng.choice(ENTRIES) for _ in range(3)), tuple(rng.choice(ENTRIES) for _ in range(3)))
        lhs = list(ps_phi_plus(p, 12).coeffs)
        assert lhs == oracle.strange_plus(p.a, p.b, 12)
