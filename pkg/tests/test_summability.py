import math

import pytest
from gmpy2 import mpc, mpfr

from strangeq.cli import cesaro_target
from strangeq.numerics import working
from strangeq.params import FTILDE, GRANDI, PHITILDE, ParamSet
from strangeq.summability import (
    cesaro_limit,
    closed_form_limits,
    default_terms,
    oscillation_envelope_check,
    parity_limits,
    partial_sums,
    strange_record,
    summability_report,
)


def test_grandi():
    rec = strange_record(GRANDI, "0.5", 64)
    beh = parity_limits(rec)
    assert beh.tag == "two-limit-oscillatory"
    assert beh.odd_limit == 0 and beh.even_limit == 1
    assert cesaro_limit(rec) == mpc("0.5")


def test_sums_and_means():
    rec = partial_sums([1, 2, 3, 4], count=4)
    assert rec.sums == [1, -1, 2, -2]
    assert rec.cesaro[-1] == 0


def test_convergent_class():
    rec = partial_sums(lambda n: mpfr(2) ** -n, count=200)
    beh = parity_limits(rec)
    assert beh.tag == "convergent"
    with working(256):
        assert abs(beh.odd_limit - mpfr(2) / 3) < mpfr("1e-50")


def test_truncating_class():
    rec = strange_record(ParamSet((2,), ()), "0.5", 64)
    assert rec.truncated
    assert parity_limits(rec).tag == "truncating"


def test_divergent_class():
    rec = strange_record(FTILDE, "1.2", 64)
    beh = parity_limits(rec)
    assert beh.tag == "divergent"
    assert cesaro_limit(rec) is None


def test_needs_enough_terms():
    with pytest.raises(ValueError):
        parity_limits(partial_sums([1] * 5, count=5))


def test_default_terms():
    assert default_terms("0.5") == 120
    assert default_terms("0.1") == 64
    assert default_terms("0.99") == math.ceil(120 / -math.log2(0.99))


@pytest.mark.parametrize("params", [FTILDE, PHITILDE, ParamSet((1, "1/2"), ("-1/2",))])
@pytest.mark.parametrize("q", ["0.5", "0.3+0.4i", "-0.6"])
def test_empirical_limits_match_closed_forms(params, q):
    count = max(200, default_terms(q) + 40)
    beh = parity_limits(strange_record(params, q, count))
    assert beh.tag == "two-limit-oscillatory"
    lim = closed_form_limits(params, q, "1e-50")
    with working(256):
        assert abs(beh.odd_limit - lim.s_plus.value) < mpfr("1e-30")
        assert abs(beh.even_limit - lim.s_minus.value) < mpfr("1e-30")
        assert abs(beh.even_limit - beh.odd_limit - lim.product.value) < mpfr("1e-30")


@pytest.mark.parametrize("which,params", [("Fstrange", FTILDE), ("phistrange", PHITILDE)])
def test_cesaro_gap_is_inverse_linear(which, params):
    rec = strange_record(params, "0.5", 1000)
    target = cesaro_target(which, params, "0.5", "1e-40", None)
    with working(256):
        fitted = [abs(rec.cesaro[n - 1] - target) * n for n in range(100, 1001, 100)]
        assert max(fitted) / min(fitted) < mpfr("1.01")
    assert cesaro_limit(rec) is not None


def test_envelope_half():
    rep = oscillation_envelope_check(FTILDE, "0.5", 60, tol="1e-15")
    assert rep.passed
    assert rep.max_residual < mpfr("1e-15")


def test_envelope_slow_convergence():
    rep = oscillation_envelope_check(FTILDE, "0.9", 200, tol="1e-6")
    assert rep.passed


def test_envelope_too_short():
    rep = oscillation_envelope_check(FTILDE, "0.9", 20, tol="1e-6")
    assert not rep.passed


def test_report_shape():
    rep = summability_report(PHITILDE, "0.5", 150)
    assert rep["class"] == "two-limit-oscillatory"
    assert rep["cesaro"] is not None
    assert len(rep["residuals"]) == 10
