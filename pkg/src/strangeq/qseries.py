"""Numeric q-Pochhammer symbols, infinite products and convergent q-series.

All evaluators take ``q`` (mpc, Fraction, int or complex literal), a
tolerance and a working precision, and return a :class:`SeriesValue`
whose ``tail_bound`` bounds the discarded part of the sum or product.

Products use an analytic bound on the remaining factors.  Series stop once
the term ratio has stayed below some rho < 1 for three consecutive terms;
rho is the largest of those three ratios inflated by 10 percent and the
tail is then bounded by the geometric majorant |t| rho / (1 - rho).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpc, mpfr

from .numerics import as_precision, fmt, fmt_bound, to_mpc, tol_mpfr, working
from .params import AlphaPoly, ParamSet, alpha_minus_beta, alpha_poly

DEFAULT_TOL = "1e-30"


class DomainError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    def __init__(self, j, k, message=None):
        self.j = j
        self.k = k
        super().__init__(message or f"denominator factor 1 - b_{j} q^{k} vanishes")


class NonConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SeriesValue:
    value: object
    tail_bound: object = field(default_factory=lambda: mpfr(0))
    terms_used: int = 0
    trivial_point: bool = False

    def to_json(self) -> dict:
        out = {
            "re": fmt(self.value.real),
            "im": fmt(self.value.imag),
            "tail_bound": fmt_bound(self.tail_bound),
            "terms": self.terms_used,
        }
        if self.trivial_point:
            out["note"] = "trivial point"
        return out


def _q(q, prec):
    return mpc(to_mpc(q, prec))


def _require_disk(q):
    if abs(q) >= 1:
        raise DomainError(f"|q| = {float(abs(q)):.6g} is outside the unit disk")


def iteration_cap(absq, tol) -> int:
    """10 * digits / (-log10 |q|) + 100 terms, digits taken from the tolerance."""
    digits = max(1.0, -math.log10(float(tol))) if tol > 0 else 1.0
    if absq == 0:
        return 100
    lq = -math.log10(float(absq))
    if lq <= 0:
        return 100
    return int(10 * digits / lq) + 100


def sum_series(terms, tol, cap: int) -> SeriesValue:
    """Sum an iterable of terms until the geometric tail bound drops to ``tol``.

    A finite iterable ends the sum exactly (zero tail).  Must run inside
    :func:`strangeq.numerics.working`.
    """
    total = mpc(0)
    ratios = deque(maxlen=3)
    prev = None
    n = 0
    for t in terms:
        total += t
        n += 1
        m = abs(t)
        if prev is not None:
            if prev == 0:
                ratios.clear()
            else:
                ratios.append(m / prev)
        prev = m
        if len(ratios) == 3:
            rho = mpfr("1.1") * max(ratios)
            if rho < 1:
                bound = m * rho / (1 - rho)
                if bound <= tol:
                    return SeriesValue(total, bound, n)
        if n >= cap:
            raise NonConvergenceError(f"no geometric tail bound within {cap} terms")
    return SeriesValue(total, mpfr(0), n)


def pochhammer_finite(a, q, n: int, prec=None):
    """(a; q)_n = prod_{j<n} (1 - a q^j)."""
    with working(prec):
        a = _q(a, prec)
        q = _q(q, prec)
        acc = mpc(1)
        qj = mpc(1)
        for _ in range(n):
            acc *= 1 - a * qj
            qj *= q
        return acc


def _product_tail(weight, absq, k):
    """Bound on |prod_{j>k} (1 + u_j) - 1| with sum |u_j| <= weight |q|^(k+1) / (1 - |q|)."""
    x = weight * absq ** (k + 1) / (1 - absq)
    return gmpy2.exp(2 * x) - 1


def _infinite_product(num_coeffs, den_coeffs, q, tol, cap, start):
    """prod_{k>=start} prod(1 - a q^k) / prod(1 - b q^k) with an additive tail bound."""
    absq = abs(q)
    weight = sum((abs(c) for c in num_coeffs + den_coeffs), mpfr(0))
    biggest = max((abs(c) for c in num_coeffs + den_coeffs), default=mpfr(0))
    acc = mpc(1)
    qk = q**start
    k = start
    while True:
        for c in num_coeffs:
            acc *= 1 - c * qk
        if acc == 0:
            return SeriesValue(mpc(0), mpfr(0), k - start + 1)
        for c in den_coeffs:
            acc /= 1 - c * qk
        if absq == 0 and k >= 1:
            return SeriesValue(acc, mpfr(0), k - start + 1)
        if biggest * absq ** (k + 1) <= mpfr("0.5"):
            bound = abs(acc) * _product_tail(weight, absq, k)
            if bound <= tol:
                return SeriesValue(acc, bound, k - start + 1)
        k += 1
        qk *= q
        if k - start > cap:
            raise NonConvergenceError(f"product tail not below tolerance within {cap} factors")


def pochhammer_inf(a, q, tol=DEFAULT_TOL, prec=None) -> SeriesValue:
    """(a; q)_infinity for |q| < 1."""
    with working(prec):
        a = _q(a, prec)
        q = _q(q, prec)
        _require_disk(q)
        tol = tol_mpfr(tol)
        if a == 0:
            return SeriesValue(mpc(1), mpfr(0), 0)
        res = _infinite_product([a], [], q, tol, iteration_cap(abs(q), tol), 0)
        return SeriesValue(res.value, res.tail_bound, res.terms_used, q == 0)


def _numeric(values, prec):
    return [_q(v, prec) for v in values]


def check_poles(b_values, q, cap: int, prec=None):
    """Raise PoleError if some 1 - b_j q^k (k >= 1) is within 2^(-bits/2) of zero."""
    wp = as_precision(prec)
    eps = mpfr(2) ** (-(wp.bits // 2))
    absq = abs(q)
    for j, b in enumerate(b_values, start=1):
        if b == 0:
            continue
        bq = b * q
        k = 1
        while k <= cap:
            if abs(1 - bq) < eps:
                raise PoleError(j, k)
            if abs(bq) < mpfr("0.5") and absq < 1:
                break
            bq *= q
            k += 1


def alpha_numeric(poly: AlphaPoly, prec=None) -> AlphaPoly:
    return AlphaPoly(tuple(_q(c, prec) for c in poly.coeffs))


def product_P(params: ParamSet, q, tol=DEFAULT_TOL, prec=None) -> SeriesValue:
    """(a_1 q, ..., a_r q; q)_inf / (b_1 q, ..., b_s q; q)_inf."""
    with working(prec):
        q = _q(q, prec)
        _require_disk(q)
        tol = tol_mpfr(tol)
        a = [c for c in _numeric(params.a, prec) if c != 0]
        b = [c for c in _numeric(params.b, prec)]
        cap = iteration_cap(abs(q), tol)
        check_poles(b, q, cap, prec)
        b = [c for c in b if c != 0]
        if not a and not b:
            return SeriesValue(mpc(1), mpfr(0), 0, q == 0)
        res = _infinite_product(a, b, q, tol, cap, 1)
        return SeriesValue(res.value, res.tail_bound, res.terms_used, q == 0)


class StrangeTerms:
    """Unsigned terms T_n = (a q; q)_n / (b q; q)_n, one new factor per step.

    ``exhausted`` becomes true once a numerator factor is exactly zero, after
    which every later term is zero.
    """

    def __init__(self, params: ParamSet, q, prec=None):
        self.prec = as_precision(prec)
        with working(self.prec):
            self.q = _q(q, prec)
            self.a = _numeric(params.a, prec)
            self.b = _numeric(params.b, prec)
        self.eps = mpfr(2) ** (-(self.prec.bits // 2))
        self.exhausted = False

    def __iter__(self):
        with working(self.prec):
            t = mpc(1)
            qn = mpc(1)
        n = 0
        while True:
            yield t
            n += 1
            with working(self.prec):
                qn = qn * self.q
                for c in self.a:
                    t = t * (1 - c * qn)
                for j, c in enumerate(self.b, start=1):
                    d = 1 - c * qn
                    if abs(d) < self.eps:
                        raise PoleError(j, n)
                    t = t / d
            if t == 0:
                self.exhausted = True


def strange_term(params: ParamSet, q, n: int, prec=None):
    """Unsigned n-th term (a_1 q, ..., a_r q; q)_n / (b_1 q, ..., b_s q; q)_n."""
    for k, t in enumerate(StrangeTerms(params, q, prec)):
        if k == n:
            return t


def _rhs_terms(diff, a, b, q):
    a_prod = mpc(1)
    b_prod = mpc(1)
    qn = mpc(1)
    n = 0
    while True:
        n += 1
        qn *= q
        for c in b:
            b_prod *= 1 - c * qn
        w = qn * diff(qn) * a_prod / b_prod
        yield w if n % 2 else -w
        for c in a:
            a_prod *= 1 - c * qn
        if a_prod == 0:
            return


def theorem3_rhs(params: ParamSet, q, tol=DEFAULT_TOL, prec=None) -> SeriesValue:
    """1 - sum_{n>=1} (-1)^n q^n (alpha(q^n) - beta(q^n)) (a q; q)_(n-1) / (b q; q)_n."""
    diff_exact = alpha_minus_beta(params)
    with working(prec):
        q = _q(q, prec)
        _require_disk(q)
        tol = tol_mpfr(tol)
        if diff_exact.is_zero or q == 0:
            return SeriesValue(mpc(1), mpfr(0), 0, q == 0)
        a = _numeric(params.a, prec)
        b = _numeric(params.b, prec)
        cap = iteration_cap(abs(q), tol)
        check_poles(b, q, cap, prec)
        diff = alpha_numeric(diff_exact, prec)
        s = sum_series(_rhs_terms(diff, a, b, q), tol, cap)
        return SeriesValue(1 + s.value, s.tail_bound, s.terms_used)


def _parity_terms(diff, a, b, q, start):
    """T_j q^(j+1) (alpha - beta)(q^(j+1)) / D_(j+1) for j = start, start + 2, ..."""
    t = mpc(1)
    qn = mpc(1)
    j = 0
    while True:
        qn *= q
        den = mpc(1)
        for c in b:
            den *= 1 - c * qn
        if j >= start and (j - start) % 2 == 0:
            yield t * qn * diff(qn) / den
        num = mpc(1)
        for c in a:
            num *= 1 - c * qn
        t = t * num / den
        j += 1
        if t == 0:
            return


def parity_limit(params: ParamSet, q, parity: str, tol=DEFAULT_TOL, prec=None) -> SeriesValue:
    """Limit of the odd-index (``"plus"``) or even-index (``"minus"``) partial sums.

    Regroups consecutive terms: the ``plus`` limit is sum_n (T_2n - T_(2n+1)),
    the ``minus`` limit is 1 - sum_{n>=1} (T_(2n-1) - T_2n).  Each difference
    is T_j (1 - c_(j+1)) = T_j q^(j+1) (alpha - beta)(q^(j+1)) / D_(j+1), a
    convergent series for |q| < 1.
    """
    if parity not in ("plus", "minus"):
        raise ValueError("parity must be 'plus' or 'minus'")
    diff_exact = alpha_minus_beta(params)
    with working(prec):
        q = _q(q, prec)
        _require_disk(q)
        tol = tol_mpfr(tol)
        base = mpc(0) if parity == "plus" else mpc(1)
        if diff_exact.is_zero or q == 0:
            return SeriesValue(base, mpfr(0), 0, q == 0)
        a = _numeric(params.a, prec)
        b = _numeric(params.b, prec)
        cap = iteration_cap(abs(q), tol)
        check_poles(b, q, cap, prec)
        diff = alpha_numeric(diff_exact, prec)
        start = 0 if parity == "plus" else 1
        s = sum_series(_parity_terms(diff, a, b, q, start), tol, cap)
        value = s.value if parity == "plus" else 1 - s.value
        return SeriesValue(value, s.tail_bound, s.terms_used)


def _check_neg_q(q, n, eps):
    if abs(1 + q**n) < eps:
        raise PoleError(1, n, f"factor 1 + q^{n} vanishes")


SIGMA_FORMS = ("lost-notebook", "andrews")
F_FORMS = ("ramanujan", "fine")


def _sigma_terms(q, form, eps):
    if form == "lost-notebook":
        t = mpc(1)
        n = 0
        while True:
            yield t
            n += 1
            qn = q**n
            _check_neg_q(q, n, eps)
            t = t * qn / (1 + qn)
    else:
        yield mpc(1)
        poch = mpc(1)
        qn1 = q
        n = 0
        while True:
            w = qn1 * poch
            yield -w if n % 2 else w
            poch *= 1 - qn1
            n += 1
            qn1 *= q


def _f_terms(q, form, eps):
    if form == "ramanujan":
        t = mpc(1)
        n = 0
        while True:
            yield t
            n += 1
            qn = q**n
            _check_neg_q(q, n, eps)
            t = t * q ** (2 * n - 1) / (1 + qn) ** 2
    else:
        yield mpc(1)
        inv = mpc(1)
        qn = mpc(1)
        n = 0
        while True:
            n += 1
            qn *= q
            _check_neg_q(q, n, eps)
            inv /= 1 + qn
            w = qn * inv
            yield w if n % 2 else -w


def _eval_named(terms_fn, q, tol, form, forms, prec):
    if form not in forms:
        raise ValueError(f"form must be one of {forms}")
    wp = as_precision(prec)
    with working(wp):
        q = _q(q, wp)
        _require_disk(q)
        tol = tol_mpfr(tol)
        if q == 0:
            return SeriesValue(mpc(1), mpfr(0), 1, True)
        eps = mpfr(2) ** (-(wp.bits // 2))
        return sum_series(terms_fn(q, form, eps), tol, iteration_cap(abs(q), tol))


def sigma_eval(q, tol=DEFAULT_TOL, form="lost-notebook", prec=None) -> SeriesValue:
    """sigma(q) from either of its two expansions."""
    return _eval_named(_sigma_terms, q, tol, form, SIGMA_FORMS, prec)


def f_eval(q, tol=DEFAULT_TOL, form="ramanujan", prec=None) -> SeriesValue:
    """Third-order mock theta function f(q) from either of its two expansions."""
    return _eval_named(_f_terms, q, tol, form, F_FORMS, prec)


__all__ = [
    "DEFAULT_TOL",
    "DomainError",
    "NonConvergenceError",
    "PoleError",
    "SeriesValue",
    "StrangeTerms",
    "alpha_poly",
    "check_poles",
    "f_eval",
    "iteration_cap",
    "parity_limit",
    "pochhammer_finite",
    "pochhammer_inf",
    "product_P",
    "sigma_eval",
    "strange_term",
    "sum_series",
    "theorem3_rhs",
]
