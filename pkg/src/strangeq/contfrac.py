"""Euler continued fractions for the alternating strange series.

A strange series sum (-1)^n c_1 c_2 ... c_n equals

    lead / (b_0 + a_1 / (b_1 + a_2 / (b_2 + ...)))

with lead = 1, b_0 = 1, a_1 = c_1 and a_k, b_k chosen so that the k-th
convergent equals the k-th partial sum.  Convergent k is the truncation
after a_k, so convergent 0 is lead / b_0 = S_0.  In classical indexing,
where the outer ``lead /`` is the first level, the same value is
convergent k + 1; the parity used when taking limits of convergents
refers to that classical index (see :func:`f_via_cf`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from gmpy2 import mpc, mpfr

from .numerics import as_precision, to_mpc, tol_mpfr, working
from .params import PHITILDE, ParamSet
from .qseries import DEFAULT_TOL, NonConvergenceError, SeriesValue, iteration_cap, product_P


class CFError(ZeroDivisionError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"continued fraction undefined at depth {index} (zero denominator)")


@dataclass(frozen=True)
class CFSpec:
    partial_numerator: Callable  # a_k, k >= 1
    partial_denominator: Callable  # b_k, k >= 0
    description: str
    lead: object = 1


@dataclass(frozen=True)
class Convergent:
    index: int
    numerator: object
    denominator: object
    value: object

    @property
    def classical_index(self) -> int:
        return self.index + 1


def cf_strange_F(q) -> CFSpec:
    """1/(1 + (1-q)/(q + (1-q^2)/(q^2 + ...))) for sum (-1)^n (q;q)_n."""
    return CFSpec(
        partial_numerator=lambda k: 1 - q**k,
        partial_denominator=lambda k: 1 if k == 0 else q**k,
        description="Ftilde: b_0=1, a_k=1-q^k, b_k=q^k",
    )


def cf_strange_phi(q) -> CFSpec:
    """1/(1 + 1/(q + (1+q)/(q^2 + (1+q^2)/(q^3 + ...)))) for sum (-1)^n / (-q;q)_n."""
    return CFSpec(
        partial_numerator=lambda k: 1 if k == 1 else 1 + q ** (k - 1),
        partial_denominator=lambda k: 1 if k == 0 else q**k,
        description="phitilde: b_0=1, a_1=1, a_k=1+q^(k-1), b_k=q^k",
    )


def cf_strange_Phi(params: ParamSet, q) -> CFSpec:
    """Euler fraction for the generalized series from its term ratios c_k.

    a_k = c_k and b_k = 1 - c_k, where c_k = prod(1 - a_i q^k) / prod(1 - b_j q^k).
    """
    a_vals, b_vals = params.a, params.b

    def ratio(k):
        qk = q**k
        num = 1
        for c in a_vals:
            num = num * (1 - c * qk)
        den = 1
        for c in b_vals:
            den = den * (1 - c * qk)
        return num / den

    return CFSpec(
        partial_numerator=ratio,
        partial_denominator=lambda k: 1 if k == 0 else 1 - ratio(k),
        description=f"Phi {params.label()}: a_k=c_k, b_k=1-c_k",
    )


def _spec_for(which, q, params=None):
    if which == "Fstrange":
        return cf_strange_F(q)
    if which == "phistrange":
        return cf_strange_phi(q)
    if which == "Phi":
        return cf_strange_Phi(params if params is not None else ParamSet(), q)
    raise ValueError(f"unknown continued fraction {which!r}")


def _iter_convergents(spec: CFSpec):
    # inner fraction K = b_0 + a_1/(b_1 + ...) has P_k/Q_k; the full value is lead*Q_k/P_k
    p_prev, q_prev = 1, 0
    p_cur, q_cur = spec.partial_denominator(0), 1
    k = 0
    while True:
        if p_cur == 0:
            raise CFError(k)
        num = spec.lead * q_cur
        value = Fraction(num, p_cur) if isinstance(num, int) and isinstance(p_cur, int) else num / p_cur
        yield Convergent(k, num, p_cur, value)
        k += 1
        a, b = spec.partial_numerator(k), spec.partial_denominator(k)
        p_prev, p_cur = p_cur, b * p_cur + a * p_prev
        q_prev, q_cur = q_cur, b * q_cur + a * q_prev


def convergents(spec_or_which, q=None, count: int = 10, mode: str = "numeric", prec=None, params=None):
    """Convergents 0..count of a fraction.

    ``spec_or_which`` is a :class:`CFSpec` (already bound to q) or one of
    ``"Fstrange"``, ``"phistrange"``, ``"Phi"``.  In ``exact-rational`` mode q
    must be rational and every value is a Fraction.
    """
    if mode not in ("numeric", "exact-rational"):
        raise ValueError("mode must be 'numeric' or 'exact-rational'")
    if isinstance(spec_or_which, CFSpec):
        if mode == "numeric":
            wp = as_precision(prec)
            with working(wp):
                return _take(_iter_convergents(spec_or_which), count)
        return _take(_iter_convergents(spec_or_which), count)
    if mode == "exact-rational":
        qf = Fraction(q) if not isinstance(q, str) else _exact_q(q)
        return _take(_iter_convergents(_spec_for(spec_or_which, qf, params)), count)
    wp = as_precision(prec)
    with working(wp):
        qc = mpc(to_mpc(q, wp))
        p = None
        if params is not None:
            p = ParamSet(tuple(to_mpc(x, wp) for x in params.a), tuple(to_mpc(x, wp) for x in params.b))
        return _take(_iter_convergents(_spec_for(spec_or_which, qc, p)), count)


def _exact_q(text):
    from .numerics import parse_complex

    re_part, im_part = parse_complex(text)
    if im_part:
        raise ValueError("exact-rational mode needs a rational q")
    return re_part


def _take(it, count):
    out = []
    for conv in it:
        out.append(conv)
        if len(out) > count:
            break
    return out


def f_via_cf(q, tol=DEFAULT_TOL, parity: str = "even", prec=None) -> SeriesValue:
    """f(q) from the limit of even or odd convergents of the phitilde fraction.

    ``parity`` refers to the classical convergent index.  Even classical
    convergents are the partial sums ending at an odd summand index and
    pair with ``+ 1/(-q;q)_inf``; odd ones pair with ``-``.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    wp = as_precision(prec)
    prod = product_P(PHITILDE, q, tol, wp)
    with working(wp):
        tol_m = tol_mpfr(tol)
        qc = mpc(to_mpc(q, wp))
        if qc == 0:
            return SeriesValue(mpc(1), mpfr(0), 1, True)
        cap = 2 * iteration_cap(abs(qc), tol_m)
        # classical index even <=> our index odd
        want = 1 if parity == "even" else 0
        seq = []
        diffs = []
        limit = bound = None
        for conv in _iter_convergents(cf_strange_phi(qc)):
            if conv.index % 2 == want:
                seq.append(conv.value)
                if len(seq) > 1:
                    diffs.append(abs(seq[-1] - seq[-2]))
                if len(diffs) >= 4:
                    r = [diffs[-i] / diffs[-i - 1] for i in (1, 2, 3) if diffs[-i - 1] != 0]
                    if len(r) == 3:
                        rho = mpfr("1.1") * max(r)
                        if rho < 1:
                            est = diffs[-1] * rho / (1 - rho)
                            if est <= tol_m:
                                limit, bound = seq[-1], est
                                break
                    elif diffs[-1] == 0:
                        limit, bound = seq[-1], mpfr(0)
                        break
            if conv.index > cap:
                raise NonConvergenceError("convergent subsequence did not settle")
        sign = 1 if parity == "even" else -1
        value = 2 * limit + sign * prod.value
        return SeriesValue(value, 2 * bound + prod.tail_bound, conv.index + 1)


def partial_sum_table(which, q, count, params=None):
    """Exact partial sums S_0..S_count of the series matching ``which`` (rational q)."""
    if which == "Fstrange":
        params = ParamSet((1,), ())
    elif which == "phistrange":
        params = PHITILDE
    elif params is None:
        params = ParamSet()
    q = Fraction(q)
    sums = []
    t = Fraction(1)
    s = Fraction(0)
    for n in range(count + 1):
        s = s - t if n % 2 else s + t
        sums.append(s)
        qn = q ** (n + 1)
        for c in params.a:
            t *= 1 - c * qn
        for c in params.b:
            t /= 1 - c * qn
    return sums
