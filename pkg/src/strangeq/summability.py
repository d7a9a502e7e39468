"""Partial sums of divergent alternating series and their modified limits.

Parity convention: the "plus" limit S_plus is the limit of partial sums
whose last summand index is odd (an even number of summands), the "minus"
limit S_minus uses sums whose last index is even.  With this convention

    2 S_plus + P = R,    2 S_minus - P = R,

where R is the convergent companion series and P the infinite product,
so the partial sum S_n with last summand index n approaches
(R + (-1)^n P) / 2.  Counting N = n + 1 summands instead, the sign is
(-1)^(N+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from gmpy2 import mpc, mpfr

from .numerics import as_precision, fmt, fmt_bound, to_mpc, tol_mpfr, working
from .params import ParamSet
from .qseries import DEFAULT_TOL, SeriesValue, StrangeTerms, product_P, theorem3_rhs

CONVENTION = "S_plus: last summand index odd; S_n (last index n) -> (R + (-1)^n P) / 2"


@dataclass
class PartialSumRecord:
    terms: list
    sums: list
    cesaro: list
    alternating: bool = True
    truncated: bool = False
    precision: object = None

    @property
    def odd_subseq(self) -> list:
        """Sums S_1, S_3, ... (last summand index odd)."""
        return self.sums[1::2]

    @property
    def even_subseq(self) -> list:
        return self.sums[0::2]

    def __len__(self):
        return len(self.sums)


@dataclass(frozen=True)
class BehaviorClass:
    tag: str
    odd_limit: object = None
    even_limit: object = None

    def to_json(self) -> dict:
        return {
            "class": self.tag,
            "S_plus": _cjson(self.odd_limit),
            "S_minus": _cjson(self.even_limit),
        }


def _cjson(z):
    if z is None:
        return None
    return {"re": fmt(z.real), "im": fmt(z.imag)}


def partial_sums(terms, alternating: bool = True, count: int = 64, prec=None) -> PartialSumRecord:
    """Running sums S_0..S_(count-1) of +-terms and their Cesaro means.

    ``terms`` is an iterable of unsigned terms (consumed once, in order) or a
    callable mapping an index to a term.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    wp = as_precision(prec)
    source = (terms(n) for n in range(count)) if callable(terms) else terms
    it = iter(source)
    kept, sums, means = [], [], []
    with working(wp):
        s = mpc(0)
        running = mpc(0)
        for n in range(count):
            t = to_mpc(next(it), wp)
            kept.append(t)
            s = s - t if (alternating and n % 2) else s + t
            sums.append(s)
            running += s
            means.append(running / (n + 1))
    truncated = bool(getattr(terms, "exhausted", False))
    return PartialSumRecord(kept, sums, means, alternating, truncated, wp)


def strange_record(params: ParamSet, q, count: int, prec=None) -> PartialSumRecord:
    """Partial-sum record of the alternating generalized strange series at q."""
    return partial_sums(StrangeTerms(params, q, prec), True, count, prec)


def default_terms(q) -> int:
    """max(64, ceil(120 / -log2 |q|))."""
    aq = float(abs(to_mpc(q)))
    if aq == 0:
        return 64
    if aq >= 1:
        return 64
    return max(64, math.ceil(120 / -math.log2(aq)))


def detect_limit(seq, tol):
    """Last element if |x_(k+1) - x_k| <= tol max(1, |x_k|) for the final 4 steps, else None."""
    if len(seq) < 5:
        return None
    for k in range(len(seq) - 5, len(seq) - 1):
        if abs(seq[k + 1] - seq[k]) > tol * max(mpfr(1), abs(seq[k])):
            return None
    return seq[-1]


def parity_limits(rec: PartialSumRecord, tol=DEFAULT_TOL) -> BehaviorClass:
    if len(rec) < 8:
        raise ValueError("need at least 8 partial sums")
    with working(rec.precision):
        tol = tol_mpfr(tol)
        if rec.truncated:
            last = rec.sums[-1]
            return BehaviorClass("truncating", last, last)
        odd = detect_limit(rec.odd_subseq, tol)
        even = detect_limit(rec.even_subseq, tol)
        if odd is None or even is None:
            return BehaviorClass("divergent", odd, even)
        if abs(odd - even) <= tol * max(mpfr(1), abs(odd)):
            return BehaviorClass("convergent", odd, even)
        return BehaviorClass("two-limit-oscillatory", odd, even)


def _spread(values, ref):
    return max((abs(v - ref) for v in values), default=mpfr(0))


def cesaro_limit(rec: PartialSumRecord, tol=DEFAULT_TOL):
    """Final Cesaro mean if the means settle, else None.

    The means settle when their spread over the last half of the record is
    within tolerance or has shrunk against the preceding quarter (ratio at
    most 3/4; O(1/N) convergence gives about 1/2).  If both parity limits
    exist the result must also agree with their average up to the spread,
    otherwise None is returned.
    """
    if len(rec) < 8:
        raise ValueError("need at least 8 partial sums")
    with working(rec.precision):
        tol_m = tol_mpfr(tol)
        c = rec.cesaro
        n = len(c)
        last = c[-1]
        recent = _spread(c[n // 2 :], last)
        earlier = _spread(c[n // 4 : n // 2], last)
        scale = max(mpfr(1), abs(last))
        if not (recent <= tol_m * scale or recent <= mpfr("0.75") * earlier):
            return None
        beh = parity_limits(rec, tol)
        if beh.odd_limit is not None and beh.even_limit is not None:
            avg = (beh.odd_limit + beh.even_limit) / 2
            if abs(last - avg) > 4 * recent + tol_m * scale:
                return None
        return last


@dataclass(frozen=True)
class ClosedLimits:
    s_plus: SeriesValue
    s_minus: SeriesValue
    rhs: SeriesValue
    product: SeriesValue


def closed_form_limits(params: ParamSet, q, tol=DEFAULT_TOL, prec=None) -> ClosedLimits:
    """S_plus = (R - P) / 2 and S_minus = (R + P) / 2 from convergent expressions only."""
    wp = as_precision(prec)
    rhs = theorem3_rhs(params, q, tol, wp)
    prod = product_P(params, q, tol, wp)
    with working(wp):
        bound = (rhs.tail_bound + prod.tail_bound) / 2
        terms = max(rhs.terms_used, prod.terms_used)
        trivial = rhs.trivial_point or prod.trivial_point
        plus = SeriesValue((rhs.value - prod.value) / 2, bound, terms, trivial)
        minus = SeriesValue((rhs.value + prod.value) / 2, bound, terms, trivial)
    return ClosedLimits(plus, minus, rhs, prod)


@dataclass
class EnvelopeReport:
    passed: bool
    max_residual: object
    residuals: list = field(default_factory=list)
    decreasing: bool = True
    final_below_tol: bool = True

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": fmt_bound(self.max_residual),
            "decreasing": self.decreasing,
            "residuals": [[n, fmt_bound(r)] for n, r in self.residuals],
            "convention": CONVENTION,
        }


def envelope_residuals(rec: PartialSumRecord, rhs, prod, indices):
    """|S_n - (R + (-1)^n P) / 2| for each last summand index n in ``indices``."""
    with working(rec.precision):
        out = []
        for n in indices:
            target = (rhs + prod) / 2 if n % 2 == 0 else (rhs - prod) / 2
            out.append((n, abs(rec.sums[n] - target)))
        return out


def oscillation_envelope_check(params: ParamSet, q, N: int, tol=DEFAULT_TOL, prec=None) -> EnvelopeReport:
    """Check that the last 10 partial sums up to S_N hug (R +- P) / 2 ever more closely."""
    wp = as_precision(prec)
    if N < 10:
        raise ValueError("N must be at least 10")
    fine_tol = mpfr(tol_mpfr(tol)) * mpfr("1e-10")
    limits = closed_form_limits(params, q, fine_tol, wp)
    rec = strange_record(params, q, N + 1, wp)
    res = envelope_residuals(rec, limits.rhs.value, limits.product.value, range(N - 9, N + 1))
    with working(wp):
        tol_m = tol_mpfr(tol)
        slack = limits.rhs.tail_bound + limits.product.tail_bound
        decreasing = True
        for parity in (0, 1):
            seq = [r for n, r in res if n % 2 == parity]
            if any(b > a + slack for a, b in zip(seq, seq[1:])):
                decreasing = False
        worst = max(r for _, r in res)
        final_ok = max(r for _, r in res[-2:]) < tol_m
    return EnvelopeReport(decreasing and final_ok, worst, res, decreasing, final_ok)


def summability_report(params: ParamSet, q, count: int, tol=DEFAULT_TOL, prec=None) -> dict:
    """JSON report: behavior class, parity limits, Cesaro limit and envelope residuals."""
    wp = as_precision(prec)
    rec = strange_record(params, q, count, wp)
    beh = parity_limits(rec, tol)
    ces = cesaro_limit(rec, tol)
    out = beh.to_json()
    out["cesaro"] = _cjson(ces)
    out["terms"] = count
    out["convention"] = CONVENTION
    with working(wp):
        in_disk = abs(to_mpc(q, wp)) < 1
    if in_disk:
        limits = closed_form_limits(params, q, tol_mpfr(tol) * mpfr("1e-10"), wp)
        idx = range(max(0, count - 10), count)
        out["residuals"] = [
            [n, fmt_bound(r)] for n, r in envelope_residuals(rec, limits.rhs.value, limits.product.value, idx)
        ]
    else:
        out["residuals"] = []
    return out
