"""Truncated formal power series in q over the rationals.

A :class:`TruncatedSeries` of order N knows its coefficients of q^0..q^N
and nothing beyond.  Binary operations return the smaller of the two
orders.  Coefficients are held as integer numerators over one common
positive denominator (kept in lowest terms), so the inner products run on
the integer kernels in :mod:`strangeq.kernels`.

The ``ps_*`` functions build the series needed to check the strange-series
identities coefficient by coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .params import ParamSet, alpha_minus_beta, expand_linear_product

Rat = Fraction


class NonUnitSeriesError(ZeroDivisionError):
    pass


def _common(fracs):
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return [f.numerator * (den // f.denominator) for f in fracs], den


class TruncatedSeries:
    """Power series in q known modulo q^(order+1)."""

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs=()):
        if order < 0:
            raise ValueError("order must be non-negative")
        fr = [Fraction(c) for c in list(coeffs)[: order + 1]]
        fr += [Fraction(0)] * (order + 1 - len(fr))
        num, den = _common(fr)
        self._set(order, num, den)

    def _set(self, order, num, den):
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.order = order
        self._num = num
        self._den = den

    @classmethod
    def _raw(cls, order, num, den=1):
        obj = cls.__new__(cls)
        obj._set(order, list(num), den)
        return obj

    @classmethod
    def one(cls, order):
        return cls._raw(order, [1] + [0] * order)

    @classmethod
    def zero(cls, order):
        return cls._raw(order, [0] * (order + 1))

    @classmethod
    def sparse(cls, terms, order):
        """Series from ``{exponent: coefficient}``; exponents above ``order`` are dropped."""
        coeffs = [Fraction(0)] * (order + 1)
        for k, c in terms.items():
            if k <= order:
                coeffs[k] += Fraction(c)
        return cls(order, coeffs)

    @property
    def coeffs(self) -> tuple:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    def __getitem__(self, k):
        return Fraction(self._num[k], self._den)

    def __len__(self):
        return self.order + 1

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self._den == other._den and self._num == other._num

    def __hash__(self):
        return hash((self.order, self._den, tuple(self._num)))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries(order={self.order}, [{shown}{more}])"

    def is_zero(self) -> bool:
        return not any(self._num)

    def truncate(self, order):
        order = min(order, self.order)
        return TruncatedSeries._raw(order, self._num[: order + 1], self._den)

    def __add__(self, other):
        return ps_add(self, _lift(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        return ps_add(self, -_lift(other, self.order))

    def __rsub__(self, other):
        return ps_add(_lift(other, self.order), -self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return ps_mul(self, other)
        c = Fraction(other)
        return TruncatedSeries._raw(
            self.order, [x * c.numerator for x in self._num], self._den * c.denominator
        )

    __rmul__ = __mul__

    def shift(self, k: int):
        """Multiply by q^k, keeping the order."""
        n = self.order
        num = [0] * min(k, n + 1) + self._num[: max(n + 1 - k, 0)]
        return TruncatedSeries._raw(n, num, self._den)

    def valuation(self):
        for k, c in enumerate(self._num):
            if c:
                return k
        return None

    def evaluate(self, q):
        """Numeric value of the polynomial sum c_k q^k (Horner)."""
        acc = 0
        for c in reversed(self._num):
            acc = acc * q + c
        return acc / self._den

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "TruncatedSeries":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])


def _lift(x, order):
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries(order, [Fraction(x)])


def ps_add(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    n = min(x.order, y.order)
    dx, dy = x._den, y._den
    g = math.gcd(dx, dy)
    fx, fy = dy // g, dx // g
    num = [a * fx + b * fy for a, b in zip(x._num[: n + 1], y._num[: n + 1])]
    return TruncatedSeries._raw(n, num, dx * fx)


def ps_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    n = min(x.order, y.order)
    return TruncatedSeries._raw(n, kernels.conv_trunc(x._num, y._num, n), x._den * y._den)


def ps_inv(x: TruncatedSeries) -> TruncatedSeries:
    n = x.order
    a0 = x._num[0]
    if a0 == 0:
        raise NonUnitSeriesError("non-unit series")
    w = kernels.inv_trunc(x._num, n)
    # x = X/d, 1/X has numerators w over a0^(n+1)
    return TruncatedSeries._raw(n, [c * x._den for c in w], a0 ** (n + 1))


def _factor_series(coeffs, step: int, order: int) -> TruncatedSeries:
    """sum_k coeffs[k] q^(k*step): a polynomial in q^step as a series."""
    terms = {}
    for k, c in enumerate(coeffs):
        if c and k * step <= order:
            terms[k * step] = c
    return TruncatedSeries.sparse(terms, order)


def _require_rational(params: ParamSet):
    if not params.is_rational:
        raise ValueError("exact series need rational parameters")


def ps_pochhammer(a, order: int) -> TruncatedSeries:
    """(a q; q)_infinity modulo q^(order+1)."""
    a = Fraction(a)
    acc = TruncatedSeries.one(order)
    if a == 0:
        return acc
    for j in range(1, order + 1):
        acc = ps_mul(acc, TruncatedSeries.sparse({0: 1, j: -a}, order))
    return acc


def product_series(params: ParamSet, order: int) -> TruncatedSeries:
    """(a_1 q, ..., a_r q; q)_inf / (b_1 q, ..., b_s q; q)_inf modulo q^(order+1)."""
    _require_rational(params)
    num = TruncatedSeries.one(order)
    for a in params.a:
        num = ps_mul(num, ps_pochhammer(a, order))
    den = TruncatedSeries.one(order)
    for b in params.b:
        den = ps_mul(den, ps_pochhammer(b, order))
    return ps_mul(num, ps_inv(den))


class _TermFactors:
    """Per-index factors prod(1 - a_i q^j) and 1 / prod(1 - b_i q^j) as series."""

    def __init__(self, params: ParamSet, order: int):
        _require_rational(params)
        self.order = order
        self.num_poly = expand_linear_product(params.a)
        self.den_poly = expand_linear_product(params.b)

    def num(self, j):
        return _factor_series(self.num_poly, j, self.order)

    def inv_den(self, j):
        if len(self.den_poly) == 1:
            return TruncatedSeries.one(self.order)
        return ps_inv(_factor_series(self.den_poly, j, self.order))


def strange_term_series(params: ParamSet, n: int, order: int) -> TruncatedSeries:
    """Unsigned term (a q; q)_n / (b q; q)_n of the generalized strange series."""
    f = _TermFactors(params, order)
    t = TruncatedSeries.one(order)
    for j in range(1, n + 1):
        t = ps_mul(ps_mul(t, f.num(j)), f.inv_den(j))
    return t


def ps_phi_plus(params: ParamSet, order: int) -> TruncatedSeries:
    """Limit of the partial sums ending at an odd index: sum_n (T_2n - T_(2n+1)).

    T_2n - T_(2n+1) = T_2n (1 - c_(2n+1)) with c_j the j-th term ratio; it is
    divisible by q^(2n+1), so indices with 2n+1 > order contribute nothing.
    """
    f = _TermFactors(params, order)
    total = TruncatedSeries.zero(order)
    t = TruncatedSeries.one(order)
    j = 0
    while j + 1 <= order:
        # here j is even and t = T_j
        nxt = ps_mul(ps_mul(t, f.num(j + 1)), f.inv_den(j + 1))
        total = total + (t - nxt)
        t = ps_mul(ps_mul(nxt, f.num(j + 2)), f.inv_den(j + 2))
        j += 2
    return total


def ps_phi_minus(params: ParamSet, order: int) -> TruncatedSeries:
    """Limit of the partial sums ending at an even index: T_0 - sum_{n>=1} (T_(2n-1) - T_2n)."""
    f = _TermFactors(params, order)
    total = TruncatedSeries.one(order)
    t = ps_mul(f.num(1), f.inv_den(1))  # T_1
    j = 1
    while j + 1 <= order:
        nxt = ps_mul(ps_mul(t, f.num(j + 1)), f.inv_den(j + 1))
        total = total - (t - nxt)
        t = ps_mul(ps_mul(nxt, f.num(j + 2)), f.inv_den(j + 2))
        j += 2
    return total


def theorem3_rhs_series(params: ParamSet, order: int) -> TruncatedSeries:
    """1 - sum_{n>=1} (-1)^n q^n (alpha(q^n) - beta(q^n)) A_(n-1) / B_n as a series."""
    _require_rational(params)
    diff = alpha_minus_beta(params).coeffs
    f = _TermFactors(params, order)
    total = TruncatedSeries.one(order)
    if all(c == 0 for c in diff):
        return total
    a_prod = TruncatedSeries.one(order)  # A_(n-1)
    b_inv = TruncatedSeries.one(order)  # 1 / B_n
    for n in range(1, order + 1):
        b_inv = ps_mul(b_inv, f.inv_den(n))
        weight = _factor_series(diff, n, order).shift(n)
        term = ps_mul(ps_mul(weight, a_prod), b_inv)
        total = total + term if n % 2 else total - term
        a_prod = ps_mul(a_prod, f.num(n))
    return total


@dataclass(frozen=True)
class SeriesCheck:
    ok: bool
    order: int
    index: int | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def to_json(self) -> dict:
        out = {"ok": self.ok, "order": self.order}
        if not self.ok:
            out.update(index=self.index, lhs=str(self.lhs), rhs=str(self.rhs))
        return out


def compare_series(x: TruncatedSeries, y: TruncatedSeries) -> SeriesCheck:
    n = min(x.order, y.order)
    xc, yc = x.truncate(n).coeffs, y.truncate(n).coeffs
    for k in range(n + 1):
        if xc[k] != yc[k]:
            return SeriesCheck(False, n, k, xc[k], yc[k])
    return SeriesCheck(True, n)


def theorem3_sides(params: ParamSet, order: int):
    """(2 * phi_plus + product, right-hand series) for the generalized identity."""
    lhs = ps_phi_plus(params, order) * 2 + product_series(params, order)
    return lhs, theorem3_rhs_series(params, order)


def ps_theorem3_check(params: ParamSet, order: int) -> SeriesCheck:
    lhs, rhs = theorem3_sides(params, order)
    return compare_series(lhs, rhs)


def _neg_q_poch_inverses(order: int, count: int):
    """Yield 1/(-q; q)_n for n = 0..count-1."""
    inv = TruncatedSeries.one(order)
    yield inv
    for n in range(1, count):
        inv = ps_mul(inv, ps_inv(TruncatedSeries.sparse({0: 1, n: 1}, order)))
        yield inv


def ps_sigma(order: int):
    """Both expansions of sigma(q): (sum q^(n(n+1)/2)/(-q;q)_n, 1 + sum (-1)^n q^(n+1) (q;q)_n)."""
    first = TruncatedSeries.zero(order)
    count = 0
    while count * (count + 1) // 2 <= order:
        count += 1
    for n, inv in enumerate(_neg_q_poch_inverses(order, count)):
        first = first + inv.shift(n * (n + 1) // 2)

    second = TruncatedSeries.one(order)
    poch = TruncatedSeries.one(order)
    for n in range(order):
        term = poch.shift(n + 1)
        second = second - term if n % 2 else second + term
        poch = ps_mul(poch, TruncatedSeries.sparse({0: 1, n + 1: -1}, order))
    return first, second


def ps_f(order: int):
    """Both expansions of f(q): (sum q^(n^2)/(-q;q)_n^2, 1 - sum_{n>=1} (-1)^n q^n/(-q;q)_n)."""
    first = TruncatedSeries.zero(order)
    count = math.isqrt(order) + 1
    for n, inv in enumerate(_neg_q_poch_inverses(order, count)):
        first = first + ps_mul(inv, inv).shift(n * n)

    second = TruncatedSeries.one(order)
    for n, inv in enumerate(_neg_q_poch_inverses(order, order + 1)):
        if n == 0:
            continue
        term = inv.shift(n)
        second = second + term if n % 2 else second - term
    return first, second
