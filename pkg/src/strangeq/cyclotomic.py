"""Exact arithmetic in Z[zeta_m] and strange functions at roots of unity.

Elements are stored as integer coefficient vectors of length phi(m) in the
power basis 1, zeta, ..., zeta^(phi(m)-1), i.e. reduced modulo the m-th
cyclotomic polynomial.  That reduction is canonical, so equality of ring
elements is equality of coefficient tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpc

from . import kernels
from .numerics import root_of_unity, working
from .params import ParamSet


class TruncationError(ValueError):
    pass


def _poly_divexact(num, den):
    """Exact quotient of integer polynomials (constant term first), den monic up to sign."""
    num = list(num)
    dl = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dl)
    for k in range(len(num) - 1, dl - 1, -1):
        c, r = divmod(num[k], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k - dl] = c
        for t in range(dl + 1):
            num[k - dl + t] -= c * den[t]
    if any(num[:dl]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclo_poly(m: int) -> tuple:
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, list(cyclo_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclo_poly(m)) - 1


def _reduce(m, coeffs):
    mod = list(cyclo_poly(m))
    return tuple(kernels.poly_mulmod(list(coeffs), [1], mod))


@dataclass(frozen=True)
class CycloInt:
    """Element of Z[zeta_m] in canonical reduced form."""

    m: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.m):
            raise ValueError("use CycloInt.from_poly for unreduced coefficient lists")

    @classmethod
    def from_poly(cls, m, coeffs):
        return cls(m, _reduce(m, [int(c) for c in coeffs] or [0]))

    @classmethod
    def from_int(cls, m, n):
        return cls.from_poly(m, [n])

    @classmethod
    def zeta(cls, m, k=1):
        """zeta_m^k for any integer k."""
        k %= m
        return cls.from_poly(m, [0] * k + [1])

    def _check(self, other):
        if isinstance(other, int):
            return CycloInt.from_int(self.m, other)
        if not isinstance(other, CycloInt):
            raise TypeError(f"cannot combine CycloInt with {type(other).__name__}")
        if other.m != self.m:
            raise ValueError(f"mismatched cyclotomic orders {self.m} and {other.m}")
        return other

    def __add__(self, other):
        o = self._check(other)
        return CycloInt(self.m, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        return cyclo_mul(self, self._check(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not ring elements in general")
        result = CycloInt.from_int(self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return " + ".join(parts) or "0"


def cyclo_mul(x: CycloInt, y: CycloInt) -> CycloInt:
    if x.m != y.m:
        raise ValueError(f"mismatched cyclotomic orders {x.m} and {y.m}")
    mod = list(cyclo_poly(x.m))
    return CycloInt(x.m, tuple(kernels.poly_mulmod(list(x.coeffs), list(y.coeffs), mod)))


def _as_cyclo(value, m):
    if isinstance(value, CycloInt):
        if value.m != m:
            raise ValueError(f"parameter lives in Z[zeta_{value.m}], not Z[zeta_{m}]")
        return value
    f = Fraction(value)
    if f.denominator != 1:
        raise TruncationError("root-of-unity evaluation needs integer or cyclotomic parameters")
    return CycloInt.from_int(m, int(f))


def _root_setup(kind, m, params):
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError("m must be a positive integer")
    if kind == "F":
        return [CycloInt.from_int(m, 1)], False
    if kind == "Ftilde":
        return [CycloInt.from_int(m, 1)], True
    if kind == "Phi":
        if params is None:
            raise ValueError("kind 'Phi' needs params")
        if any(b != 0 for b in params.b):
            raise TruncationError("nonzero denominator parameters are not supported at roots of unity")
        return [_as_cyclo(a, m) for a in params.a], True
    raise ValueError(f"unknown kind {kind!r}")


def _truncated_sum(kind, m, params):
    a_vals, alternating = _root_setup(kind, m, params)
    one = CycloInt.from_int(m, 1)
    total = CycloInt.from_int(m, 0)
    term = one
    for n in range(4 * m + 1):
        total = total - term if (alternating and n % 2) else total + term
        zn = CycloInt.zeta(m, n + 1)
        for a in a_vals:
            term = term * (one - a * zn)
        if term.is_zero():
            return total, n + 1
    raise TruncationError("series does not truncate at this point")


def strange_at_root(kind, m: int, params: ParamSet | None = None) -> CycloInt:
    """Exact value of a strange series at zeta_m = exp(2 pi i / m).

    ``kind`` is ``"F"`` (sum of (q;q)_n), ``"Ftilde"`` (its alternating
    version) or ``"Phi"`` (the alternating generalized series with
    ``params``).  For ``"Phi"`` the denominators must be trivial (every b_j
    zero) and some numerator factor (1 - a_i zeta^j) must vanish for a
    j <= 4m; otherwise the series does not terminate and an error is raised.
    Parameter entries are integers or :class:`CycloInt` values of order m.
    """
    return _truncated_sum(kind, m, params)[0]


def truncation_length(kind, m: int, params: ParamSet | None = None) -> int:
    """Number of nonzero terms of the series at zeta_m."""
    return _truncated_sum(kind, m, params)[1]


def embed_numeric(x: CycloInt, prec=None):
    """Value at the principal root exp(2 pi i / m)."""
    with working(prec):
        z = root_of_unity(x.m)
        acc = mpc(0)
        for c in reversed(x.coeffs):
            acc = acc * z + c
        return acc


def direct_strange_sum(kind: str, m: int, params: ParamSet | None = None, terms: int | None = None, prec=None):
    """Floating-point sum of the first ``terms`` signed terms at q = exp(2 pi i / m).

    ``terms`` defaults to m for F and Ftilde.  No exact arithmetic is used,
    so this is an independent check on :func:`strange_at_root`.
    """
    a_vals, alternating = _root_setup(kind, m, params)
    if terms is None:
        if kind == "Phi":
            raise ValueError("give the number of terms for kind 'Phi'")
        terms = m
    with working(prec):
        q = root_of_unity(m)
        a_num = [embed_numeric(a, prec) for a in a_vals]
        term = mpc(1)
        total = mpc(0)
        qn = mpc(1)
        for n in range(terms):
            total = total - term if (alternating and n % 2) else total + term
            qn = qn * q
            for a in a_num:
                term = term * (1 - a * qn)
        return total


def cyclo_poly_at_root(m: int, prec=None):
    """|Phi_m(exp(2 pi i / m))|, which should vanish."""
    with working(prec):
        z = root_of_unity(m)
        acc = mpc(0)
        for c in reversed(cyclo_poly(m)):
            acc = acc * z + c
        return gmpy2.mpfr(abs(acc))
