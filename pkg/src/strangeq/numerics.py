"""Arbitrary-precision complex numbers at an explicit working precision.

Values are ``gmpy2.mpc`` objects.  Every evaluator in the package runs its
arithmetic inside :func:`working`, which installs a thread-local gmpy2
context at ``bits + GUARD_BITS`` with overflow, NaN and division by zero
turned into exceptions.
"""

from __future__ import annotations

import re
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr, mpq

GUARD_BITS = 32
DEFAULT_BITS = 256

PrecComplex = type(mpc(0))
_MPFR = type(mpfr(0))


class NumericsError(ArithmeticError):
    pass


@dataclass(frozen=True)
class WorkingPrecision:
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if int(self.bits) != self.bits or self.bits < 64:
            raise ValueError(f"precision must be an integer >= 64 bits, got {self.bits}")

    @property
    def internal_bits(self) -> int:
        return self.bits + GUARD_BITS


def as_precision(prec) -> WorkingPrecision:
    if prec is None:
        return WorkingPrecision()
    if isinstance(prec, WorkingPrecision):
        return prec
    return WorkingPrecision(int(prec))


@contextmanager
def working(prec=None):
    """Run the enclosed arithmetic at ``prec`` plus guard bits, trapping non-finite results."""
    wp = as_precision(prec)
    ctx = gmpy2.context(
        precision=wp.internal_bits,
        trap_overflow=True,
        trap_invalid=True,
        trap_divzero=True,
    )
    try:
        with ctx:
            yield wp
    except gmpy2.DivisionByZeroError as exc:
        raise ZeroDivisionError(str(exc)) from exc
    except (gmpy2.OverflowResultError, gmpy2.InvalidOperationError) as exc:
        raise NumericsError(f"non-finite intermediate result: {exc}") from exc


_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)({_NUM})?(i?)")


def parse_rational(text) -> Fraction:
    """Parse ``"3"``, ``"-1/2"``, ``"0.25"`` or ``"1e-3"`` exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(num) / Fraction(den)
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational literal {text!r}") from exc


def parse_complex(text) -> tuple[Fraction, Fraction]:
    """Parse a complex literal such as ``0.3+0.4i``, ``1/3-1/2i``, ``0.7i`` or ``-i``.

    Returns the exact real and imaginary parts.
    """
    s = str(text).replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty complex literal")
    re_part = Fraction(0)
    im_part = Fraction(0)
    pos = 0
    seen = False
    kinds = set()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse complex literal {text!r}")
        # an exponent sign is consumed by _NUM, so a bare sign here starts a new term
        if seen and not m.group(1):
            raise ValueError(f"cannot parse complex literal {text!r}")
        kind = "im" if m.group(3) else "re"
        if kind in kinds:
            raise ValueError(f"cannot parse complex literal {text!r}")
        kinds.add(kind)
        sign = -1 if m.group(1) == "-" else 1
        mag = parse_rational(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            im_part += sign * mag
        else:
            re_part += sign * mag
        pos = m.end()
        seen = True
    return re_part, im_part


def _to_mpfr(x):
    if isinstance(x, (int, Fraction, str)):
        f = parse_rational(x)
        return mpfr(mpq(f.numerator, f.denominator))
    return mpfr(x)


def cx(re_val=0, im_val=0, prec=None) -> PrecComplex:
    """Correctly rounded complex value from rational or decimal literals."""
    wp = as_precision(prec)
    with gmpy2.context(precision=wp.internal_bits):
        return mpc(_to_mpfr(re_val), _to_mpfr(im_val))


def cx_from_literal(text, prec=None) -> PrecComplex:
    re_f, im_f = parse_complex(text)
    return cx(re_f, im_f, prec)


def to_mpc(value, prec=None) -> PrecComplex:
    """Coerce ints, Fractions, Gaussian rationals, floats or mpc to mpc at ``prec``."""
    if isinstance(value, PrecComplex):
        return value
    if hasattr(value, "to_mpc"):
        return value.to_mpc(prec)
    if isinstance(value, complex):
        return cx(value.real, value.imag, prec)
    if isinstance(value, str):
        return cx_from_literal(value, prec)
    return cx(value, 0, prec)


def cx_abs(z) -> mpfr:
    """|z| correctly rounded at the current precision."""
    return abs(z)


def fmt(x) -> str:
    """Decimal string with enough digits to round-trip at the value's precision."""
    if not isinstance(x, _MPFR):
        x = mpfr(x)
    return format(x, f".{int(x.precision * 0.30103) + 2}g")


def fmt_bound(x) -> str:
    return format(x if isinstance(x, _MPFR) else mpfr(x), "e")


def root_of_unity(m: int, k: int = 1) -> PrecComplex:
    """exp(2 pi i k / m) at the current precision."""
    theta = 2 * gmpy2.const_pi() * k / m
    return mpc(gmpy2.cos(theta), gmpy2.sin(theta))


def tol_mpfr(tol) -> mpfr:
    return _to_mpfr(tol)


def prec_epsilon(prec=None) -> mpfr:
    """2^-bits for the user-facing precision."""
    wp = as_precision(prec)
    return mpfr(2) ** (-wp.bits)
