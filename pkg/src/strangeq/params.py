"""Parameter lists a_1..a_r, b_1..b_s and the associated alpha/beta polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numerics import cx, parse_complex


@dataclass(frozen=True)
class GaussRat:
    """Exact Gaussian rational re + im*i."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def coerce(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        return GaussRat(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.coerce(other))

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_mpc(self, prec=None):
        return cx(self.re, self.im, prec)


def exact_value(text_or_value):
    """Fraction for real literals, GaussRat for literals with an imaginary part."""
    if isinstance(text_or_value, (Fraction, GaussRat)):
        return text_or_value
    if isinstance(text_or_value, int):
        return Fraction(text_or_value)
    if not isinstance(text_or_value, (str, float)):
        # other exact ring elements (e.g. cyclotomic integers) pass through
        return text_or_value
    re_part, im_part = parse_complex(text_or_value)
    return GaussRat(re_part, im_part) if im_part else re_part


def _normalize(v):
    v = exact_value(v)
    if isinstance(v, GaussRat) and not v.im:
        return v.re
    return v


@dataclass(frozen=True)
class ParamSet:
    """Coefficients a_1..a_r (numerator) and b_1..b_s (denominator)."""

    a: tuple = ()
    b: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(_normalize(x) for x in self.a))
        object.__setattr__(self, "b", tuple(_normalize(x) for x in self.b))

    @classmethod
    def parse(cls, a_text: str | None, b_text: str | None) -> "ParamSet":
        """Build from comma-separated literal lists; an empty string is an empty list."""

        def split(t):
            if t is None:
                return ()
            return tuple(p for p in (s.strip() for s in t.split(",")) if p)

        return cls(split(a_text), split(b_text))

    @property
    def is_rational(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.a + self.b)

    def label(self) -> str:
        return f"a=({', '.join(map(str, self.a))}); b=({', '.join(map(str, self.b))})"

    def to_json(self) -> dict:
        return {"a": [str(x) for x in self.a], "b": [str(x) for x in self.b]}


def expand_linear_product(roots) -> list:
    """Coefficients (constant first) of prod(1 - c X) over ``roots``."""
    poly = [Fraction(1)]
    for c in roots:
        nxt = poly + [Fraction(0)]
        for k, pk in enumerate(poly):
            nxt[k + 1] = nxt[k + 1] - c * pk
        poly = nxt
    return poly


@dataclass(frozen=True)
class AlphaPoly:
    """alpha(X) with prod(1 - c_i X) = 1 - alpha(X) X; coefficients constant term first."""

    coeffs: tuple

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def reconstruct(self) -> list:
        """Coefficients of 1 - alpha(X) X."""
        return [Fraction(1)] + [-c for c in self.coeffs]


def alpha_poly(coeffs) -> AlphaPoly:
    prod = expand_linear_product([exact_value(c) for c in coeffs])
    return AlphaPoly(tuple(-c for c in prod[1:]))


def alpha_minus_beta(params: ParamSet) -> AlphaPoly:
    """Coefficientwise alpha_r - beta_s, padded to the longer length."""
    al = alpha_poly(params.a).coeffs
    be = alpha_poly(params.b).coeffs
    n = max(len(al), len(be))
    al = al + (Fraction(0),) * (n - len(al))
    be = be + (Fraction(0),) * (n - len(be))
    return AlphaPoly(tuple(x - y for x, y in zip(al, be)))


GRANDI = ParamSet((), ())
FTILDE = ParamSet((1,), ())
PHITILDE = ParamSet((), (-1,))

NAMED = {"Fstrange": FTILDE, "phistrange": PHITILDE, "grandi": GRANDI}
