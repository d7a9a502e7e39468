import cmath

import mpmath
import pytest
import sympy
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from strangeq.cyclotomic import (
    CycloInt,
    TruncationError,
    cyclo_mul,
    cyclo_poly,
    cyclo_poly_at_root,
    direct_strange_sum,
    embed_numeric,
    euler_phi,
    strange_at_root,
    truncation_length,
)
from strangeq.numerics import working
from strangeq.params import ParamSet


@pytest.mark.parametrize("m", range(1, 41))
def test_cyclotomic_polynomials_match_sympy(m):
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclo_poly(m)) == [int(c) for c in ref]
    assert euler_phi(m) == sympy.totient(m)


@pytest.mark.parametrize("m", [1, 2, 5, 12, 30, 64, 105])
def test_root_is_a_zero(m):
    assert cyclo_poly_at_root(m, 256) < mpfr(2) ** -240


def test_small_values():
    assert strange_at_root("F", 2) == CycloInt.from_int(2, 3)
    assert strange_at_root("Ftilde", 2) == CycloInt.from_int(2, -1)
    # 1 + (1 - z) + (1 - z)(1 - z^2) with (1 - z)(1 - z^2) = 3 at a cube root of unity
    assert strange_at_root("F", 3) == CycloInt.from_poly(3, [5, -1])
    assert strange_at_root("F", 4) == CycloInt.from_poly(4, [8, -3])


def mp_direct_F(m, alternating):
    with mpmath.workdps(60):
        q = mpmath.exp(2j * mpmath.pi / m)
        t, s = mpmath.mpc(1), mpmath.mpc(0)
        for n in range(m):
            s += -t if (alternating and n % 2) else t
            t *= 1 - q ** (n + 1)
        return complex(s)


@pytest.mark.parametrize("m", range(1, 25))
@pytest.mark.parametrize("kind", ["F", "Ftilde"])
def test_against_mpmath_sum(kind, m):
    value = complex(embed_numeric(strange_at_root(kind, m), 128))
    ref = mp_direct_F(m, kind == "Ftilde")
    assert cmath.isclose(value, ref, rel_tol=1e-12, abs_tol=1e-12)


@pytest.mark.parametrize("m", [6, 11, 24])
def test_embed_vs_direct(m):
    with working(256):
        diff = abs(embed_numeric(strange_at_root("F", m), 256) - direct_strange_sum("F", m, prec=256))
        assert diff < mpfr(2) ** -128


def test_truncation_length():
    assert truncation_length("F", 5) == 5
    assert truncation_length("Phi", 6, ParamSet((1,), ())) == 6


def test_phi_with_cyclotomic_parameter():
    m = 8
    z3 = CycloInt.zeta(m, 3)
    params = ParamSet((z3,), ())
    # a = zeta^3 vanishes the factor 1 - a zeta^5
    assert truncation_length("Phi", m, params) == 5
    val = strange_at_root("Phi", m, params)
    with working(256):
        d = abs(embed_numeric(val) - direct_strange_sum("Phi", m, params, terms=5))
        assert d < mpfr(2) ** -200


def test_phi_without_vanishing_factor():
    with pytest.raises(TruncationError):
        strange_at_root("Phi", 5, ParamSet((2,), ()))


def test_phi_rejects_denominators():
    with pytest.raises(TruncationError):
        strange_at_root("Phi", 5, ParamSet((1,), (1,)))


def test_mismatched_orders():
    with pytest.raises(ValueError):
        cyclo_mul(CycloInt.zeta(5), CycloInt.zeta(7))


def test_zeta_power_cycles():
    z = CycloInt.zeta(9)
    assert z**9 == CycloInt.from_int(9, 1)
    assert z**4 == CycloInt.zeta(9, 4)


elements = st.integers(min_value=1, max_value=30).flatmap(
    lambda m: st.tuples(
        *(st.lists(st.integers(-50, 50), min_size=1, max_size=2 * m).map(lambda c, m=m: CycloInt.from_poly(m, c)) for _ in range(3))
    )
)


@settings(max_examples=100)
@given(elements)
def test_ring_laws(xyz):
    x, y, z = xyz
    assert cyclo_mul(x, y) == cyclo_mul(y, x)
    assert cyclo_mul(cyclo_mul(x, y), z) == cyclo_mul(x, cyclo_mul(y, z))
    assert x * (y + z) == x * y + x * z
