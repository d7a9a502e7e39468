import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strangeq import _pykernels, kernels

try:
    from strangeq import _ckernels
except ImportError:  # pragma: no cover - pure-Python install
    _ckernels = None

ints = st.integers(min_value=-10**12, max_value=10**12)
series = st.lists(ints, min_size=1, max_size=25)


def naive_conv(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= n:
                out[i + j] += x * y
    return out


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


@given(series, series, st.integers(min_value=0, max_value=30))
def test_conv_matches_naive(a, b, n):
    assert _pykernels.conv_trunc(a, b, n) == naive_conv(a, b, n)


@given(series.filter(lambda s: s[0] != 0), st.integers(min_value=0, max_value=20))
def test_inv_numerators(a, n):
    a0 = a[0]
    w = _pykernels.inv_trunc(a, n)
    # w / a0^(n+1) is the inverse, so a * w = a0^(n+1) mod q^(n+1)
    prod = naive_conv(a, w, n)
    assert prod == [a0 ** (n + 1)] + [0] * n


def test_inv_rejects_nonunit():
    with pytest.raises(ZeroDivisionError):
        _pykernels.inv_trunc([0, 1], 3)


@given(st.lists(ints, min_size=1, max_size=12), st.lists(ints, min_size=1, max_size=12))
def test_mulmod_against_x4_plus_1(a, b):
    mod = [1, 0, 0, 0, 1]
    r = _pykernels.poly_mulmod(a, b, mod)
    full = naive_conv(a, b, len(a) + len(b))
    # reduce with x^4 = -1
    red = [0, 0, 0, 0]
    for k, c in enumerate(full):
        red[k % 4] += c if (k // 4) % 2 == 0 else -c
    assert r == red


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
@settings(max_examples=60)
@given(series, series, st.integers(min_value=0, max_value=30))
def test_compiled_matches_python(a, b, n):
    assert _ckernels.conv_trunc(a, b, n) == _pykernels.conv_trunc(a, b, n)
    if a[0]:
        assert _ckernels.inv_trunc(a, n) == _pykernels.inv_trunc(a, n)
    mod = [3, -1, 0, 2, 1]
    assert _ckernels.poly_mulmod(a, b, mod) == _pykernels.poly_mulmod(a, b, mod)


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
def test_compiled_inv_rejects_nonunit():
    with pytest.raises(ZeroDivisionError):
        _ckernels.inv_trunc([0, 1], 3)
