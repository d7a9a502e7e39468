"""Naive reference implementations used only by the tests.

Power series here are plain lists of Fractions and products are formed
term by term, so nothing goes through the package's integer kernels.
"""

from fractions import Fraction

import mpmath


def mul(x, y, n):
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(x[: n + 1]):
        if a:
            for j, b in enumerate(y[: n + 1 - i]):
                out[i + j] += a * b
    return out


def inv(x, n):
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / Fraction(x[0])
    for k in range(1, n + 1):
        s = sum(Fraction(x[j]) * out[k - j] for j in range(1, min(k, len(x) - 1) + 1))
        out[k] = -s * out[0]
    return out


def one(n):
    return [Fraction(1)] + [Fraction(0)] * n


def factor(c, k, n):
    """1 - c q^k as a list."""
    out = one(n)
    if k <= n:
        out[k] -= Fraction(c)
    return out


def poch(a, n):
    """(a q; q)_infinity mod q^(n+1)."""
    out = one(n)
    for k in range(1, n + 1):
        out = mul(out, factor(a, k, n), n)
    return out


def strange_terms(a_vals, b_vals, count, n):
    """Unsigned terms T_0..T_(count-1), each built as a full product."""
    out = []
    for k in range(count):
        t = one(n)
        for j in range(1, k + 1):
            for a in a_vals:
                t = mul(t, factor(a, j, n), n)
            for b in b_vals:
                t = mul(t, inv(factor(b, j, n), n), n)
        out.append(t)
    return out


def strange_plus(a_vals, b_vals, n):
    """Limit of partial sums ending at an odd index: sum_j (T_2j - T_(2j+1))."""
    terms = strange_terms(a_vals, b_vals, n + 3, n)
    total = [Fraction(0)] * (n + 1)
    for j in range(n // 2 + 1):
        total = [s + x - y for s, x, y in zip(total, terms[2 * j], terms[2 * j + 1])]
    return total


def mp_qp_inf(a, q, dps=90):
    with mpmath.workdps(dps):
        return mpmath.qp(a, q)


def mp_sigma(q, terms=400, dps=90):
    """sum q^(n(n+1)/2) / (-q; q)_n."""
    with mpmath.workdps(dps):
        q = mpmath.mpmathify(q)
        s = mpmath.mpf(0)
        d = mpmath.mpf(1)
        for n in range(terms):
            s += q ** (n * (n + 1) // 2) / d
            d *= 1 + q ** (n + 1)
        return s


def mp_f(q, terms=200, dps=90):
    """sum q^(n^2) / (-q; q)_n^2."""
    with mpmath.workdps(dps):
        q = mpmath.mpmathify(q)
        s = mpmath.mpf(0)
        d = mpmath.mpf(1)
        for n in range(terms):
            s += q ** (n * n) / d**2
            d *= 1 + q ** (n + 1)
        return s
