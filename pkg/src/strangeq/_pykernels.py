"""Pure-Python integer kernels.

Reference implementations of the exact inner loops.  The compiled module
``_ckernels`` exposes the same functions with the same signatures and is
preferred when it imports.
"""


def conv_trunc(a, b, n):
    """Cauchy product of integer coefficient lists, truncated to degree n."""
    out = [0] * (n + 1)
    lb = min(len(b), n + 1)
    for i in range(min(len(a), n + 1)):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(lb, n + 1 - i)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def inv_trunc(a, n):
    """Integer numerators of 1/a modulo q^(n+1) over the denominator a[0]**(n+1).

    Uses w_k = -sum_{j=1..k} a_j w_{k-j} a_0^(j-1) with w_0 = 1, where the
    k-th coefficient of 1/a is w_k / a_0^(k+1).
    """
    a0 = a[0]
    if a0 == 0:
        raise ZeroDivisionError("non-unit series")
    la = min(len(a), n + 1)
    nz = [j for j in range(1, la) if a[j]]
    pw = [1] * (n + 1)
    for j in range(1, n + 1):
        pw[j] = pw[j - 1] * a0
    w = [0] * (n + 1)
    w[0] = 1
    for k in range(1, n + 1):
        s = 0
        for j in nz:
            if j > k:
                break
            wk = w[k - j]
            if wk:
                s += a[j] * wk * pw[j - 1]
        w[k] = -s
    return [w[k] * pw[n - k] for k in range(n + 1)]


def poly_mulmod(a, b, modulus):
    """Product of integer polynomials reduced modulo a monic integer polynomial.

    Coefficient lists run from the constant term upward; the result has
    exactly ``len(modulus) - 1`` entries.
    """
    d = len(modulus) - 1
    if d == 0:
        return []
    prod = [0] * max(len(a) + len(b) - 1, d)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            base = k - d
            for t in range(d):
                mt = modulus[t]
                if mt:
                    prod[base + t] -= c * mt
            prod[k] = 0
    return prod[:d]
