# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; mirrors ``strangeq._pykernels``.

Coefficients are Python integers (arbitrary size), so the gain comes from
C-level loop control and skipping the interpreter dispatch, not from
machine arithmetic.
"""


def conv_trunc(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t i, j, la, lb, top
    cdef list out = [0] * (n + 1)
    cdef object ai, bj
    la = min(len(a), n + 1)
    lb = min(len(b), n + 1)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def inv_trunc(list a, Py_ssize_t n):
    cdef Py_ssize_t j, k, la, t, nnz
    cdef object a0 = a[0]
    cdef object s, wk
    if a0 == 0:
        raise ZeroDivisionError("non-unit series")
    la = min(len(a), n + 1)
    cdef list nz = [j for j in range(1, la) if a[j]]
    nnz = len(nz)
    cdef list pw = [1] * (n + 1)
    for j in range(1, n + 1):
        pw[j] = pw[j - 1] * a0
    cdef list w = [0] * (n + 1)
    w[0] = 1
    for k in range(1, n + 1):
        s = 0
        for t in range(nnz):
            j = nz[t]
            if j > k:
                break
            wk = w[k - j]
            if wk:
                s = s + a[j] * wk * pw[j - 1]
        w[k] = -s
    return [w[k] * pw[n - k] for k in range(n + 1)]


def poly_mulmod(list a, list b, list modulus):
    cdef Py_ssize_t d = len(modulus) - 1
    cdef Py_ssize_t i, j, k, t, base, la, lb
    cdef object c, ai, bj, mt
    if d == 0:
        return []
    la = len(a)
    lb = len(b)
    cdef list prod = [0] * max(la + lb - 1, d)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        for j in range(lb):
            bj = b[j]
            if bj:
                prod[i + j] = prod[i + j] + ai * bj
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            base = k - d
            for t in range(d):
                mt = modulus[t]
                if mt:
                    prod[base + t] = prod[base + t] - c * mt
            prod[k] = 0
    return prod[:d]
