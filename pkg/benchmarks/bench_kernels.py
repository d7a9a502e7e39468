"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel on representative inputs, then an end-to-end exact check
with the kernels module patched to each backend in turn.
"""

import argparse
import random
import timeit

from strangeq import _pykernels, exact, kernels
from strangeq.params import ParamSet

try:
    from strangeq import _ckernels
except ImportError:
    _ckernels = None


def inputs(seed=0):
    rng = random.Random(seed)
    big = [rng.randint(-(10**40), 10**40) for _ in range(300)]
    unit = [rng.randint(1, 10**6)] + [rng.randint(-(10**6), 10**6) for _ in range(199)]
    mod = [1] + [0] * 47 + [1]  # x^48 + 1
    poly = [rng.randint(-100, 100) for _ in range(48)]
    return big, unit, mod, poly


def kernel_cases(mod_):
    big, unit, mod, poly = inputs()
    return {
        "conv_trunc 300x300 (40-digit)": lambda: mod_.conv_trunc(big, big, 299),
        "inv_trunc order 200": lambda: mod_.inv_trunc(unit, 200),
        "poly_mulmod degree 48": lambda: mod_.poly_mulmod(poly, poly, mod),
    }


def end_to_end():
    params = ParamSet((2, "-1/2", 1), ("1/2", -2))
    return exact.ps_theorem3_check(params, 60)


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("compiled", _ckernels))
    print(f"default backend: {kernels.BACKEND}")

    rows = {}
    for name, mod_ in backends:
        for label, fn in kernel_cases(mod_).items():
            rows.setdefault(label, {})[name] = bench(fn, args.repeat)

    saved = (kernels.conv_trunc, kernels.inv_trunc, kernels.poly_mulmod)
    try:
        for name, mod_ in backends:
            kernels.conv_trunc, kernels.inv_trunc, kernels.poly_mulmod = mod_.conv_trunc, mod_.inv_trunc, mod_.poly_mulmod
            rows.setdefault("exact identity check, order 60", {})[name] = bench(end_to_end, max(1, args.repeat // 2))
    finally:
        kernels.conv_trunc, kernels.inv_trunc, kernels.poly_mulmod = saved

    print(f"{'case':36} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for label, t in rows.items():
        py = t["python"]
        cc = t.get("compiled")
        extra = f"{cc * 1e3:9.2f}ms {py / cc:7.2f}x" if cc else f"{'n/a':>10} {'':>8}"
        print(f"{label:36} {py * 1e3:9.2f}ms {extra}")


if __name__ == "__main__":
    main()
