"""Command-line interface: ``strangeq {eval,verify,expand,roots,cesaro,cf}``.

Exit codes: 0 success, 1 verification failed, 2 domain or usage error,
3 non-convergence.  JSON numbers are written as strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass

from . import contfrac, cyclotomic, exact, qseries, summability
from .numerics import WorkingPrecision, fmt, fmt_bound, parse_complex, parse_rational, to_mpc, tol_mpfr, working
from .params import FTILDE, GRANDI, NAMED, PHITILDE, ParamSet

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_NONCONV = 0, 1, 2, 3

RANDOM_ENTRIES = ("-2", "-1", "-1/2", "0", "1/2", "1", "2")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    precision_bits: int = 256
    tolerance: str = "1e-30"
    max_terms: int | None = None
    output_format: str = "json"
    seed: int = 1

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("--prec must be at least 64")
        if parse_rational(self.tolerance) <= 0:
            raise UsageError("--tol must be positive")

    @property
    def prec(self) -> WorkingPrecision:
        return WorkingPrecision(self.precision_bits)


def _cjson(z):
    return {"re": fmt(z.real), "im": fmt(z.imag)}


def _params_from(args, default=None) -> ParamSet:
    if args.a is None and args.b is None:
        if default is None:
            raise UsageError("give --a and/or --b")
        return default
    return ParamSet.parse(args.a, args.b)


def _params_for(which, args) -> ParamSet:
    if which in NAMED:
        return NAMED[which]
    return _params_from(args, GRANDI)


def random_paramsets(seed: int, trials: int, max_len: int = 3):
    """Reproducible ParamSets with r, s <= max_len and entries from RANDOM_ENTRIES."""
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        r = rng.randint(0, max_len)
        s = rng.randint(0, max_len)
        out.append(
            ParamSet(
                tuple(rng.choice(RANDOM_ENTRIES) for _ in range(r)),
                tuple(rng.choice(RANDOM_ENTRIES) for _ in range(s)),
            )
        )
    return out


def _need_q(args):
    if args.q is None:
        raise UsageError("--q is required")
    parse_complex(args.q)
    return args.q


# ---------------------------------------------------------------- eval


def cmd_eval(args, cfg: Config):
    which = args.which
    q = _need_q(args)
    prec, tol = cfg.prec, cfg.tolerance
    if which in ("sigma", "f"):
        forms = qseries.SIGMA_FORMS if which == "sigma" else qseries.F_FORMS
        fn = qseries.sigma_eval if which == "sigma" else qseries.f_eval
        vals = {form: fn(q, tol, form, prec) for form in forms}
        v1, v2 = (vals[f] for f in forms)
        with working(prec):
            gap = abs(v1.value - v2.value)
            agree = gap <= v1.tail_bound + v2.tail_bound + tol_mpfr(tol)
        report = {
            "which": which,
            "q": args.q,
            "values": {form: v.to_json() for form, v in vals.items()},
            "difference": fmt_bound(gap),
            "agree": bool(agree),
        }
        return EXIT_OK, report

    params = _params_for(which, args)
    count = args.terms or cfg.max_terms or summability.default_terms(to_mpc(q))
    report = {"which": which, "q": args.q, "params": params.to_json()}
    report.update(summability.summability_report(params, q, count, tol, prec))
    with working(prec):
        in_disk = abs(to_mpc(q, prec)) < 1
    if in_disk:
        limits = summability.closed_form_limits(params, q, tol, prec)
        report["closed_form"] = {
            "S_plus": limits.s_plus.to_json(),
            "S_minus": limits.s_minus.to_json(),
            "rhs": limits.rhs.to_json(),
            "product": limits.product.to_json(),
        }
    return EXIT_OK, report


# ---------------------------------------------------------------- verify


def _series_check_entry(label, check: exact.SeriesCheck):
    entry = {"check": label}
    entry.update(check.to_json())
    return entry


def _numeric_entry(label, residual, allowed):
    return {"check": label, "ok": bool(residual <= allowed), "residual": fmt_bound(residual), "allowed": fmt_bound(allowed)}


def _verify_exact(which, args, cfg):
    order = args.order if args.order is not None else 40
    checks = []
    if which == "andrews":
        a, b = exact.ps_sigma(order)
        checks.append(_series_check_entry("sigma: lost-notebook vs andrews", exact.compare_series(a, b)))
    elif which == "fine":
        a, b = exact.ps_f(order)
        checks.append(_series_check_entry("f: ramanujan vs fine", exact.compare_series(a, b)))
    elif which in ("thm1", "thm2"):
        params = FTILDE if which == "thm1" else PHITILDE
        target = exact.ps_sigma(order)[1] if which == "thm1" else exact.ps_f(order)[1]
        lhs, rhs = exact.theorem3_sides(params, order)
        minus = exact.ps_phi_minus(params, order) * 2 - exact.product_series(params, order)
        checks.append(_series_check_entry("2 S_plus + P vs rhs series", exact.compare_series(lhs, rhs)))
        checks.append(_series_check_entry("2 S_plus + P vs named series", exact.compare_series(lhs, target)))
        checks.append(_series_check_entry("2 S_minus - P vs named series", exact.compare_series(minus, target)))
    else:
        if args.a is not None or args.b is not None:
            sets = [_params_from(args)]
        else:
            sets = random_paramsets(cfg.seed, args.trials)
        for p in sets:
            entry = _series_check_entry(p.label(), exact.ps_theorem3_check(p, order))
            checks.append(entry)
    return checks


def _verify_numeric(which, args, cfg):
    q = _need_q(args)
    prec, tol = cfg.prec, cfg.tolerance
    checks = []
    if which in ("andrews", "fine"):
        fn, forms = (qseries.sigma_eval, qseries.SIGMA_FORMS) if which == "andrews" else (qseries.f_eval, qseries.F_FORMS)
        v1, v2 = (fn(q, tol, f, prec) for f in forms)
        with working(prec):
            checks.append(
                _numeric_entry(f"{forms[0]} vs {forms[1]}", abs(v1.value - v2.value), v1.tail_bound + v2.tail_bound + tol_mpfr(tol))
            )
        return checks

    if which in ("thm1", "thm2"):
        params = FTILDE if which == "thm1" else PHITILDE
        fn, forms = (qseries.sigma_eval, qseries.SIGMA_FORMS) if which == "thm1" else (qseries.f_eval, qseries.F_FORMS)
        targets = [(f, fn(q, tol, f, prec)) for f in forms]
        psets = [params]
    else:
        targets = None
        if args.a is not None or args.b is not None:
            psets = [_params_from(args)]
        else:
            psets = random_paramsets(cfg.seed, args.trials)

    for p in psets:
        try:
            plus = qseries.parity_limit(p, q, "plus", tol, prec)
            minus = qseries.parity_limit(p, q, "minus", tol, prec)
            prod = qseries.product_P(p, q, tol, prec)
            rhs = qseries.theorem3_rhs(p, q, tol, prec)
        except qseries.PoleError as exc:
            if len(psets) == 1:
                raise
            checks.append({"check": p.label(), "ok": True, "skipped": str(exc)})
            continue
        refs = targets if targets is not None else [("rhs", rhs)]
        if targets is not None:
            refs = refs + [("rhs", rhs)]
        with working(prec):
            extra = tol_mpfr(tol)
            for name, ref in refs:
                allowed_plus = 2 * plus.tail_bound + prod.tail_bound + ref.tail_bound + extra
                allowed_minus = 2 * minus.tail_bound + prod.tail_bound + ref.tail_bound + extra
                checks.append(
                    _numeric_entry(f"{p.label()}: 2 S_plus + P vs {name}", abs(2 * plus.value + prod.value - ref.value), allowed_plus)
                )
                checks.append(
                    _numeric_entry(f"{p.label()}: 2 S_minus - P vs {name}", abs(2 * minus.value - prod.value - ref.value), allowed_minus)
                )
    return checks


def cmd_verify(args, cfg: Config):
    if args.mode == "exact":
        checks = _verify_exact(args.which, args, cfg)
    else:
        checks = _verify_numeric(args.which, args, cfg)
    ok = all(c["ok"] for c in checks)
    report = {"which": args.which, "mode": args.mode, "passed": ok, "checks": checks}
    if args.mode == "exact" and args.which == "thm3" and args.a is None and args.b is None:
        report["seed"] = cfg.seed
    return (EXIT_OK if ok else EXIT_FAIL), report


# ---------------------------------------------------------------- expand


def cmd_expand(args, cfg: Config):
    order = args.order if args.order is not None else 20
    which = args.which
    if which == "sigma":
        a, b = exact.ps_sigma(order)
        return EXIT_OK, {"which": which, "lost-notebook": a.to_json(), "andrews": b.to_json()}
    if which == "f":
        a, b = exact.ps_f(order)
        return EXIT_OK, {"which": which, "ramanujan": a.to_json(), "fine": b.to_json()}
    params = _params_from(args, FTILDE)
    if which == "pochhammer":
        if len(params.a) != 1:
            raise UsageError("expand pochhammer takes exactly one --a value")
        series = exact.ps_pochhammer(params.a[0], order)
    elif which == "phi_plus":
        series = exact.ps_phi_plus(params, order)
    elif which == "phi_minus":
        series = exact.ps_phi_minus(params, order)
    elif which == "product":
        series = exact.product_series(params, order)
    else:
        series = exact.theorem3_rhs_series(params, order)
    return EXIT_OK, {"which": which, "params": params.to_json(), "series": series.to_json()}


# ---------------------------------------------------------------- roots


def cmd_roots(args, cfg: Config):
    if args.m is None or args.m < 1:
        raise UsageError("--m must be a positive integer")
    params = _params_from(args) if args.which == "Phi" else None
    value = cyclotomic.strange_at_root(args.which, args.m, params)
    terms = cyclotomic.truncation_length(args.which, args.m, params)
    embedded = cyclotomic.embed_numeric(value, cfg.prec)
    direct = cyclotomic.direct_strange_sum(args.which, args.m, params, terms, cfg.prec)
    with working(cfg.prec):
        residual = abs(embedded - direct)
    report = {
        "which": args.which,
        "value": value.to_json(),
        "terms": terms,
        "numeric": _cjson(embedded),
        "direct_sum": _cjson(direct),
        "residual": fmt_bound(residual),
    }
    return EXIT_OK, report


# ---------------------------------------------------------------- cesaro


def cesaro_target(which, params, q, tol, prec):
    """Half of sigma, f or the generalized right-hand series."""
    if which == "Fstrange":
        ref = qseries.sigma_eval(q, tol, "lost-notebook", prec)
    elif which == "phistrange":
        ref = qseries.f_eval(q, tol, "ramanujan", prec)
    else:
        ref = qseries.theorem3_rhs(params, q, tol, prec)
    with working(prec):
        return ref.value / 2


def cmd_cesaro(args, cfg: Config):
    q = _need_q(args)
    params = _params_for(args.which, args)
    count = args.terms or 1000
    rec = summability.strange_record(params, q, count, cfg.prec)
    target = cesaro_target(args.which, params, q, cfg.tolerance, cfg.prec)
    with working(cfg.prec):
        rows = [(n + 1, c, abs(c - target)) for n, c in enumerate(rec.cesaro)]
    if cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "mean_re", "mean_im", "gap"])
        for n, c, g in rows:
            w.writerow([n, fmt(c.real), fmt(c.imag), fmt_bound(g)])
        return EXIT_OK, buf.getvalue()
    sample = sorted({2**k for k in range(count.bit_length()) if 2**k <= count} | {count})
    report = {
        "which": args.which,
        "q": args.q,
        "terms": count,
        "target": _cjson(target),
        "final_mean": _cjson(rows[-1][1]),
        "final_gap": fmt_bound(rows[-1][2]),
        "cesaro_limit_detected": summability.cesaro_limit(rec, cfg.tolerance) is not None,
        "trajectory": [[n, fmt_bound(rows[n - 1][2])] for n in sample],
    }
    return EXIT_OK, report


# ---------------------------------------------------------------- cf


def cmd_cf(args, cfg: Config):
    q = _need_q(args)
    count = args.count if args.count is not None else 20
    params = _params_for(args.which, args) if args.which == "Phi" else None
    mode = "exact-rational" if args.mode == "exact" else "numeric"
    convs = contfrac.convergents(args.which, q, count, mode, cfg.prec, params)
    if mode == "exact-rational":
        re_part, im_part = parse_complex(q)
        if im_part:
            raise UsageError("exact mode needs a rational q")
        sums = contfrac.partial_sum_table(args.which, re_part, count, params)
        rows = [(c.index, str(c.value), str(abs(c.value - s))) for c, s in zip(convs, sums)]
    else:
        p = NAMED.get(args.which, params)
        rec = summability.strange_record(p, q, count + 1, cfg.prec)
        with working(cfg.prec):
            rows = [
                (c.index, f"{fmt(c.value.real)}{'+' if c.value.imag >= 0 else '-'}{fmt(abs(c.value.imag))}i", fmt_bound(abs(c.value - s)))
                for c, s in zip(convs, rec.sums)
            ]
    if cfg.output_format == "json":
        return EXIT_OK, {
            "which": args.which,
            "mode": mode,
            "convention": "convergent k is the truncation after a_k and matches partial sum S_k",
            "rows": [{"index": i, "value": v, "diff": d} for i, v, d in rows],
        }
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "value", "abs_diff_partial_sum"])
    for r in rows:
        w.writerow(r)
    return EXIT_OK, buf.getvalue()


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=256, help="working precision in bits (>= 64)")
    common.add_argument("--tol", default="1e-30", help="tolerance (decimal or rational)")
    common.add_argument("--max-terms", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--q", default=None, help='complex literal such as "0.3+0.4i" or "1/3"')
    common.add_argument("--a", default=None, help="comma-separated numerator parameters")
    common.add_argument("--b", default=None, help="comma-separated denominator parameters")

    parser = argparse.ArgumentParser(prog="strangeq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a series at q")
    p.add_argument("which", choices=("sigma", "f", "Fstrange", "phistrange", "Phi"))
    p.add_argument("--terms", type=int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="check an identity")
    p.add_argument("which", choices=("thm1", "thm2", "thm3", "andrews", "fine"))
    p.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", parents=[common], help="dump truncated series coefficients")
    p.add_argument("which", choices=("sigma", "f", "pochhammer", "phi_plus", "phi_minus", "product", "rhs"))
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("roots", parents=[common], help="exact value at a root of unity")
    p.add_argument("which", choices=("F", "Ftilde", "Phi"))
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("cesaro", parents=[common], help="Cesaro means against their target")
    p.add_argument("which", choices=("Fstrange", "phistrange", "Phi"))
    p.add_argument("--terms", type=int, default=None)
    p.set_defaults(func=cmd_cesaro)

    p = sub.add_parser("cf", parents=[common], help="continued fraction convergents")
    p.add_argument("which", choices=("Fstrange", "phistrange", "Phi"))
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--mode", choices=("exact", "numeric"), default="numeric")
    p.set_defaults(func=cmd_cf)
    return parser


def _emit(payload, out):
    if isinstance(payload, str):
        out.write(payload)
    else:
        out.write(json.dumps(payload, indent=2))
        out.write("\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_DOMAIN if exc.code else EXIT_OK
    default_format = "csv" if args.command == "cf" else "json"
    try:
        cfg = Config(args.prec, args.tol, args.max_terms, args.format or default_format, args.seed)
        code, payload = args.func(args, cfg)
    except qseries.NonConvergenceError as exc:
        _emit({"error": "non-convergence", "detail": str(exc)}, out)
        return EXIT_NONCONV
    except (
        UsageError,
        qseries.DomainError,
        qseries.PoleError,
        cyclotomic.TruncationError,
        contfrac.CFError,
        ValueError,
        ZeroDivisionError,
    ) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)}, out)
        return EXIT_DOMAIN
    _emit(payload, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
