"""Alternating strange q-series: modified limits, Cesaro sums and exact checks."""

from .contfrac import convergents, f_via_cf
from .cyclotomic import CycloInt, embed_numeric, strange_at_root
from .exact import TruncatedSeries, ps_f, ps_phi_plus, ps_sigma, ps_theorem3_check
from .kernels import BACKEND
from .numerics import WorkingPrecision, cx, cx_abs
from .params import FTILDE, GRANDI, PHITILDE, ParamSet, alpha_poly
from .qseries import f_eval, pochhammer_inf, product_P, sigma_eval, theorem3_rhs
from .summability import cesaro_limit, closed_form_limits, parity_limits, partial_sums

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CycloInt",
    "FTILDE",
    "GRANDI",
    "PHITILDE",
    "ParamSet",
    "TruncatedSeries",
    "WorkingPrecision",
    "alpha_poly",
    "cesaro_limit",
    "closed_form_limits",
    "convergents",
    "cx",
    "cx_abs",
    "embed_numeric",
    "f_eval",
    "f_via_cf",
    "parity_limits",
    "partial_sums",
    "pochhammer_inf",
    "product_P",
    "ps_f",
    "ps_phi_plus",
    "ps_sigma",
    "ps_theorem3_check",
    "sigma_eval",
    "strange_at_root",
    "theorem3_rhs",
]
