"""Exact p-adic q-Euler numbers, polynomials and the q-Euler measure on Z_p."""
from .exact_arith import ConvergenceReport, PadicTrunc, reduce_mod_pM, residual_valuations, teichmuller, vp
from .qcore import (
    euler_number_closed,
    euler_number_rec,
    euler_poly_closed,
    euler_poly_frac,
    gen_euler_number,
    qint,
    qint_frac,
    qint_neg,
)
from .measures import Cylinder, MeasureKind, additivity_check, integrate_level, integrate_limit, mu_neg_q, mu_star

__version__ = "0.1.0"

__all__ = [
    "ConvergenceReport",
    "Cylinder",
    "MeasureKind",
    "PadicTrunc",
    "additivity_check",
    "euler_number_closed",
    "euler_number_rec",
    "euler_poly_closed",
    "euler_poly_frac",
    "gen_euler_number",
    "integrate_level",
    "integrate_limit",
    "mu_neg_q",
    "mu_star",
    "qint",
    "qint_frac",
    "qint_neg",
    "reduce_mod_pM",
    "residual_valuations",
    "teichmuller",
    "vp",
]
