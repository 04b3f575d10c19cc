"""Exact arithmetic: rationals, bivariate polynomials, rational functions, D."""

from .field import ParamField, ParamRational
from .foode import FOODE, ZeroDenominatorError, d_operator, divergence_source, eval_at
from .mpoly import X, Y, MPoly, PoleError, RatFunc, poly_gcd, poly_lcm

__all__ = [
    "FOODE",
    "MPoly",
    "ParamField",
    "ParamRational",
    "PoleError",
    "RatFunc",
    "X",
    "Y",
    "ZeroDenominatorError",
    "d_operator",
    "divergence_source",
    "eval_at",
    "poly_gcd",
    "poly_lcm",
]
