"""Exact rational and real-quadratic arithmetic, polynomials and integration."""

from .interval import Interval
from .poly import (PiecewisePoly, PiecewiseRational, RatFunc, UniPoly, integrate_piecewise,
                   quad_solve, sign_at)
from .quadext import (Number, QuadExt, as_quad, fmt, parse_number, rational_between,
                      sign, simplify, squarefree_split, to_json)

__all__ = [
    "Interval", "PiecewisePoly", "Number", "PiecewiseRational", "QuadExt", "RatFunc", "UniPoly", "as_quad", "fmt",
    "integrate_piecewise", "parse_number", "quad_solve", "rational_between",
    "sign", "sign_at", "simplify", "squarefree_split", "to_json",
]
