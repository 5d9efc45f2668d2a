"""Subdivide a c-window into cells of fixed combinatorial type.

Inside one cell every t-breakpoint of ``vol(L(c) - tE)`` is an affine function
of ``c``, so ``N(c) = int vol dt`` is a polynomial of degree at most three and
``vol(L(c))`` one of degree at most two.  Both are recovered by exact
interpolation and checked at an extra sample.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

from .errors import OutOfDomain
from .exactnum import PiecewiseRational, RatFunc, UniPoly

Line = tuple[Fraction, Fraction, Fraction]


def crossing_values(lines: Iterable[Line], lo: Fraction, hi: Fraction,
                    tau: Optional[Callable[[Fraction], Optional[Fraction]]] = None
                    ) -> list[Fraction]:
    """Values of ``c`` strictly inside ``(lo, hi)`` where the t-arrangement changes."""
    lines = list(lines)
    found: set[Fraction] = set()

    def keep(c: Fraction, t: Optional[Fraction] = None):
        if not lo < c < hi:
            return
        if t is not None and tau is not None:
            top = tau(c)
            if top is not None and not 0 <= t <= top:
                return
        found.add(c)

    for alpha, beta, gamma in lines:
        if beta != 0:
            keep(-gamma / beta)
    for (a1, b1, g1), (a2, b2, g2) in combinations(lines, 2):
        den = a2 * b1 - a1 * b2
        if den == 0 or (a1 == 0 and a2 == 0):
            continue
        c = (a1 * g2 - a2 * g1) / den
        t = -(b1 * c + g1) / a1 if a1 != 0 else -(b2 * c + g2) / a2
        keep(c, t)
    return sorted(found)


def interpolate_checked(func: Callable[[Fraction], Fraction], a: Fraction,
                        b: Fraction, degree: int) -> UniPoly:
    """Degree-bounded interpolant of ``func`` on ``(a, b)`` verified at one more point."""
    n = degree + 2
    xs = [a + (b - a) * Fraction(k, n + 1) for k in range(1, n + 1)]
    poly = UniPoly.interpolate([(x, func(x)) for x in xs[:-1]])
    if poly(xs[-1]) != func(xs[-1]):
        raise ArithmeticError(f"sampled function exceeds degree {degree} on ({a}, {b})")
    return poly


def ratio_on_cells(numer: Callable[[Fraction], Fraction],
                   denom: Callable[[Fraction], Fraction],
                   cuts: Iterable[Fraction], lo: Fraction, hi: Fraction,
                   numer_degree: int = 3, denom_degree: int = 2) -> PiecewiseRational:
    """``numer/denom`` as one reduced rational function per cell, merged."""
    bps = [Fraction(lo)] + sorted(set(cuts)) + [Fraction(hi)]
    pieces = []
    for a, b in zip(bps, bps[1:]):
        den = interpolate_checked(denom, a, b, denom_degree)
        if den.is_zero():
            raise OutOfDomain(f"volume vanishes identically on ({a}, {b})")
        num = interpolate_checked(numer, a, b, numer_degree)
        pieces.append(RatFunc(num, den))
    return PiecewiseRational(tuple(bps), tuple(pieces)).merged()
