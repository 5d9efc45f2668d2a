"""Univariate polynomials, rational functions and piecewise polynomials over Q.

Coefficients are stored lowest degree first.  Evaluation accepts ``Fraction``
or ``QuadExt`` points, so a stability function can be evaluated exactly at an
irrational wall.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import (DegenerateLeadingCoefficient, NegativeDiscriminant,
                      OutOfDomain, PoleAtPoint, UnsupportedAlgebraicDegree)
from .quadext import Number, QuadExt, as_quad, fmt, simplify, sign


class UniPoly:
    """Dense polynomial in one variable with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, QuadExt) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def const(cls, a) -> UniPoly:
        return cls([a])

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def linear(cls, a, b) -> UniPoly:
        """``a + b*x``."""
        return cls([a, b])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other) -> UniPoly:
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, a) -> UniPoly:
        return UniPoly(a * c for c in self.coeffs)

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.lead()
        while len(rem) - 1 >= other.degree and any(c != 0 for c in rem):
            shift = len(rem) - 1 - other.degree
            f = rem[-1] / lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> UniPoly:
        return self.scale(1 / self.lead()) if self.coeffs else self

    def gcd(self, other: UniPoly) -> UniPoly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return simplify(acc) if isinstance(acc, QuadExt) else acc

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def antiderivative(self) -> UniPoly:
        return UniPoly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integrate(self, lo, hi):
        F = self.antiderivative()
        return F(hi) - F(lo)

    def compose(self, inner: UniPoly) -> UniPoly:
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    @classmethod
    def interpolate(cls, points: Sequence[tuple[Fraction, Fraction]]) -> UniPoly:
        """Lagrange interpolation through distinct abscissae."""
        out = UniPoly()
        for i, (xi, yi) in enumerate(points):
            term = UniPoly([yi])
            for j, (xj, _) in enumerate(points):
                if j != i:
                    term = term * UniPoly([-xj, 1]).scale(Fraction(1) / (xi - xj))
            out = out + term
        return out

    def rational_roots(self) -> list[Fraction]:
        """Distinct rational roots (rational root theorem on the integer form)."""
        if self.degree < 1:
            return []
        den = math.lcm(*(Fraction(c).denominator for c in self.coeffs))
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        roots: set[Fraction] = set()
        while ints and ints[0] == 0:
            roots.add(Fraction(0))
            ints.pop(0)
        if len(ints) < 2:
            return sorted(roots)
        a0, an = abs(ints[0]), abs(ints[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if self(cand) == 0:
                        roots.add(cand)
        return sorted(roots)

    def real_roots(self) -> list[Fraction | QuadExt]:
        """All distinct real roots, provided the irrational part has degree <= 2."""
        if self.is_zero():
            raise ValueError("zero polynomial has every point as a root")
        rest = self
        found = self.rational_roots()
        for r in found:
            while (rest % UniPoly([-r, 1])).is_zero():
                rest = rest // UniPoly([-r, 1])
        out: list = list(found)
        if rest.degree == 2:
            a, b, c = rest[2], rest[1], rest[0]
            if b * b - 4 * a * c >= 0:
                out.extend(quad_solve(a, b, c))
        elif rest.degree > 2:
            raise UnsupportedAlgebraicDegree(
                f"irreducible factor of degree {rest.degree} has no quadratic roots")
        return sorted(set(out), key=as_quad)

    def to_str(self, var: str = "c") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            neg = sign(c) < 0 and not (isinstance(c, QuadExt) and c.p and c.q)
            mag = -c if neg else c
            mag_s = fmt(mag)
            if isinstance(mag, QuadExt) and not mag.is_rational:
                mag_s = f"({mag_s})"
            if k == 0:
                body = mag_s
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag_s}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = "".join(f"{sg}{b}" for sg, b in parts)
        return s[1:] if s.startswith("+") else s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UniPoly({self.to_str()})"


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [0]
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


class RatFunc:
    """Reduced quotient ``num/den`` of rational polynomials, ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        den = den if den is not None else UniPoly([1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den) if not num.is_zero() else den.monic()
        num, den = num // g, den // g
        lead = den.lead()
        self.num = num.scale(1 / lead)
        self.den = den.scale(1 / lead)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other if isinstance(other, UniPoly) else UniPoly([other]))
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at {fmt(x)}")
        return simplify(as_quad(self.num(x)) / d)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.num, self.den * other.den)
        return RatFunc(self.num * other, self.den)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other if isinstance(other, UniPoly) else UniPoly([other]))
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other if isinstance(other, UniPoly) else UniPoly([other]))
        return self + RatFunc(-other.num, other.den)

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.den, self.den * other.num)
        return RatFunc(self.num, self.den * other)

    def display_form(self) -> tuple[UniPoly, UniPoly]:
        """Coprime integer coefficients overall, denominator's lowest term positive."""
        coeffs = [Fraction(c) for c in self.num.coeffs + self.den.coeffs]
        den_lcm = math.lcm(*(c.denominator for c in coeffs))
        num, den = self.num.scale(den_lcm), self.den.scale(den_lcm)
        g = math.gcd(*(int(c) for c in num.coeffs + den.coeffs))
        low = next(c for c in den.coeffs if c != 0)
        k = Fraction(1 if low > 0 else -1, g)
        return num.scale(k), den.scale(k)

    def to_str(self, var: str = "c") -> str:
        if self.den == UniPoly([1]):
            return self.num.to_str(var)
        num, den = self.display_form()
        if den == UniPoly([1]):
            return num.to_str(var)
        return f"({num.to_str(var)})/({den.to_str(var)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc({self})"


@dataclass(frozen=True)
class PiecewisePoly:
    """A function given by one polynomial per interval between breakpoints."""

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[UniPoly, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.pieces) + 1:
            raise ValueError("need exactly one more breakpoint than pieces")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def single(cls, lo, hi, poly: UniPoly) -> PiecewisePoly:
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            return cls((lo,), ())
        return cls((lo, hi), (poly,))

    @property
    def lo(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def hi(self) -> Fraction:
        return self.breakpoints[-1]

    def __call__(self, t) -> Fraction:
        if t < self.lo or t > self.hi:
            raise OutOfDomain(f"{t} outside [{self.lo}, {self.hi}]")
        for k, p in enumerate(self.pieces):
            if t <= self.breakpoints[k + 1]:
                return p(t)
        return Fraction(0)

    def merged(self) -> PiecewisePoly:
        """Drop breakpoints where neighbouring pieces coincide."""
        if not self.pieces:
            return self
        bps = [self.breakpoints[0]]
        pcs = [self.pieces[0]]
        for bp, p in zip(self.breakpoints[1:-1], self.pieces[1:]):
            if p == pcs[-1]:
                continue
            bps.append(bp)
            pcs.append(p)
        bps.append(self.breakpoints[-1])
        return PiecewisePoly(tuple(bps), tuple(pcs))

    def max_degree(self) -> int:
        return max((p.degree for p in self.pieces), default=-1)

    def to_json(self) -> dict:
        return {"breakpoints": [str(b) for b in self.breakpoints],
                "pieces": [p.to_str("t") for p in self.pieces]}


def integrate_piecewise(f: PiecewisePoly, lo, hi) -> Fraction:
    """Exact integral of ``f`` over ``[lo, hi]`` via per-piece antiderivatives."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("need lo <= hi")
    if lo == hi:
        if not f.lo <= lo <= f.hi:
            raise OutOfDomain(f"{lo} outside [{f.lo}, {f.hi}]")
        return Fraction(0)
    if lo < f.lo or hi > f.hi:
        raise OutOfDomain(f"[{lo}, {hi}] exceeds [{f.lo}, {f.hi}]")
    total = Fraction(0)
    for k, p in enumerate(f.pieces):
        a = max(lo, f.breakpoints[k])
        b = min(hi, f.breakpoints[k + 1])
        if a < b:
            total += p.integrate(a, b)
    return total


def quad_solve(a, b, c) -> tuple[Fraction | QuadExt, Fraction | QuadExt]:
    """Both real roots of ``a x^2 + b x + c``, increasing, exactly."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        raise DegenerateLeadingCoefficient("leading coefficient is zero")
    disc = b * b - 4 * a * c
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc} < 0")
    root = QuadExt.sqrt(disc)
    r1 = simplify((-b - root) / (2 * a))
    r2 = simplify((-b + root) / (2 * a))
    return (r1, r2) if as_quad(r1) <= as_quad(r2) else (r2, r1)


def sign_at(expr: RatFunc | UniPoly, c0: Number) -> int:
    """Exact sign of a rational function at a rational or quadratic point."""
    if isinstance(expr, UniPoly):
        return sign(expr(c0))
    d = expr.den(c0)
    if d == 0:
        raise PoleAtPoint(f"denominator vanishes at {fmt(c0)}")
    return sign(expr.num(c0)) * sign(d)


@dataclass(frozen=True)
class PiecewiseRational:
    """Rational functions of ``c`` on consecutive cells of a window."""

    breakpoints: tuple
    pieces: tuple[RatFunc, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.pieces) + 1:
            raise ValueError("need exactly one more breakpoint than pieces")

    def piece_at(self, x) -> RatFunc:
        x = as_quad(x)
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        if x < lo or x > hi:
            raise OutOfDomain(f"{fmt(x)} outside [{fmt(lo)}, {fmt(hi)}]")
        for k, p in enumerate(self.pieces):
            if x <= self.breakpoints[k + 1]:
                return p
        return self.pieces[-1]

    def __call__(self, x):
        return self.piece_at(x)(x)

    def merged(self) -> PiecewiseRational:
        bps = [self.breakpoints[0]]
        pcs: list[RatFunc] = []
        for bp, p in zip(self.breakpoints[1:], self.pieces):
            if pcs and p == pcs[-1]:
                bps[-1] = bp
                continue
            pcs.append(p)
            bps.append(bp)
        return PiecewiseRational(tuple(bps), tuple(pcs))

    def is_single(self) -> bool:
        return len(self.pieces) == 1

    def to_json(self) -> dict:
        return {"breakpoints": [fmt(b) for b in self.breakpoints],
                "pieces": [str(p) for p in self.pieces]}
