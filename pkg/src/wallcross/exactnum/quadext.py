"""Exact real quadratic numbers ``p + q*sqrt(d)``.

Rationals are ``fractions.Fraction`` throughout the package; ``QuadExt`` adds
one square root on top.  Arithmetic between two different fields
(e.g. sqrt(2) and sqrt(3)) is rejected instead of silently approximated.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from ..errors import MixedRadicalError, NegativeDiscriminant

Number = Union[int, Fraction, "QuadExt"]


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, core)`` with ``n == s*s*core`` and ``core`` square-free."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    s, core = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            s *= p ** (e // 2)
            if e % 2:
                core *= p
        p += 1 if p == 2 else 2
    core *= m
    return s, core


class QuadExt:
    """``p + q*sqrt(d)`` with ``d`` square-free; ``d == 0`` encodes a rational."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p: int | Fraction = 0, q: int | Fraction = 0, d: int = 0):
        p = Fraction(p)
        q = Fraction(q)
        d = int(d)
        if d < 0:
            raise NegativeDiscriminant(f"sqrt({d}) is not real")
        s, core = squarefree_split(d)
        q *= s
        if core == 1:
            p, q, core = p + q, Fraction(0), 0
        if q == 0 or core == 0:
            q, core = Fraction(0), 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", core)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt(cls, x: int | Fraction) -> QuadExt:
        x = Fraction(x)
        if x < 0:
            raise NegativeDiscriminant(f"sqrt({x}) is not real")
        # sqrt(a/b) = sqrt(a*b)/b
        return cls(0, Fraction(1, x.denominator), x.numerator * x.denominator)

    @classmethod
    def coerce(cls, x: Number) -> QuadExt:
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadExt")

    # -- structure -----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.p

    def simplify(self) -> Fraction | QuadExt:
        """Demote to ``Fraction`` when rational."""
        return self.p if self.is_rational else self

    def conjugate(self) -> QuadExt:
        return QuadExt(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def _field(self, other: QuadExt) -> int:
        if self.d and other.d and self.d != other.d:
            raise MixedRadicalError(
                f"sqrt({self.d}) and sqrt({other.d}) live in different fields")
        return self.d or other.d

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return QuadExt(self.p + o.p, self.q + o.q, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return QuadExt(self.p * o.p + self.q * o.q * d,
                       self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero QuadExt")
        return QuadExt(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- order ---------------------------------------------------------------

    def sign(self) -> int:
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        diff = self.p * self.p - self.q * self.q * self.d
        # diff != 0 because d is square-free and > 1
        return sp if diff > 0 else sq

    def _cmp(self, other) -> int:
        o = QuadExt.coerce(other)
        if not (self.d and o.d and self.d != o.d):
            return (self - o).sign()
        # distinct square-free radicals never coincide, so bounds separate them
        bits = 16
        while True:
            a_lo, a_hi = self.bounds(bits)
            b_lo, b_hi = o.bounds(bits)
            if a_hi < b_lo:
                return -1
            if b_hi < a_lo:
                return 1
            bits *= 2

    def __eq__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.p == o.p and self.q == o.q and self.d == o.d

    def __hash__(self):
        if self.is_rational:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        # display only; never used on the stability path
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    # -- bounds --------------------------------------------------------------

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational ``lo <= self <= hi`` with width about ``|q| * 2**-bits``."""
        if self.is_rational:
            return self.p, self.p
        scale = 1 << bits
        r = math.isqrt(self.d * scale * scale)
        lo_root = Fraction(r, scale)
        hi_root = Fraction(r + 1, scale)
        a = self.p + self.q * lo_root
        b = self.p + self.q * hi_root
        return (a, b) if a <= b else (b, a)

    # -- text ----------------------------------------------------------------

    def __str__(self):
        if self.is_rational:
            return str(self.p)
        qs = "" if abs(self.q) == 1 else f"{abs(self.q)}*"
        rad = f"{qs}sqrt({self.d})"
        if self.p == 0:
            return rad if self.q > 0 else f"-{rad}"
        return f"{self.p}{'+' if self.q > 0 else '-'}{rad}"

    def __repr__(self):
        return f"QuadExt({self})"

    def pretty(self) -> str:
        """Common-denominator form, e.g. ``(4-sqrt(6))/10``."""
        if self.is_rational:
            return str(self.p)
        den = math.lcm(self.p.denominator, self.q.denominator)
        a, b = int(self.p * den), int(self.q * den)
        rad = f"sqrt({self.d})" if abs(b) == 1 else f"{abs(b)}*sqrt({self.d})"
        body = f"{a}{'+' if b > 0 else '-'}{rad}" if a else (rad if b > 0 else f"-{rad}")
        return body if den == 1 else f"({body})/{den}"

    def to_json(self) -> dict:
        return {"p": str(self.p), "q": str(self.q), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> QuadExt:
        return cls(Fraction(obj["p"]), Fraction(obj.get("q", "0")), int(obj.get("d", 0)))


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?P<p>{_RAT})?\s*(?:(?P<sgn>[+-])?\s*(?:(?P<q>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>\d+)\s*\))?\s*$")


def parse_number(text: str) -> Fraction | QuadExt:
    """Parse ``"p/q"`` or ``"p+q*sqrt(d)"``; rationals come back as ``Fraction``."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    m = _QUAD_RE.match(text)
    if not m or m.group("d") is None:
        raise ValueError(f"not an exact number: {text!r}")
    p = Fraction(m.group("p") or 0)
    q = Fraction(m.group("q") or 1)
    if m.group("sgn") == "-":
        q = -q
    elif m.group("sgn") is None and m.group("p") is not None:
        raise ValueError(f"missing sign before sqrt in {text!r}")
    return QuadExt(p, q, int(m.group("d"))).simplify()


def as_quad(x: Number) -> QuadExt:
    return QuadExt.coerce(x)


def simplify(x: Number) -> Fraction | QuadExt:
    if isinstance(x, QuadExt):
        return x.simplify()
    return Fraction(x)


def sign(x: Number) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def fmt(x: Number) -> str:
    """Canonical exact string used in every report."""
    return str(simplify(x))


def to_json(x: Number):
    x = simplify(x)
    if isinstance(x, QuadExt):
        return x.to_json()
    return str(x)


def rational_between(a: Number, b: Number) -> Fraction:
    """A rational strictly between ``a < b``, found without floating point."""
    a, b = as_quad(a), as_quad(b)
    if not a < b:
        raise ValueError("rational_between needs a < b")
    if a.is_rational and b.is_rational:
        return (a.p + b.p) / 2
    bits = 8
    while True:
        _, a_hi = a.bounds(bits)
        b_lo, _ = b.bounds(bits)
        if a_hi < b_lo:
            return (a_hi + b_lo) / 2
        bits *= 2
