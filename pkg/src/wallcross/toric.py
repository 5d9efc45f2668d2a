"""Complete toric surfaces: fans, invariant divisors, volumes and weighted blow-ups.

A divisor is a coefficient per ray, ``D = sum a_i D_i``.  Its section polygon is
``{m : <m, u_i> >= -a_i}`` and ``vol(D) = 2 * area``.  The canonical divisor is
stored as ``-sum D_i``, so on the first Hirzebruch surface ``-K`` is the class
``2s + 3f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence, Union

from .errors import InvalidFan, NonCoprime, NonPrimitiveWeights
from .exactnum import Interval, PiecewisePoly
from .polyarea import HalfPlaneFamily, halfplane_polygon, shoelace_area

Ray = tuple[int, int]


def _det(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]


def _solve2(u: Ray, v: Ray, bu, bv) -> tuple[Fraction, Fraction]:
    """``m`` with ``<m, u> = bu`` and ``<m, v> = bv``."""
    det = _det(u, v)
    return (Fraction(bu * v[1] - u[1] * bv) / det, Fraction(u[0] * bv - v[0] * bu) / det)


def _pair(m, w) -> Fraction:
    return m[0] * w[0] + m[1] * w[1]


def _half(v: Ray) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(a: Ray, b: Ray) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = _det(a, b)
    return -1 if cross > 0 else (1 if cross < 0 else 0)


@dataclass(frozen=True)
class TDivisor:
    """Torus-invariant Q-divisor, one coefficient per ray of its surface."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(Fraction(a) for a in coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: TDivisor) -> TDivisor:
        return TDivisor(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def __sub__(self, other: TDivisor) -> TDivisor:
        return TDivisor(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def __neg__(self) -> TDivisor:
        return TDivisor(-a for a in self.coeffs)

    def __mul__(self, k) -> TDivisor:
        return TDivisor(Fraction(k) * a for a in self.coeffs)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"coeffs": [str(a) for a in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> TDivisor:
        return cls(Fraction(a) for a in obj["coeffs"])


@dataclass(frozen=True)
class ToricSurface:
    """A complete fan in Z^2 with rays sorted counterclockwise from the positive x-axis."""

    rays: tuple[Ray, ...]
    labels: tuple[str, ...]
    name: str = ""
    grading: Optional[tuple[int, ...]] = field(default=None)

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence[int]], labels: Optional[Iterable[str]] = None,
                  name: str = "", grading: Optional[Iterable[int]] = None) -> ToricSurface:
        rays = [(int(r[0]), int(r[1])) for r in rays]
        labels = list(labels) if labels is not None else [f"D{i}" for i in range(len(rays))]
        grading = list(grading) if grading is not None else None
        if len(labels) != len(rays) or len(set(labels)) != len(labels):
            raise InvalidFan("labels must be distinct and one per ray")
        order = sorted(range(len(rays)), key=cmp_to_key(lambda i, j: _angle_cmp(rays[i], rays[j])))
        surf = cls(tuple(rays[i] for i in order), tuple(labels[i] for i in order), name,
                   tuple(grading[i] for i in order) if grading is not None else None)
        surf._validate()
        return surf

    def _validate(self):
        if len(self.rays) < 3:
            raise InvalidFan("a complete fan needs at least three rays")
        for r in self.rays:
            if r == (0, 0) or math.gcd(*r) != 1:
                raise InvalidFan(f"ray {r} is not primitive")
        for i in range(len(self.rays)):
            if _det(self.rays[i], self.rays[(i + 1) % len(self.rays)]) <= 0:
                raise InvalidFan("consecutive rays must span strictly convex cones covering the plane")

    # -- basic data ----------------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no ray labelled {label!r}") from None

    def divisor(self, coeffs: Union[Sequence, dict]) -> TDivisor:
        if isinstance(coeffs, dict):
            out = [Fraction(0)] * self.n_rays
            for label, a in coeffs.items():
                out[self.index(label)] += Fraction(a)
            return TDivisor(out)
        if len(coeffs) != self.n_rays:
            raise ValueError(f"expected {self.n_rays} coefficients, got {len(coeffs)}")
        return TDivisor(coeffs)

    def ray_divisor(self, i: int) -> TDivisor:
        return TDivisor(1 if k == i else 0 for k in range(self.n_rays))

    def zero(self) -> TDivisor:
        return TDivisor([0] * self.n_rays)

    def canonical(self) -> TDivisor:
        return TDivisor([-1] * self.n_rays)

    def hyperplane(self, d=1) -> TDivisor:
        """``O(d)`` on a weighted projective plane (uses the stored grading)."""
        if self.grading is None:
            raise ValueError("surface carries no grading")
        return self.ray_divisor(0) * Fraction(d, self.grading[0])

    def cone(self, i: int) -> tuple[Ray, Ray]:
        return self.rays[i], self.rays[(i + 1) % self.n_rays]

    def cone_containing(self, w: Ray) -> int:
        for i in range(self.n_rays):
            a, b = self.cone(i)
            if _det(a, w) >= 0 and _det(w, b) >= 0:
                return i
        raise InvalidFan(f"{w} lies in no cone")

    def cartier_datum(self, D: TDivisor, i: int) -> tuple[Fraction, Fraction]:
        """``m`` with ``<m, v> = -a_v`` on both rays of cone ``i``."""
        j = (i + 1) % self.n_rays
        return _solve2(self.rays[i], self.rays[j], -D[i], -D[j])

    # -- linear equivalence --------------------------------------------------

    def principal(self, m: Sequence) -> TDivisor:
        return TDivisor(_pair(m, u) for u in self.rays)

    def equivalent(self, D1: TDivisor, D2: TDivisor) -> bool:
        diff = D1 - D2
        m = _solve2(self.rays[0], self.rays[1], diff[0], diff[1])
        return self.principal(m) == diff

    # -- volumes and positivity ---------------------------------------------

    def section_polygon(self, D: TDivisor) -> list[tuple[Fraction, Fraction]]:
        return halfplane_polygon(self.rays, [-a for a in D.coeffs])

    def volume(self, D: TDivisor) -> Fraction:
        return 2 * shoelace_area(self.section_polygon(D))

    def _support_margins(self, D: TDivisor):
        for i in range(self.n_rays):
            m = self.cartier_datum(D, i)
            for k in range(self.n_rays):
                if k not in (i, (i + 1) % self.n_rays):
                    yield _pair(m, self.rays[k]) + D[k]

    def is_nef(self, D: TDivisor) -> bool:
        return all(g >= 0 for g in self._support_margins(D))

    def is_ample(self, D: TDivisor) -> bool:
        return all(g > 0 for g in self._support_margins(D))

    def ample_window(self, base: TDivisor, moving: TDivisor) -> Interval:
        """Open set of ``c`` with ``base + c*moving`` ample."""
        out = Interval()
        for i in range(self.n_rays):
            m0 = self.cartier_datum(base, i)
            m1 = self.cartier_datum(moving, i)
            for k in range(self.n_rays):
                if k in (i, (i + 1) % self.n_rays):
                    continue
                g0 = _pair(m0, self.rays[k]) + base[k]
                g1 = _pair(m1, self.rays[k]) + moving[k]
                out = out.intersect(_positive_set(g0, g1))
        return out

    def self_intersection(self, i: int) -> Fraction:
        n = self.n_rays
        prev, cur, nxt = self.rays[(i - 1) % n], self.rays[i], self.rays[(i + 1) % n]
        return Fraction(-_det(prev, nxt), _det(prev, cur) * _det(cur, nxt))

    def ray_pairing(self, i: int, j: int) -> Fraction:
        n = self.n_rays
        if i == j:
            return self.self_intersection(i)
        if (i - j) % n in (1, n - 1):
            return Fraction(1, abs(_det(self.rays[i], self.rays[j])))
        return Fraction(0)

    def intersect(self, D1: TDivisor, D2: TDivisor) -> Fraction:
        return sum((D1[i] * D2[j] * self.ray_pairing(i, j)
                    for i in range(self.n_rays) for j in range(self.n_rays)
                    if D1[i] and D2[j]), Fraction(0))

    # -- valuations ----------------------------------------------------------

    def log_discrepancy(self, w: Ray) -> Fraction:
        """Log discrepancy of the toric valuation ``w`` over this surface."""
        i = self.cone_containing(w)
        return _pair(_solve2(*self.cone(i), 1, 1), w)

    def order_along(self, D: TDivisor, w: Ray) -> Fraction:
        """Coefficient of the divisor of ``w`` in the pullback of ``D``."""
        return -_pair(self.cartier_datum(D, self.cone_containing(w)), w)

    def star_subdivide(self, cone: int, weights: tuple[int, int],
                       label: str = "E") -> tuple[ToricSurface, int]:
        """Insert ``a*v1 + b*v2`` into cone ``cone``; returns the surface and new index."""
        a, b = weights
        if a <= 0 or b <= 0 or math.gcd(a, b) != 1:
            raise NonPrimitiveWeights(f"weights {weights} must be positive and coprime")
        v1, v2 = self.cone(cone)
        w = (a * v1[0] + b * v2[0], a * v1[1] + b * v2[1])
        g = math.gcd(*w)
        w = (w[0] // g, w[1] // g)
        if label in self.labels:
            raise InvalidFan(f"label {label!r} already used")
        finer = ToricSurface.from_rays(self.rays + (w,), self.labels + (label,), self.name)
        return finer, finer.rays.index(w)

    def pullback(self, D: TDivisor, finer: ToricSurface) -> TDivisor:
        """Pull ``D`` back to a refinement of this fan."""
        out = []
        for w in finer.rays:
            if w in self.rays:
                out.append(D[self.rays.index(w)])
            else:
                out.append(self.order_along(D, w))
        return TDivisor(out)

    # -- parametric area ----------------------------------------------------

    def family(self, L: TDivisor, E: TDivisor, moving: Optional[TDivisor] = None
               ) -> HalfPlaneFamily:
        """Section polygons of ``L + c*moving - t*E``."""
        moving = moving if moving is not None else self.zero()
        return HalfPlaneFamily(self.rays, tuple(-a for a in L.coeffs),
                               tuple(-a for a in moving.coeffs), tuple(E.coeffs))

    def parametric_area_function(self, L: TDivisor, E: Union[int, TDivisor]) -> PiecewisePoly:
        """``t -> vol(L - tE)`` on ``[0, tau]`` as an exact piecewise quadratic."""
        if isinstance(E, int):
            E = self.ray_divisor(E)
        f = self.family(L, E).area_function(Fraction(0))
        return PiecewisePoly(f.breakpoints, tuple(p.scale(2) for p in f.pieces))

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        out: dict = {"rays": [list(r) for r in self.rays], "labels": list(self.labels)}
        if self.name:
            out["name"] = self.name
        if self.grading is not None:
            out["grading"] = list(self.grading)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> ToricSurface:
        return cls.from_rays(obj["rays"], obj.get("labels"), obj.get("name", ""),
                             obj.get("grading"))


def _positive_set(g0: Fraction, g1: Fraction) -> Interval:
    """``{c : g0 + g1*c > 0}``."""
    if g1 == 0:
        return Interval() if g0 > 0 else Interval.empty()
    root = -g0 / g1
    return Interval(root, None) if g1 > 0 else Interval(None, root)


# -- factories ----------------------------------------------------------------


def projective_plane() -> ToricSurface:
    return ToricSurface.from_rays([(1, 0), (0, 1), (-1, -1)], ["x", "y", "z"], "P2", [1, 1, 1])


def _unimodular_completion(weights: Sequence[int]) -> list[list[int]]:
    """Integer matrix ``U`` with ``det = +-1`` and ``U @ weights = e_last``."""
    n = len(weights)
    v = list(weights)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    while sum(1 for x in v if x) > 1:
        piv = min((i for i in range(n) if v[i]), key=lambda i: abs(v[i]))
        for j in range(n):
            if j != piv and v[j]:
                q = v[j] // v[piv]
                v[j] -= q * v[piv]
                U[j] = [a - q * b for a, b in zip(U[j], U[piv])]
    piv = next(i for i in range(n) if v[i])
    if v[piv] < 0:
        v[piv] = -v[piv]
        U[piv] = [-a for a in U[piv]]
    U[piv], U[-1] = U[-1], U[piv]
    return U


def weighted_projective(a: int, b: int, c: int) -> ToricSurface:
    """``P(a, b, c)`` with rays ``v_i`` satisfying ``a v_0 + b v_1 + c v_2 = 0``."""
    w = (a, b, c)
    if min(w) <= 0:
        raise ValueError("weights must be positive")
    for x, y in ((a, b), (a, c), (b, c)):
        if math.gcd(x, y) != 1:
            raise NonCoprime(f"weights {w} share the factor {math.gcd(x, y)}")
    U = _unimodular_completion(w)
    rays = [(U[0][i], U[1][i]) for i in range(3)]
    return ToricSurface.from_rays(rays, ["x0", "x1", "x2"], f"P({a},{b},{c})", w)


def hirzebruch(n: int) -> ToricSurface:
    """``F_n`` with rays labelled ``f, s, f2, s_inf``; ``s^2 = -n`` and ``s_inf^2 = n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return ToricSurface.from_rays([(1, 0), (0, 1), (-1, n), (0, -1)],
                                  ["f", "s", "f2", "s_inf"], f"F{n}")


def hirzebruch_class(X: ToricSurface, a, b) -> TDivisor:
    """Invariant representative of ``a*s + b*f`` on a Hirzebruch surface."""
    return X.divisor({"s": a, "f": b})
