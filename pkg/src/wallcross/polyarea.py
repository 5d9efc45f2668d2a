"""Exact areas of planar polygons cut out by half-planes affine in ``(c, t)``.

A constraint ``(u, k0, kc, kt)`` means ``<m, u> >= k0 + kc*c + kt*t``.  For
fixed ``c`` every polygon vertex moves affinely in ``t`` until it meets a third
constraint, so the area is piecewise quadratic in ``t`` and each breakpoint
solves a linear equation.  Those incidences, viewed in the ``(c, t)`` plane,
are the lines the c-cell engine subdivides along.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import UnboundedPolygon
from .exactnum import PiecewisePoly, UniPoly

Point = tuple[Fraction, Fraction]
Line = tuple[Fraction, Fraction, Fraction]  # alpha*t + beta*c + gamma = 0


def _det2(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Counterclockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace_area(vertices: Sequence[Point]) -> Fraction:
    n = len(vertices)
    if n < 3:
        return Fraction(0)
    twice = sum(vertices[i][0] * vertices[(i + 1) % n][1]
                - vertices[(i + 1) % n][0] * vertices[i][1] for i in range(n))
    return abs(twice) / 2


def halfplane_polygon(normals: Sequence[tuple[int, int]],
                      bounds: Sequence[Fraction]) -> list[Point]:
    """Vertices of ``{m : <m, u_k> >= b_k}``; assumes the region is bounded."""
    pts = []
    for i, j in combinations(range(len(normals)), 2):
        ui, uj = normals[i], normals[j]
        det = _det2(ui, uj)
        if det == 0:
            continue
        bi, bj = bounds[i], bounds[j]
        m = (Fraction(bi * uj[1] - ui[1] * bj) / det,
             Fraction(ui[0] * bj - uj[0] * bi) / det)
        if all(m[0] * u[0] + m[1] * u[1] >= b for u, b in zip(normals, bounds)):
            pts.append(m)
    return convex_hull(pts)


def _solve3(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Cramer's rule for a 3x3 system; ``None`` when singular."""
    def det3(m):
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    d = det3(rows)
    if d == 0:
        return None
    out = []
    for col in range(3):
        m = [list(r) for r in rows]
        for r in range(3):
            m[r][col] = rhs[r]
        out.append(Fraction(det3(m)) / d)
    return out


def _normalize_line(line: Line) -> Line | None:
    lead = next((x for x in line if x != 0), None)
    if lead is None:
        return None
    return tuple(x / lead for x in line)  # type: ignore[return-value]


@dataclass(frozen=True)
class HalfPlaneFamily:
    """Constraints ``<m, u_k> >= k0_k + kc_k*c + kt_k*t`` on a bounded region."""

    normals: tuple[tuple[int, int], ...]
    const: tuple[Fraction, ...]
    c_coef: tuple[Fraction, ...]
    t_coef: tuple[Fraction, ...]

    def bounds(self, c, t) -> list[Fraction]:
        return [k0 + kc * c + kt * t
                for k0, kc, kt in zip(self.const, self.c_coef, self.t_coef)]

    def polygon(self, c, t) -> list[Point]:
        return halfplane_polygon(self.normals, self.bounds(c, t))

    def area(self, c, t) -> Fraction:
        return shoelace_area(self.polygon(c, t))

    def is_nonempty(self, c, t) -> bool:
        return bool(self.polygon(c, t))

    def tau(self, c) -> Fraction | None:
        """Largest ``t`` with a nonempty polygon; ``None`` if empty already at 0."""
        if not self.is_nonempty(c, 0):
            return None
        if halfplane_polygon(self.normals, self.t_coef):
            raise UnboundedPolygon("the region stays nonempty for every t")
        best = Fraction(0)
        base = [k0 + kc * c for k0, kc in zip(self.const, self.c_coef)]
        for trip in combinations(range(len(self.normals)), 3):
            rows = [(self.normals[k][0], self.normals[k][1], -self.t_coef[k]) for k in trip]
            sol = _solve3(rows, [base[k] for k in trip])
            if sol is None or sol[2] <= best:
                continue
            m0, m1, t = sol
            if all(m0 * u[0] + m1 * u[1] >= b
                   for u, b in zip(self.normals, self.bounds(c, t))):
                best = t
        return best

    def incidence_lines(self) -> list[Line]:
        """Lines in ``(c, t)`` where the vertex of two constraints meets a third."""
        seen = set()
        out = []
        n = len(self.normals)
        for i, j in combinations(range(n), 2):
            for k in range(n):
                if k in (i, j):
                    continue
                cof = {i: _det2(self.normals[j], self.normals[k]),
                       j: -_det2(self.normals[i], self.normals[k]),
                       k: _det2(self.normals[i], self.normals[j])}
                line = (sum(cof[r] * self.t_coef[r] for r in cof),
                        sum(cof[r] * self.c_coef[r] for r in cof),
                        sum(cof[r] * self.const[r] for r in cof))
                norm = _normalize_line(line)
                if norm is not None and norm not in seen:
                    seen.add(norm)
                    out.append(norm)
        return out

    def area_function(self, c) -> PiecewisePoly:
        """``t -> area`` on ``[0, tau(c)]`` as an exact piecewise quadratic."""
        tau = self.tau(c)
        if tau is None or tau == 0:
            return PiecewisePoly((Fraction(0),), ())
        cuts = {Fraction(0), tau}
        for alpha, beta, gamma in self.incidence_lines():
            if alpha != 0:
                t = -(beta * c + gamma) / alpha
                if 0 < t < tau:
                    cuts.add(t)
        bps = sorted(cuts)
        pieces = [fit_quadratic(lambda t: self.area(c, t), a, b)
                  for a, b in zip(bps, bps[1:])]
        return PiecewisePoly(tuple(bps), tuple(pieces)).merged()


def fit_quadratic(func, a: Fraction, b: Fraction) -> UniPoly:
    """Quadratic through ``func`` at interior points of ``(a, b)``, checked once more."""
    xs = [a + (b - a) * Fraction(k, 5) for k in (1, 2, 3)]
    poly = UniPoly.interpolate([(x, func(x)) for x in xs])
    probe = a + (b - a) * Fraction(4, 5)
    if poly(probe) != func(probe):
        raise ArithmeticError("area is not quadratic between consecutive breakpoints")
    return poly
