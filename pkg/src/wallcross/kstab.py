"""A, S and delta for divisorial valuations over pairs ``(X, cD)``.

``S`` is the normalized integral of ``vol(-K - cD - tE)`` over ``t``.  When
``D`` is proportional to ``-K`` this is ``(1 - c*r)`` times the value at
``c = 0``; otherwise ``c`` is kept symbolic and the c-window is cut into cells
of fixed combinatorial type (see ``cells``).  Walls and windows are solved
exactly, with quadratic irrationalities where needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .cells import crossing_values, ratio_on_cells
from .errors import (CoefficientOutOfFanoWindow, DegenerateDenominator,
                     EmptyCandidateSet, NonPrimitiveWeights, OutOfDomain,
                     UnsupportedDimension, UnsupportedSurfaceRank)
from .exactnum import (Interval, Number, PiecewisePoly, PiecewiseRational,
                       QuadExt, RatFunc, UniPoly, as_quad, fmt,
                       integrate_piecewise, rational_between, sign, simplify)
from .latmodel import CurveClass, LatticeFamily, LatticeSurface
from .polyarea import HalfPlaneFamily
from .sing import Germ, weighted_order
from .toric import TDivisor, ToricSurface

Surface = Union[ToricSurface, LatticeSurface]
Boundary = Union[TDivisor, CurveClass]


# -- pairs -------------------------------------------------------------------


@dataclass(frozen=True)
class PairConfig:
    """A surface with boundary class ``D``, optionally ``D = -r K`` numerically."""

    surface: Surface
    boundary: Boundary
    r: Optional[Fraction] = None
    name: str = ""

    def __post_init__(self):
        if self.r is not None:
            object.__setattr__(self, "r", Fraction(self.r))
            target = self.anticanonical() * self.r
            if isinstance(self.surface, ToricSurface):
                ok = self.surface.equivalent(self.boundary, target)
            else:
                ok = self.boundary.same_class(target)
            if not ok:
                raise ValueError(f"boundary is not {self.r} times the anticanonical class")

    def anticanonical(self) -> Boundary:
        X = self.surface
        return -X.canonical() if isinstance(X, ToricSurface) else -X.canonical

    def volume(self, L: Boundary) -> Fraction:
        return self.surface.volume(L)

    @property
    def volume_anticanonical(self) -> Fraction:
        return self.volume(self.anticanonical())

    def polarization(self, c) -> Boundary:
        return self.anticanonical() - self.boundary * c

    def fano_window(self) -> Interval:
        """``{c >= 0 : -K - cD`` ample``}``."""
        X = self.surface
        base, moving = self.anticanonical(), -self.boundary
        if isinstance(X, ToricSurface):
            amp = X.ample_window(base, moving)
        else:
            amp = X.ample_interval(base, moving)
        return amp.intersect(Interval(0, None, True, False))

    def pair_volume(self) -> UniPoly:
        """``vol(-K - cD)`` as a polynomial on the Fano window (nef there)."""
        X = self.surface
        A, D = self.anticanonical(), self.boundary
        return UniPoly([X.intersect(A, A), -2 * X.intersect(A, D), X.intersect(D, D)])


# -- valuations --------------------------------------------------------------


@dataclass(frozen=True)
class ValuationSpec:
    """A divisorial valuation with its log discrepancy and order along ``D``.

    ``ray`` places a toric valuation; ``curve`` a prime divisor on a lattice
    model.  A weighted blow-up with neither carries only A and ord.
    """

    label: str
    log_discrepancy: Fraction
    ord_boundary: Fraction
    ray: Optional[tuple[int, int]] = None
    curve: Optional[CurveClass] = None
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "log_discrepancy", Fraction(self.log_discrepancy))
        object.__setattr__(self, "ord_boundary", Fraction(self.ord_boundary))
        if self.ord_boundary < 0:
            raise ValueError("order along the boundary must be nonnegative")

    def to_json(self) -> dict:
        out = {"label": self.label, "A": str(self.log_discrepancy),
               "ord": str(self.ord_boundary)}
        if self.ray is not None:
            out["ray"] = list(self.ray)
        if self.curve is not None:
            out["curve"] = [str(x) for x in self.curve.coords]
        return out


def toric_prime(X: ToricSurface, label: str, ord_boundary=0) -> ValuationSpec:
    """The invariant prime divisor of ray ``label``."""
    return ValuationSpec(label, 1, ord_boundary, ray=X.rays[X.index(label)])


def toric_blowup(X: ToricSurface, cone: int, weights: tuple[int, int],
                 ord_boundary=0, label: str = "") -> ValuationSpec:
    """Exceptional divisor of the ``(a, b)`` blow-up of the fixed point of ``cone``."""
    a, b = weights
    if math.gcd(a, b) != 1 or a <= 0 or b <= 0:
        raise NonPrimitiveWeights(f"weights {weights} must be positive and coprime")
    v1, v2 = X.cone(cone)
    w = (a * v1[0] + b * v2[0], a * v1[1] + b * v2[1])
    g = math.gcd(*w)
    w = (w[0] // g, w[1] // g)
    return ValuationSpec(label or f"E{weights}", X.log_discrepancy(w), ord_boundary, ray=w)


def lattice_curve(curve: CurveClass, ord_boundary=0, label: str = "") -> ValuationSpec:
    return ValuationSpec(label or curve.label, 1, ord_boundary, curve=curve)


def weighted_blowup_point(weights: tuple[int, int], germ: Germ,
                          label: str = "") -> ValuationSpec:
    """``(a, b)`` blow-up of a smooth point where ``D`` has local equation ``germ``."""
    a, b = weights
    return ValuationSpec(label or f"wbu{weights}", a + b, weighted_order(germ, weights))


def log_discrepancy_a(val: ValuationSpec, pair: Optional[PairConfig] = None) -> UniPoly:
    """``A_{X,cD}(E) = A_X(E) - c * ord_D(E)``."""
    return UniPoly([val.log_discrepancy, -val.ord_boundary])


# -- S-invariants ------------------------------------------------------------


class _ToricIntegrand:
    def __init__(self, family: HalfPlaneFamily):
        self.family = family

    def vol_function(self, c) -> PiecewisePoly:
        f = self.family.area_function(c)
        return PiecewisePoly(f.breakpoints, tuple(p.scale(2) for p in f.pieces))

    def volume(self, c) -> Fraction:
        return 2 * self.family.area(c, 0)

    def lines(self):
        return self.family.incidence_lines()

    def tau(self, c):
        return self.family.tau(c)


class _LatticeIntegrand:
    def __init__(self, family: LatticeFamily):
        self.family = family

    def vol_function(self, c) -> PiecewisePoly:
        return self.family.vol_function(c)

    def volume(self, c) -> Fraction:
        return self.family.vol(c, 0)

    def lines(self):
        return self.family.lines()

    def tau(self, c):
        return self.family.tau(c)


def _integrand(val: ValuationSpec, pair: PairConfig):
    X = pair.surface
    if isinstance(X, ToricSurface):
        if val.ray is None:
            raise UnsupportedSurfaceRank(f"{val.label}: no toric placement for this valuation")
        if val.ray in X.rays:
            Y, base, moving = X, pair.anticanonical(), -pair.boundary
            E = Y.ray_divisor(Y.rays.index(val.ray))
        else:
            Y = ToricSurface.from_rays(X.rays + (val.ray,), X.labels + ("_E",))
            base = X.pullback(pair.anticanonical(), Y)
            moving = X.pullback(-pair.boundary, Y)
            E = Y.ray_divisor(Y.index("_E"))
        return _ToricIntegrand(Y.family(base, E, moving))
    if val.curve is None:
        raise UnsupportedSurfaceRank(f"{val.label}: needs a curve class on the lattice model")
    return _LatticeIntegrand(LatticeFamily(X, pair.anticanonical(), -pair.boundary, val.curve))


def _n_over_v(integrand, c) -> tuple[Fraction, Fraction]:
    f = integrand.vol_function(c)
    return integrate_piecewise(f, f.lo, f.hi) if f.pieces else Fraction(0), integrand.volume(c)


def s_at(val: ValuationSpec, pair: PairConfig, c) -> Fraction:
    """``S_{X,cD}(E)`` at one rational ``c`` by direct integration."""
    n, v = _n_over_v(_integrand(val, pair), Fraction(c))
    if v == 0:
        raise OutOfDomain(f"-K - cD is not big at c = {c}")
    return n / v


def _rational_window(pair: PairConfig, window: Optional[Interval]) -> tuple[Fraction, Fraction]:
    w = pair.fano_window() if window is None else window
    if w.is_empty() or w.lo is None or w.hi is None:
        raise OutOfDomain("S needs a bounded nonempty c-window")
    lo, hi = simplify(w.lo), simplify(w.hi)
    if isinstance(lo, QuadExt) or isinstance(hi, QuadExt):
        raise OutOfDomain("window endpoints for S must be rational")
    return lo, hi


def s_invariant(val: ValuationSpec, pair: PairConfig,
                window: Optional[Interval] = None) -> PiecewiseRational:
    """``c -> S_{X,cD}(E)`` as exact rational functions on cells of the window."""
    integrand = _integrand(val, pair)
    lo, hi = _rational_window(pair, window)
    if pair.r is not None:
        n, v = _n_over_v(integrand, Fraction(0))
        piece = RatFunc(UniPoly([1, -pair.r]).scale(n / v))
        return PiecewiseRational((lo, hi), (piece,))
    cuts = crossing_values(integrand.lines(), lo, hi, integrand.tau)
    return ratio_on_cells(lambda c: _n_over_v(integrand, c)[0], integrand.volume,
                          cuts, lo, hi)


# -- delta -------------------------------------------------------------------


@dataclass(frozen=True)
class StabilityFunction:
    """``delta(c) = A(c) / S(c)`` for one valuation."""

    label: str
    a: UniPoly
    s: PiecewiseRational

    def __call__(self, c) -> Number:
        return simplify(as_quad(self.a(c)) / self.s(c))

    def margin_sign(self, c) -> int:
        """Sign of ``delta(c) - 1``, computed exactly."""
        return sign(as_quad(self.a(c)) - self.s(c))

    def cells(self):
        return zip(self.s.breakpoints, self.s.breakpoints[1:], self.s.pieces)

    def wall_polynomials(self) -> list[UniPoly]:
        """Per cell, the primitive integer polynomial whose roots are ``delta = 1``."""
        return [primitive(self.a * piece.den - piece.num) for _, _, piece in self.cells()]

    def to_json(self) -> dict:
        return {"label": self.label, "A": str(self.a), "S": self.s.to_json(),
                "delta": [str(RatFunc(self.a * p.den, p.num)) for _, _, p in self.cells()]}


def primitive(p: UniPoly) -> UniPoly:
    """Scale to coprime integer coefficients with positive leading term."""
    if p.is_zero():
        return p
    den = math.lcm(*(Fraction(c).denominator for c in p.coeffs))
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = math.gcd(*ints)
    s = 1 if ints[-1] > 0 else -1
    return UniPoly([s * x // g for x in ints])


def delta_candidate(val: ValuationSpec, pair: PairConfig,
                    window: Optional[Interval] = None) -> StabilityFunction:
    return StabilityFunction(val.label, log_discrepancy_a(val, pair),
                             s_invariant(val, pair, window))


@dataclass(frozen=True)
class DeltaReport:
    value: Number
    argmin: str
    upper_bound: bool
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"delta": fmt(self.value), "argmin": self.argmin,
                "upper_bound": self.upper_bound,
                "values": {k: fmt(v) for k, v in self.values.items()}}


def delta_over_candidates(vals: Sequence[ValuationSpec], pair: PairConfig, c,
                          equivariant_sufficient: bool = False,
                          window: Optional[Interval] = None) -> DeltaReport:
    """Minimum of ``A/S`` over the candidates at ``c``.

    This bounds the true delta from above unless the caller asserts that the
    candidates suffice (e.g. all invariant divisors under a group action).
    """
    if not vals:
        raise EmptyCandidateSet("no candidate valuations given")
    values: dict[str, Number] = {}
    best_label, best = None, None
    for val in vals:
        d = delta_candidate(val, pair, window)(c)
        values[val.label] = d
        if best is None or as_quad(d) < best:
            best, best_label = d, val.label
    return DeltaReport(simplify(best), best_label, not equivariant_sufficient, values)


def wall_solve(a, ord_boundary, s, r) -> Fraction:
    """Coefficient where ``A - c*ord = (1 - c*r) S``: ``(A - S)/(ord - r S)``."""
    a, o, s, r = (Fraction(x) for x in (a, ord_boundary, s, r))
    den = o - r * s
    if den == 0:
        raise DegenerateDenominator("this valuation never crosses delta = 1")
    return (a - s) / den


# -- kst windows -------------------------------------------------------------


def _delta_ok(funcs: Sequence[StabilityFunction], c) -> bool:
    return all(f.margin_sign(c) >= 0 for f in funcs)


def kst_region(vals: Sequence[ValuationSpec], pair: PairConfig,
               window: Optional[Interval] = None) -> list[Interval]:
    """Maximal intervals of the window where every candidate has ``delta >= 1``."""
    if not vals:
        raise EmptyCandidateSet("no candidate valuations given")
    W = pair.fano_window() if window is None else window
    if W.is_empty():
        return []
    funcs = [delta_candidate(v, pair, _closure(W)) for v in vals]
    points = {W.lo, W.hi}
    for f in funcs:
        for lo, hi, piece in f.cells():
            points.update((lo, hi))
            for root in (f.a * piece.den - piece.num).real_roots() if not (
                    f.a * piece.den - piece.num).is_zero() else []:
                if as_quad(lo) <= root <= hi:
                    points.add(root)
    pts = sorted((p for p in points if p is not None), key=as_quad)
    # alternate points and open gaps, then glue consecutive admissible pieces
    pieces: list[tuple[Number, Number, bool, bool]] = []
    for k, p in enumerate(pts):
        if p in W and _delta_ok(funcs, p):
            pieces.append((p, p, True, True))
        if k + 1 < len(pts):
            q = pts[k + 1]
            mid = rational_between(p, q)
            if mid in W and _delta_ok(funcs, mid):
                pieces.append((p, q, False, False))
    return _glue(pieces)


def _closure(W: Interval) -> Interval:
    return Interval(W.lo, W.hi, True, True)


def _glue(pieces) -> list[Interval]:
    out: list[list] = []
    for lo, hi, lc, hc in pieces:
        if out and out[-1][1] == lo and (out[-1][3] or lc):
            out[-1][1], out[-1][3] = hi, hc
        else:
            out.append([lo, hi, lc, hc])
    return [Interval(lo, hi, lc, hc) for lo, hi, lc, hc in out]


def kst_interval_over_candidates(vals: Sequence[ValuationSpec], pair: PairConfig,
                                 window: Optional[Interval] = None) -> Interval:
    """Smallest interval containing the candidate-admissible region; an outer bound."""
    region = kst_region(vals, pair, window)
    if not region:
        return Interval.empty()
    return Interval(region[0].lo, region[-1].hi, region[0].lo_closed, region[-1].hi_closed)


# -- interpolation and index bounds -------------------------------------------


def interpolation_check(r, c0, lct_d) -> bool:
    """Whether ``lct(X, D) >= 1/r``, which carries stability from ``c0`` up to ``1/r``."""
    r, c0, lct_d = Fraction(r), Fraction(c0), Fraction(lct_d)
    if r <= 0:
        raise ValueError("r must be positive")
    if c0 >= 1 / r:
        raise OutOfDomain("c0 must lie below 1/r")
    return lct_d >= 1 / r


def index_bound(d: int, c) -> int:
    """Bound on local Cartier indices of degenerations of ``(P^2, cD)``, ``deg D = d``."""
    c = Fraction(c)
    if d % 3 == 0:
        raise ValueError("the index bound needs 3 not dividing d")
    if not 0 < c < Fraction(3, d):
        raise CoefficientOutOfFanoWindow(f"c = {c} outside (0, 3/{d})")
    return min(math.floor(Fraction(3) / (3 - d * c)), d)


@dataclass(frozen=True)
class LocalType:
    kind: str  # "Smooth", "Quotient", "Index", "NonSmooth"
    order: int = 1

    def cap(self, n: int) -> Fraction:
        if self.kind == "Smooth":
            return Fraction(n ** n)
        if self.kind == "Quotient":
            return Fraction(n ** n, self.order)
        if self.kind == "Index":
            return Fraction(n ** n, self.order)
        if self.kind == "NonSmooth":
            if n not in (2, 3):
                raise UnsupportedDimension("the gap bound is used only in dimensions 2 and 3")
            return Fraction(2 * (n - 1) ** n)
        raise ValueError(f"unknown local type {self.kind!r}")


def normalized_volume_bounds(n: int, vol_pair, local: LocalType) -> dict:
    """Check ``vol_pair <= (1 + 1/n)^n * cap(local)``."""
    if n < 1:
        raise UnsupportedDimension("dimension must be positive")
    bound = Fraction(n + 1, n) ** n * local.cap(n)
    return {"consistent": Fraction(vol_pair) <= bound, "bound": bound}


def gap_flip_points(vol_pair: UniPoly, n: int, local: LocalType) -> list[Number]:
    """Values of ``c`` where ``vol_pair(c)`` meets the bound for ``local``."""
    bound = normalized_volume_bounds(n, 0, local)["bound"]
    return (vol_pair - bound).real_roots()
