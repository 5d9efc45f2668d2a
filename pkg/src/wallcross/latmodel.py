"""Picard-lattice models of surfaces of rank one or two.

A surface is its intersection form on a chosen basis, a canonical class and a
list of Mori-cone generators.  Whether that list generates the whole cone is
an assertion made by the caller (``mori_complete``), never inferred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import (DimensionMismatch, IncompleteConeDeclared, NonConvexAmpleSet,
                     NonPrimitiveWeights, UnboundedPolygon,
                     UnsupportedSurfaceRank)
from .exactnum import (Interval, PiecewisePoly, UniPoly, as_quad,
                       rational_between, sign)
from .polyarea import fit_quadratic

Line = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class CurveClass:
    coords: tuple[Fraction, ...]
    label: str = ""

    def __init__(self, coords: Iterable, label: str = ""):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in coords))
        object.__setattr__(self, "label", label)

    def __add__(self, other: CurveClass) -> CurveClass:
        _check_dims(self, other)
        return CurveClass((a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: CurveClass) -> CurveClass:
        _check_dims(self, other)
        return CurveClass((a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> CurveClass:
        return CurveClass(-a for a in self.coords)

    def __mul__(self, k) -> CurveClass:
        return CurveClass(Fraction(k) * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def same_class(self, other: CurveClass) -> bool:
        return self.coords == other.coords

    def named(self, label: str) -> CurveClass:
        return CurveClass(self.coords, label)

    def to_json(self) -> dict:
        return {"label": self.label, "coords": [str(a) for a in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> CurveClass:
        return cls((Fraction(a) for a in obj["coords"]), obj.get("label", ""))


def _check_dims(a: CurveClass, b: CurveClass):
    if len(a.coords) != len(b.coords):
        raise DimensionMismatch(f"classes of length {len(a.coords)} and {len(b.coords)}")


@dataclass(frozen=True)
class LatticeSurface:
    gram: tuple[tuple[Fraction, ...], ...]
    canonical: CurveClass
    mori: tuple[CurveClass, ...] = ()
    mori_complete: bool = False
    sing: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        gram = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n not in (1, 2):
            raise UnsupportedSurfaceRank(f"rank {n} lattices are not supported")
        if any(len(row) != n for row in gram):
            raise DimensionMismatch("gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix must be symmetric")
        for C in (self.canonical, *self.mori):
            if len(C.coords) != n:
                raise DimensionMismatch(f"class {C.label!r} has the wrong length")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def cls(self, *coords, label: str = "") -> CurveClass:
        c = CurveClass(coords, label)
        if len(c.coords) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates")
        return c

    def zero(self) -> CurveClass:
        return CurveClass([0] * self.rank)

    def intersect(self, A: CurveClass, B: CurveClass) -> Fraction:
        if len(A.coords) != self.rank or len(B.coords) != self.rank:
            raise DimensionMismatch("class length does not match the lattice rank")
        return sum((A.coords[i] * self.gram[i][j] * B.coords[j]
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def generator(self, label: str) -> CurveClass:
        for G in self.mori:
            if G.label == label:
                return G
        raise KeyError(f"no Mori generator labelled {label!r}")

    def _require_complete(self):
        if not self.mori_complete:
            raise IncompleteConeDeclared(
                f"{self.name or 'surface'}: Mori generators not declared complete")

    # -- cone and volume -----------------------------------------------------

    def cone_coordinates(self, L: CurveClass) -> Optional[tuple[Fraction, ...]]:
        """Coordinates of ``L`` along the two Mori generators (rank two only)."""
        if self.rank != 2 or len(self.mori) != 2:
            return None
        (a, b), (c, d) = self.mori[0].coords, self.mori[1].coords
        det = a * d - b * c
        x, y = L.coords
        return ((x * d - y * c) / det, (a * y - b * x) / det)

    def is_pseudo_effective(self, L: CurveClass) -> bool:
        self._require_complete()
        if self.rank == 1:
            G = self.mori[0]
            return L.coords[0] * G.coords[0] >= 0
        coords = self.cone_coordinates(L)
        if coords is None:
            raise IncompleteConeDeclared("rank two needs exactly two Mori generators")
        return all(x >= 0 for x in coords)

    def zariski_positive_part(self, L: CurveClass) -> CurveClass:
        """Positive part of a pseudo-effective ``L`` by the usual iteration."""
        support: list[CurveClass] = []
        P = L
        for _ in range(len(self.mori) + 1):
            P = self._subtract_orthogonal(L, support)
            added = [G for G in self.mori
                     if self.intersect(G, G) < 0 and self.intersect(P, G) < 0
                     and not any(G.same_class(S) for S in support)]
            if not added:
                return P
            support.extend(added)
        return P

    def _subtract_orthogonal(self, L: CurveClass, support: Sequence[CurveClass]) -> CurveClass:
        if not support:
            return L
        if len(support) >= self.rank:
            return self.zero()
        G = support[0]
        return L - G * (self.intersect(L, G) / self.intersect(G, G))

    def volume(self, L: CurveClass) -> Fraction:
        if not self.is_pseudo_effective(L):
            return Fraction(0)
        P = self.zariski_positive_part(L)
        return self.intersect(P, P)

    def is_ample(self, L: CurveClass) -> bool:
        self._require_complete()
        return (self.intersect(L, L) > 0
                and all(self.intersect(L, G) > 0 for G in self.mori))

    def ample_interval(self, base: CurveClass, moving: CurveClass,
                       window: Optional[Interval] = None) -> Interval:
        """``{c : base + c*moving`` ample``}`` as an open interval, optionally clipped."""
        self._require_complete()
        out = Interval()
        for G in self.mori:
            g0, g1 = self.intersect(base, G), self.intersect(moving, G)
            out = out.intersect(_positive_set(g0, g1))
        square = UniPoly([self.intersect(base, base), 2 * self.intersect(base, moving),
                          self.intersect(moving, moving)])
        out = _restrict_positive(square, out)
        return out.intersect(window) if window is not None else out

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"name": self.name,
                "gram": [[str(x) for x in row] for row in self.gram],
                "canonical": [str(x) for x in self.canonical.coords],
                "mori": [G.to_json() for G in self.mori],
                "mori_complete": self.mori_complete,
                "sing": {k: list(v) for k, v in self.sing.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> LatticeSurface:
        return cls(gram=tuple(tuple(Fraction(x) for x in row) for row in obj["gram"]),
                   canonical=CurveClass(Fraction(x) for x in obj["canonical"]),
                   mori=tuple(CurveClass.from_json(g) for g in obj.get("mori", [])),
                   mori_complete=bool(obj.get("mori_complete", False)),
                   sing={k: tuple(v) for k, v in obj.get("sing", {}).items()},
                   name=obj.get("name", ""))


def _positive_set(g0: Fraction, g1: Fraction) -> Interval:
    if g1 == 0:
        return Interval() if g0 > 0 else Interval.empty()
    root = -g0 / g1
    return Interval(root, None) if g1 > 0 else Interval(None, root)


def _restrict_positive(q: UniPoly, region: Interval) -> Interval:
    """Points of ``region`` where ``q > 0``; must form one interval."""
    if region.is_empty():
        return region
    if q.degree < 1:
        return region if sign(q[0]) > 0 else Interval.empty()
    roots = [r for r in q.real_roots() if r in region]
    cuts = [region.lo] + roots + [region.hi]
    parts = []
    for k, (a, b) in enumerate(zip(cuts, cuts[1:])):
        probe = _probe(a, b)
        if sign(q(probe)) > 0:
            parts.append(Interval(a, b, region.lo_closed if k == 0 else False,
                                  region.hi_closed if k == len(cuts) - 2 else False))
    parts = [p for p in parts if not p.is_empty()]
    if not parts:
        return Interval.empty()
    if len(parts) > 1:
        raise NonConvexAmpleSet("the ample locus splits into several intervals")
    return parts[0]


def _probe(a, b):
    if a is None and b is None:
        return Fraction(0)
    if a is None:
        return Fraction(as_quad(b).bounds(4)[0]) - 1
    if b is None:
        return Fraction(as_quad(a).bounds(4)[1]) + 1
    return rational_between(a, b)


def adjunction_degree(genus_term, indices: Iterable[int]) -> Fraction:
    """``genus_term + sum(1 - 1/m)`` over quotient points of index ``m``."""
    total = Fraction(genus_term)
    for m in indices:
        if m < 1:
            raise ValueError("singularity indices must be positive")
        total += 1 - Fraction(1, m)
    return total


def projective_plane_model() -> LatticeSurface:
    H = CurveClass([1], "H")
    return LatticeSurface(((1,),), CurveClass([-3]), (H,), True, {}, "P2")


def weighted_blowup_model(weights: tuple[int, int], degree: int, order: int,
                          extra_mori: Sequence[CurveClass] = (),
                          mori_complete: bool = False,
                          name: str = "") -> tuple[LatticeSurface, CurveClass]:
    """``(a, b)`` blow-up of a smooth point of the plane in the basis ``(H, E)``.

    Returns the model and the strict transform ``d*H - m*E`` of a degree ``d``
    curve of weighted order ``m``.  Mori generators are ``E``, the strict
    transform when it is negative, and ``extra_mori``.
    """
    a, b = weights
    if a <= 0 or b <= 0 or math.gcd(a, b) != 1:
        raise NonPrimitiveWeights(f"weights {weights} must be positive and coprime")
    gram = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1, a * b)))
    E = CurveClass([0, 1], "E")
    D = CurveClass([degree, -order], "D")
    mori = [E]
    d_sq = degree * degree - Fraction(order * order, a * b)
    if d_sq < 0:
        mori.append(D)
    mori.extend(extra_mori)
    K = CurveClass([-3, a + b - 1], "K")
    X = LatticeSurface(gram, K, tuple(mori), mori_complete, {},
                       name or f"Bl_({a},{b}) P2")
    return X, D


@dataclass(frozen=True)
class LatticeFamily:
    """The classes ``L0 + c*L1 - t*E`` on a lattice model, for S-invariants."""

    surface: LatticeSurface
    base: CurveClass
    moving: CurveClass
    direction: CurveClass

    def at(self, c, t) -> CurveClass:
        return self.base + self.moving * c - self.direction * t

    def vol(self, c, t) -> Fraction:
        return self.surface.volume(self.at(c, t))

    def _affine_pairs(self, G: CurveClass) -> tuple[Fraction, Fraction, Fraction]:
        X = self.surface
        return (-X.intersect(self.direction, G), X.intersect(self.moving, G),
                X.intersect(self.base, G))

    def _cone_lines(self) -> list[Line]:
        X = self.surface
        if X.rank == 1:
            G = X.mori[0]
            pick = lambda C: C.coords[0] / G.coords[0]  # noqa: E731
            return [(-pick(self.direction), pick(self.moving), pick(self.base))]
        out = []
        for k in range(2):
            cb = X.cone_coordinates(self.base)[k]
            cm = X.cone_coordinates(self.moving)[k]
            ce = X.cone_coordinates(self.direction)[k]
            out.append((-ce, cm, cb))
        return out

    def lines(self) -> list[Line]:
        """Lines ``alpha*t + beta*c + gamma = 0`` where the Zariski chamber can change."""
        X = self.surface
        out = self._cone_lines()
        for G in X.mori:
            out.append(self._affine_pairs(G))
        for G, H in combinations(X.mori, 2):
            for first, second in ((G, H), (H, G)):
                g2 = X.intersect(first, first)
                gh = X.intersect(first, second)
                a1 = self._affine_pairs(second)
                a2 = self._affine_pairs(first)
                out.append(tuple(g2 * x - gh * y for x, y in zip(a1, a2)))
        return [ln for ln in out if any(x != 0 for x in ln)]

    def tau(self, c) -> Optional[Fraction]:
        """Pseudo-effective threshold of ``L(c) - tE``."""
        X = self.surface
        X._require_complete()
        if not X.is_pseudo_effective(self.at(c, 0)):
            return None
        best: Optional[Fraction] = None
        for alpha, beta, gamma in self._cone_lines():
            if alpha < 0:
                t = (beta * c + gamma) / -alpha
                best = t if best is None else min(best, t)
        if best is None:
            raise UnboundedPolygon("L - tE stays pseudo-effective for every t")
        return best

    def vol_function(self, c) -> PiecewisePoly:
        tau = self.tau(c)
        if tau is None or tau == 0:
            return PiecewisePoly((Fraction(0),), ())
        cuts = {Fraction(0), tau}
        for alpha, beta, gamma in self.lines():
            if alpha != 0:
                t = -(beta * c + gamma) / alpha
                if 0 < t < tau:
                    cuts.add(t)
        bps = sorted(cuts)
        pieces = [fit_quadratic(lambda t: self.vol(c, t), a, b) for a, b in zip(bps, bps[1:])]
        return PiecewisePoly(tuple(bps), tuple(pieces)).merged()
