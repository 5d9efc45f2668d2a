"""KSBA side: ampleness of ``K + Delta + cD`` on glued surfaces and A_n replacement.

Only numerical data is tracked: classes on each component, gluing curves,
quotient-singularity indices and component counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import CoefficientIncompatible, DegreeTooSmall
from .exactnum import Interval, UniPoly, fmt
from .latmodel import CurveClass, LatticeSurface

WORKING_WINDOW = Interval(0, 1, True, True)


@dataclass(frozen=True)
class Component:
    """One surface of a reducible pair; ``gluing`` is its double-curve class."""

    name: str
    surface: LatticeSurface
    boundary: CurveClass
    gluing: Optional[CurveClass] = None
    markers: tuple[int, ...] = ()

    def base_class(self) -> CurveClass:
        K = self.surface.canonical
        return K + self.gluing if self.gluing is not None else K

    def ample_interval(self, window: Interval = WORKING_WINDOW) -> Interval:
        return self.surface.ample_interval(self.base_class(), self.boundary, window)


@dataclass(frozen=True)
class ReducibleSurfacePair:
    components: tuple[Component, ...]
    curve_components: int = 1
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.components or self.curve_components < 1:
            raise ValueError("a pair needs at least one surface and one curve component")

    @property
    def surface_components(self) -> int:
        return len(self.components)


def stable_range(pair: ReducibleSurfacePair, lct_d,
                 window: Interval = WORKING_WINDOW) -> Interval:
    """Coefficients where every component is ample, clipped above by ``lct(D)``."""
    out = window.intersect(Interval(None, Fraction(lct_d), False, True))
    for comp in pair.components:
        out = out.intersect(comp.ample_interval(window))
    return out


# -- A_n replacement ---------------------------------------------------------


@dataclass(frozen=True)
class ReplacementStep:
    n: int
    weights: tuple[int, int]
    glued_surface: str
    result_index: int
    threshold: Fraction
    degree: UniPoly   # degree of K + Delta + cD on the glued plane, in c

    def to_json(self) -> dict:
        return {"n": self.n, "weights": list(self.weights), "glued_surface": self.glued_surface,
                "result_singularity": f"A{self.result_index}" if self.result_index else "smooth",
                "threshold": fmt(self.threshold), "degree": self.degree.to_str(),
                "new_components": {"surfaces": 1, "curves": 1}}


def replacement_weights(n: int) -> tuple[int, int]:
    if n < 1:
        raise ValueError("A_n needs n >= 1")
    return (1, (n + 1) // 2) if n % 2 else (2, n + 1)


def an_replacement_step(n: int) -> ReplacementStep:
    """Blow up an ``A_n`` point with the weights below and glue ``P(1, a, b)``.

    On ``P(1, a, b)`` the new curve lies in ``O(2b)`` and the gluing curve in
    ``O(1)``, so ``K + Delta + cD`` has degree ``2bc - a - b``.
    """
    a, b = replacement_weights(n)
    degree = UniPoly([-a - b, 2 * b])
    threshold = Fraction(a + b, 2 * b)
    return ReplacementStep(n, (a, b), f"P(1,{a},{b})", n - 1, threshold, degree)


@dataclass(frozen=True)
class ComponentCount:
    surfaces: int
    curves: int
    steps: tuple[ReplacementStep, ...]

    def to_json(self) -> dict:
        return {"surfaces": self.surfaces, "curves": self.curves,
                "steps": [s.to_json() for s in self.steps]}


def iterate_replacement(k: int, j: int, n: int, ell: int, c=None) -> ComponentCount:
    """Replace ``A_n`` down to ``A_ell``, starting from ``k`` surfaces and ``j`` curves."""
    if not 1 <= ell <= n:
        raise ValueError("need 1 <= ell <= n")
    if k < 1 or j < 1:
        raise ValueError("component counts must be positive")
    if c is not None and Fraction(c) >= Fraction(1, 2) + Fraction(1, ell + 1):
        raise CoefficientIncompatible(
            f"c = {c} does not stop the chain at A_{ell}: need c < 1/2 + 1/{ell + 1}")
    steps = tuple(an_replacement_step(m) for m in range(n, ell, -1))
    return ComponentCount(k + n - ell, j + n - ell, steps)


def plane_degeneration_count(d: int) -> int:
    """Components of the many-component degeneration of degree-``d`` plane curves."""
    if d < 6:
        raise DegreeTooSmall("the construction needs d >= 6")
    return d * d // 2 - 1 if d % 2 == 0 else d * (d - 1) // 2 - 1


# -- ampleness checklist ----------------------------------------------


@dataclass(frozen=True)
class AmpleCheck:
    curve: str
    margin: UniPoly
    positive_for: Interval

    def to_json(self) -> dict:
        return {"curve": self.curve, "margin": self.margin.to_str(),
                "positive_for": str(self.positive_for)}


@dataclass(frozen=True)
class AmpleReport:
    c0: Fraction
    checks: tuple[AmpleCheck, ...]
    exceptional_negative: Optional[bool]
    ample_interval: Interval
    passes: bool

    def to_json(self) -> dict:
        return {"c0": fmt(self.c0), "checks": [c.to_json() for c in self.checks],
                "exceptional_negative": self.exceptional_negative,
                "ample_interval": str(self.ample_interval), "passes": self.passes}


def ample_checklist(Y: LatticeSurface, exceptional: CurveClass,
                           boundary: CurveClass, c0, delta: Optional[CurveClass] = None
                           ) -> AmpleReport:
    """Check that ``K + Delta + cD + E`` is ample just above ``c0`` curve by curve."""
    c0 = Fraction(c0)
    base = Y.canonical + exceptional
    if delta is not None:
        base = base + delta
    checks = []
    for G in Y.mori:
        margin = UniPoly([Y.intersect(base, G), Y.intersect(boundary, G)])
        if margin.degree < 1:
            region = Interval() if margin[0] > 0 else Interval.empty()
        else:
            root = -margin[0] / margin[1]
            region = Interval(root, None) if margin[1] > 0 else Interval(None, root)
        checks.append(AmpleCheck(G.label or str(G.coords), margin, region))
    e_neg = None if exceptional.is_zero() else Y.intersect(exceptional, exceptional) < 0
    amp = Y.ample_interval(base, boundary)
    ok = (not amp.is_empty() and (amp.lo is None or amp.lo <= c0)
          and (amp.hi is None or amp.hi > c0) and e_neg is not False)
    return AmpleReport(c0, tuple(checks), e_neg, amp, ok)
