"""Plane-curve germs at the origin: Newton polygons, weighted orders and lcts.

A germ is a sparse polynomial ``{(i, j): coeff}`` standing for
``sum coeff * x^i * y^j``.  Log canonical thresholds are computed from the
Newton polygon, which is exact for Newton-nondegenerate germs and an upper
bound otherwise.
"""

from __future__ import annotations

import ast
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import EmptySupport, SubstitutionDegreeOverflow
from .exactnum import UniPoly

Monomial = tuple[int, int]
DEFAULT_MAX_DEGREE = 2000


@dataclass(frozen=True)
class Germ:
    """Sparse bivariate polynomial with nonzero rational coefficients."""

    terms: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def from_dict(cls, terms: Mapping[Monomial, object]) -> Germ:
        clean = {(int(i), int(j)): Fraction(c) for (i, j), c in terms.items()}
        if any(i < 0 or j < 0 for i, j in clean):
            raise ValueError("exponents must be nonnegative")
        return cls(tuple(sorted((m, c) for m, c in clean.items() if c != 0)))

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> Germ:
        return cls.from_dict({(i, j): coeff})

    @classmethod
    def x(cls) -> Germ:
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> Germ:
        return cls.monomial(0, 1)

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    @property
    def support(self) -> list[Monomial]:
        return [m for m, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.as_dict().get((i, j), Fraction(0))

    def _lift(self, other) -> Germ:
        return other if isinstance(other, Germ) else Germ.monomial(0, 0, other)

    def __add__(self, other) -> Germ:
        out = self.as_dict()
        for m, c in self._lift(other).terms:
            out[m] = out.get(m, Fraction(0)) + c
        return Germ.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> Germ:
        return Germ(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other) -> Germ:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Germ:
        return self._lift(other) - self

    def __mul__(self, other) -> Germ:
        o = self._lift(other)
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in o.terms:
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Germ.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Germ:
        if k < 0:
            raise ValueError("negative power of a germ")
        out, base = Germ.monomial(0, 0), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def swap(self) -> Germ:
        return Germ.from_dict({(j, i): c for (i, j), c in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms, key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
            mono = "*".join(s for s in (_power("x", i), _power("y", j)) if s)
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def to_json(self) -> list:
        return [{"i": i, "j": j, "c": str(c)} for (i, j), c in self.terms]

    @classmethod
    def from_json(cls, obj) -> Germ:
        if isinstance(obj, str):
            return parse_germ(obj)
        return cls.from_dict({(t["i"], t["j"]): Fraction(str(t["c"])) for t in obj})


def _power(var: str, k: int) -> str:
    return "" if k == 0 else (var if k == 1 else f"{var}^{k}")


def parse_germ(text: str) -> Germ:
    """Parse an expression in ``x`` and ``y`` with ``+ - * ^ **``, parentheses and rationals."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node) -> Germ:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Germ.monomial(0, 0, node.value)
        if isinstance(node, ast.Name) and node.id in ("x", "y"):
            return Germ.x() if node.id == "x" else Germ.y()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = ev(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ValueError("exponents must be integer literals")
                _check_degree(ev(node.left).degree() * exp.value)
                return ev(node.left) ** exp.value
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div) and right.support == [(0, 0)]:
                return left * (1 / right.terms[0][1])
        raise ValueError(f"unsupported syntax in germ {text!r}")

    return ev(tree)


def max_degree() -> int:
    raw = os.environ.get("WALLCROSS_MAX_DEGREE")
    return int(raw) if raw else DEFAULT_MAX_DEGREE


def _check_degree(deg: int):
    cap = max_degree()
    if deg > cap:
        raise SubstitutionDegreeOverflow(f"degree {deg} exceeds the cap {cap}")


# -- orders and thresholds ---------------------------------------------------


def weighted_order(f: Germ, weights: tuple[int, int]) -> int:
    """``min(a*i + b*j)`` over the support."""
    if f.is_zero():
        raise EmptySupport("the germ has no terms")
    a, b = weights
    return min(a * i + b * j for i, j in f.support)


def lct_quasi_homogeneous(p: int, q: int) -> Fraction:
    """Threshold of ``x^p + y^q``, capped at 1."""
    if p < 1 or q < 1:
        raise ValueError("exponents must be positive")
    return min(Fraction(1), Fraction(1, p) + Fraction(1, q))


def lct_an(n: int) -> Fraction:
    """Threshold of an ``A_n`` point ``x^2 = y^(n+1)``."""
    if n < 1:
        raise ValueError("A_n needs n >= 1")
    return lct_quasi_homogeneous(2, n + 1)


def newton_edges(f: Germ) -> list[tuple[Monomial, Monomial]]:
    """Compact edges of the Newton polygon, ordered from the x-axis side upward."""
    if f.is_zero():
        raise EmptySupport("the germ has no terms")
    best: dict[int, int] = {}
    for i, j in f.support:
        best[i] = min(j, best.get(i, j))
    pts = sorted(best.items())
    hull: list[Monomial] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # keep the part with strictly decreasing height: the compact faces
    while len(hull) >= 2 and hull[-1][1] >= hull[-2][1]:
        hull.pop()
    edges = list(zip(hull, hull[1:]))
    return [(b, a) for a, b in reversed(edges)]


def _edge_weight(edge: tuple[Monomial, Monomial]) -> tuple[int, int]:
    (i1, j1), (i2, j2) = edge
    a, b = abs(j2 - j1), abs(i1 - i2)
    g = math.gcd(a, b)
    return a // g, b // g


def newton_lct(f: Germ) -> Fraction:
    """``min(1, (a+b)/ord_w f)`` over edge normals and the coordinate weights.

    Exact for Newton-nondegenerate germs, an upper bound for the rest.
    """
    if f.is_zero():
        raise EmptySupport("the germ has no terms")
    if f.coeff(0, 0) != 0:
        raise ValueError("the germ does not vanish at the origin")
    weights = [_edge_weight(e) for e in newton_edges(f)] + [(1, 0), (0, 1)]
    best = Fraction(1)
    for w in weights:
        order = weighted_order(f, w)
        if order > 0:
            best = min(best, Fraction(w[0] + w[1], order))
    return best


def newton_nondegenerate(f: Germ) -> bool:
    """Every compact edge polynomial is square-free away from the axes."""
    for edge in newton_edges(f):
        a, b = _edge_weight(edge)
        order = weighted_order(f, (a, b))
        on_edge = {(i, j): c for (i, j), c in f.terms if a * i + b * j == order}
        lo = min(i for i, _ in on_edge)
        coeffs: dict[int, Fraction] = {}
        for (i, _), c in on_edge.items():
            coeffs[(i - lo) // b] = c
        g = UniPoly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])
        if g.degree >= 1 and g.gcd(g.derivative()).degree >= 1:
            return False
    return True


# -- substitution and A_n detection ------------------------------------------


def substitute(f: Germ, shift: Union[Germ, Mapping[int, object], None]) -> Germ:
    """Replace ``x`` by ``x + shift(y)``."""
    if shift is None:
        return f
    if not isinstance(shift, Germ):
        shift = Germ.from_dict({(0, k): c for k, c in shift.items()})
    if any(i != 0 for i, _ in shift.support):
        raise ValueError("the shift must be a polynomial in y alone")
    sdeg = max(shift.degree(), 1)
    _check_degree(max((i * sdeg + j for i, j in f.support), default=0))
    new_x = Germ.x() + shift
    out = Germ(())
    powers: dict[int, Germ] = {}
    for (i, j), c in f.terms:
        if i not in powers:
            powers[i] = new_x ** i
        out = out + powers[i] * Germ.monomial(0, j, c)
    return out


@dataclass(frozen=True)
class SingularityTag:
    kind: str  # "A", "QuasiHomog", "Smooth", "Unknown"
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == "A" and (len(self.params) != 1 or self.params[0] < 1):
            raise ValueError("A(n) needs n >= 1")
        if self.kind == "QuasiHomog" and (len(self.params) != 2 or min(self.params) < 2):
            raise ValueError("QuasiHomog(p, q) needs p, q >= 2")

    @property
    def is_node(self) -> bool:
        return self.kind == "A" and self.params == (1,)

    def lct(self) -> Optional[Fraction]:
        if self.kind == "A":
            return lct_an(self.params[0])
        if self.kind == "QuasiHomog":
            return lct_quasi_homogeneous(*self.params)
        if self.kind == "Smooth":
            return Fraction(1)
        return None

    def __str__(self):
        if self.kind == "A":
            return f"A{self.params[0]}"
        if self.kind == "QuasiHomog":
            return f"QuasiHomog({self.params[0]},{self.params[1]})"
        return self.kind


def _classify(g: Germ) -> SingularityTag:
    if g.coeff(1, 0) or g.coeff(0, 1):
        return SingularityTag("Smooth")
    if not g.coeff(2, 0):
        if g.coeff(0, 2):
            return _classify(g.swap())
        edges = newton_edges(g)
        if (len(edges) == 1 and edges[0][0][1] == 0 and edges[0][1][0] == 0
                and newton_nondegenerate(g)):
            p, q = edges[0][0][0], edges[0][1][1]
            return SingularityTag("QuasiHomog", (p, q))
        return SingularityTag("Unknown")
    pure_y = [j for i, j in g.support if i == 0]
    if not pure_y:
        return SingularityTag("Unknown")
    q = min(pure_y)
    if any(q * i + 2 * j < 2 * q for i, j in g.support):
        return SingularityTag("Unknown")
    if q % 2 == 0:
        alpha, beta, gamma = g.coeff(2, 0), g.coeff(1, q // 2), g.coeff(0, q)
        if beta * beta == 4 * alpha * gamma:
            return SingularityTag("Unknown")
    return SingularityTag("A", (q - 1,))


def detect_an(f: Germ, shift: Union[Germ, Mapping[int, object], None] = None) -> SingularityTag:
    """Apply ``x -> x + shift(y)`` and read off an ``A_n`` type from the support."""
    if f.is_zero():
        raise EmptySupport("the germ has no terms")
    g = substitute(f, shift)
    if g.coeff(0, 0) != 0:
        raise ValueError("the germ does not vanish at the origin")
    return _classify(g)


# -- degree-d plane curves with a large A_n point ----------------------------


@dataclass(frozen=True)
class CurveConstruction:
    degree: int
    equation: str       # homogeneous form
    chart: Germ         # affine chart z = 1 at the singular point
    shift: Germ         # x -> x + shift(y) puts the germ in A_n position
    an_index: int
    branches: int
    delta: int          # delta invariant of the A_n point

    @property
    def arithmetic_genus(self) -> int:
        return (self.degree - 1) * (self.degree - 2) // 2

    def to_json(self) -> dict:
        return {"degree": self.degree, "equation": self.equation, "chart": str(self.chart),
                "shift": str(self.shift), "an_index": self.an_index,
                "branches": self.branches, "delta": self.delta,
                "arithmetic_genus": self.arithmetic_genus}


def curve_construction(d: int) -> CurveConstruction:
    """Degree-``d`` curve whose singular point is ``A_n`` with ``n`` as large as the construction gives."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    k = d // 2 if d % 2 == 0 else (d - 1) // 2
    if d % 2 == 0:
        equation = f"(x*z^{k - 1} - y^{k})^2 - x^{d}"
        n = d * d // 2 - 1
    else:
        equation = f"(x*z^{k - 1} - y^{k})^2*z - x^{d}"
        n = d * (d - 1) // 2 - 1
    shift = Germ.monomial(0, k)
    chart = (Germ.x() - shift) ** 2 - Germ.x() ** d
    return CurveConstruction(d, equation, chart, shift, n, 2 if n % 2 else 1, (n + 1) // 2)
