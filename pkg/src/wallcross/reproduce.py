"""Reference checks: each one recomputes a known wall, interval or count.

Checks are grouped (``f1``, ``quartic``, ``quintic``, ``octic``, ``lct``,
``markov``, ``components``, ``plane``) so a run can be filtered.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .exactnum import Interval, QuadExt, RatFunc, UniPoly, fmt
from .kstab import (LocalType, PairConfig, delta_candidate, gap_flip_points, kst_region,
                    log_discrepancy_a, s_at, s_invariant, toric_blowup, toric_prime, wall_solve)
from .ksba import an_replacement_step, iterate_replacement, plane_degeneration_count, stable_range
from .latmodel import adjunction_degree
from .markov import candidate_surfaces
from .scenarios import (conic_valuation, f1_candidates, f1_pair, octic_pair,
                        octic_surfaces, plane_curve_pair)
from .sing import lct_an, lct_quasi_homogeneous, newton_lct, parse_germ
from .toric import projective_plane

GROUPS = ("f1", "quartic", "quintic", "octic", "lct", "markov", "components", "plane")

C0 = QuadExt(Fraction(2, 5), Fraction(-1, 10), 6)          # (4 - sqrt 6)/10
GAP = QuadExt(Fraction(5, 6), Fraction(-1, 12), 58)        # (10 - sqrt 58)/12


@dataclass(frozen=True)
class Check:
    name: str
    group: str
    expected: str
    computed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {"name": self.name, "group": self.group, "expected": self.expected,
                "computed": self.computed, "status": "PASS" if self.passed else "FAIL"}


def _pair_str(xs) -> str:
    return "{" + ", ".join(xs) + "}"


# -- individual groups ---------------------------------------------------------


def _f1(_: dict) -> list[Check]:
    pair = f1_pair()
    vals = f1_candidates()
    window = pair.fano_window()
    s_s = s_invariant(vals["s"], pair, window)
    closed = RatFunc(UniPoly([1, -1]) * UniPoly([7, -10]), UniPoly([6, -9]))
    ds = delta_candidate(vals["s"], pair, window)
    ds_inf = delta_candidate(toric_prime(pair.surface, "s_inf", 2), pair, window)
    region = kst_region(list(vals.values()), pair)
    flips = gap_flip_points(pair.pair_volume(), 2, LocalType("NonSmooth"))
    return [
        Check("f1 S(s) closed form", "f1", str(closed),
              str(s_s.pieces[0]) if s_s.is_single() else str(s_s.to_json())),
        Check("f1 wall polynomial from s", "f1", "10*c^2-8*c+1",
              ", ".join(sorted({p.to_str() for p in ds.wall_polynomials()}))),
        Check("f1 wall polynomial from s_inf with ord 2", "f1", "10*c^2-8*c+1",
              ", ".join(sorted({p.to_str() for p in ds_inf.wall_polynomials()}))),
        Check("f1 lower wall", "f1", fmt(C0), fmt(UniPoly([1, -8, 10]).real_roots()[0])),
        Check("f1 candidate window", "f1", str(Interval(C0, Fraction(1, 2), True, False)),
              ", ".join(str(w) for w in region)),
        Check("f1 smoothness gap flip", "f1", fmt(GAP), fmt(flips[0]) if flips else "none"),
    ]


def _conic_wall(degree: int, r_override: Optional[Fraction]) -> tuple[Fraction, Fraction]:
    pair = plane_curve_pair(degree)
    s0 = s_at(conic_valuation(), pair, 0)
    r = pair.r if r_override is None else r_override
    return s0, wall_solve(1, 2, s0, r)


def _quartic(opts: dict) -> list[Check]:
    s0, wall = _conic_wall(4, opts.get("inject_r"))
    return [
        Check("quartic S(conic) at c=0", "quartic", "1/2", fmt(s0)),
        Check("quartic double-conic wall", "quartic", "3/8", fmt(wall)),
        Check("quartic tacnode wall", "quartic", "3/4", fmt(lct_an(3))),
        Check("quartic cusp wall", "quartic", "5/6", fmt(an_replacement_step(2).threshold)),
    ]


def _quintic(_: dict) -> list[Check]:
    s0, wall = _conic_wall(5, None)
    step = an_replacement_step(8)
    return [
        Check("quintic wall c1", "quintic", "3/7", fmt(wall)),
        Check("quintic A8 threshold", "quintic", "11/18", fmt(lct_an(8))),
        Check("quintic P(1,2,9) ampleness degree", "quintic", "18*c-11", step.degree.to_str()),
        Check("quintic P(1,2,9) ampleness threshold", "quintic", "11/18", fmt(step.threshold)),
    ]


def _octic(_: dict) -> list[Check]:
    X, D, _Y = octic_surfaces()
    E = X.generator("E")
    return [
        Check("octic E^2", "octic", "-1/66", fmt(X.intersect(E, E))),
        Check("octic D_X^2", "octic", "-2", fmt(X.intersect(D, D))),
        Check("octic ample interval", "octic", "(25/66, 1/2)",
              str(stable_range(octic_pair(), 1))),
        Check("octic adjunction degree", "octic", "4/33", fmt(adjunction_degree(-2, [3, 22, 2]))),
    ]


def _lct(_: dict) -> list[Check]:
    return [
        Check("lct weights (3,22)", "lct", "25/66", fmt(lct_quasi_homogeneous(3, 22))),
        Check("lct cusp (2,3)", "lct", "5/6", fmt(newton_lct(parse_germ("x^2 - y^3")))),
        Check("lct A3", "lct", "3/4", fmt(lct_an(3))),
        Check("lct A8", "lct", "11/18", fmt(lct_an(8))),
    ]


def _markov(_: dict) -> list[Check]:
    def labels(c):
        return _pair_str(sorted({x.label for x in candidate_surfaces(4, c)}))
    return [
        Check("quartic candidates below 3/8", "markov", "{P2}", labels(Fraction(1, 4))),
        Check("quartic candidates in (3/8, 3/4)", "markov", "{P(1,1,4), P2}",
              labels(Fraction(1, 2))),
    ]


def _components(_: dict) -> list[Check]:
    chain = iterate_replacement(1, 1, 17, 1)
    weights = " ".join(f"({a},{b})" for a, b in (s.weights for s in chain.steps))
    expected = " ".join(f"(1,{(n + 1) // 2})" if n % 2 else f"(2,{n + 1})"
                        for n in range(17, 1, -1))
    return [
        Check("sextic component count", "components", "17", str(plane_degeneration_count(6))),
        Check("septic component count", "components", "20", str(plane_degeneration_count(7))),
        Check("A17 chain surfaces", "components", "17", str(chain.surfaces)),
        Check("A17 chain weights", "components", expected, weights),
    ]


def _plane(_: dict) -> list[Check]:
    P = projective_plane()
    pair = PairConfig(P, P.zero(), None, "P2")
    out = []
    for label, val, a in (("line", toric_prime(P, "x"), "1"),
                          ("(1,1) blow-up", toric_blowup(P, 0, (1, 1)), "2"),
                          ("(13,2) blow-up", toric_blowup(P, 0, (13, 2)), "15")):
        s0 = s_at(val, pair, 0)
        out.append(Check(f"P2 S({label})", "plane", a, fmt(s0)))
        out.append(Check(f"P2 A-S for {label}", "plane", "0",
                         fmt(log_discrepancy_a(val, pair)(0) - s0)))
    return out


_RUNNERS: dict[str, Callable[[dict], list[Check]]] = {
    "f1": _f1, "quartic": _quartic, "quintic": _quintic, "octic": _octic,
    "lct": _lct, "markov": _markov, "components": _components, "plane": _plane,
}


def run_checks(section: Optional[str] = None, inject_r=None) -> list[Check]:
    """Run every check, or only the named group."""
    if section is not None and section not in _RUNNERS:
        raise ValueError(f"unknown section {section!r}; choose from {', '.join(GROUPS)}")
    opts = {"inject_r": None if inject_r is None else Fraction(inject_r)}
    names = GROUPS if section is None else (section,)
    out: list[Check] = []
    for name in names:
        out.extend(_RUNNERS[name](opts))
    return out
