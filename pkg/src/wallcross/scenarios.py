"""Preset surface pairs and the JSON scenario format.

Scenario JSON::

    {"surface": {"preset": "F1"} | {"toric": {"rays": ..., "labels": ...}}
                | {"lattice": {...}},
     "boundary": {"class": {"s": 2, "f": 4}} | {"coeffs": [...]} | {"coords": [...]},
     "r": "4/3" | null,
     "candidates": [{"type": "ray", "label": "s", "ord": "0"},
                    {"type": "blowup", "cone": 0, "weights": [1, 1], "ord": "0"},
                    {"type": "curve", "coords": ["2"], "label": "Q", "ord": "2"}],
     "window": ["0", "3/4"]}
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ScenarioError
from .exactnum import Interval, parse_number
from .kstab import (PairConfig, ValuationSpec, lattice_curve, toric_blowup,
                    toric_prime)
from .latmodel import (CurveClass, LatticeSurface, projective_plane_model,
                       weighted_blowup_model)
from .ksba import Component, ReducibleSurfacePair
from .toric import (ToricSurface, hirzebruch, hirzebruch_class, projective_plane,
                    weighted_projective)

F1_BOUNDARY = (2, 4)  # D in |2s + 4f|


@dataclass(frozen=True)
class Scenario:
    pair: PairConfig
    candidates: tuple[ValuationSpec, ...]
    window: Optional[Interval] = None


# -- presets -----------------------------------------------------------------


def f1_pair() -> PairConfig:
    X = hirzebruch(1)
    return PairConfig(X, hirzebruch_class(X, *F1_BOUNDARY), None, "(F1, c(2s+4f))")


def f1_candidates(ord_s=0, ord_s_inf=0, ord_f=0) -> dict[str, ValuationSpec]:
    X = hirzebruch(1)
    return {"s": toric_prime(X, "s", ord_s),
            "s_inf": toric_prime(X, "s_inf", ord_s_inf),
            "f": toric_prime(X, "f", ord_f)}


def plane_curve_pair(degree: int) -> PairConfig:
    """``(P^2, cD)`` with ``D`` of the given degree on the rank-one model."""
    P = projective_plane_model()
    return PairConfig(P, CurveClass([degree], "D"), Fraction(degree, 3), f"(P2, c*C{degree})")


def conic_valuation(order=2) -> ValuationSpec:
    """The conic ``Q``, contained in ``D`` with multiplicity ``order`` (a double conic by default)."""
    return lattice_curve(CurveClass([2], "Q"), order, "Q")


def octic_surfaces() -> tuple[LatticeSurface, CurveClass, LatticeSurface]:
    X, D = weighted_blowup_model((22, 3), 8, 66, mori_complete=True, name="Bl_(22,3) P2")
    X = LatticeSurface(X.gram, X.canonical, X.mori, True,
                       {"E": (3, 22), "D": (2,)}, X.name)
    Y = LatticeSurface(((Fraction(1, 66),),), CurveClass([-26], "K"),
                       (CurveClass([1], "H"),), True, {"L": (3, 22)}, "P(1,3,22)")
    return X, D, Y


def octic_pair() -> ReducibleSurfacePair:
    X, D, Y = octic_surfaces()
    return ReducibleSurfacePair((
        Component("X", X, D, X.generator("E"), (3, 22)),
        Component("Y", Y, CurveClass([66], "D_Y"), CurveClass([1], "L"), (3, 22)),
    ), curve_components=2)


def hassett_surface() -> tuple[LatticeSurface, CurveClass]:
    """``(3, 2)`` blow-up of a cusp of a plane quartic."""
    return weighted_blowup_model((3, 2), 4, 6, [CurveClass([1, -3], "L")], True,
                                 "Bl_(3,2) P2")


def quintic_component(name: str = "P2") -> ReducibleSurfacePair:
    P = projective_plane_model()
    return ReducibleSurfacePair((Component(name, P, CurveClass([5], "D")),))


# -- JSON parsing ------------------------------------------------------------


def _num(x) -> Fraction:
    v = parse_number(str(x))
    if not isinstance(v, Fraction):
        raise ScenarioError(f"expected a rational number, got {x!r}")
    return v


_WPS = re.compile(r"^P\((\d+),(\d+),(\d+)\)$")


def surface_from_json(obj: dict):
    if "preset" in obj:
        name = obj["preset"].replace(" ", "")
        m = _WPS.match(name)
        if name == "P2":
            return projective_plane()
        if name.startswith("F") and name[1:].isdigit():
            return hirzebruch(int(name[1:]))
        if m:
            return weighted_projective(*(int(g) for g in m.groups()))
        if name == "P2-lattice":
            return projective_plane_model()
        raise ScenarioError(f"unknown preset surface {name!r}")
    if "toric" in obj:
        return ToricSurface.from_json(obj["toric"])
    if "lattice" in obj:
        return LatticeSurface.from_json(obj["lattice"])
    raise ScenarioError("surface needs one of preset, toric, lattice")


def boundary_from_json(surface, obj: dict):
    if isinstance(surface, ToricSurface):
        if "class" in obj:
            labels = obj["class"]
            if set(labels) <= {"s", "f"} and surface.name.startswith("F"):
                return hirzebruch_class(surface, _num(labels.get("s", 0)),
                                        _num(labels.get("f", 0)))
            return surface.divisor({k: _num(v) for k, v in labels.items()})
        if "degree" in obj:
            return surface.hyperplane(_num(obj["degree"]))
        if "coeffs" in obj:
            return surface.divisor([_num(v) for v in obj["coeffs"]])
    elif "coords" in obj:
        return CurveClass(_num(v) for v in obj["coords"])
    raise ScenarioError("boundary does not match the surface type")


def candidate_from_json(surface, obj: dict) -> ValuationSpec:
    kind = obj.get("type")
    ord_b = _num(obj.get("ord", 0))
    if kind == "ray":
        return toric_prime(surface, obj["label"], ord_b)
    if kind == "blowup":
        w = obj["weights"]
        return toric_blowup(surface, int(obj["cone"]), (int(w[0]), int(w[1])), ord_b,
                            obj.get("label", ""))
    if kind == "curve":
        return lattice_curve(CurveClass((_num(v) for v in obj["coords"]), obj.get("label", "")),
                             ord_b, obj.get("label", ""))
    raise ScenarioError(f"unknown candidate type {kind!r}")


def window_from_json(obj) -> Optional[Interval]:
    if obj is None:
        return None
    if isinstance(obj, dict):
        lo = None if obj.get("lo") is None else parse_number(str(obj["lo"]))
        hi = None if obj.get("hi") is None else parse_number(str(obj["hi"]))
        return Interval(lo, hi, bool(obj.get("lo_closed", True)), bool(obj.get("hi_closed", False)))
    lo, hi = obj
    return Interval(parse_number(str(lo)), parse_number(str(hi)), True, False)


def scenario_from_json(obj: dict) -> Scenario:
    for key in ("surface", "boundary"):
        if key not in obj:
            raise ScenarioError(f"scenario is missing {key!r}")
    try:
        surface = surface_from_json(obj["surface"])
        boundary = boundary_from_json(surface, obj["boundary"])
        r = obj.get("r")
        pair = PairConfig(surface, boundary, None if r is None else _num(r),
                          obj.get("name", ""))
        cands = tuple(candidate_from_json(surface, c) for c in obj.get("candidates", []))
        window = window_from_json(obj.get("window"))
    except (KeyError, TypeError, IndexError) as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from exc
    return Scenario(pair, cands, window)
