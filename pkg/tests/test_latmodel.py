from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallcross.errors import (DimensionMismatch, IncompleteConeDeclared, NonPrimitiveWeights,
                              UnsupportedSurfaceRank)
from wallcross.exactnum import Interval, UniPoly
from wallcross.latmodel import (CurveClass, LatticeFamily, LatticeSurface, adjunction_degree,
                                projective_plane_model, weighted_blowup_model)
from wallcross.scenarios import hassett_surface, octic_surfaces
from wallcross.toric import hirzebruch, hirzebruch_class, projective_plane

F = Fraction


def f1_lattice() -> LatticeSurface:
    """F1 as the blow-up of the plane: basis (H, E), Mori cone spanned by E and H - E."""
    return LatticeSurface(((1, 0), (0, -1)), CurveClass([-3, 1]),
                          (CurveClass([0, 1], "E"), CurveClass([1, -1], "F")), True, {}, "F1")


def test_octic_numbers():
    X, D, Y = octic_surfaces()
    E = X.generator("E")
    assert X.intersect(E, E) == F(-1, 66)
    assert X.intersect(D, D) == -2
    assert X.ample_interval(X.canonical + E, D) == Interval(F(25, 66), F(1, 2))
    assert X.intersect(X.canonical + E + D * F(1, 3), D) == F(1, 3)
    assert adjunction_degree(-2, [3, 22, 2]) == F(4, 33)
    assert Y.ample_interval(Y.canonical + CurveClass([1]), CurveClass([66]),
                            Interval(0, 1, True, True)) == Interval(F(25, 66), 1, False, True)


def test_hassett_model():
    Y, D = hassett_surface()
    assert Y.canonical.coords == (-3, 4)
    assert D.coords == (4, -6)
    assert Y.intersect(Y.generator("E"), Y.generator("E")) == F(-1, 6)
    assert Y.intersect(D, D) == 10
    assert Y.intersect(Y.generator("L"), Y.generator("L")) == F(-1, 2)
    assert Y.ample_interval(Y.canonical, D) == Interval(1, None)


def test_plane_model():
    P = projective_plane_model()
    assert P.volume(CurveClass([3])) == 9
    assert P.volume(CurveClass([-1])) == 0
    assert P.is_ample(CurveClass([1])) and not P.is_ample(CurveClass([0]))
    assert P.ample_interval(CurveClass([3]), CurveClass([-4])) == Interval(None, F(3, 4))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(-12, 12))
def test_f1_lattice_volume_matches_toric(a, b):
    """Zariski decomposition on (H, E) agrees with the toric polygon area."""
    L = f1_lattice()
    X = hirzebruch(1)
    assert L.volume(CurveClass([a, -b])) == X.volume(hirzebruch_class(X, a - b, a))


def _coprime_pairs():
    return st.tuples(st.integers(2, 30), st.integers(1, 29)).filter(
        lambda p: p[0] > p[1] and math.gcd(*p) == 1)


@settings(max_examples=40, deadline=None)
@given(_coprime_pairs(), st.fractions(0, 12))
def test_weighted_blowup_volume_matches_toric(weights, t):
    a, b = weights
    line = CurveClass([1, -a], "L")
    X, _ = weighted_blowup_model(weights, 3, 0, [line], True)
    P = projective_plane()
    finer, k = P.star_subdivide(0, weights)
    toric = finer.volume(P.pullback(P.hyperplane(3), finer) - finer.ray_divisor(k) * t)
    assert X.volume(CurveClass([3, -t])) == toric


def test_lattice_family_on_conic():
    P = projective_plane_model()
    fam = LatticeFamily(P, CurveClass([3]), CurveClass([-4]), CurveClass([2]))
    f = fam.vol_function(0)
    assert f.breakpoints == (0, F(3, 2))
    assert f.pieces == (UniPoly([9, -12, 4]),)


def test_zariski_on_f1():
    L = f1_lattice()
    # H + E meets E negatively, so E is the negative part
    D = CurveClass([1, 1])
    assert L.zariski_positive_part(D).same_class(CurveClass([1, 0]))
    assert L.volume(D) == 1
    assert L.volume(CurveClass([2, -3])) == 0


def test_errors():
    with pytest.raises(UnsupportedSurfaceRank):
        LatticeSurface(((1, 0, 0), (0, 1, 0), (0, 0, 1)), CurveClass([0, 0, 0]))
    P = projective_plane_model()
    with pytest.raises(DimensionMismatch):
        P.intersect(CurveClass([1]), CurveClass([1, 0]))
    incomplete = LatticeSurface(((1,),), CurveClass([-3]), (CurveClass([1]),), False)
    with pytest.raises(IncompleteConeDeclared):
        incomplete.ample_interval(CurveClass([3]), CurveClass([-1]))
    with pytest.raises(NonPrimitiveWeights):
        weighted_blowup_model((2, 4), 4, 6)


def test_json_round_trip():
    X, _, _ = octic_surfaces()
    assert LatticeSurface.from_json(X.to_json()).to_json() == X.to_json()
