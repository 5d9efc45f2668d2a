from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallcross.errors import (CoefficientOutOfFanoWindow, DegenerateDenominator,
                              EmptyCandidateSet, OutOfDomain, UnsupportedDimension)
from wallcross.exactnum import Interval, QuadExt, RatFunc, UniPoly
from wallcross.kstab import (LocalType, PairConfig, ValuationSpec, delta_candidate,
                             delta_over_candidates, gap_flip_points, index_bound,
                             interpolation_check, kst_interval_over_candidates, kst_region,
                             log_discrepancy_a, normalized_volume_bounds, s_at, s_invariant,
                             toric_blowup, toric_prime, wall_solve, weighted_blowup_point)
from wallcross.latmodel import CurveClass
from wallcross.scenarios import conic_valuation, f1_candidates, f1_pair, plane_curve_pair
from wallcross.sing import parse_germ
from wallcross.toric import hirzebruch, projective_plane

F = Fraction
C0 = QuadExt(F(2, 5), F(-1, 10), 6)


def rf(num, den) -> RatFunc:
    return RatFunc(UniPoly(num), UniPoly(den))


# -- F1 closed forms -----------------------------------------------------------


@pytest.mark.parametrize("label,expected", [
    ("s", rf([7, -17, 10], [6, -9])),
    ("s_inf", rf([5, -13, 8], [6, -9])),
    ("f", rf([13, -38, 28], [12, -18])),
])
def test_f1_s_invariants(label, expected):
    pair = f1_pair()
    s = s_invariant(f1_candidates()[label], pair)
    assert s.is_single()
    assert s.pieces[0] == expected


def test_f1_closed_form_factorization():
    s = s_invariant(f1_candidates()["s"], f1_pair())
    factored = RatFunc(UniPoly([1, -1]) * UniPoly([7, -10]), UniPoly([6, -9]))
    assert s.pieces[0] == factored


def test_f1_delta_walls():
    pair = f1_pair()
    for val in (f1_candidates()["s"], toric_prime(pair.surface, "s_inf", 2)):
        polys = delta_candidate(val, pair).wall_polynomials()
        assert {p for p in polys} == {UniPoly([1, -8, 10])}
    assert UniPoly([1, -8, 10]).real_roots()[0] == C0


def test_f1_delta_at_zero():
    rep = delta_over_candidates(list(f1_candidates().values()), f1_pair(), 0, True)
    assert rep.value == F(6, 7) and rep.argmin == "s" and not rep.upper_bound
    assert rep.values == {"s": F(6, 7), "s_inf": F(6, 5), "f": F(12, 13)}


def test_f1_window():
    pair = f1_pair()
    vals = list(f1_candidates().values())
    assert pair.fano_window() == Interval(0, F(1, 2), True, False)
    assert kst_region(vals, pair) == [Interval(C0, F(1, 2), True, False)]
    assert kst_interval_over_candidates(vals, pair) == Interval(C0, F(1, 2), True, False)
    tight = [f1_candidates()["s"], toric_prime(pair.surface, "s_inf", 2)]
    assert kst_region(tight, pair) == [Interval.point(C0)]


def test_f1_smoothness_gap():
    pair = f1_pair()
    assert pair.pair_volume() == UniPoly([8, -20, 12])
    flips = gap_flip_points(pair.pair_volume(), 2, LocalType("NonSmooth"))
    assert flips[0] == QuadExt(F(5, 6), F(-1, 12), 58)
    assert normalized_volume_bounds(2, 8, LocalType("NonSmooth"))["bound"] == F(9, 2)


# -- plane --------------------------------------------------------------------


def _plane_pair():
    P = projective_plane()
    return P, PairConfig(P, P.hyperplane(4), F(4, 3), "quartic")


def test_plane_toric_s_values():
    P, pair = _plane_pair()
    assert s_invariant(toric_prime(P, "x"), pair).pieces[0] == rf([1, F(-4, 3)], [1])
    assert s_invariant(toric_blowup(P, 0, (1, 1)), pair).pieces[0] == rf([2, F(-8, 3)], [1])
    assert s_invariant(toric_blowup(P, 0, (13, 2)), pair).pieces[0] == rf([15, -20], [1])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 25), st.integers(1, 25), st.integers(0, 2))
def test_plane_toric_valuations_have_zero_beta(a, b, cone):
    """Barycenter of the plane's polygon is the origin, so A = S for every toric divisor."""
    if math.gcd(a, b) != 1:
        return
    P = projective_plane()
    pair = PairConfig(P, P.zero(), None, "P2")
    val = toric_blowup(P, cone, (a, b))
    assert s_at(val, pair, 0) == val.log_discrepancy


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([(1, 1), (2, 1), (3, 2), (5, 3)]), st.integers(1, 6))
def test_cell_engine_matches_proportional_scaling(weights, degree):
    """Without the r shortcut the cell engine must still find (1 - c r) S(0)."""
    P = projective_plane()
    D = P.hyperplane(degree)
    r = F(degree, 3)
    proportional = PairConfig(P, D, r)
    generic = PairConfig(P, D, None)
    val = toric_blowup(P, 0, weights)
    expected = s_invariant(val, proportional)
    got = s_invariant(val, generic)
    assert got.is_single()
    assert got.pieces[0] == expected.pieces[0]


@settings(max_examples=20, deadline=None)
@given(st.fractions(0, F(49, 100)))
def test_symbolic_s_agrees_with_pointwise(c):
    pair = f1_pair()
    for val in f1_candidates().values():
        assert s_invariant(val, pair)(c) == s_at(val, pair, c)


def test_conic_s_and_walls():
    quartic, quintic = plane_curve_pair(4), plane_curve_pair(5)
    assert s_invariant(conic_valuation(), quartic).pieces[0] == rf([F(1, 2), F(-2, 3)], [1])
    assert quartic.fano_window() == Interval(0, F(3, 4), True, False)
    assert wall_solve(1, 2, s_at(conic_valuation(), quartic, 0), F(4, 3)) == F(3, 8)
    assert wall_solve(1, 2, s_at(conic_valuation(), quintic, 0), F(5, 3)) == F(3, 7)
    assert kst_region([conic_valuation()], quartic) == [Interval(0, F(3, 8), True, True)]


def test_weighted_blowup_point_data():
    val = weighted_blowup_point((22, 3), parse_germ("x^3 + y^22"))
    assert val.log_discrepancy == 25 and val.ord_boundary == 66
    assert log_discrepancy_a(val) == UniPoly([25, -66])


# -- bounds and errors ----------------------------------------------------------


def test_interpolation_and_index_bound():
    assert interpolation_check(F(4, 3), 0, F(3, 4))
    assert not interpolation_check(F(4, 3), 0, F(2, 3))
    with pytest.raises(OutOfDomain):
        interpolation_check(F(4, 3), F(3, 4), 1)
    assert index_bound(4, F(1, 4)) == 1
    assert index_bound(4, F(1, 2)) == 3
    assert index_bound(5, F(59, 100)) == 5
    with pytest.raises(CoefficientOutOfFanoWindow):
        index_bound(4, F(3, 4))


def test_local_type_caps():
    assert normalized_volume_bounds(2, 9, LocalType("Smooth"))["consistent"]
    assert not normalized_volume_bounds(2, 5, LocalType("Quotient", 4))["consistent"]
    with pytest.raises(UnsupportedDimension):
        LocalType("NonSmooth").cap(4)


def test_error_paths():
    with pytest.raises(DegenerateDenominator):
        wall_solve(1, 0, 0, 1)
    with pytest.raises(EmptyCandidateSet):
        kst_region([], f1_pair())
    with pytest.raises(ValueError):
        PairConfig(hirzebruch(1), f1_pair().boundary, F(1))
    with pytest.raises(ValueError):
        ValuationSpec("bad", 1, -1)
    assert CurveClass([2]).same_class(conic_valuation().curve)
