from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallcross.errors import InvalidFan, NonCoprime, NonPrimitiveWeights
from wallcross.exactnum import Interval, UniPoly
from wallcross.toric import (ToricSurface, hirzebruch, hirzebruch_class, projective_plane,
                             weighted_projective)

F = Fraction


def triangle_volume(a: int, b: int, c: int, d) -> Fraction:
    """Normalized lattice area of ``{x >= 0, a x0 + b x1 + c x2 = d}``.

    The Euclidean area is ``|cross| / 2`` and the plane lattice has covolume
    ``|n|`` for the primitive normal ``n = (a, b, c)``, so twice the lattice area
    is ``cross . n / (n . n)``.
    """
    d = F(d)
    p0, p1, p2 = (d / a, F(0), F(0)), (F(0), d / b, F(0)), (F(0), F(0), d / c)
    u = [p1[i] - p0[i] for i in range(3)]
    v = [p2[i] - p0[i] for i in range(3)]
    cross = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    n = (a, b, c)
    return sum(x * y for x, y in zip(cross, n)) / sum(x * x for x in n)


def coprime_triples():
    w = st.integers(1, 40)
    return st.tuples(w, w, w).filter(
        lambda t: all(math.gcd(x, y) == 1 for x, y in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))))


@settings(max_examples=50, deadline=None)
@given(coprime_triples(), st.integers(1, 60))
def test_weighted_plane_volume_matches_lattice_area(w, d):
    X = weighted_projective(*w)
    assert X.volume(X.hyperplane(d)) == triangle_volume(*w, d)


@pytest.mark.parametrize("w,d,expected", [((1, 1, 1), 3, 9), ((1, 2, 9), 18, 18),
                                          ((1, 1, 4), 6, 9)])
def test_weighted_plane_anticanonical_volumes(w, d, expected):
    X = weighted_projective(*w) if w != (1, 1, 1) else projective_plane()
    assert X.volume(X.hyperplane(d)) == expected
    assert X.equivalent(X.hyperplane(sum(w)), -X.canonical())


def test_hirzebruch_volumes_and_positivity():
    X = hirzebruch(1)
    minus_k = -X.canonical()
    assert X.equivalent(minus_k, hirzebruch_class(X, 2, 3))
    assert X.volume(minus_k) == 8
    assert X.volume(hirzebruch_class(X, 2, 4)) == 12
    assert X.volume(hirzebruch_class(X, 4, 2)) == 4
    assert X.is_ample(hirzebruch_class(X, 2, 3))
    one_one = hirzebruch_class(X, 1, 1)
    assert X.is_nef(one_one) and not X.is_ample(one_one)
    assert [X.self_intersection(i) for i in range(4)] == [0, -1, 0, 1]


def test_volume_agrees_with_self_intersection_for_nef():
    X = hirzebruch(2)
    D = hirzebruch_class(X, 1, 3)
    assert X.is_nef(D)
    assert X.volume(D) == X.intersect(D, D)


def test_ample_window_of_f1_pair():
    X = hirzebruch(1)
    W = X.ample_window(-X.canonical(), -hirzebruch_class(X, 2, 4))
    assert W == Interval(None, F(1, 2), False, False)


def test_canonical_log_discrepancy_and_blowups():
    P = projective_plane()
    assert P.log_discrepancy((1, 0)) == 1
    assert P.log_discrepancy((1, 1)) == 2
    finer, k = P.star_subdivide(0, (13, 2))
    assert P.log_discrepancy(finer.rays[k]) == 15
    assert finer.self_intersection(k) == F(-1, 26)
    H = P.hyperplane(1)
    pulled = P.pullback(H, finer)
    assert finer.intersect(pulled, pulled) == 1
    assert finer.intersect(pulled, finer.ray_divisor(k)) == 0


@pytest.mark.parametrize("weights,pieces", [
    ((1, 1), [(F(0), F(3), UniPoly([9, 0, -1]))]),
    ((13, 2), [(F(0), F(6), UniPoly([9, 0, F(-1, 26)])),
               (F(6), F(39), UniPoly([F(117, 11), F(-6, 11), F(1, 143)]))]),
])
def test_parametric_volume_of_blowups(weights, pieces):
    P = projective_plane()
    finer, k = P.star_subdivide(0, weights)
    f = finer.parametric_area_function(P.pullback(P.hyperplane(3), finer), k)
    got = list(zip(f.breakpoints, f.breakpoints[1:], f.pieces))
    assert got == pieces


def test_parametric_volume_on_f1():
    X = hirzebruch(1)
    f = X.parametric_area_function(-X.canonical(), X.index("s"))
    assert f.breakpoints == (0, 2)
    assert f.pieces == (UniPoly([8, -2, -1]),)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(1, 6), st.integers(1, 6))
def test_volume_is_homogeneous_of_degree_two(n, a, b):
    X = hirzebruch(n)
    D = hirzebruch_class(X, a, a * n + b)
    assert X.volume(D * 3) == 9 * X.volume(D)


def test_invalid_fans():
    with pytest.raises(InvalidFan):
        ToricSurface.from_rays([(1, 0), (0, 1)])
    with pytest.raises(InvalidFan):
        ToricSurface.from_rays([(2, 0), (0, 1), (-1, -1)])
    with pytest.raises(InvalidFan):
        ToricSurface.from_rays([(1, 0), (0, 1), (-1, 0)])
    with pytest.raises(NonCoprime):
        weighted_projective(2, 4, 5)
    with pytest.raises(NonPrimitiveWeights):
        projective_plane().star_subdivide(0, (2, 4))


def test_json_round_trip():
    X = weighted_projective(1, 3, 22)
    assert ToricSurface.from_json(X.to_json()) == X
