from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallcross.errors import (DegenerateLeadingCoefficient, MixedRadicalError,
                              NegativeDiscriminant, OutOfDomain, PoleAtPoint,
                              UnsupportedAlgebraicDegree)
from wallcross.exactnum import (PiecewisePoly, QuadExt, RatFunc, UniPoly,
                                integrate_piecewise, parse_number, quad_solve,
                                rational_between, sign_at)

F = Fraction
c_var = UniPoly.x()

big_ints = st.integers(min_value=-10**30, max_value=10**30)
nonzero = big_ints.filter(lambda n: n != 0)
rats = st.builds(Fraction, big_ints, nonzero)
small_rats = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))
radicands = st.sampled_from([0, 2, 3, 5, 6, 7, 10, 58])
quads = st.builds(QuadExt, small_rats, small_rats, radicands)


def test_quad_solve_irrational_wall():
    lo, hi = quad_solve(10, -8, 1)
    assert lo == QuadExt(F(2, 5), F(-1, 10), 6)
    assert lo.pretty() == "(4-sqrt(6))/10"
    assert hi == QuadExt(F(2, 5), F(1, 10), 6)


def test_quad_solve_repeated_rational_root():
    assert quad_solve(1, -2, 1) == (1, 1)
    assert isinstance(quad_solve(1, -2, 1)[0], Fraction)


def test_quad_solve_smoothness_gap():
    lo, hi = quad_solve(24, -40, 7)
    assert lo.pretty() == "(10-sqrt(58))/12"
    assert hi.pretty() == "(10+sqrt(58))/12"


def test_quad_solve_errors():
    with pytest.raises(NegativeDiscriminant):
        quad_solve(1, 0, 1)
    with pytest.raises(DegenerateLeadingCoefficient):
        quad_solve(0, 1, 1)


def test_square_factor_extraction():
    assert QuadExt(0, 1, 12) == QuadExt(0, 2, 3)
    assert QuadExt(1, 3, 4).simplify() == 7
    assert QuadExt.sqrt(F(1, 2)) == QuadExt(0, F(1, 2), 2)


def test_mixed_radicals_rejected():
    with pytest.raises(MixedRadicalError):
        QuadExt(0, 1, 2) + QuadExt(0, 1, 3)


def test_parse_and_json_roundtrip():
    x = parse_number("2/5-1/10*sqrt(6)")
    assert x == quad_solve(10, -8, 1)[0]
    assert parse_number(str(x)) == x
    assert QuadExt.from_json(x.to_json()) == x
    assert parse_number("3/8") == F(3, 8)
    assert parse_number("sqrt(8)") == QuadExt(0, 2, 2)
    assert parse_number("-2*sqrt(3)") == QuadExt(0, -2, 3)
    with pytest.raises(ValueError):
        parse_number("abc")


def test_integrate_piecewise_examples():
    f = PiecewisePoly.single(0, 3, UniPoly([3, -1]) ** 2)
    assert integrate_piecewise(f, 0, 3) == 9
    one = PiecewisePoly.single(0, 1, UniPoly([1]))
    assert integrate_piecewise(one, 0, 0) == 0
    g = PiecewisePoly.single(0, 2, UniPoly([2, -1]) * UniPoly([4, -1]))
    assert integrate_piecewise(g, 0, 2) == F(20, 3)
    with pytest.raises(OutOfDomain):
        integrate_piecewise(g, 0, 3)


def test_sign_at_examples():
    p = UniPoly([1, -8, 10])
    c0 = quad_solve(10, -8, 1)[0]
    assert sign_at(p, c0) == 0
    assert sign_at(UniPoly([1, -2]), F(3, 8)) == 1
    assert sign_at(p, F(1, 10)) == 1
    with pytest.raises(PoleAtPoint):
        sign_at(RatFunc(UniPoly([1]), UniPoly([-1, 10]) ), F(1, 10))


def test_ratfunc_reduces():
    s = RatFunc(UniPoly([1, -1]) * UniPoly([7, -10]), UniPoly([6, -9]))
    doubled = RatFunc(s.num.scale(2) * UniPoly([1, 1]), s.den.scale(2) * UniPoly([1, 1]))
    assert s == doubled
    assert s(F(0)) == F(7, 6)


def test_real_roots_and_cubic_guard():
    p = UniPoly([1, -8, 10]) * UniPoly([-1, 2])
    roots = p.real_roots()
    assert roots[1] == F(1, 2)
    assert len(roots) == 3
    with pytest.raises(UnsupportedAlgebraicDegree):
        UniPoly([-2, 0, 0, 1]).real_roots()


def test_polynomial_text():
    assert UniPoly([1, -8, 10]).to_str() == "10*c^2-8*c+1"
    assert str(UniPoly()) == "0"


@given(rats, rats, rats)
def test_rational_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(quads, quads, quads)
def test_quadext_ring_axioms(x, y, z):
    if len({v.d for v in (x, y, z) if v.d}) > 1:
        return
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert (x / x) == 1


@settings(max_examples=1000)
@given(quads, quads)
def test_quadext_order_matches_high_precision(x, y):
    mpmath.mp.dps = 100

    def hp(v):
        return mpmath.mpf(v.p.numerator) / v.p.denominator + \
            mpmath.mpf(v.q.numerator) / v.q.denominator * mpmath.sqrt(v.d)

    diff = hp(x) - hp(y)
    expected = 0 if abs(diff) < mpmath.mpf(10) ** -90 else (1 if diff > 0 else -1)
    if not (x.d and y.d and x.d != y.d):
        assert (x - y).sign() == expected
    assert (x < y) == (expected < 0)
    assert (x == y) == (expected == 0)


@given(small_rats.filter(lambda a: a != 0), small_rats, small_rats)
def test_quad_solve_roots_satisfy_equation(a, b, c):
    if b * b - 4 * a * c < 0:
        return
    for r in quad_solve(a, b, c):
        assert a * r * r + b * r + c == 0


@given(quads, quads)
def test_rational_between(x, y):
    if (x.d and y.d and x.d != y.d) or x == y:
        return
    lo, hi = (x, y) if x < y else (y, x)
    m = rational_between(lo, hi)
    assert lo < m < hi


piece = st.lists(small_rats, min_size=3, max_size=3).map(UniPoly)


@settings(max_examples=100)
@given(st.lists(small_rats, min_size=3, max_size=6, unique=True),
       st.lists(piece, min_size=5, max_size=5), st.data())
def test_integrator_matches_antiderivative_and_is_additive(bps, pieces, data):
    bps = sorted(bps)
    f = PiecewisePoly(tuple(bps), tuple(pieces[: len(bps) - 1]))
    # symbolic antiderivative oracle, evaluated piece by piece
    oracle = sum(p.antiderivative()(b) - p.antiderivative()(a)
                 for a, b, p in zip(bps, bps[1:], f.pieces))
    assert integrate_piecewise(f, bps[0], bps[-1]) == oracle
    mid = data.draw(st.sampled_from(bps))
    assert (integrate_piecewise(f, bps[0], mid) + integrate_piecewise(f, mid, bps[-1])
            == oracle)
    # Simpson's rule is exact on each quadratic piece
    simpson = sum((b - a) / 6 * (p(a) + 4 * p((a + b) / 2) + p(b))
                  for a, b, p in zip(bps, bps[1:], f.pieces))
    assert simpson == oracle
