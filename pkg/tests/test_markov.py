from __future__ import annotations

import math
from fractions import Fraction

import pytest

from wallcross.markov import MarkovTriple, candidate_surfaces, degenerations, enumerate_markov

F = Fraction


def brute_force_markov(limit: int) -> set[tuple[int, int, int]]:
    """Solve ``c^2 - 3ab c + a^2 + b^2 = 0`` for each ``a <= b <= limit``."""
    out = set()
    for a in range(1, limit + 1):
        for b in range(a, limit + 1):
            disc = 9 * a * a * b * b - 4 * (a * a + b * b)
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            for num in (3 * a * b - s, 3 * a * b + s):
                if num % 2 == 0 and b <= num // 2 <= limit:
                    out.add((a, b, num // 2))
    return out


def test_enumeration_matches_brute_force_to_1000():
    got = {t.as_tuple() for t in enumerate_markov(1000)}
    assert got == brute_force_markov(1000)
    assert max(t[2] for t in got) == 985


def test_small_triples():
    assert [t.as_tuple() for t in enumerate_markov(29)] == [
        (1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29)]


def test_triple_validation_and_planes():
    with pytest.raises(ValueError):
        MarkovTriple(1, 2, 3)
    assert MarkovTriple(1, 1, 1).weighted_plane() == "P2"
    assert MarkovTriple(1, 2, 5).weighted_plane() == "P(1,4,25)"
    for n in MarkovTriple(1, 5, 13).neighbours():
        assert isinstance(n, MarkovTriple)


def test_partial_smoothing_of_125():
    labels = [d.label for d in degenerations(MarkovTriple(1, 2, 5))]
    assert labels == ["P(1,4,25)", "X_26"]


@pytest.mark.parametrize("d,c,expected", [
    (4, F(1, 4), {"P2"}),
    (4, F(37, 100), {"P2"}),
    (4, F(1, 2), {"P2", "P(1,1,4)"}),
    (4, F(7, 10), {"P2", "P(1,1,4)"}),
    (5, F(59, 100), {"P2", "P(1,1,4)", "P(1,4,25)", "X_26"}),
])
def test_candidate_surfaces(d, c, expected):
    assert {x.label for x in candidate_surfaces(d, c)} == expected
