"""Markov triples and the klt degenerations of the plane they index."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .kstab import index_bound

# Named partial smoothings as weighted hypersurfaces.
KNOWN_SMOOTHINGS = {
    (1, 2, 5): ("X_26", "xw = y^13 + z^2 in P(1,2,13,25)"),
}


@dataclass(frozen=True, order=True)
class MarkovTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not 0 < self.a <= self.b <= self.c:
            raise ValueError("entries must be positive and sorted")
        if self.a ** 2 + self.b ** 2 + self.c ** 2 != 3 * self.a * self.b * self.c:
            raise ValueError(f"{self.as_tuple()} is not a Markov triple")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def neighbours(self) -> list[MarkovTriple]:
        """The three Vieta exchanges ``x -> 3yz - x``."""
        out = []
        t = self.as_tuple()
        for k in range(3):
            rest = [t[i] for i in range(3) if i != k]
            new = sorted(rest + [3 * rest[0] * rest[1] - t[k]])
            out.append(MarkovTriple(*new))
        return out

    def weighted_plane(self) -> str:
        w = sorted(x * x for x in self.as_tuple())
        return "P2" if w == [1, 1, 1] else f"P({w[0]},{w[1]},{w[2]})"


def enumerate_markov(max_entry: int) -> list[MarkovTriple]:
    """All Markov triples with largest entry at most ``max_entry``."""
    if max_entry < 1:
        raise ValueError("max_entry must be positive")
    root = MarkovTriple(1, 1, 1)
    seen = {root}
    queue = deque([root])
    while queue:
        t = queue.popleft()
        for n in t.neighbours():
            if n.c <= max_entry and n not in seen:
                seen.add(n)
                queue.append(n)
    return sorted(seen)


@dataclass(frozen=True)
class DegenerationCandidate:
    label: str
    max_local_index: int
    triple: tuple[int, int, int]
    kind: str                       # "weighted_plane" or "partial_smoothing"
    singular_indices: tuple[int, ...]
    description: str = ""

    def to_json(self) -> dict:
        return {"label": self.label, "max_local_index": self.max_local_index,
                "triple": list(self.triple), "kind": self.kind,
                "singular_indices": list(self.singular_indices),
                "description": self.description}


def degenerations(triple: MarkovTriple) -> list[DegenerationCandidate]:
    """``P(a^2, b^2, c^2)`` and its partial smoothings keeping the index-``c`` point."""
    t = triple.as_tuple()
    sing = tuple(x for x in t if x > 1)
    out = [DegenerationCandidate(triple.weighted_plane(), t[2], t, "weighted_plane", sing,
                                 "toric degeneration")]
    others = list(sing[:-1])
    for k in range(1, len(others) + 1):
        for smoothed in combinations(others, k):
            kept = tuple(x for x in sing if x not in smoothed or x == t[2])
            name, desc = KNOWN_SMOOTHINGS.get(t, (None, ""))
            if name is None or len(smoothed) != len(others):
                name = f"{triple.weighted_plane()}~{','.join(map(str, smoothed))}"
                desc = f"partial smoothing of the index {smoothed} points"
            out.append(DegenerationCandidate(name, t[2], t, "partial_smoothing", kept, desc))
    return out


def candidate_surfaces(d: int, c) -> list[DegenerationCandidate]:
    """Surfaces allowed in the K-moduli of degree-``d`` plane curves at coefficient ``c``."""
    bound = index_bound(d, Fraction(c))
    out = []
    for t in enumerate_markov(bound):
        out.extend(degenerations(t))
    return sorted(out, key=lambda x: (x.max_local_index, x.triple,
                                   x.kind != "weighted_plane", x.label))
