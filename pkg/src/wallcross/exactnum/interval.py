"""Real intervals with exact (possibly quadratic-irrational) endpoints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .quadext import Number, as_quad, fmt, simplify, to_json


@dataclass(frozen=True)
class Interval:
    """``lo``/``hi`` of ``None`` mean unbounded; closedness is per endpoint."""

    lo: Optional[Number] = None
    hi: Optional[Number] = None
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", simplify(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", simplify(self.hi))
        if self.lo is None:
            object.__setattr__(self, "lo_closed", False)
        if self.hi is None:
            object.__setattr__(self, "hi_closed", False)

    @classmethod
    def closed(cls, lo, hi) -> Interval:
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> Interval:
        return cls(lo, hi, False, False)

    @classmethod
    def point(cls, x) -> Interval:
        return cls(x, x, True, True)

    @classmethod
    def empty(cls) -> Interval:
        return cls(0, 0, False, False)

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        lo, hi = as_quad(self.lo), as_quad(self.hi)
        if lo > hi:
            return True
        return lo == hi and not (self.lo_closed and self.hi_closed)

    def is_point(self) -> bool:
        return not self.is_empty() and self.lo is not None and self.lo == self.hi

    def __contains__(self, x) -> bool:
        x = as_quad(x)
        if self.is_empty():
            return False
        if self.lo is not None:
            if x < self.lo or (x == self.lo and not self.lo_closed):
                return False
        if self.hi is not None:
            if x > self.hi or (x == self.hi and not self.hi_closed):
                return False
        return True

    def intersect(self, other: Interval) -> Interval:
        lo, lo_c = _tighter(self.lo, self.lo_closed, other.lo, other.lo_closed, 1)
        hi, hi_c = _tighter(self.hi, self.hi_closed, other.hi, other.hi_closed, -1)
        out = Interval(lo, hi, lo_c, hi_c)
        return Interval.empty() if out.is_empty() else out

    def __str__(self):
        if self.is_empty():
            return "empty"
        lo = "-inf" if self.lo is None else fmt(self.lo)
        hi = "inf" if self.hi is None else fmt(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"

    def to_json(self) -> dict:
        if self.is_empty():
            return {"empty": True}
        return {"lo": None if self.lo is None else to_json(self.lo),
                "hi": None if self.hi is None else to_json(self.hi),
                "lo_closed": self.lo_closed, "hi_closed": self.hi_closed}


def _tighter(a, a_closed, b, b_closed, direction):
    """The more restrictive of two endpoints; ``direction`` 1 for lower bounds."""
    if a is None:
        return b, b_closed
    if b is None:
        return a, a_closed
    diff = (as_quad(a) - b).sign() * direction
    if diff > 0:
        return a, a_closed
    if diff < 0:
        return b, b_closed
    return a, a_closed and b_closed
