"""SVG plots of delta curves and wall diagrams, sampled at exact rational points."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import PoleAtPoint
from .exactnum import as_quad, fmt
from .kstab import StabilityFunction

WIDTH, HEIGHT, PAD = 640, 360, 40
COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _x(c: Fraction, lo: Fraction, hi: Fraction) -> float:
    return PAD + float((c - lo) / (hi - lo)) * (WIDTH - 2 * PAD)


def _y(v: float, vmin: float, vmax: float) -> float:
    return HEIGHT - PAD - (v - vmin) / (vmax - vmin) * (HEIGHT - 2 * PAD)


def _frame(body: list[str], title: str) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">')
    return "\n".join([head, f'<title>{escape(title)}</title>',
                      '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def sample_grid(lo, hi, samples: int) -> list[Fraction]:
    """``samples + 1`` evenly spaced rationals from ``lo`` to ``hi``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if samples < 1 or hi <= lo:
        raise ValueError("need samples >= 1 and lo < hi")
    return [lo + (hi - lo) * k / samples for k in range(samples + 1)]


def delta_plot(funcs: Sequence[StabilityFunction], lo, hi, samples: int = 64,
               title: str = "delta(c)") -> str:
    """Each candidate's ``A/S`` over ``[lo, hi]`` with the line ``delta = 1``."""
    grid = sample_grid(lo, hi, samples)
    lo, hi = grid[0], grid[-1]
    curves = []
    for f in funcs:
        pts = []
        for c in grid:
            try:
                pts.append((c, float(as_quad(f(c)))))
            except (PoleAtPoint, ZeroDivisionError):
                continue
        curves.append((f.label, pts))
    values = [v for _, pts in curves for _, v in pts] + [1.0]
    vmin, vmax = min(values), max(values)
    if vmax - vmin < 1e-9:
        vmin, vmax = vmin - 1, vmax + 1
    body = [f'<line x1="{PAD}" y1="{_y(1, vmin, vmax):.2f}" x2="{WIDTH - PAD}" '
            f'y2="{_y(1, vmin, vmax):.2f}" stroke="#999" stroke-dasharray="4 3"/>']
    for k, (label, pts) in enumerate(curves):
        colour = COLOURS[k % len(COLOURS)]
        path = " ".join(f"{_x(c, lo, hi):.2f},{_y(v, vmin, vmax):.2f}" for c, v in pts)
        body.append(f'<polyline fill="none" stroke="{colour}" points="{path}"/>')
        body.append(f'<text x="{WIDTH - PAD + 4}" y="{PAD + 14 * k}" fill="{colour}" '
                    f'font-size="11">{escape(label)}</text>')
    body.append(f'<text x="{PAD}" y="{HEIGHT - 10}" font-size="11">{escape(fmt(lo))}</text>')
    body.append(f'<text x="{WIDTH - PAD}" y="{HEIGHT - 10}" font-size="11" '
                f'text-anchor="end">{escape(fmt(hi))}</text>')
    return _frame(body, title)


def wall_diagram(walls: Sequence, lo=0, hi=1, title: str = "walls") -> str:
    """A number line from ``lo`` to ``hi`` with a tick and label at each wall."""
    lo, hi = Fraction(lo), Fraction(hi)
    mid = HEIGHT / 2
    body = [f'<line x1="{PAD}" y1="{mid}" x2="{WIDTH - PAD}" y2="{mid}" stroke="black"/>']
    for end, anchor in ((lo, "start"), (hi, "end")):
        body.append(f'<text x="{_x(end, lo, hi):.2f}" y="{mid + 30}" font-size="11" '
                    f'text-anchor="{anchor}">{escape(fmt(end))}</text>')
    for k, w in enumerate(sorted(walls, key=as_quad)):
        x = PAD + (float(as_quad(w)) - float(lo)) / float(hi - lo) * (WIDTH - 2 * PAD)
        body.append(f'<line x1="{x:.2f}" y1="{mid - 12}" x2="{x:.2f}" y2="{mid + 12}" '
                    f'stroke="#d62728"/>')
        body.append(f'<text x="{x:.2f}" y="{mid - 18 - 14 * (k % 2)}" font-size="11" '
                    f'text-anchor="middle">{escape(fmt(w))}</text>')
    return _frame(body, title)
