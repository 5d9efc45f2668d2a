"""Command-line front end.  Every command prints JSON with sorted keys by default."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import svg
from .errors import ScenarioError, WallcrossError
from .exactnum import Interval, fmt, parse_number
from .kstab import (LocalType, delta_candidate, delta_over_candidates, gap_flip_points,
                    kst_interval_over_candidates, kst_region, log_discrepancy_a, s_at,
                    s_invariant, wall_solve)
from .ksba import (an_replacement_step, iterate_replacement, ample_checklist,
                   plane_degeneration_count, stable_range)
from .latmodel import adjunction_degree
from .markov import candidate_surfaces, enumerate_markov
from .reproduce import GROUPS, run_checks
from .scenarios import (Scenario, conic_valuation, f1_candidates, f1_pair,
                        hassett_surface, octic_pair, octic_surfaces, plane_curve_pair,
                        scenario_from_json)
from .sing import (curve_construction, detect_an, lct_an, lct_quasi_homogeneous,
                   newton_lct, newton_nondegenerate, parse_germ)

PRESETS = ("f1", "quartic", "quintic")

# Quintic walls beyond the first are tabulated, not derived here.
QUINTIC_REFERENCE = (
    ("2", Fraction(8, 15), "(P2, A12 quintic)", "(X_26, D), D hyperelliptic"),
    ("3", Fraction(6, 11), "(P2, A11 reducible quintic)", "(P(1,1,4), D)"),
    ("4", Fraction(63, 115), "(P2, A11 irreducible quintic)", "(P(1,4,25), D)"),
    ("5", Fraction(54, 95), "(P2, A10 quintic)", "(P(1,4,25), D)"),
)


class UsageError(WallcrossError):
    code = "usage"


# -- helpers ---------------------------------------------------------------------


def _num(text: str):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not an exact number: {text!r}") from exc


def _window(args) -> Optional[Interval]:
    if getattr(args, "window", None) is None:
        return None
    lo, hi = (_num(x) for x in args.window)
    return Interval(lo, hi, True, False)


def preset_scenario(name: str) -> Scenario:
    if name == "f1":
        return Scenario(f1_pair(), tuple(f1_candidates().values()))
    if name in ("quartic", "quintic"):
        d = 4 if name == "quartic" else 5
        return Scenario(plane_curve_pair(d), (conic_valuation(),))
    raise ScenarioError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def _scenario(args) -> Scenario:
    if args.scenario:
        try:
            obj = json.loads(Path(args.scenario).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ScenarioError(f"cannot read scenario: {exc}") from exc
        sc = scenario_from_json(obj)
    else:
        sc = preset_scenario(args.preset)
    if args.candidate:
        keep = [v for v in sc.candidates if v.label in args.candidate]
        if not keep:
            raise ScenarioError(f"no candidate named {args.candidate}")
        sc = Scenario(sc.pair, tuple(keep), sc.window)
    w = _window(args)
    return Scenario(sc.pair, sc.candidates, w if w is not None else sc.window)


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    keys = sorted({k for r in rows for k in r})
    writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- commands --------------------------------------------------------------------
# Each returns (json payload, csv rows or None, svg text or None).


def cmd_delta(args):
    sc = _scenario(args)
    c = _num(args.c)
    rep = delta_over_candidates(sc.candidates, sc.pair, c, args.equivariant, sc.window)
    payload = {"pair": sc.pair.name, "c": fmt(c), **rep.to_json()}
    rows = [{"candidate": k, "delta": v} for k, v in payload["values"].items()]
    picture = None
    if args.format == "svg":
        W = sc.window or sc.pair.fano_window()
        funcs = [delta_candidate(v, sc.pair, W) for v in sc.candidates]
        hi = W.hi if W.hi is not None else Fraction(1)
        picture = svg.delta_plot(funcs, W.lo, hi, args.samples, f"delta {sc.pair.name}")
    return payload, rows, picture


def cmd_s_invariant(args):
    sc = _scenario(args)
    out, rows = {}, []
    for val in sc.candidates:
        s = s_invariant(val, sc.pair, sc.window)
        out[val.label] = {"A": log_discrepancy_a(val, sc.pair).to_str(), "S": s.to_json(),
                          "valuation": val.to_json()}
        for lo, hi, piece in zip(s.breakpoints, s.breakpoints[1:], s.pieces):
            rows.append({"candidate": val.label, "lo": fmt(lo), "hi": fmt(hi), "S": str(piece)})
    return {"pair": sc.pair.name, "candidates": out}, rows, None


def cmd_lct(args):
    if args.an is not None:
        return {"singularity": f"A{args.an}", "lct": fmt(lct_an(args.an)), "exact": True}, None, None
    if args.weights is not None:
        p, q = args.weights
        return {"singularity": f"x^{p}+y^{q}", "lct": fmt(lct_quasi_homogeneous(p, q)),
                "exact": True}, None, None
    if args.germ is not None:
        f = parse_germ(args.germ)
        tag = detect_an(f, {int(k): _num(v) for k, v in (args.shift or [])} or None)
        value = tag.lct()
        exact = value is not None
        if value is None:
            value = newton_lct(f)
            exact = newton_nondegenerate(f)
        return {"germ": str(f), "singularity": str(tag), "lct": fmt(value),
                "exact": exact}, None, None
    raise UsageError("give one of --an, --weights, --germ")


def cmd_wall(args):
    if args.scenario or args.preset:
        sc = _scenario(args)
        if sc.pair.r is None:
            raise ScenarioError("wall needs a proportional pair (r set)")
        rows = []
        for val in sc.candidates:
            s0 = s_at(val, sc.pair, 0)
            a0 = log_discrepancy_a(val)[0]
            wall = wall_solve(a0, val.ord_boundary, s0, sc.pair.r)
            rows.append({"candidate": val.label, "A": fmt(a0), "ord": fmt(val.ord_boundary),
                         "S0": fmt(s0), "wall": fmt(wall)})
        return {"pair": sc.pair.name, "r": fmt(sc.pair.r), "walls": rows}, rows, None
    if None in (args.a, args.ord, args.s, args.r):
        raise UsageError("give --a --ord --s --r, or a scenario")
    wall = wall_solve(_num(args.a), _num(args.ord), _num(args.s), _num(args.r))
    return {"wall": fmt(wall)}, [{"wall": fmt(wall)}], None


def cmd_kst_window(args):
    sc = _scenario(args)
    region = kst_region(sc.candidates, sc.pair, sc.window)
    hull = kst_interval_over_candidates(sc.candidates, sc.pair, sc.window)
    payload = {"pair": sc.pair.name, "candidates": [v.label for v in sc.candidates],
               "region": [str(w) for w in region], "hull": str(hull),
               "fano_window": str(sc.pair.fano_window()), "outer_bound": True}
    return payload, [{"interval": str(w)} for w in region], None


def cmd_markov(args):
    triples = enumerate_markov(args.max)
    rows = [{"a": t.a, "b": t.b, "c": t.c, "plane": t.weighted_plane()} for t in triples]
    return {"max_entry": args.max, "triples": rows}, rows, None


def cmd_candidates(args):
    cands = candidate_surfaces(args.degree, _num(args.c))
    rows = [x.to_json() for x in cands]
    return ({"degree": args.degree, "c": fmt(_num(args.c)),
             "surfaces": sorted({x.label for x in cands}), "candidates": rows},
            [{"label": r["label"], "max_local_index": r["max_local_index"], "kind": r["kind"]}
             for r in rows], None)


def cmd_ksba_replace(args):
    if args.degree is not None:
        con = curve_construction(args.degree)
        count = plane_degeneration_count(args.degree)
        payload = {"degree": args.degree, "components": count, "construction": con.to_json()}
        return payload, [{"degree": args.degree, "components": count}], None
    if args.n is None:
        raise UsageError("give --n or --degree")
    ell = args.ell if args.ell is not None else args.n - 1
    c = _num(args.c) if args.c is not None else None
    trace = iterate_replacement(args.k, args.j, args.n, ell, c)
    rows = [s.to_json() for s in trace.steps]
    return ({"start": f"A{args.n}", "stop": f"A{ell}", **trace.to_json()},
            [{"n": r["n"], "weights": " ".join(map(str, r["weights"])),
              "glued_surface": r["glued_surface"], "threshold": r["threshold"]} for r in rows],
            None)


def cmd_octic_demo(args):
    X, D, Y = octic_surfaces()
    E = X.generator("E")
    pair = octic_pair()
    check = ample_checklist(X, E, D, Fraction(25, 66))
    K = X.canonical
    third = X.intersect(K + E + D * Fraction(1, 3), D)
    payload = {
        "E_squared": fmt(X.intersect(E, E)), "D_squared": fmt(X.intersect(D, D)),
        "ample_interval": str(stable_range(pair, 1)),
        "components": {comp.name: str(comp.ample_interval()) for comp in pair.components},
        "adjunction_degree": fmt(adjunction_degree(-2, [3, 22, 2])),
        "degree_on_D_at_one_third": fmt(third),
        "lct_weights_3_22": fmt(lct_quasi_homogeneous(3, 22)),
        "ample_check": check.to_json(),
    }
    return payload, None, None


def cmd_f1_demo(args):
    pair = f1_pair()
    vals = f1_candidates()
    W = pair.fano_window()
    s_forms = {k: str(s_invariant(v, pair, W).pieces[0]) for k, v in vals.items()}
    region = kst_region(list(vals.values()), pair)
    walls = sorted({p.to_str() for p in delta_candidate(vals["s"], pair, W).wall_polynomials()})
    lower = region[0].lo if region else None
    flips = gap_flip_points(pair.pair_volume(), 2, LocalType("NonSmooth"))
    payload = {"pair": pair.name, "fano_window": str(W), "S": s_forms,
               "wall_polynomials": walls, "c0": fmt(lower) if lower is not None else None,
               "c0_pretty": lower.pretty() if hasattr(lower, "pretty") else fmt(lower),
               "window": [str(w) for w in region],
               "pair_volume": pair.pair_volume().to_str(),
               "smoothness_gap_flip": fmt(flips[0]) if flips else None,
               "delta_at_0": delta_over_candidates(list(vals.values()), pair, 0, True).to_json()}
    picture = None
    if args.format == "svg":
        funcs = [delta_candidate(v, pair, W) for v in vals.values()]
        picture = svg.delta_plot(funcs, 0, Fraction(1, 2), args.samples, "delta on (F1, cD)")
    return payload, [{"interval": w} for w in payload["window"]], picture


def cmd_quartic_walls(args):
    pair = plane_curve_pair(4)
    s0 = s_at(conic_valuation(), pair, 0)
    Y, D = hassett_surface()
    E = Y.generator("E")
    check = ample_checklist(Y, E, D, Fraction(5, 6))
    walls = [
        {"c": fmt(wall_solve(1, 2, s0, pair.r)), "source": "double conic destabilizes",
         "kind": "K-moduli"},
        {"c": fmt(1 / pair.r), "source": "log Calabi-Yau value; tacnode lct "
         + fmt(lct_an(3)), "kind": "CY"},
        {"c": fmt(an_replacement_step(2).threshold), "source": "cusp replaced by weighted "
         "blow-up (2,3)", "kind": "KSBA", "ample_check_passes": check.passes},
    ]
    values = [w["c"] for w in walls]
    picture = svg.wall_diagram([_num(v) for v in values], 0, 1, "quartic walls") \
        if args.format == "svg" else None
    return {"walls": values, "details": walls}, walls, picture


def cmd_quintic_walls(args):
    pair = plane_curve_pair(5)
    s0 = s_at(conic_valuation(), pair, 0)
    rows = [{"i": "1", "c": fmt(wall_solve(1, 2, s0, pair.r)), "derived": True,
             "before": "(P2, Q5)", "after": "(P(1,1,4), D)"}]
    for i, c, before, after in QUINTIC_REFERENCE:
        rows.append({"i": i, "c": fmt(c), "derived": False, "before": before, "after": after})
    rows.append({"i": "6", "c": fmt(lct_an(9)), "derived": True,
                 "before": "(P2, A9 or D6 quintic)", "after": "log Calabi-Yau value 1/r = "
                 + fmt(1 / pair.r)})
    step = an_replacement_step(8)
    rows.append({"i": "7", "c": fmt(lct_an(8)), "derived": True, "before": "(P2, A8 quintic)",
                 "after": f"Bl_(2,9) P2 + {step.glued_surface}, degree {step.degree.to_str()}"})
    picture = svg.wall_diagram([_num(r["c"]) for r in rows], Fraction(2, 5), Fraction(5, 8),
                               "quintic walls") if args.format == "svg" else None
    return {"walls": [r["c"] for r in rows], "table": rows}, rows, picture


def cmd_reproduce(args):
    checks = run_checks(args.section, args.inject_r)
    rows = [c.to_json() for c in checks]
    failed = sum(not c.passed for c in checks)
    payload = {"checks": rows, "passed": len(checks) - failed, "failed": failed}
    return payload, rows, None


COMMANDS = {
    "delta": cmd_delta, "s-invariant": cmd_s_invariant, "lct": cmd_lct, "wall": cmd_wall,
    "kst-window": cmd_kst_window, "markov": cmd_markov, "candidates": cmd_candidates,
    "ksba-replace": cmd_ksba_replace, "octic-demo": cmd_octic_demo, "f1-demo": cmd_f1_demo,
    "quartic-walls": cmd_quartic_walls, "quintic-walls": cmd_quintic_walls,
    "reproduce-paper": cmd_reproduce,
}


# -- parser ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    p.add_argument("--exact", action="store_true", default=True,
                   help="exact output (the only mode)")
    p.add_argument("--samples", type=int, default=64, help="grid size for svg plots")


def _scenario_args(p: argparse.ArgumentParser, default_preset: Optional[str] = "f1"):
    p.add_argument("--scenario", help="scenario JSON file")
    p.add_argument("--preset", choices=PRESETS, default=default_preset)
    p.add_argument("--candidate", action="append", help="restrict to these candidate labels")
    p.add_argument("--window", nargs=2, metavar=("LO", "HI"), help="c-window [LO, HI)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wallcross", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", help="min A/S over candidate valuations at c")
    _common(p), _scenario_args(p)
    p.add_argument("--c", required=True)
    p.add_argument("--equivariant", action="store_true",
                   help="assert the candidates suffice, so the minimum is delta itself")

    p = sub.add_parser("s-invariant", help="S as a piecewise rational function of c")
    _common(p), _scenario_args(p)

    p = sub.add_parser("lct", help="log canonical threshold of a curve germ")
    _common(p)
    p.add_argument("--an", type=int)
    p.add_argument("--weights", type=int, nargs=2, metavar=("P", "Q"))
    p.add_argument("--germ", help='e.g. "(x - y^2)^2 - x^5"')
    p.add_argument("--shift", nargs=2, action="append", metavar=("POWER", "COEFF"),
                   help="substitute x -> x + COEFF*y^POWER before classifying")

    p = sub.add_parser("wall", help="rational wall (A - S)/(ord - r S)")
    _common(p), _scenario_args(p, None)
    for flag in ("--a", "--ord", "--s", "--r"):
        p.add_argument(flag)

    p = sub.add_parser("kst-window", help="c-region where every candidate has delta >= 1")
    _common(p), _scenario_args(p)

    p = sub.add_parser("markov", help="Markov triples up to a bound")
    _common(p)
    p.add_argument("--max", type=int, default=1000)

    p = sub.add_parser("candidates", help="surfaces allowed for degree-d curves at c")
    _common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--c", required=True)

    p = sub.add_parser("ksba-replace", help="A_n replacement trace or plane-curve count")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--c")
    p.add_argument("--degree", type=int)

    for name, text in (("octic-demo", "two-component octic example"),
                       ("f1-demo", "delta window on (F1, c(2s+4f))"),
                       ("quartic-walls", "walls for plane quartics"),
                       ("quintic-walls", "walls for plane quintics")):
        _common(sub.add_parser(name, help=text))

    p = sub.add_parser("reproduce-paper", help="run every reference check")
    _common(p)
    p.add_argument("--section", choices=GROUPS)
    p.add_argument("--inject-r", help="replace r in the quartic wall (negative control)")
    return parser


def render(payload, rows, picture, fmt_name: str) -> str:
    if fmt_name == "csv":
        if rows is None:
            raise UsageError("this command has no csv form")
        return _csv(rows)
    if fmt_name == "svg":
        if picture is None:
            raise UsageError("this command has no svg form")
        return picture
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, rows, picture = COMMANDS[args.command](args)
        text = render(payload, rows, picture, args.format)
    except (WallcrossError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        code = exc.code if isinstance(exc, WallcrossError) else "invalid_argument"
        sys.stdout.write(json.dumps({"error": {"code": code, "type": type(exc).__name__,
                                               "message": str(exc)}}, sort_keys=True) + "\n")
        return 2
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.command == "reproduce-paper" and payload["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
