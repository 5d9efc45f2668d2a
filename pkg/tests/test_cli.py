from __future__ import annotations

import json
import xml.dom.minidom

import pytest

from wallcross.cli import main
from wallcross.errors import ScenarioError
from wallcross.scenarios import scenario_from_json


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv) -> tuple[int, dict]:
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_f1_demo(capsys):
    code, out = run_json(capsys, "f1-demo")
    assert code == 0
    assert out["c0_pretty"] == "(4-sqrt(6))/10"
    assert out["window"] == ["[2/5-1/10*sqrt(6), 1/2)"]
    assert out["wall_polynomials"] == ["10*c^2-8*c+1"]
    assert out["S"]["s"] == "(10*c^2-17*c+7)/(-9*c+6)"


def test_quartic_walls(capsys):
    code, out = run_json(capsys, "quartic-walls")
    assert code == 0 and out["walls"] == ["3/8", "3/4", "5/6"]


def test_quintic_walls(capsys):
    _, out = run_json(capsys, "quintic-walls")
    assert out["walls"] == ["3/7", "8/15", "6/11", "63/115", "54/95", "3/5", "11/18"]
    derived = {r["c"] for r in out["table"] if r["derived"]}
    assert derived == {"3/7", "3/5", "11/18"}


def test_lct_commands(capsys):
    assert run_json(capsys, "lct", "--an", "8")[1]["lct"] == "11/18"
    assert run_json(capsys, "lct", "--weights", "3", "22")[1]["lct"] == "25/66"
    out = run_json(capsys, "lct", "--germ", "(x-y^2)^2-x^5", "--shift", "2", "1")[1]
    assert out["singularity"] == "A9" and out["lct"] == "3/5"
    out = run_json(capsys, "lct", "--germ", "(x-y^2)^2")[1]
    assert out["exact"] is False


def test_wall_and_windows(capsys):
    assert run_json(capsys, "wall", "--a", "1", "--ord", "2", "--s", "1/2", "--r", "4/3")[1] \
        == {"wall": "3/8"}
    out = run_json(capsys, "wall", "--preset", "quintic")[1]
    assert out["walls"][0]["wall"] == "3/7"
    out = run_json(capsys, "kst-window")[1]
    assert out["region"] == ["[2/5-1/10*sqrt(6), 1/2)"]
    out = run_json(capsys, "kst-window", "--window", "0", "1/4")[1]
    assert out["region"] == ["[2/5-1/10*sqrt(6), 1/4)"]
    out = run_json(capsys, "delta", "--c", "0", "--candidate", "f")[1]
    assert out["delta"] == "12/13" and out["upper_bound"] is True


def test_tables(capsys):
    code, out = run(capsys, "markov", "--max", "13", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["a,b,c,plane", "1,1,1,P2", '1,1,2,"P(1,1,4)"',
                                '1,2,5,"P(1,4,25)"', '1,5,13,"P(1,25,169)"']
    out = run_json(capsys, "candidates", "--degree", "4", "--c", "1/2")[1]
    assert out["surfaces"] == ["P(1,1,4)", "P2"]
    out = run_json(capsys, "ksba-replace", "--n", "17", "--ell", "1")[1]
    assert out["surfaces"] == 17 and len(out["steps"]) == 16
    assert run_json(capsys, "ksba-replace", "--degree", "6")[1]["components"] == 17


def test_octic_demo(capsys):
    out = run_json(capsys, "octic-demo")[1]
    assert (out["E_squared"], out["D_squared"], out["ample_interval"],
            out["adjunction_degree"]) == ("-1/66", "-2", "(25/66, 1/2)", "4/33")


def test_reproduce_and_negative_control(capsys):
    code, out = run_json(capsys, "reproduce-paper")
    assert code == 0 and out["failed"] == 0
    code, out = run_json(capsys, "reproduce-paper", "--inject-r", "3/2")
    assert code == 1
    assert [c["name"] for c in out["checks"] if c["status"] == "FAIL"] == \
        ["quartic double-conic wall"]
    code, out = run_json(capsys, "reproduce-paper", "--section", "f1")
    assert code == 0 and {c["group"] for c in out["checks"]} == {"f1"}


def test_output_is_deterministic(capsys):
    first = run(capsys, "reproduce-paper")[1]
    second = run(capsys, "reproduce-paper")[1]
    assert first == second


def test_svg_outputs(capsys, tmp_path):
    for cmd in ("f1-demo", "quartic-walls", "quintic-walls"):
        target = tmp_path / f"{cmd}.svg"
        assert main([cmd, "--format", "svg", "--out", str(target)]) == 0
        doc = xml.dom.minidom.parse(str(target))
        assert doc.documentElement.tagName == "svg"


def test_errors_are_json(capsys):
    code, out = run_json(capsys, "wall", "--a", "1", "--ord", "0", "--s", "0", "--r", "1")
    assert code != 0 and out["error"]["code"] == "degenerate_denominator"
    code, out = run_json(capsys, "candidates", "--degree", "4", "--c", "1")
    assert code != 0 and out["error"]["code"] == "coefficient_out_of_fano_window"
    code, out = run_json(capsys, "lct", "--an", "8", "--format", "svg")
    assert code != 0 and out["error"]["code"] == "usage"


def test_scenario_file(capsys, tmp_path):
    scenario = {
        "surface": {"preset": "F1"},
        "boundary": {"class": {"s": 2, "f": 4}},
        "candidates": [{"type": "ray", "label": "s"},
                       {"type": "ray", "label": "s_inf", "ord": 2}],
    }
    path = tmp_path / "f1.json"
    path.write_text(json.dumps(scenario))
    out = run_json(capsys, "kst-window", "--scenario", str(path))[1]
    assert out["region"] == ["[2/5-1/10*sqrt(6), 2/5-1/10*sqrt(6)]"]
    plane = {"surface": {"preset": "P2"}, "boundary": {"degree": 4}, "r": "4/3",
             "candidates": [{"type": "blowup", "cone": 0, "weights": [13, 2]}]}
    path.write_text(json.dumps(plane))
    out = run_json(capsys, "wall", "--scenario", str(path))[1]
    assert out["walls"][0]["S0"] == "15"


@pytest.mark.parametrize("bad", [
    {"boundary": {"degree": 4}},
    {"surface": {"preset": "nowhere"}, "boundary": {"degree": 1}},
    {"surface": {"preset": "P2"}, "boundary": {"degree": 1},
     "candidates": [{"type": "mystery"}]},
    {"surface": {"preset": "P2"}, "boundary": {"degree": 1}, "candidates": [{"type": "ray"}]},
])
def test_scenario_validation(bad):
    with pytest.raises(ScenarioError):
        scenario_from_json(bad)


@pytest.mark.parametrize("name,region", [
    ("f1.json", ["[2/5-1/10*sqrt(6), 1/2)"]),
    ("plane_quartic.json", ["[0, 3/4)"]),
    ("conic_lattice.json", ["[0, 3/8]"]),
])
def test_bundled_scenarios(capsys, name, region):
    from pathlib import Path
    path = Path(__file__).resolve().parent.parent / "scenarios" / name
    code, out = run_json(capsys, "kst-window", "--scenario", str(path))
    assert code == 0 and out["region"] == region
