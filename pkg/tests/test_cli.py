import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from gchoquet.cli import main
from gchoquet.io import Instance, instance_to_json

from instances import corpus, data_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_worked_example_gsf(capsys):
    code, out, _ = run(capsys, "gsf", data_path("worked_example.json"))
    assert code == 0
    assert out.splitlines() == ["[0,1) -> 1", "[1,6) -> 1/2 (0.5)", "[6,inf) -> 0"]


def test_all_routes_agree(capsys):
    code, out, _ = run(capsys, "gsf", data_path("decreasing_example.json"), "--route", "all")
    assert code == 0 and len(out.splitlines()) == 5


def test_knapsack_value_at_budget(capsys):
    code, out, _ = run(capsys, "gsf", data_path("knapsack.json"), "--route", "i", "--at", "200")
    assert (code, out) == (0, "1\n")


def test_knapsack_command(capsys):
    code, out, _ = run(capsys, "knapsack", data_path("knapsack.json"))
    assert code == 0
    assert out.splitlines() == ["value: 1", "take: {a,c,d}", "leave: {b}"]
    code, out, _ = run(capsys, "knapsack", data_path("knapsack.json"), "--budget", "0", "--json")
    doc = json.loads(out)
    assert doc["value"] == "3.6" and doc["take"] == []


def test_choquet_routes(capsys):
    code, out, _ = run(capsys, "choquet", data_path("worked_example.json"), "--route", "all")
    assert code == 0
    assert all(line.endswith("7/2 (3.5)") for line in out.splitlines())
    code, out, _ = run(capsys, "--digits", "0", "choquet", data_path("worked_example.json"))
    assert out == "7/2\n"


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", data_path("equiv_max.json"), data_path("equiv_sum.json"))
    assert code == 0 and out.splitlines()[0] == "equivalent: true"
    code, out, _ = run(capsys, "equiv", data_path("worked_example.json"), data_path("equiv_max.json"), "--json")
    assert json.loads(out)["equivalent"] is False


def test_rank(capsys):
    code, out, _ = run(capsys, "rank", data_path("accommodation.json"), "--method", "generalized")
    assert code == 0
    heads = [line for line in out.splitlines() if not line.startswith(" ")]
    assert heads == ["Anthony generalized: a2 > a1", "Brittany generalized: b1 > b2", "Charley generalized: c2 > c1"]


def test_rank_cross_json(capsys):
    code, out, _ = run(capsys, "rank", data_path("accommodation.json"), "--cross", "--json")
    doc = json.loads(out)
    assert len(doc) == 3 * 2 * 3
    row = next(d for d in doc if (d["profile"], d["method"], d["alternatives"]) == ("Charley", "standard", "Brittany"))
    assert [r["name"] for r in row["ranking"]] == ["b2", "b1"]


def test_shapley_and_calibrate(capsys):
    code, out, _ = run(capsys, "shapley", data_path("anthony_measure.json"), "--json")
    assert json.loads(out)["shapley"] == ["0.25", "0.665", "0.085"]
    code, out, _ = run(capsys, "calibrate", data_path("anthony_targets.json"), "--json")
    doc = json.loads(out)
    assert doc["selection"] == "nearest-monotone" and doc["monotone"]
    assert doc["values"]["{2,3}"] == "0.8"
    code, out, _ = run(capsys, "calibrate", data_path("anthony_verify.json"))
    assert code == 0 and "selection: pinned" in out and "monotone: yes" in out


def test_check(capsys):
    assert run(capsys, "check", data_path("worked_example.json"))[0] == 0
    assert run(capsys, "check", data_path("anthony_measure.json"))[1] == "ok\n"
    code, out, _ = run(capsys, "check", data_path("tampered.json"))
    assert code == 3
    assert out.strip() == "MonotonicityViolation: {2} ⊆ {2,3}"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "gsf", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run(capsys, "check", bad)[0] == 2
    code, _, err = run(capsys, "gsf", data_path("tampered.json"))
    assert code == 3 and err.startswith("MonotonicityViolation")
    code, _, err = run(capsys, "gsf", data_path("worked_example.json"), "--special", "symmetric", "--param", "0,0.2,0.6,1")
    assert code == 4 and "PreconditionViolated" in err


def test_special_measure(capsys):
    code, out, _ = run(capsys, "choquet", data_path("worked_example.json"), "--special", "greatest")
    assert (code, out) == (0, "6\n")


@pytest.mark.parametrize("what", ["gsf", "indexed", "perm-diagram"])
def test_plot_svg_is_well_formed(capsys, tmp_path, what):
    target = tmp_path / f"{what}.svg"
    code, _, _ = run(capsys, "plot", data_path("worked_example.json"), "--what", what, "--format", "svg", "--out", target)
    assert code == 0
    root = ET.parse(target).getroot()
    assert root.tag.endswith("svg")


def test_plot_ascii(capsys):
    code, out, _ = run(capsys, "plot", data_path("worked_example.json"), "--what", "perm-diagram")
    assert code == 0 and out.splitlines()[1].split()[1:] == ["5", "2", "4", "1", "3", "0"]


def test_definition_and_i_route_print_the_same_bytes(capsys, tmp_path):
    for k, (f, mu, x) in enumerate(corpus(seed=77, size=200)):
        path = tmp_path / f"case{k}.json"
        path.write_text(json.dumps(instance_to_json(Instance(f.collection, f, x, mu))))
        outs = []
        for route in ("def", "i"):
            code, out, _ = run(capsys, "gsf", path, "--route", route)
            assert code == 0
            outs.append(out.encode())
        assert outs[0] == outs[1], path.read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gchoquet", "choquet", str(data_path("worked_example.json"))],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "7/2 (3.5)\n"
