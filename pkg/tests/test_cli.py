from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from cartan_strat.cli import main
from cartan_strat.golden import data_text


@pytest.fixture
def alg(tmp_path):
    def write(name: str) -> str:
        path = tmp_path / f"{name}.alg"
        path.write_text(data_text(f"{name}.alg"), encoding="utf-8")
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_ej1_json(capsys, alg):
    code, out, _ = run(capsys, "analyze", alg("ej1"), "--order", "1<2", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["cartan"] == [[2, 1], [2, 2]]
    assert d["cartan_group"] == {"free_rank": 0, "invariant_factors": [2]}
    assert d["order_source"] == "argument"


def test_analyze_ej2_uses_file_order(capsys, alg):
    code, out, _ = run(capsys, "analyze", alg("ej2"), "--json")
    d = json.loads(out)
    assert code == 0 and d["order_source"] == "file"
    assert d["flags"]["standardly_stratified"]
    assert d["delta_cartan"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]]


def test_analyze_text_report(capsys, alg):
    code, out, _ = run(capsys, "analyze", alg("ej5"), "--pd-cap", "4")
    assert code == 0
    assert "cartan group: Z/2" in out
    assert "S(2):infinite" in out


def test_analyze_inline_synthesizes_order(capsys):
    code, out, _ = run(capsys, "analyze", "--text", "arrows a:1->2, b:2->3", "--json")
    d = json.loads(out)
    assert code == 0 and d["order_source"] == "synthesized" and d["order"] == ["1", "2", "3"]
    assert d["flags"]["quasi_hereditary"]


def test_analyze_all_refinements(capsys, alg):
    code, out, _ = run(capsys, "analyze", alg("ej2"), "--all-refinements", "--json")
    d = json.loads(out)
    assert code == 0 and d["count"] == 2 and not d["truncated"]


def test_snf(capsys):
    code, out, _ = run(capsys, "snf", "[[2,1],[2,2]]", "--json")
    d = json.loads(out)
    assert code == 0 and d["diagonal"] == [1, 2]
    assert d["group"] == {"free_rank": 0, "invariant_factors": [2]}
    code, out, _ = run(capsys, "snf", "[[2,1],[2,2]]")
    assert "cokernel: Z/2" in out
    code, out, _ = run(capsys, "snf", "[[0,0],[0,0]]", "--json")
    assert json.loads(out)["order"] == "infinite"


def test_classify_rad2(capsys, alg):
    code, out, _ = run(capsys, "classify-rad2", alg("ej5"), "--order", "2<1", "--verify", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["verdict"] == "SSForNoRefinement"
    assert d["order_standardly_stratified"] and d["predicted_group_order"] == 2
    assert d["verification"]["ok"]


def test_refinements(capsys, alg):
    code, out, _ = run(capsys, "refinements", alg("ej2"))
    assert code == 0 and out.split() == ["1<2<3<4", "1<3<2<4"]
    code, out, _ = run(capsys, "refinements", alg("ej2"), "--limit", "1")
    assert "truncated" in out


def test_examples_command(capsys):
    code, out, _ = run(capsys, "paper-examples", "--json")
    d = json.loads(out)
    assert code == 0 and d["all_passed"]
    assert len(d["rows"]) == 33


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "/nonexistent/file.alg"],
        ["analyze", "--text", "arrows a:1->2", "--order", "1<3"],
        ["analyze", "--text", "arrows a:1->2, b:2->1; relations: a.b, b.a"],
        ["refinements", "--text", "arrows a:1->2, b:2->1"],
        ["snf", "[[1,2],[3]]"],
        ["snf", "not a matrix"],
        ["analyze", "--text", "arrows a:1->1", "--degree-cap", "1"],
        ["analyze"],
    ],
)
def test_usage_errors_exit_3(capsys, argv):
    assert main(argv) == 3
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["bogus"], ["snf"], ["analyze", "--limit", "x"]])
def test_argparse_errors_exit_3(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--text", "arrows a:1->2; relations: a.a"],
        ["analyze", "--text", "arrows x:1->1", "--degree-cap", "8"],
        ["classify-rad2", "--text", "arrows a:1->2, b:2->3"],
    ],
)
def test_build_failures_exit_2(capsys, argv):
    assert main(argv) == 2
    assert "cannot build" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    src = tmp_path / "ej1.alg"
    src.write_text(data_text("ej1.alg"), encoding="utf-8")
    proc = subprocess.run(
        [sys.executable, "-m", "cartan_strat", "analyze", str(src), "--json"],
        capture_output=True,
        text=True,
        cwd=Path(__file__).parent,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cartan_group"]["invariant_factors"] == [2]
