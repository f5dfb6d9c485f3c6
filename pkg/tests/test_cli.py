import json
import math
import sys

import pytest
import yaml

import imex_relax
from imex_relax.cli import format_cell, run_imex_relax


def invoke(monkeypatch, *args):
    monkeypatch.setattr(sys, "argv", ["imex-relax", *args])
    with pytest.raises(SystemExit) as error:
        run_imex_relax()
    return error.value.code


def json_output(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_version(monkeypatch, capsys):
    assert invoke(monkeypatch, "--version") == 0
    assert capsys.readouterr().out.strip() == imex_relax.__version__


def test_no_arguments_shows_help(monkeypatch, capsys):
    assert invoke(monkeypatch) == 0
    assert "tableau" in capsys.readouterr().out


def test_tableau_list(monkeypatch, capsys):
    assert invoke(monkeypatch, "--quiet", "--json", "tableau", "list") == 0
    assert json_output(capsys)["data"]["ARS222"] == "ARS222(2,2,2)"


def test_tableau_check(monkeypatch, capsys):
    assert invoke(monkeypatch, "--quiet", "--json", "tableau", "check", "BPR343") == 0
    result = json_output(capsys)
    assert result["data"]["name"] == "BPR343"
    assert all(r["satisfied"] for r in result["data"]["order_conditions"])


def test_unknown_tableau_exits_with_validation_code(monkeypatch, capsys):
    assert invoke(monkeypatch, "--quiet", "--json", "tableau", "check", "NOPE") == 2
    assert json_output(capsys)["metadata"]["error_type"] == "TableauLookupError"


def test_argument_errors(monkeypatch):
    assert invoke(monkeypatch, "paper-test", "9z") == 2
    assert invoke(monkeypatch, "benchmark", "9z") == 2
    assert invoke(monkeypatch, "converge", "--cells", "40") == 2
    assert invoke(monkeypatch, "tableau", "list", "--bogus") == 2
    assert invoke(monkeypatch, "tableau") == 2


def test_run_from_config_file(monkeypatch, capsys, tmp_path):
    config = {
        "name": "cli",
        "model": {"name": "linear_gt"},
        "tableau": "ARS111",
        "grid": {"x_min": -math.pi, "x_max": math.pi, "n": 32},
        "bc": {"kind": "periodic"},
        "epsilon": 1e-6,
        "t_final": 0.02,
        "reference": {"kind": "exact"},
        "outputs": {"csv": str(tmp_path / "cli.csv")},
    }
    path = tmp_path / "cli.yaml"
    path.write_text(yaml.safe_dump(config))
    assert invoke(monkeypatch, "--quiet", "--json", "run", "--config", str(path)) == 0
    assert json_output(capsys)["data"]["t"] == pytest.approx(0.02)
    assert (tmp_path / "cli.csv").exists()


def test_run_with_missing_config(monkeypatch, tmp_path):
    missing = str(tmp_path / "absent.yaml")
    assert invoke(monkeypatch, "--quiet", "--json", "run", "--config", missing) == 2


def test_format_cell():
    assert format_cell(None) == ""
    assert format_cell(0.000125) == "1.2500e-04"
    assert format_cell("ARS222") == "ARS222"
