import importlib.resources
import json
import os

import jsonschema
import pytest

from tfloc.cli import THREAD_ENV_VARS, main

WHITNEY_D8 = """\
# tfloc whitney
# D=8
left,length,in_Jprime
-4,1,1
-3,1,1
-2,4,1
2,1,1
3,1,1
# large_pieces=5
# pieces=5
"""

WITNESS_ARGS = ["witness", "--scheme", "rv", "--R1", "2", "--R2", "2",
                "--C", "0.3", "--eps", "0.1", "--thin", "0.35", "--seed", "7"]


def _schema():
    ref = importlib.resources.files("tfloc.data").joinpath("report.schema.json")
    return json.loads(ref.read_text())


def test_whitney_csv_exact(capsys):
    assert main(["whitney", "--D", "8"]) == 0
    assert capsys.readouterr().out == WHITNEY_D8


def test_whitney_admissible_summary(capsys):
    assert main(["whitney", "--D", "8", "--C", "0.5", "--eps", "0.1"]) == 0
    out = capsys.readouterr().out
    assert "# size_S=3" in out
    assert "# deficit_constant=1.07468676686" in out


def test_reports_validate_against_schema(tmp_path):
    schema = _schema()
    invocations = [
        ["whitney", "--D", "8", "--C", "0.5", "--eps", "0.1"],
        ["bells", "--D", "4", "--eta", "0.25", "--samples", "16"],
        ["basis", "check", "--D", "8", "--eta", "0.25", "--count", "6",
         "--n", "4096"],
        ["prolate", "--W", "1", "--T", "1"],
        ["bound", "--scheme", "rv", "--R1-max", "3", "--R2-max", "3",
         "--step", "0.5", "--eps", "0.1"],
        ["zeta", "--T-max", "50", "--eps", "0.1"],
    ]
    for i, argv in enumerate(invocations):
        out = tmp_path / f"report{i}.json"
        assert main(argv + ["--json", "--output", str(out)]) == 0
        jsonschema.validate(json.loads(out.read_text()), schema)


def test_witness_report_deterministic(tmp_path):
    schema = _schema()
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(WITNESS_ARGS + ["--json", "--output", str(p1)]) == 0
    assert main(WITNESS_ARGS + ["--json", "--output", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    rep = json.loads(p1.read_text())
    jsonschema.validate(rep, schema)
    s = rep["summary"]
    assert s["null_dim"] >= 1
    assert s["residual"] < 1e-8
    assert s["outside_support_max"] == 0
    assert "tail_weighted_sum" in s
    assert rep["columns"] == ["ft_order", "tail_max"]
    assert [row[0] for row in rep["rows"]] == [0, 1, 2]
    assert rep["config"]["seed"] == 7


def test_output_goes_to_file_not_stdout(tmp_path, capsys):
    out = tmp_path / "w.csv"
    assert main(["whitney", "--D", "8", "--output", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text() == WHITNEY_D8


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["no-such-command"])
    assert ei.value.code == 1
    with pytest.raises(SystemExit) as ei:
        main(["whitney"])  # missing required --D
    assert ei.value.code == 1
    capsys.readouterr()


def test_input_errors_exit_1(tmp_path, capsys):
    assert main(["whitney", "--D", "8", "--C", "0.5"]) == 1
    assert "--eps" in capsys.readouterr().err
    missing = tmp_path / "absent.txt"
    assert main(["zeta", "--T-max", "50", "--eps", "0.1",
                 "--zeros-file", str(missing)]) == 1
    assert "absent.txt" in capsys.readouterr().err


def test_property_failures_exit_2(capsys):
    rc = main(["basis", "check", "--D", "8", "--eta", "0.25", "--count", "6",
               "--n", "4096", "--tol", "1e-30"])
    assert rc == 2
    out = capsys.readouterr().out
    assert "# passed=0" in out
    rc = main(["zeta", "--T-max", "236", "--eps", "0.1", "--C", "0"])
    assert rc == 2
    assert "# passed=0" in capsys.readouterr().out


def test_zeta_pass_reports_margin(capsys):
    assert main(["zeta", "--T-max", "236", "--eps", "0.1", "--C", "10"]) == 0
    out = capsys.readouterr().out
    assert "# passed=1" in out
    assert "# C_min=" in out


def test_thread_cap_sets_env(tmp_path, monkeypatch):
    for var in THREAD_ENV_VARS:
        monkeypatch.delenv(var, raising=False)
    out = tmp_path / "t.csv"
    assert main(["whitney", "--D", "4", "--threads", "2",
                 "--output", str(out)]) == 0
    assert all(os.environ[var] == "2" for var in THREAD_ENV_VARS)


def test_bad_thread_counts_exit_1(monkeypatch, capsys):
    assert main(["whitney", "--D", "4", "--threads", "0"]) == 1
    monkeypatch.setenv("TFLOC_THREADS", "lots")
    assert main(["whitney", "--D", "4"]) == 1
    capsys.readouterr()
