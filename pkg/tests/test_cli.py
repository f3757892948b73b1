import csv
import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from qho_fourier import cli
from qho_fourier.verify import Check


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report, out.err


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_solve(tmp_path, capsys):
    code, report, _ = run(["solve", "--n-max", "3", "--out", str(tmp_path)], capsys)
    assert code == 0
    header, rows = read_csv(tmp_path / "spectrum.csv")
    assert header == ["n", "epsilon"]
    assert rows == [["0", "0.5"], ["1", "1.5"], ["2", "2.5"], ["3", "3.5"]]
    names = {c["name"] for c in report["checks"]}
    assert names == {"oscillator.schrodinger_residual", "oscillator.orthonormality"}
    assert len(report["outputs"]) == 5


def test_solve_ground_state_peak(tmp_path, capsys):
    code, _, _ = run(["solve", "--n-max", "0", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert sorted(os.listdir(tmp_path)) == ["psi_0.csv", "spectrum.csv"]
    _, rows = read_csv(tmp_path / "psi_0.csv")
    x, psi = np.array(rows, dtype=float).T
    assert x[np.argmax(psi)] == 0.0


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, report, err = run(["solve", "--n-max", "1", "--out", str(blocker / "sub")], capsys)
    assert code == 1 and report is None
    assert "Error" in err


def test_scan_cosine(tmp_path, capsys):
    args = ["scan", "--a-min", "-0.45", "--a-max", "4.05", "--step", "0.05", "--kind", "cosine"]
    code, report, _ = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 0
    header, rows = read_csv(tmp_path / "scan.csv")
    assert header == ["a", "parseval_ok", "moment_ok", "derivative_ok", "parity_ok", "accepted", "growth_flag"]
    assert [float(r[0]) for r in rows if r[5] == "true"] == [0.0, 2.0, 4.0]
    for r in rows:
        if r[5] == "false":
            assert r[6] == "true"
        else:
            assert r[6] == ""
    assert report["notes"] == []


def test_scan_sine(tmp_path, capsys):
    args = ["scan", "--a-min", "-0.45", "--a-max", "4.05", "--step", "0.05", "--kind", "sine"]
    code, _, _ = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 0
    _, rows = read_csv(tmp_path / "scan.csv")
    assert [float(r[0]) for r in rows if r[5] == "true"] == [1.0, 3.0]


def test_scan_small_window(tmp_path, capsys):
    args = ["scan", "--a-min", "0.4", "--a-max", "0.6", "--step", "0.1", "--kind", "cosine"]
    code, _, _ = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 0
    _, rows = read_csv(tmp_path / "scan.csv")
    assert [r[0] for r in rows] == ["0.4", "0.5", "0.6"]
    assert all(r[5] == "false" and r[6] == "true" for r in rows)


def test_scan_bad_range(tmp_path, capsys):
    args = ["scan", "--a-min", "1", "--a-max", "0", "--step", "0.1", "--kind", "cosine"]
    code, _, _ = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 1


def test_transform_gauss(tmp_path, capsys):
    args = ["transform", "--kind", "cosine", "--function", "gauss", "--k-max", "8"]
    code, report, _ = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 0
    _, rows = read_csv(tmp_path / "transform_cosine_gauss.csv")
    k, F = np.array(rows, dtype=float).T
    assert k[-1] == 8.0
    np.testing.assert_allclose(F, np.exp(-k * k / 4) / math.sqrt(2), atol=1e-6)
    assert {c["name"] for c in report["checks"]} == {"transforms.boundary_duality", "transforms.parseval"}
    _, rows = read_csv(tmp_path / "function_gauss.csv")
    assert rows[0] == ["0", "1"]


def test_transform_boundary_violation(tmp_path, capsys):
    args = ["transform", "--kind", "sine", "--function", "gauss", "--k-max", "8"]
    code, _, err = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 1 and "BoundaryViolation" in err
    assert not os.listdir(tmp_path)


def test_transform_sine_x_gauss(tmp_path, capsys):
    args = ["transform", "--kind", "sine", "--function", "x_gauss", "--k-max", "8"]
    code, _, _ = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 0
    _, rows = read_csv(tmp_path / "transform_sine_x_gauss.csv")
    assert rows[0] == ["0", "0"]


def test_transform_exp(tmp_path, capsys):
    args = ["transform", "--kind", "sine", "--function", "exp", "--k-max", "4", "--k-points", "5"]
    code, _, _ = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 0
    _, rows = read_csv(tmp_path / "transform_sine_exp.csv")
    k, F = np.array(rows, dtype=float).T
    np.testing.assert_allclose(F, math.sqrt(2 / math.pi) * k / (1 + k * k), atol=1e-9)


def test_transform_unknown_function(tmp_path, capsys):
    args = ["transform", "--kind", "sine", "--function", "sinc", "--k-max", "8"]
    code, _, err = run(args + ["--out", str(tmp_path)], capsys)
    assert code == 1 and "UnknownFunction" in err


def test_invert(tmp_path, capsys):
    code, report, _ = run(["invert", "--a", "2", "--kind", "cosine", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert report["checks"][0]["name"] == "oscillator.closed_form_inversion"
    code, report, _ = run(["invert", "--a", "0.5", "--kind", "cosine", "--out", str(tmp_path)], capsys)
    assert code == 0 and report["checks"] == [] and report["notes"]


def test_oracle(tmp_path, capsys):
    args = ["oracle", "--half-width", "12", "--points", "1000", "--states", "3", "--out", str(tmp_path)]
    code, report, _ = run(args, capsys)
    assert code == 0
    assert report["parameters"] == {"half_width": 12.0, "points": 1000, "states": 3, "tol": 1e-3}
    header, rows = read_csv(tmp_path / "eigenvalues.csv")
    assert header == ["n", "epsilon", "exact", "error"] and len(rows) == 3


def test_oracle_failed_check(capsys):
    code, report, _ = run(["oracle", "--points", "200", "--states", "2", "--tol", "1e-6"], capsys)
    assert code == 1
    assert not report["checks"][0]["passed"]


def test_verify_transforms(capsys):
    code, report, _ = run(["verify", "transforms"], capsys)
    assert code == 0
    names = [c["name"] for c in report["checks"]]
    assert "transforms.parseval" in names and "transforms.roundtrip" in names
    for c in report["checks"]:
        assert math.isfinite(c["value"]) and c["value"] <= c["tolerance"]


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "bogus"])
    assert exc.value.code == 2


def test_deterministic_csv(tmp_path, capsys):
    for sub in ("a", "b"):
        args = ["transform", "--kind", "sine", "--function", "x3_gauss", "--k-max", "6"]
        run(args + ["--out", str(tmp_path / sub)], capsys)
    name = "transform_sine_x3_gauss.csv"
    assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_fifteen_significant_digits():
    assert cli.fmt(math.pi) == "3.14159265358979"
    assert cli.fmt(True) == "true" and cli.fmt(None) == "" and cli.fmt(3) == "3"


def test_report_roundtrip():
    report = cli.RunReport(
        "verify", {"suite": "oracle"}, ["a.csv"],
        [Check.at_most("oracle.eigenvalues", 1.2345678901234567e-4, 1e-3)], ["note"],
    )
    again = cli.RunReport.from_json(report.to_json())
    assert again == report


def test_report_rejects_non_finite():
    with pytest.raises(ValueError):
        cli.RunReport("x", checks=[Check.at_most("oracle.eigenvalues", float("nan"), 1.0)])


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "qho_fourier.cli", "verify", "specfun"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"] == "verify"
