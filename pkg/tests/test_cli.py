import csv
import json

import numpy as np
import pytest

from nonlocal_casimir import cli, validation
from nonlocal_casimir.validation import Check, CriterionResult

BASE = {
    "metal": {"omega_p": 1.37e16, "v_F": 1.4e6, "response": "anomalous_limit",
              "relaxation": {"law": "power_law", "omega_tau0": 3.5e13, "T_ref": 300, "exponent": 5}},
    "separation_m": 2e-7,
    "temperature_K": [1e-6, 1e-5],
    "alpha_s": 0.0,
    "alpha_p": "computed",
    "engine": "asymptotic_auto",
    "finite_difference_entropy": False,
}


def _write(tmp_path, config, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config))
    return str(path)


def _rows(path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def test_run_writes_documented_columns(tmp_path):
    assert cli.main(["run", _write(tmp_path, BASE), "--out", str(tmp_path / "out")]) == 0
    out = tmp_path / "out" / "results.csv"
    header = out.read_text().splitlines()[0]
    assert tuple(header.split(",")) == cli.COLUMNS
    rows = _rows(out)
    assert len(rows) == 2
    assert all(r["engine"] == "asymptotic_small_A" and r["status"] == "ok" for r in rows)
    assert all(float(r["S_J_K_m2"]) < 0 for r in rows)


def test_run_is_byte_identical(tmp_path):
    config = _write(tmp_path, BASE)
    cli.main(["run", config, "--out", str(tmp_path / "one")])
    cli.main(["run", config, "--out", str(tmp_path / "two")])
    assert (tmp_path / "one" / "results.csv").read_bytes() == (tmp_path / "two" / "results.csv").read_bytes()


def test_regime_errors_are_flagged_not_dropped(tmp_path):
    config = dict(BASE, engine="abel_plana", temperature_K=[500.0])
    cli.main(["run", _write(tmp_path, config), "--out", str(tmp_path)])
    rows = _rows(tmp_path / "results.csv")
    assert len(rows) == 1
    assert rows[0]["status"].startswith("regime_error")
    assert rows[0]["delta_F_J_m2"] == ""
    assert rows[0]["anomalous_valid"] in ("true", "false")


def test_log_sweep_through_the_crossover(tmp_path):
    # A grows as T^(1/3); alpha_s = 0 entropies stay negative in the low-tau range
    config = dict(BASE, separation_m=1e-7,
                  temperature_K={"start": 1e-3, "stop": 10.0, "num": 5, "scale": "log"})
    cli.main(["run", _write(tmp_path, config), "--out", str(tmp_path)])
    rows = _rows(tmp_path / "results.csv")
    A = np.array([float(r["A"]) for r in rows])
    assert np.all(np.diff(A) > 0) and A[0] < 0.3 < 3 < A[-1]
    assert rows[0]["engine"] == "asymptotic_small_A"
    assert all(r["status"] == "ok" for r in rows)
    low_tau = [r for r in rows if float(r["tau"]) < 0.3 and r["S_J_K_m2"]]
    assert low_tau and all(float(r["S_J_K_m2"]) <= 0 for r in low_tau)


def test_auto_thresholds(tmp_path):
    config = dict(BASE, separation_m=1e-7, temperature_K=[10.0],
                  auto_thresholds={"small_A": 0.3, "large_A": 3.0})
    cli.main(["run", _write(tmp_path, config), "--out", str(tmp_path)])
    (row,) = _rows(tmp_path / "results.csv")
    assert float(row["A"]) > 3 and row["engine"] == "asymptotic_large_A"


@pytest.mark.parametrize("change, key", [
    ({"auto_thresholds": {"large_A": 0.5}}, "auto_thresholds.large_A"),
    ({"alpha_s": 0.7}, "alpha_s"),
    ({"engine": "fast"}, "engine"),
    ({"temperature_K": [2.0, 1.0]}, "temperature_K"),
    ({"temperature_K": []}, "temperature_K"),
    ({"separation_m": {"start": 1e-7, "stop": 1e-6, "num": 3, "scale": "cubic"}}, "separation_m.scale"),
    ({"separation_m": -1.0}, "separation_m"),
    ({"colour": "red"}, "colour"),
    ({"alpha_p": "guess"}, "alpha_p"),
    ({"metal": {"omega_p": 1.37e16}}, "metal.v_F"),
    ({"metal": {"omega_p": 1.37e16, "v_F": 1e6, "relaxation": {"law": "mystery"}}}, "metal.relaxation.law"),
    ({"tolerances": {"rel_tol": 1e-6, "speed": 2}}, "tolerances.speed"),
])
def test_config_errors_name_the_key(tmp_path, capsys, change, key):
    config = dict(BASE, **change)
    assert cli.main(["run", _write(tmp_path, config)]) == 2
    err = capsys.readouterr().err
    assert f"config error: {key}:" in err


def test_unreadable_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["run", str(bad)]) == 2
    assert cli.main(["run", str(tmp_path / "missing.json")]) == 2


def _fake_results(passed):
    check = Check("x", 1.0, 1.0, 0.1, passed)
    return [CriterionResult(1, "fake", [check], 0.0, 1.0)]


@pytest.mark.parametrize("passed, code", [(True, 0), (False, 1)])
def test_validate_exit_codes_and_json(monkeypatch, capsys, passed, code):
    monkeypatch.setattr(validation, "run_all", lambda *a, **k: _fake_results(passed))
    assert cli.main(["validate", "--json"]) == code
    report = json.loads(capsys.readouterr().out)
    assert report[0]["number"] == 1 and report[0]["passed"] is passed
    assert cli.main(["validate"]) == code
    assert "criterion  1 fake" in capsys.readouterr().out


def test_constants(capsys):
    assert cli.main(["constants", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data) == {"c_small_A", "bracket_small_A", "p1", "bose_I"}
    assert data["c_small_A"]["value"] == pytest.approx(0.0938, abs=5e-4)
    assert all("definition" in v for v in data.values())
    assert cli.main(["constants"]) == 0
    assert "p1" in capsys.readouterr().out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
