import csv
import json
import math

import pytest

from vacrad import cli, commands

COMMANDS = [c for c in commands.DEFAULTS if c != "verify"]


def _run(tmp_path, *argv, name="out.csv"):
    out = tmp_path / name
    return cli.run([*argv, "--out", str(out)]), out


def _rows(path):
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))


@pytest.mark.parametrize("command", COMMANDS)
def test_every_command_writes_csv_and_manifest(tmp_path, command):
    code, out = _run(tmp_path, command)
    assert code == 0
    assert out.read_text(encoding="utf-8").startswith("# units: ")
    manifest = json.loads(out.with_suffix(".json").read_text())
    assert manifest["command"] == command
    assert manifest["parameters"] == commands.DEFAULTS[command]
    assert manifest["tool_version"]


@pytest.mark.parametrize("command", COMMANDS)
def test_reruns_byte_identical(tmp_path, command):
    extra = ["--polar"] if "polar" in commands.DEFAULTS[command] else []
    _, a = _run(tmp_path, command, *extra, name="a.csv")
    _, b = _run(tmp_path, command, *extra, name="b.csv")
    assert a.read_bytes() == b.read_bytes()
    if extra:
        assert (tmp_path / "a_polar.csv").read_bytes() == (tmp_path / "b_polar.csv").read_bytes()


def test_dce_rates_gamma_total(tmp_path):
    code, out = _run(tmp_path, "dce-rates")
    assert code == 0
    res = json.loads(out.with_suffix(".json").read_text())["results"]
    assert f"{res['gamma_total']:.12g}" == f"{23 / (5670 * math.pi):.12g}"
    assert res["tm_te_ratio_exact"] == "27/19"
    rows = {r["quantity"]: float(r["value"]) for r in _rows(out)}
    assert rows["gamma_total"] == pytest.approx(23 / (5670 * math.pi), rel=1e-15)


def test_mie_angular_isotropic_example(tmp_path):
    code, out = _run(tmp_path, "mie-angular", "--rho", "1.4142135", "--beta", "0.01", "--n-theta", "19")
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 19
    vals = [float(r["normalized"]) for r in rows]
    # rho is sqrt(2) only to 7 digits
    assert max(vals) - min(vals) < 1e-6


def test_mie_angular_below_threshold(tmp_path, capsys):
    code, out = _run(tmp_path, "mie-angular", "--rho", "0.5")
    assert code == 0
    assert "normalized" not in out.read_text().splitlines()[1]
    assert "no one-photon emission" in capsys.readouterr().err
    code, _ = _run(tmp_path, "mie-angular", "--rho", "0.5", "--polar")
    assert code == 2


def test_polar_outputs(tmp_path):
    code, out = _run(tmp_path, "planar-spectrum", "--polar", "--pol", "tm")
    assert code == 0
    polar = _rows(tmp_path / "out_polar.csv")
    assert max(float(r["r_tm"]) for r in polar) == 1.0
    code, out = _run(tmp_path, "dce-angular", "--polar", "--x", "1.0")
    rows = _rows(tmp_path / "out_polar.csv")
    assert all(float(r["r_te"]) == pytest.approx(1.0) for r in rows)


def test_dce_spectrum_columns(tmp_path):
    code, out = _run(tmp_path, "dce-spectrum", "--n-x", "11")
    rows = _rows(out)
    assert len(rows) == 11 and set(rows[0]) == {"x", "te", "tm", "total"}
    mid = rows[5]
    assert float(mid["te"]) == pytest.approx(10.25 / 64)


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("rho = 2.0\nbeta = 0.02\n")
    code, out = _run(tmp_path, "mie-rate", "--config", str(cfg), "--rho", "3.0")
    assert code == 0
    params = json.loads(out.with_suffix(".json").read_text())["parameters"]
    assert params["rho"] == 3.0 and params["beta"] == 0.02


def test_empty_config_gives_defaults(tmp_path):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("")
    code, out = _run(tmp_path, "dce-angular", "--config", str(cfg))
    assert code == 0
    assert json.loads(out.with_suffix(".json").read_text())["parameters"] == commands.DEFAULTS["dce-angular"]


def test_bad_config_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("rho = abc\n")
    code, _ = _run(tmp_path, "mie-rate", "--config", str(cfg))
    assert code == 2
    assert "line 1" in capsys.readouterr().err


def test_unknown_flag_exit_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli.run(["mie-rate", "--colour", "red"])
    assert exc.value.code == 2


def test_bad_value_exit_2(tmp_path):
    code, _ = _run(tmp_path, "dce-angular", "--x", "1.5")
    assert code == 2
    code, _ = _run(tmp_path, "mie-rate", "--beta", "1.0")
    assert code == 2


def test_missing_output_dir_exit_2(tmp_path):
    assert cli.run(["dce-rates", "--out", str(tmp_path / "no" / "such.csv")]) == 2


def test_verify_fast(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("VACRAD_NO_COLOR", "1")
    code, out = _run(tmp_path, "verify", "--level", "fast")
    doc = json.loads(out.with_suffix(".json").read_text())
    report = doc["report"]
    assert code == (0 if report["pass"] else 1)
    statuses = {c["name"]: c["status"] for c in report["checks"]}
    assert statuses["mie.angular_integral_over_total_rate(rho=2)"] == "informational"
    assert statuses["dce.gamma_total"] == "pass"
    failed = {n for n, s in statuses.items() if s == "fail"}
    assert failed <= {"planar.tm_peak_offset_from_cone_deg(0.7)"}
    assert "\033[" not in capsys.readouterr().out
    assert len(_rows(out)) == len(report["checks"])
