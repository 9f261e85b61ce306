import json
import math
import subprocess
import sys

import pytest

from isocompare.cli import main
from isocompare.config import build_metric, parse_config
from isocompare.errors import ConfigError

PI = math.pi


# --- configuration parsing ---------------------------------------------------

def test_parse_valid_bishop_config():
    cfg = parse_config("command = bishop-bound\nn = 3\nric0 = 2\n")
    assert cfg.command == "bishop-bound"
    assert cfg.options == {"n": 3, "ric0": 2.0}


def test_parse_rejects_small_dimension():
    with pytest.raises(ConfigError, match="below minimum 3"):
        parse_config("command = bishop-bound\nn = 2\nric0 = 2\n")


def test_parse_unknown_command_names_valid_ones():
    with pytest.raises(ConfigError, match="bishop-bound"):
        parse_config("command = flya\n")


def test_parse_unknown_key_with_line_number():
    with pytest.raises(ConfigError, match="line 3.*unknown key 'fuzz'"):
        parse_config("command = bishop-bound\nn = 3\nfuzz = 1\nric0 = 2\n")


def test_parse_malformed_number_with_line_number():
    with pytest.raises(ConfigError, match="line 2.*malformed number"):
        parse_config("command = bishop-bound\nric0 = two\nn = 3\n")


def test_parse_missing_required_key():
    with pytest.raises(ConfigError, match="missing required key"):
        parse_config("command = bishop-bound\nn = 3\n")


def test_parse_comments_and_blanks():
    cfg = parse_config(
        "# a comment\ncommand = mass\n\nmodel = sphere  # trailing\nric0 = 2\n")
    assert cfg.options["model"] == "sphere"


def test_parse_duplicate_key():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config("command = bishop-bound\nn = 3\nn = 4\nric0 = 2\n")


def test_build_metric_variants():
    sphere = build_metric({"model": "sphere", "n": 3, "radius": 2.0})
    assert sphere.t_max == pytest.approx(2 * PI)
    fb = build_metric({"model": "football", "c": 0.7})
    assert fb.warp.cone_factor == 0.7
    cyl = build_metric({"model": "cylinder", "length": 5.0})
    assert cyl.t_max == 5.0


def test_football_alpha_needs_epsilon():
    with pytest.raises(ConfigError, match="eps_grid or epsilon"):
        parse_config("command = football-alpha\n")


# --- the CLI ------------------------------------------------------------------

def _invoke(tmp_path, command, config_text, *extra):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(config_text)
    out = tmp_path / "out.txt"
    code = main([command, "--config", str(cfg), "--out", str(out), *extra])
    return code, out.read_text() if out.exists() else ""


def test_cli_bishop_bound_json(tmp_path):
    code, text = _invoke(tmp_path, "bishop-bound",
                         "command = bishop-bound\nn = 3\nric0 = 2\n")
    assert code == 0
    doc = json.loads(text)
    assert doc["command"] == "bishop-bound"
    assert doc["version"]
    assert doc["summary"]["bound"] == pytest.approx(2 * PI ** 2, rel=1e-6)
    assert doc["summary"]["y0"] == pytest.approx(10.6347231054, rel=1e-9)
    assert doc["summary"]["x0"] == pytest.approx((4 * PI) ** 1.5, rel=1e-9)


def test_cli_deterministic_output(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("command = mass\nmodel = sphere\nric0 = 2\ngrid_size = 33\n")
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert main(["mass", "--config", str(cfg), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_cli_mass_csv_columns(tmp_path):
    code, text = _invoke(tmp_path, "mass",
                         "command = mass\nmodel = sphere\nric0 = 2\n"
                         "grid_size = 33\n")
    assert code == 0
    lines = text.splitlines()
    header = [l for l in lines if not l.startswith("#")][0]
    assert header == "V,A,F,F_prime,m"
    assert lines[0] == "# iso-compare mass"
    assert any(l.startswith("# version = ") for l in lines)
    data = [l for l in lines if not l.startswith("#")][1:]
    assert len(data) == 33
    # every mass entry vanishes on the round sphere
    for row in data:
        assert abs(float(row.split(",")[4])) <= 1e-6


def test_cli_profile_csv(tmp_path):
    code, text = _invoke(tmp_path, "profile",
                         "command = profile\nmodel = football\nc = 0.7\n"
                         "grid_size = 17\n")
    assert code == 0
    rows = [l for l in text.splitlines() if not l.startswith("#")]
    assert rows[0] == "t,V,A"
    assert len(rows) == 18


def test_cli_variation_check(tmp_path):
    code, text = _invoke(tmp_path, "variation-check",
                         "command = variation-check\nmodel = sphere\n"
                         "t = 1.0, 1.5\nh = 0.01\nlevels = 3\n")
    assert code == 0
    rows = [l for l in text.splitlines() if not l.startswith("#")]
    assert rows[0] == "t,h,residual_first,residual_h_dot,residual_second,order"
    assert len(rows) == 1 + 6
    orders = {float(r.split(",")[5]) for r in rows[1:]}
    assert all(o >= 1.9 for o in orders)


def test_cli_monotonicity_nondecreasing(tmp_path):
    code, text = _invoke(tmp_path, "monotonicity",
                         "command = monotonicity\ncase = sphere\nlambda = 1\n"
                         "rho_n = 32\n")
    assert code == 0
    rows = [l for l in text.splitlines() if not l.startswith("#")][1:]
    values = [float(r.split(",")[1]) for r in rows]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_cli_monotonicity_flags_override_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("command = monotonicity\ncase = sphere\nlambda = 1\nrho_n = 8\n")
    out = tmp_path / "out.csv"
    code = main(["monotonicity", "--config", str(cfg), "--out", str(out),
                 "--case", "cone", "--lambda", "0"])
    assert code == 0
    values = [float(l.split(",")[1]) for l in out.read_text().splitlines()
              if not l.startswith("#") and not l.startswith("rho")]
    # cone profile is constant
    assert max(values) - min(values) <= 1e-12 * max(values)


def test_cli_epsilon0_json(tmp_path):
    code, text = _invoke(tmp_path, "epsilon0",
                         "command = epsilon0\nmethod = oracle\n")
    assert code == 0
    doc = json.loads(text)
    s = doc["summary"]
    assert not s["no_root"]
    assert s["hi"] - s["lo"] <= 5e-4
    assert 0.10 < s["lo"] < s["hi"] < 0.20
    assert s["iterations"] > 0


def test_cli_football_alpha_grid(tmp_path):
    code, text = _invoke(tmp_path, "football-alpha",
                         "command = football-alpha\neps_grid = 0.1:1.0:4\n")
    assert code == 0
    rows = [l for l in text.splitlines() if not l.startswith("#")]
    assert rows[0] == "epsilon,alpha_oracle,alpha_as_written,z_argmax,discrepancy"
    assert len(rows) == 5
    first = rows[1].split(",")
    assert float(first[1]) > 1.0          # alpha(0.1) > 1
    last = rows[-1].split(",")
    assert float(last[1]) == pytest.approx(1.0, abs=1e-9)


def test_cli_cutoff_budget_json(tmp_path):
    code, text = _invoke(tmp_path, "cutoff-budget",
                         "command = cutoff-budget\nn = 8\ndelta = 0.1\n"
                         "c0 = 1\nc = 1\nradii = 0.1\n")
    assert code == 0
    doc = json.loads(text)
    s = doc["summary"]
    assert s["admissible"] is True
    assert s["area_term"] == pytest.approx(1e-7, rel=1e-9)
    assert s["area_ok"] and s["dirichlet_ok"]


def test_cli_cylinder_growth(tmp_path):
    code, text = _invoke(tmp_path, "cylinder-growth",
                         "command = cylinder-growth\nlengths = 10, 100\n")
    assert code == 0
    rows = [l for l in text.splitlines() if not l.startswith("#")][1:]
    volumes = [float(r.split(",")[1]) for r in rows]
    assert volumes == pytest.approx([40 * PI, 400 * PI], rel=1e-9)
    assert all(float(r.split(",")[2]) == 0.0 for r in rows)


def test_cli_validation_exit_code(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("command = bishop-bound\nn = 2\nric0 = 2\n")
    assert main(["bishop-bound", "--config", str(cfg)]) == 2


def test_cli_rejects_profile_on_tabulated_model(tmp_path):
    # candidate profiles need a closed or cylinder model: validation, exit 2
    cfg = tmp_path / "run.cfg"
    cfg.write_text("command = mass\nmodel = tabulated\n"
                   "t_samples = 0.5, 1.0, 1.5, 2.0\n"
                   "f_samples = 1, 1, 1, 1\nric0 = 2\n")
    assert main(["mass", "--config", str(cfg)]) == 2


def test_cli_command_mismatch(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("command = mass\nmodel = sphere\nric0 = 2\n")
    assert main(["bishop-bound", "--config", str(cfg)]) == 2


def test_cli_json_format_override(tmp_path):
    code, text = _invoke(tmp_path, "cylinder-growth",
                         "command = cylinder-growth\nlengths = 10\n",
                         "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["columns"] == ["N", "volume", "ric_inf", "scalar_inf"]
    assert doc["rows"][0][1] == pytest.approx(40 * PI, rel=1e-9)


def test_cli_thread_cap_respected(tmp_path, monkeypatch):
    monkeypatch.setenv("ISO_COMPARE_THREADS", "1")
    code, text = _invoke(tmp_path, "football-alpha",
                         "command = football-alpha\neps_grid = 0.3:0.5:3\n")
    assert code == 0
    rows = [l for l in text.splitlines() if not l.startswith("#")]
    assert len(rows) == 4


def test_console_entry_point(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("command = bishop-bound\nn = 3\nric0 = 8\n")
    proc = subprocess.run(
        [sys.executable, "-m", "isocompare.cli", "bishop-bound",
         "--config", str(cfg)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["summary"]["bound"] == pytest.approx(PI ** 2 / 4, rel=1e-6)
