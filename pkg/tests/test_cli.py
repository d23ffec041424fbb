import subprocess
import sys

import numpy as np
import pytest

from adaptive_leg.cli import main
from adaptive_leg.logio import load_log

MISMATCH = """
[robot.true]
com_upper = 0.24
com_lower = 0.24
[trajectory]
duration = 1.0
"""


@pytest.fixture
def cfg(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[sim]\nplant_substep = 0.001\n")
    return path


def test_simulate_writes_201_rows(cfg, tmp_path, capsys):
    out = tmp_path / "out.csv"
    assert main(["simulate", str(cfg), "--out", str(out)]) == 0
    assert len(load_log(out)["t"]) == 201
    text = capsys.readouterr().out
    assert "max tracking error" in text and "theta_err_sq" in text


def test_simulate_default_out_path(cfg):
    assert main(["simulate", str(cfg)]) == 0
    assert cfg.with_suffix(".csv").exists()


def test_no_adapt_constant_theta(tmp_path):
    path = tmp_path / "m.toml"
    path.write_text(MISMATCH)
    out = tmp_path / "m.csv"
    assert main(["simulate", str(path), "--out", str(out), "--no-adapt"]) == 0
    cols = load_log(out)
    for i in range(5):
        assert np.all(cols[f"th{i}"] == 1.0)


def test_adaptive_run_reduces_error(tmp_path):
    path = tmp_path / "m.toml"
    path.write_text(MISMATCH)
    out = tmp_path / "m.csv"
    assert main(["simulate", str(path), "--out", str(out)]) == 0
    err = load_log(out)["theta_err_sq"]
    assert err[-1] < err[0]


def test_instability_exit_2(cfg, tmp_path):
    out = tmp_path / "lit.csv"
    assert main(["simulate", str(cfg), "--out", str(out), "--mode", "paper-literal"]) == 2
    assert out.exists()


def test_config_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("[robot.nominal]\ngravity = -1\n")
    assert main(["simulate", str(bad)]) == 1
    assert "gravity" in capsys.readouterr().err
    assert main(["simulate", str(tmp_path / "missing.toml")]) == 1


def test_usage_errors_exit_1():
    assert main([]) == 1
    assert main(["simulate"]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["simulate", "x.toml", "--mode", "turbo"]) == 1


def test_help_exit_0(capsys):
    assert main(["--help"]) == 0


def test_seed_determinism(tmp_path):
    path = tmp_path / "n.toml"
    path.write_text("[sim]\nnoise_std = 1e-4\nplant_substep = 0.001\n[trajectory]\nduration = 0.5\n")
    a, b, c = (tmp_path / f"{x}.csv" for x in "abc")
    assert main(["simulate", str(path), "--out", str(a), "--seed", "3"]) == 0
    assert main(["simulate", str(path), "--out", str(b), "--seed", "3"]) == 0
    assert main(["simulate", str(path), "--out", str(c), "--seed", "4"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_identify_exact_model_log(cfg, tmp_path, capsys):
    out = tmp_path / "exact.csv"
    assert main(["simulate", str(cfg), "--out", str(out), "--no-adapt"]) == 0
    capsys.readouterr()
    assert main(["identify", str(out)]) == 0
    theta = [float(line.split("=")[1]) for line in capsys.readouterr().out.splitlines()
             if line.startswith("theta_")]
    np.testing.assert_allclose(theta, np.ones(5), atol=1e-4)


def test_identify_replays_online_estimate(tmp_path, capsys):
    path = tmp_path / "m.toml"
    path.write_text(MISMATCH + "[rls]\ninitial_cov_scale = 1e5\n")
    out = tmp_path / "m.csv"
    assert main(["simulate", str(path), "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["identify", str(out), "--config", str(path)]) == 0
    theta = [float(line.split("=")[1]) for line in capsys.readouterr().out.splitlines()
             if line.startswith("theta_")]
    cols = load_log(out)
    np.testing.assert_allclose(theta, [cols[f"th{i}"][-1] for i in range(5)], atol=1e-6)
    # same covariance given on the command line instead
    assert main(["identify", str(out), "--config", str(tmp_path / "m.toml"), "--rls-cov", "1e5"]) == 0


def test_identify_schema_errors(tmp_path, capsys):
    trunc = tmp_path / "t.csv"
    trunc.write_text("t,q0,q1,q2\n0,0,0,0\n")
    assert main(["identify", str(trunc)]) == 1
    assert "q3" in capsys.readouterr().err
    assert main(["identify", str(tmp_path / "none.csv")]) == 1
    assert main(["identify", str(trunc), "--rls-cov", "-1"]) == 1


def test_check_exit_codes(tmp_path, capsys):
    assert main(["check"]) == 0
    assert "mass_matrix_positive_definite" in capsys.readouterr().out
    bare = tmp_path / "bare.toml"
    bare.write_text("[robot.nominal]\nrotor_inertia = 0.0\n")
    assert main(["check", "--params", str(bare)]) == 1
    out = capsys.readouterr().out
    assert "mass_matrix_positive_definite" in out and "FAIL" in out


def test_module_entry_point():
    result = subprocess.run([sys.executable, "-m", "adaptive_leg", "--help"], capture_output=True, text=True)
    assert result.returncode == 0
    assert "simulate" in result.stdout
