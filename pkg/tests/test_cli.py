import json

import numpy as np
import pytest
from click.testing import CliRunner

from maxkinetic.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def write_config(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh)
    return str(path)


def test_spectral_command(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "C", "d": 3, "e": 0.5},
        "spectral": {"p_min": 0.5, "p_max": 6.0, "steps": 12},
        "output": {"dir": str(tmp_path)},
    })
    res = runner.invoke(main, ["spectral", "--config", cfg])
    assert res.exit_code == 0, res.output
    lines = (tmp_path / "spectral.csv").read_text().splitlines()
    assert lines[0] == "p,lambda,mu,mu_prime"
    assert len(lines) == 13
    summary = json.loads((tmp_path / "spectral_summary.json").read_text())
    assert summary["class"] == "b"
    assert 4.1 < summary["s_star_of_1"] < 4.2


def test_spectral_infinite_p0_marker(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "atoms", "atoms": [[0.5, 1.0]], "a": 1.0,
                  "b": 0.5},
        "output": {"dir": str(tmp_path)},
    })
    res = runner.invoke(main, ["spectral", "--config", cfg])
    assert res.exit_code == 0, res.output
    summary = json.loads((tmp_path / "spectral_summary.json").read_text())
    assert summary["p0"] == "infinite"
    assert summary["class"] == "a"


def test_evolve_command(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "A"},
        "grid": {"m": 60, "x_min": 1e-4, "x_max": 20.0},
        "evolve": {"t_end": 0.1, "dt": 0.05},
        "output": {"dir": str(tmp_path)},
    })
    res = runner.invoke(main, ["evolve", "--config", cfg])
    assert res.exit_code == 0, res.output
    data = np.loadtxt(tmp_path / "evolve.csv", delimiter=",", skiprows=1)
    assert data.shape[1] == 3
    assert set(np.unique(data[:, 0])) == {0.0, 0.1}


def test_profile_and_reconstruct_roundtrip(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "A"},
        "grid": {"m": 300, "x_min": 1e-6, "x_max": 50.0},
        "output": {"dir": str(tmp_path)},
    })
    res = runner.invoke(main, ["profile", "--config", cfg, "--p", "1.0"])
    assert res.exit_code == 0, res.output
    summary = json.loads((tmp_path / "profile_summary.json").read_text())
    assert summary["converged"] is True
    assert summary["mu_star"] == pytest.approx(0.0, abs=1e-12)

    res = runner.invoke(main, [
        "reconstruct", "--config", cfg,
        "--input", f"csv:{tmp_path / 'profile.csv'}",
        "--v-max", "6.0", "--v-points", "31",
    ])
    assert res.exit_code == 0, res.output
    data = np.loadtxt(tmp_path / "reconstruct.csv", delimiter=",",
                      skiprows=1)
    # the elastic profile is the Maxwellian
    expected = (4 * np.pi) ** -1.5 * np.exp(-0.25 * data[:, 0] ** 2)
    assert np.max(np.abs(data[:, 1] - expected)) < 1e-4


def test_moments_command(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "C", "e": 0.5},
        "moments": {"s_max": 5},
        "output": {"dir": str(tmp_path)},
    })
    res = runner.invoke(main, ["moments", "--config", cfg])
    assert res.exit_code == 0, res.output
    lines = (tmp_path / "moments.csv").read_text().splitlines()
    assert lines[0] == "s,m_s,finite,denominator"
    row2 = lines[3].split(",")
    assert float(row2[1]) == pytest.approx(9.0 / 7.0, abs=1e-10)
    row5 = lines[6].split(",")
    assert row5[2] == "false"


def test_determinism(tmp_path, runner):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "C", "e": 0.5},
        "spectral": {"p_min": 0.5, "p_max": 4.0, "steps": 10},
    })
    for out in (out1, out2):
        res = runner.invoke(main, ["spectral", "--config", cfg,
                                   "--output", str(out)])
        assert res.exit_code == 0
    assert (out1 / "spectral.csv").read_bytes() == \
        (out2 / "spectral.csv").read_bytes()


def test_unknown_config_key_exit_2(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {"model": {"type": "A"},
                                             "grit": {"m": 100}})
    res = runner.invoke(main, ["spectral", "--config", cfg])
    assert res.exit_code == 2
    assert "grit" in res.output


def test_invalid_theta_exit_2(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json",
                       {"model": {"type": "B", "theta": -1.0}})
    res = runner.invoke(main, ["spectral", "--config", cfg])
    assert res.exit_code == 2


def test_profile_p_above_one_exit_2(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {"model": {"type": "A"}})
    res = runner.invoke(main, ["profile", "--config", cfg, "--p", "1.5"])
    assert res.exit_code == 2
    assert "(0, 1]" in res.output


def test_profile_non_convergence_exit_3(tmp_path, runner):
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "C", "e": 0.5},
        "grid": {"m": 60, "x_min": 1e-4, "x_max": 20.0},
        "output": {"dir": str(tmp_path)},
    })
    res = runner.invoke(main, ["profile", "--config", cfg, "--p", "1.0",
                               "--max-iter", "3", "--tol", "1e-12"])
    assert res.exit_code == 3


def test_plot_flag_writes_png(tmp_path, runner):
    pytest.importorskip("matplotlib")
    cfg = write_config(tmp_path / "c.json", {
        "model": {"type": "A"},
        "spectral": {"steps": 8},
        "output": {"dir": str(tmp_path)},
    })
    res = runner.invoke(main, ["spectral", "--config", cfg, "--plot"])
    assert res.exit_code == 0, res.output
    assert (tmp_path / "spectral.png").exists()
