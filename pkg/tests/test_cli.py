#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import pytest
from endoforce.cli import EXIT_CALIBRATION, EXIT_CONFIG, EXIT_OK, EXIT_TRIAL_FAULT, main
from endoforce.transport.controller import TransportController
from endoforce.utils.exceptions import ConsistencyFault

logger = logging.getLogger(__name__)

SHORT_SCENARIO = """
name = "short"
duration_s = 2.0
trials = 1
noise.sigma_endoforce_n = 2.25
noise.seed = 11
"""


@pytest.fixture(scope="function")
def short_scenario(tmp_path):
    path = tmp_path / "short.toml"
    path.write_text(SHORT_SCENARIO, encoding="utf-8")
    return path


def test_run(short_scenario, tmp_path, capsys):
    out = tmp_path / "traces"
    assert main(["run", str(short_scenario), "--out", str(out)]) == EXIT_OK
    assert (out / "short_trial0.csv").exists()
    assert "short: mean rmse=" in capsys.readouterr().out


def test_run_overrides(short_scenario, tmp_path):
    out = tmp_path / "traces"
    argv = ["run", str(short_scenario), "--out", str(out), "--pathway", "curved",
            "--noise-free", "--trials", "2", "--seed", "3"]
    assert main(argv) == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ["short_curved_trial0.csv", "short_curved_trial1.csv"]


@pytest.mark.parametrize('text', ["transport.speed_mm_s = -1\n", "bogus = 1\n", "trials = \n"])
def test_run_bad_config(tmp_path, text):
    path = tmp_path / "bad.toml"
    path.write_text(text, encoding="utf-8")
    assert main(["run", str(path)]) == EXIT_CONFIG


def test_run_bad_override(short_scenario, tmp_path):
    assert main(["run", str(short_scenario), "--out", str(tmp_path), "--trials", "0"]) == EXIT_CONFIG


def test_run_missing_scenario(tmp_path):
    assert main(["run", str(tmp_path / "absent.toml")]) == EXIT_CONFIG


def test_run_trial_fault(short_scenario, tmp_path, monkeypatch):
    def faulty(self, gripper, distal_force, dt=None):
        raise ConsistencyFault("advancing with gripper released")

    monkeypatch.setattr(TransportController, "step", faulty)
    assert main(["run", str(short_scenario), "--out", str(tmp_path)]) == EXIT_TRIAL_FAULT


def test_calibrate(short_scenario, capsys):
    assert main(["calibrate", str(short_scenario), "--target-std", "0.45", "--tol", "0.05"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("noise.sigma_endoforce_n = ")


def test_calibrate_failure(short_scenario):
    assert main(["calibrate", str(short_scenario), "--target-std", "3.0"]) == EXIT_CALIBRATION


def test_report(short_scenario, tmp_path, capsys):
    out = tmp_path / "traces"
    main(["run", str(short_scenario), "--out", str(out)])
    capsys.readouterr()
    trace = out / "short_trial0.csv"
    assert main(["report", str(trace)]) == EXIT_OK
    assert f"{trace}: rmse=" in capsys.readouterr().out


def test_report_bad_trace(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,seq\n", encoding="utf-8")
    assert main(["report", str(path)]) == EXIT_TRIAL_FAULT
    assert main(["report", str(tmp_path / "absent.csv")]) == EXIT_TRIAL_FAULT


def test_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["launch"])
    assert excinfo.value.code == 2


def test_run_unwritable_out(short_scenario, tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    assert main(["run", str(short_scenario), "--out", str(blocker / "traces")]) == EXIT_TRIAL_FAULT
    assert "cannot write trace" in capsys.readouterr().err


def test_report_needs_trial_window(tmp_path, capsys):
    path = tmp_path / "narrow.toml"
    path.write_text(SHORT_SCENARIO + "dsp.window = 5\n", encoding="utf-8")
    out = tmp_path / "traces"
    main(["run", str(path), "--out", str(out)])
    live = capsys.readouterr().out.splitlines()[0]
    trace = out / "short_trial0.csv"
    assert main(["report", str(trace), "--window", "5"]) == EXIT_OK
    matched = capsys.readouterr().out
    assert main(["report", str(trace)]) == EXIT_OK
    default = capsys.readouterr().out

    def rmse_of(line):
        return float(line.split("rmse=")[1].split()[0])

    assert abs(rmse_of(matched) - rmse_of(live)) <= 5e-5
    assert abs(rmse_of(default) - rmse_of(live)) > 5e-5
