#!/usr/bin/env python
# -*- coding:utf-8 -*-
from dataclasses import replace
from pathlib import Path
import pytest

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture(scope="session")
def scenario_dir():
    return SCENARIO_DIR


@pytest.fixture(scope="session")
def straight_config():
    from endoforce.experiment.scenario import load_scenario

    return load_scenario(SCENARIO_DIR / "straight.toml")


@pytest.fixture(scope="session")
def curved_config():
    from endoforce.experiment.scenario import load_scenario

    return load_scenario(SCENARIO_DIR / "curved.toml")


@pytest.fixture(scope="session")
def oracle_straight_config(straight_config):
    from endoforce.experiment.scenario import Mode

    return replace(straight_config, mode=Mode.ORACLE, trials=1)


@pytest.fixture(scope="session")
def oracle_curved_config(curved_config):
    from endoforce.experiment.scenario import Mode

    return replace(curved_config, mode=Mode.ORACLE, trials=1)


@pytest.fixture(scope="session")
def oracle_straight_report(oracle_straight_config, tmp_path_factory):
    from endoforce.experiment.harness import run_trial

    out_dir = tmp_path_factory.mktemp("oracle_straight")
    return run_trial(oracle_straight_config, 7, out_dir)


@pytest.fixture(scope="session")
def oracle_straight_records(oracle_straight_report):
    from endoforce.persistence.trace import read_trace

    return read_trace(oracle_straight_report.trace_path)


@pytest.fixture(scope="function")
def locked_gripper():
    from endoforce.gripper.gripper import Gripper

    gripper = Gripper()
    gripper.attach_holder()
    return gripper


@pytest.fixture(scope="function")
def gripped_state(locked_gripper):
    from endoforce.gripper.fsm import GripperCommand

    return locked_gripper.dispatch(GripperCommand.ROTATE_CW)
