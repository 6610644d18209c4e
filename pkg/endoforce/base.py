#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
from dataclasses import replace
from endoforce.experiment.calibration import calibrate_noise, hold_std
from endoforce.experiment.harness import run_scenario, run_trial
from endoforce.experiment.scenario import ScenarioConfig, load_scenario
from endoforce.gripper.gripper import Gripper
from endoforce.sensing.sensor import LoadCellSensor
from endoforce.testbed.sim import Testbed
from endoforce.transport.controller import TransportController
from endoforce.utils.common import derive_seed

logger = logging.getLogger(__name__)


class EndoForceTwin:
    """
    Digital twin of the EndoForce device on its ureter testbed.

    """

    def __init__(self, config: ScenarioConfig = None, out_dir="."):
        self.config = config or ScenarioConfig()
        self.out_dir = out_dir

    def __repr__(self):
        return f"<{self.__class__.__module__}.{self.__class__.__name__} {self.config.name}>"

    @classmethod
    def from_file(cls, path, out_dir="."):
        """
        Build a twin from a scenario file.

        :param path: scenario file
        :param out_dir: directory for trace files
        :return:
        """
        return cls(load_scenario(path), out_dir=out_dir)

    @property
    def sensor(self):
        """
        Sensing part with the scenario's lever geometry, tared

        :return:
        """
        sensor = LoadCellSensor(self.config.geometry)
        sensor.tare()
        return sensor

    @property
    def gripper(self):
        """
        Gripper part with a holder mounted and locked

        :return:
        """
        gripper = Gripper()
        gripper.attach_holder()
        return gripper

    @property
    def transport(self):
        return TransportController(self.config.transport)

    @property
    def testbed(self):
        """
        Testbed seeded with the scenario's master seed

        :return:
        """
        cfg = self.config
        return Testbed(cfg.pathway, cfg.contact, cfg.effective_noise, cfg.geometry)

    def run_trial(self, trial_index: int = 0, trial_seed: int = None):
        """
        Run one trial; the seed defaults to the split of the master seed.

        :param trial_index: trial number
        :param trial_seed: explicit noise seed
        :return: TrialReport
        """
        if trial_seed is None:
            trial_seed = derive_seed(self.config.noise.seed, trial_index)
        return run_trial(self.config, trial_seed, self.out_dir, trial_index=trial_index)

    def run_scenario(self):
        return run_scenario(self.config, self.out_dir)

    def calibrate(self, target_std: float = 0.45, tol: float = 0.005):
        """
        Calibrate the EndoForce noise and keep it in this twin's config.

        :param target_std: wanted post-filter std, N
        :param tol: accepted deviation, N
        :return: the calibrated NoiseSpec
        """
        noise = calibrate_noise(self.config, target_std, tol)
        self.config = replace(self.config, noise=noise)
        return noise

    def hold_std(self):
        """
        Filtered EndoForce std on a zero-motion hold with the current noise.

        :return:
        """
        return hold_std(self.config, self.config.noise)
