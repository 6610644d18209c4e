#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
from dataclasses import replace
from endoforce.dsp.acquisition import ENDOFORCE, Acquisition, SimulatedCellReader
from endoforce.dsp.filters import MovingAverage
from endoforce.dsp.metrics import stddev
from endoforce.experiment.scenario import ScenarioConfig
from endoforce.sensing.sensor import LoadCellSensor
from endoforce.testbed.sim import NoiseSpec, Testbed
from endoforce.utils.exceptions import CalibrationError, InputDomainError

logger = logging.getLogger(__name__)

SIGMA_UPPER_N = 5.0
MAX_ITERATIONS = 40


def hold_std(cfg: ScenarioConfig, noise: NoiseSpec) -> float:
    """
    Filtered EndoForce-channel std over a zero-motion hold of
    ``cfg.duration_s``. Partial-window samples at the head are skipped.

    :param cfg: scenario providing geometry, filter and rate
    :param noise: noise to apply
    :return: std, N
    """
    sensor = LoadCellSensor(cfg.geometry)
    sensor.tare()
    testbed = Testbed(cfg.pathway, cfg.contact, noise, cfg.geometry)
    acquisition = Acquisition(SimulatedCellReader(testbed, sensor), cfg.transport.control_rate_hz)
    stage = MovingAverage(cfg.filter)
    dt = cfg.transport.dt
    filtered = []
    for _ in range(cfg.ticks):
        frame = acquisition.next_frame()
        filtered.append(stage.update(frame.channel_values[ENDOFORCE]))
        testbed.step(0.0, dt)
    return stddev(filtered[cfg.filter.window - 1:])


def calibrate_noise(cfg: ScenarioConfig, target_std: float, tol: float = 0.005,
                    max_iterations: int = MAX_ITERATIONS) -> NoiseSpec:
    """
    Find the pre-filter EndoForce sigma whose filtered hold std matches
    ``target_std``, by bisection over [0, 5] N.

    :param cfg: scenario; its noise seed drives the hold
    :param target_std: wanted post-filter std, N
    :param tol: accepted deviation, N
    :param max_iterations: bisection budget
    :return: cfg.noise with the calibrated sigma_endoforce_n
    :raises CalibrationError: when no sigma within the budget matches
    """
    if not target_std >= 0:
        raise InputDomainError(f"target_std must be >= 0, got {target_std}")
    if not tol > 0:
        raise InputDomainError(f"tol must be > 0, got {tol}")

    noise = cfg.noise
    if target_std == 0:
        return replace(noise, sigma_endoforce_n=0.0)

    def measure(sigma):
        achieved = hold_std(cfg, replace(noise, sigma_endoforce_n=sigma))
        logger.debug(f"sigma={sigma:.6f} N -> filtered std {achieved:.6f} N")
        return achieved

    current = measure(noise.sigma_endoforce_n)
    if abs(current - target_std) <= tol:
        logger.info(f"sigma {noise.sigma_endoforce_n} N already matches {target_std} N")
        return noise

    best_sigma, best_std = noise.sigma_endoforce_n, current
    lower, upper = 0.0, SIGMA_UPPER_N
    for iteration in range(max_iterations):
        sigma = 0.5 * (lower + upper)
        achieved = measure(sigma)
        if abs(achieved - target_std) < abs(best_std - target_std):
            best_sigma, best_std = sigma, achieved
        if abs(achieved - target_std) <= tol:
            logger.info(
                f"Calibrated sigma_endoforce_n={sigma:.6f} N "
                f"(filtered std {achieved:.6f} N) after {iteration + 1} iterations"
            )
            return replace(noise, sigma_endoforce_n=sigma)
        if achieved < target_std:
            lower = sigma
        else:
            upper = sigma

    best = replace(noise, sigma_endoforce_n=best_sigma)
    message = (
        f"Noise calibration did not reach {target_std} N +/- {tol} N in "
        f"{max_iterations} iterations; best sigma {best_sigma:.6f} N gives {best_std:.6f} N"
    )
    logger.error(message)
    raise CalibrationError(message, best=best, achieved_std=best_std)
