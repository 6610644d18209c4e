#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Closed-loop trial runner: transport -> testbed -> cells -> filters ->
transport, one tick per control period, with a telemetry row per tick.
"""
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional
from endoforce.dsp.acquisition import END, ENDOFORCE, PLATE, Acquisition, FrameQueue, SimulatedCellReader
from endoforce.dsp.filters import MovingAverage
from endoforce.dsp.metrics import sum_channels
from endoforce.experiment.scenario import ScenarioConfig
from endoforce.gripper.gripper import Gripper
from endoforce.persistence.replay import evaluate
from endoforce.persistence.trace import TelemetryRecord, write_trace
from endoforce.sensing.sensor import LoadCellSensor
from endoforce.testbed.sim import Testbed
from endoforce.transport.controller import Phase, TransportController
from endoforce.utils.common import derive_seed
from endoforce.utils.exceptions import (
    AcquisitionError,
    ConsistencyFault,
    InputDomainError,
    TransitionError,
    TraceWriteError,
    TrialFault,
)

logger = logging.getLogger(__name__)

# ticks between telemetry queue drains
DRAIN_EVERY = 125


@dataclass(frozen=True)
class TrialReport:
    trial_index: int
    seed: int
    rmse_n: float
    endoforce_std_n: float
    halted_at_s: Optional[float]
    contact_at_s: Optional[float]
    max_force_n: float
    dropped_frames: int
    trace_path: Optional[Path]
    fault: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.fault is None


@dataclass(frozen=True)
class ScenarioSummary:
    mean_rmse_n: float
    min_rmse_n: float
    max_rmse_n: float
    mean_std_n: float
    failures: int


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    reports: List[TrialReport]
    summary: ScenarioSummary


def trace_name(cfg: ScenarioConfig, trial_index: int) -> str:
    return f"{cfg.name}_trial{trial_index}.csv"


def run_trial(cfg: ScenarioConfig, trial_seed: int, out_dir=".", trial_index: int = 0,
              queue_size: int = 1024) -> TrialReport:
    """
    Run one insertion trial.

    The tube holder is mounted and the cell tared before the first tick.
    The transport halts once the filtered end-cell force passes the stop
    threshold; sampling continues until ``cfg.duration_s``.

    :param cfg: scenario
    :param trial_seed: noise seed for this trial
    :param out_dir: directory for the trace file
    :param trial_index: index used in the trace file name
    :param queue_size: capacity of the telemetry queue
    :return: TrialReport
    :raises TrialFault: when a module faults; ``error.report`` holds the
                        diagnostic report and the partial trace is written
    """
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        message = f"Cannot create trace directory {out_dir}: {error}"
        logger.error(message)
        raise TraceWriteError(message, path=out_dir) from error
    trace_path = out_dir / trace_name(cfg, trial_index)

    sensor = LoadCellSensor(cfg.geometry)
    sensor.tare()
    testbed = Testbed(cfg.pathway, cfg.contact, cfg.effective_noise, cfg.geometry)
    testbed.reseed(trial_seed)
    gripper = Gripper()
    gripper.attach_holder(0.0)
    transport = TransportController(cfg.transport)
    acquisition = Acquisition(SimulatedCellReader(testbed, sensor), cfg.transport.control_rate_hz)
    endoforce_filter = MovingAverage(cfg.filter)
    reference_filter = MovingAverage(cfg.filter)
    distal_filter = MovingAverage(cfg.filter)
    queue = FrameQueue(queue_size)

    dt = cfg.transport.dt
    records = []
    endoforce_series = []
    reference_series = []
    halted_at = None
    contact_seen = False
    noise = testbed.noise
    noise_label = "noise-free" if noise.noise_free else f"sigma={noise.sigma_endoforce_n:g} N"
    logger.info(f"Trial {trial_index} of {cfg.name!r} ({noise_label}), seed {trial_seed}")

    try:
        for tick in range(cfg.ticks):
            frame = acquisition.next_frame()
            endoforce = frame.channel_values[ENDOFORCE]
            end = frame.channel_values[END]
            reference = sum_channels(frame, (PLATE, END))
            endoforce_filt = endoforce_filter.update(endoforce)
            reference_filt = reference_filter.update(reference)
            distal_filt = distal_filter.update(end)

            events = []
            if not contact_seen and testbed.state.f_collision > 0:
                contact_seen = True
                events.append("contact")

            previous_phase = transport.state.phase
            depth_before = transport.state.scope_depth_mm
            command = transport.step(gripper.state, distal_filt, dt)
            if command is not None:
                gripper.dispatch(command, frame.t)
                events.append(f"gripper:{command.name}")
            if transport.state.phase is not previous_phase:
                events.append(f"phase:{transport.state.phase.name}")
                if transport.halted:
                    halted_at = frame.t

            velocity = (transport.state.scope_depth_mm - depth_before) / dt
            sample_depth = testbed.state.depth_mm
            testbed.step(velocity, dt)

            queue.put(
                TelemetryRecord(
                    t=frame.t,
                    seq=frame.sequence,
                    phase=transport.state.phase,
                    depth_mm=sample_depth,
                    endoforce_raw_n=endoforce,
                    endoforce_filt_n=endoforce_filt,
                    plate_n=frame.channel_values[PLATE],
                    end_n=end,
                    sum_filt_n=reference_filt,
                    grip=gripper.state.grip,
                    event=";".join(events),
                )
            )
            endoforce_series.append(endoforce)
            reference_series.append(reference)
            if (tick + 1) % DRAIN_EVERY == 0:
                records.extend(queue.drain())
    except (ConsistencyFault, TransitionError, AcquisitionError, InputDomainError) as error:
        records.extend(queue.drain())
        write_trace(records, trace_path)
        report = TrialReport(
            trial_index=trial_index,
            seed=trial_seed,
            rmse_n=math.nan,
            endoforce_std_n=math.nan,
            halted_at_s=halted_at,
            contact_at_s=testbed.contact_at_s,
            max_force_n=max((r.endoforce_filt_n for r in records), default=math.nan),
            dropped_frames=queue.dropped,
            trace_path=trace_path,
            fault=f"{error.__class__.__name__}: {error}",
        )
        message = f"Trial {trial_index} of {cfg.name!r} aborted: {report.fault}"
        logger.error(message)
        raise TrialFault(message, report=report) from error

    records.extend(queue.drain())
    write_trace(records, trace_path)
    rmse_n, std_n = evaluate(endoforce_series, reference_series, cfg.filter)
    report = TrialReport(
        trial_index=trial_index,
        seed=trial_seed,
        rmse_n=rmse_n,
        endoforce_std_n=std_n,
        halted_at_s=halted_at,
        contact_at_s=testbed.contact_at_s,
        max_force_n=max(r.endoforce_filt_n for r in records),
        dropped_frames=queue.dropped,
        trace_path=trace_path,
    )
    if halted_at is None:
        logger.warning(f"Trial {trial_index}: threshold never reached in {cfg.duration_s} s")
    logger.info(
        f"Trial {trial_index} done: rmse={rmse_n:.4f} N std={std_n:.4f} N "
        f"halted_at={halted_at} s"
    )
    return report


def summarize(reports: List[TrialReport]) -> ScenarioSummary:
    good = [r for r in reports if r.ok]
    failures = len(reports) - len(good)
    if not good:
        return ScenarioSummary(math.nan, math.nan, math.nan, math.nan, failures)
    values = [r.rmse_n for r in good]
    return ScenarioSummary(
        mean_rmse_n=math.fsum(values) / len(values),
        min_rmse_n=min(values),
        max_rmse_n=max(values),
        mean_std_n=math.fsum(r.endoforce_std_n for r in good) / len(good),
        failures=failures,
    )


def run_scenario(cfg: ScenarioConfig, out_dir=".") -> ScenarioResult:
    """
    Run ``cfg.trials`` trials with seeds split from ``cfg.noise.seed``.
    A faulted trial is kept in the result with its fault marker.

    :param cfg: scenario
    :param out_dir: directory for the trace files
    :return: ScenarioResult
    """
    reports = []
    for index in range(cfg.trials):
        seed = derive_seed(cfg.noise.seed, index)
        try:
            reports.append(run_trial(cfg, seed, out_dir, trial_index=index))
        except TrialFault as error:
            reports.append(error.report)
    summary = summarize(reports)
    logger.info(
        f"Scenario {cfg.name!r}: mean rmse {summary.mean_rmse_n:.4f} N over "
        f"{len(reports) - summary.failures} trials, {summary.failures} failed"
    )
    return ScenarioResult(name=cfg.name, reports=reports, summary=summary)
