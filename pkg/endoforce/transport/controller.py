#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Linear transport part: grasp the tube, advance one stroke, release at the
end point, return empty, repeat. Insertion stops for good once the distal
force exceeds the stop threshold.
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple
from endoforce.gripper.fsm import Grip, GripperCommand, GripperState, transmits_force
from endoforce.utils.common import require_finite, require_positive_dt
from endoforce.utils.exceptions import ConsistencyFault, ValidationError
from endoforce.utils.twinbase import TwinBase

logger = logging.getLogger(__name__)


class Phase(Enum):
    IDLE = "idle"
    GRASPING = "grasping"
    ADVANCING = "advancing"
    RELEASING_AT_END = "releasing_at_end"
    RETURNING = "returning"
    HALTED = "halted"


@dataclass(frozen=True)
class TransportConfig:
    """
    :param stroke_mm: carriage travel per cycle
    :param speed_mm_s: advance speed
    :param return_speed_mm_s: empty return speed
    :param stop_threshold_n: distal force that stops the insertion
    :param control_rate_hz: control loop rate
    :param dwell_s: extra wait after the gripper reaches the commanded state
    :param accel_mm_s2: advance ramp; 0 keeps the rectangular profile
    """

    stroke_mm: float = 100.0
    speed_mm_s: float = 10.0
    return_speed_mm_s: float = 200.0
    stop_threshold_n: float = 3.0
    control_rate_hz: float = 125.0
    dwell_s: float = 0.0
    accel_mm_s2: float = 0.0

    def __post_init__(self):
        for name in (
            "stroke_mm",
            "speed_mm_s",
            "return_speed_mm_s",
            "stop_threshold_n",
            "control_rate_hz",
        ):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                message = f"transport.{name} must be > 0, got {value!r}"
                logger.error(message)
                raise ValidationError(message)
        for name in ("dwell_s", "accel_mm_s2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                message = f"transport.{name} must be >= 0, got {value!r}"
                logger.error(message)
                raise ValidationError(message)

    @property
    def dt(self) -> float:
        return 1.0 / self.control_rate_hz


@dataclass(frozen=True)
class TransportState:
    phase: Phase = Phase.IDLE
    carriage_pos_mm: float = 0.0
    scope_depth_mm: float = 0.0
    cycle_count: int = 0
    velocity_mm_s: float = 0.0
    dwell_elapsed_s: float = 0.0


def advance_progress(state: TransportState, cfg: TransportConfig) -> float:
    """
    How far the current cycle has pushed the scope. The carriage carries the
    scope only while gripping, so once released the full stroke counts.
    """
    if state.phase is Phase.RETURNING:
        return cfg.stroke_mm
    return state.carriage_pos_mm


def expected_depth(state: TransportState, cfg: TransportConfig) -> float:
    return state.cycle_count * cfg.stroke_mm + advance_progress(state, cfg)


def net_advancement(state: TransportState) -> float:
    return state.scope_depth_mm


def _check_consistency(state: TransportState, gripper: GripperState):
    gripping = transmits_force(gripper)
    if state.phase is Phase.ADVANCING and not gripping:
        diagnostic = f"advancing with gripper {gripper} at carriage {state.carriage_pos_mm} mm"
    elif state.phase is Phase.RETURNING and gripper.grip is Grip.GRIPPED:
        diagnostic = f"returning with gripper {gripper} at carriage {state.carriage_pos_mm} mm"
    else:
        return
    logger.error(diagnostic)
    raise ConsistencyFault(diagnostic)


def _advance_velocity(state: TransportState, cfg: TransportConfig, dt: float) -> float:
    if cfg.accel_mm_s2 <= 0:
        return cfg.speed_mm_s
    remaining = cfg.stroke_mm - state.carriage_pos_mm
    ramp_up = state.velocity_mm_s + cfg.accel_mm_s2 * dt
    ramp_down = math.sqrt(2.0 * cfg.accel_mm_s2 * remaining)
    return min(cfg.speed_mm_s, ramp_up, ramp_down)


def step(
    state: TransportState,
    cfg: TransportConfig,
    gripper: GripperState,
    distal_force: float,
    dt: float,
) -> Tuple[TransportState, Optional[GripperCommand]]:
    """
    Advance the transport by one control tick.

    :param state: current transport state
    :param cfg: transport config
    :param gripper: gripper state after the previous command was applied
    :param distal_force: filtered end-cell force, N
    :param dt: tick length, s
    :return: (next state, gripper command to issue or None)
    """
    if state.phase is Phase.HALTED:
        return state, None
    dt = require_positive_dt(dt)
    distal_force = require_finite(distal_force, "distal_force")

    if distal_force > cfg.stop_threshold_n:
        logger.info(
            f"Distal force {distal_force:.3f} N above {cfg.stop_threshold_n} N, "
            f"halting at depth {state.scope_depth_mm:.3f} mm"
        )
        return replace(state, phase=Phase.HALTED, velocity_mm_s=0.0), None

    _check_consistency(state, gripper)

    phase = state.phase
    if phase is Phase.IDLE:
        return replace(state, phase=Phase.GRASPING, dwell_elapsed_s=0.0), GripperCommand.ROTATE_CW

    if phase is Phase.GRASPING:
        if not transmits_force(gripper):
            return state, None
        if state.dwell_elapsed_s < cfg.dwell_s:
            return replace(state, dwell_elapsed_s=state.dwell_elapsed_s + dt), None
        return replace(state, phase=Phase.ADVANCING, velocity_mm_s=0.0), None

    if phase is Phase.ADVANCING:
        velocity = _advance_velocity(state, cfg, dt)
        position = state.carriage_pos_mm + velocity * dt
        if position >= cfg.stroke_mm:
            nxt = replace(
                state,
                phase=Phase.RELEASING_AT_END,
                carriage_pos_mm=cfg.stroke_mm,
                velocity_mm_s=0.0,
                dwell_elapsed_s=0.0,
            )
            nxt = replace(nxt, scope_depth_mm=expected_depth(nxt, cfg))
            return nxt, GripperCommand.ROTATE_CCW
        nxt = replace(state, carriage_pos_mm=position, velocity_mm_s=velocity)
        return replace(nxt, scope_depth_mm=expected_depth(nxt, cfg)), None

    if phase is Phase.RELEASING_AT_END:
        if gripper.grip is not Grip.RELEASED:
            return state, None
        if state.dwell_elapsed_s < cfg.dwell_s:
            return replace(state, dwell_elapsed_s=state.dwell_elapsed_s + dt), None
        return replace(state, phase=Phase.RETURNING), None

    # RETURNING
    position = state.carriage_pos_mm - cfg.return_speed_mm_s * dt
    if position <= 0.0:
        nxt = replace(
            state,
            phase=Phase.GRASPING,
            carriage_pos_mm=0.0,
            cycle_count=state.cycle_count + 1,
            dwell_elapsed_s=0.0,
        )
        logger.debug(f"Cycle {nxt.cycle_count} complete, depth {nxt.scope_depth_mm} mm")
        return replace(nxt, scope_depth_mm=expected_depth(nxt, cfg)), GripperCommand.ROTATE_CW
    return replace(state, carriage_pos_mm=position), None


class TransportController(TwinBase):
    """
    Holds the transport config and state between control ticks.
    """

    def __init__(self, config: TransportConfig = None):
        self.config = config or TransportConfig()
        super().__init__(TransportState())

    def __str__(self):
        return f"{self.state.phase.name} depth={self.state.scope_depth_mm:g}mm"

    def step(self, gripper: GripperState, distal_force: float, dt: float = None):
        """
        :return: the gripper command to issue this tick, or None
        """
        previous = self.state.phase
        self.state, command = step(
            self.state, self.config, gripper, distal_force, self.config.dt if dt is None else dt
        )
        if self.state.phase is not previous:
            logger.debug(f"Transport {previous.name} -> {self.state.phase.name}")
        return command

    @property
    def halted(self) -> bool:
        return self.state.phase is Phase.HALTED

    @property
    def net_advancement(self) -> float:
        return net_advancement(self.state)
