#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import pytest
from hypothesis import given, settings, strategies as st
from endoforce.gripper.fsm import INITIAL_STATE, Grip, GripperCommand, GripperState, Holder
from endoforce.gripper.gripper import Gripper
from endoforce.transport.controller import (
    Phase,
    TransportConfig,
    TransportController,
    TransportState,
    expected_depth,
    net_advancement,
    step,
)
from endoforce.utils.exceptions import ConsistencyFault, InputDomainError, ValidationError

logger = logging.getLogger(__name__)

LOCKED = GripperState(holder=Holder.LOCKED)


def drive(cfg, ticks, distal=0.0):
    controller = TransportController(cfg)
    gripper = Gripper()
    gripper.attach_holder()
    trace = []
    for _ in range(ticks):
        command = controller.step(gripper.state, distal)
        if command is not None:
            gripper.dispatch(command)
        trace.append((controller.state, gripper.state))
    return trace


def test_advance_step(gripped_state):
    cfg = TransportConfig(speed_mm_s=10.0)
    state = TransportState(phase=Phase.ADVANCING)
    nxt, command = step(state, cfg, gripped_state, 0.0, 0.008)
    assert command is None
    assert nxt.carriage_pos_mm == pytest.approx(0.08)
    assert nxt.scope_depth_mm == pytest.approx(0.08)


def test_advance_saturates_at_stroke(gripped_state):
    cfg = TransportConfig(stroke_mm=100.0, speed_mm_s=10.0)
    state = TransportState(phase=Phase.ADVANCING, carriage_pos_mm=99.99, scope_depth_mm=99.99)
    nxt, command = step(state, cfg, gripped_state, 0.0, 0.008)
    assert nxt.carriage_pos_mm == 100.0
    assert nxt.scope_depth_mm == 100.0
    assert nxt.phase is Phase.RELEASING_AT_END
    assert command is GripperCommand.ROTATE_CCW


@pytest.mark.parametrize('phase', list(Phase))
def test_threshold_halts_any_phase(phase, gripped_state):
    cfg = TransportConfig(stop_threshold_n=3.0)
    gripper = LOCKED if phase in (Phase.RETURNING, Phase.RELEASING_AT_END) else gripped_state
    nxt, command = step(TransportState(phase=phase), cfg, gripper, 3.0 + 1e-9, cfg.dt)
    assert nxt.phase is Phase.HALTED
    assert command is None


@pytest.mark.parametrize('dt', [0.0, -0.008])
def test_rejects_non_positive_dt(dt):
    with pytest.raises(InputDomainError):
        step(TransportState(), TransportConfig(), LOCKED, 0.0, dt)


@pytest.mark.parametrize('dt', [0.0, -0.008])
def test_controller_rejects_non_positive_dt(dt):
    controller = TransportController()
    with pytest.raises(InputDomainError):
        controller.step(LOCKED, 0.0, dt)
    assert controller.state == TransportState()


def test_controller_default_dt():
    controller = TransportController()
    controller.step(LOCKED, 0.0)
    assert controller.state.phase is Phase.GRASPING


@pytest.mark.parametrize('phase, gripper',
                         [(Phase.ADVANCING, LOCKED),
                          (Phase.ADVANCING, INITIAL_STATE),
                          (Phase.RETURNING, GripperState(grip=Grip.GRIPPED, holder=Holder.LOCKED)),
                          ])
def test_consistency_fault(phase, gripper):
    with pytest.raises(ConsistencyFault) as excinfo:
        step(TransportState(phase=phase), TransportConfig(), gripper, 0.0, 0.008)
    assert phase.name.lower() in excinfo.value.diagnostic


@pytest.mark.parametrize('kwargs',
                         [{"stroke_mm": 0.0},
                          {"speed_mm_s": -1.0},
                          {"return_speed_mm_s": 0.0},
                          {"stop_threshold_n": 0.0},
                          {"control_rate_hz": 0.0},
                          {"dwell_s": -0.1},
                          {"accel_mm_s2": -1.0},
                          ])
def test_invalid_config(kwargs):
    with pytest.raises(ValidationError):
        TransportConfig(**kwargs)


def test_ten_cycle_run():
    cfg = TransportConfig(stroke_mm=20.0)
    trace = drive(cfg, 3000)
    states = [s for s, _ in trace]
    assert states[-1].cycle_count >= 10

    previous_depth = 0.0
    for state, gripper in trace:
        assert state.scope_depth_mm == pytest.approx(expected_depth(state, cfg), abs=1e-9)
        assert 0.0 <= state.carriage_pos_mm <= cfg.stroke_mm
        assert state.scope_depth_mm >= previous_depth
        previous_depth = state.scope_depth_mm
        assert not (state.phase is Phase.ADVANCING and gripper.grip is Grip.RELEASED)
        assert not (state.phase is Phase.RETURNING and gripper.grip is Grip.GRIPPED)


@pytest.mark.parametrize('cycles', [1, 3, 10])
def test_net_advancement_after_full_cycles(cycles):
    cfg = TransportConfig(stroke_mm=20.0)
    trace = drive(cfg, 3000)
    state = next(s for s, _ in trace if s.cycle_count == cycles)
    assert state.phase is Phase.GRASPING
    assert state.carriage_pos_mm == 0.0
    assert net_advancement(state) == cycles * cfg.stroke_mm


def test_net_advancement_default_stroke():
    trace = drive(TransportConfig(), 4500)
    state = next(s for s, _ in trace if s.cycle_count == 3)
    assert net_advancement(state) == 300.0


def test_net_advancement_trivial():
    assert net_advancement(TransportState()) == 0.0
    assert net_advancement(TransportState(phase=Phase.ADVANCING, carriage_pos_mm=40.0,
                                          scope_depth_mm=40.0)) == 40.0


def test_deterministic_traces():
    cfg = TransportConfig(stroke_mm=20.0, accel_mm_s2=50.0)
    assert drive(cfg, 1500) == drive(cfg, 1500)


def test_cycle_sequence():
    trace = drive(TransportConfig(stroke_mm=1.0), 400)
    phases = []
    for state, _ in trace:
        if not phases or phases[-1] is not state.phase:
            phases.append(state.phase)
    assert phases[:6] == [
        Phase.GRASPING,
        Phase.ADVANCING,
        Phase.RELEASING_AT_END,
        Phase.RETURNING,
        Phase.GRASPING,
        Phase.ADVANCING,
    ]


@settings(max_examples=200)
@given(forces=st.lists(st.floats(min_value=-10.0, max_value=10.0), min_size=1, max_size=50))
def test_halt_latches(forces):
    cfg = TransportConfig()
    gripper = GripperState(grip=Grip.RELEASED, holder=Holder.LOCKED)
    halted, _ = step(TransportState(phase=Phase.ADVANCING, carriage_pos_mm=12.0, scope_depth_mm=12.0),
                     cfg, GripperState(grip=Grip.GRIPPED, holder=Holder.LOCKED), 99.0, cfg.dt)
    assert halted.phase is Phase.HALTED
    state = halted
    for force in forces:
        state, command = step(state, cfg, gripper, force, cfg.dt)
        assert command is None
    assert state == halted


def test_controller_halts_on_distal_force():
    trace = drive(TransportConfig(), 10, distal=5.0)
    assert all(s.phase is Phase.HALTED for s, _ in trace)


def test_trapezoidal_profile():
    cfg = TransportConfig(stroke_mm=20.0, speed_mm_s=10.0, accel_mm_s2=20.0)
    trace = drive(cfg, 2000)
    advancing = [s for s, _ in trace if s.phase is Phase.ADVANCING]
    assert advancing[1].velocity_mm_s == pytest.approx(cfg.accel_mm_s2 * cfg.dt)
    assert max(s.velocity_mm_s for s in advancing) == pytest.approx(cfg.speed_mm_s)
    assert any(s.phase is Phase.RELEASING_AT_END and s.carriage_pos_mm == cfg.stroke_mm
               for s, _ in trace)


def test_dwell_holds_grasp():
    cfg = TransportConfig(stroke_mm=5.0, dwell_s=0.1)
    trace = drive(cfg, 50)
    grasping = [s for s, _ in trace if s.phase is Phase.GRASPING]
    assert len(grasping) >= int(0.1 * cfg.control_rate_hz)
    assert trace[-1][0].phase is Phase.ADVANCING


def test_controller_repr():
    controller = TransportController()
    assert str(controller) == "IDLE depth=0mm"
    assert repr(controller) == "<endoforce.transport.controller.TransportController IDLE depth=0mm>"
    assert not controller.halted
    assert controller.to_dict()["phase"] is Phase.IDLE
