#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import pytest
from hypothesis import given, settings, strategies as st
from endoforce.gripper.fsm import (
    INITIAL_STATE,
    Grip,
    GripperCommand,
    GripperState,
    Holder,
    PushRod,
    dispatch,
    hold,
    is_valid,
    reachable_states,
    transmits_force,
)
from endoforce.gripper.gripper import Gripper
from endoforce.utils.exceptions import TransitionError

logger = logging.getLogger(__name__)

SEATED = GripperState(holder=Holder.SEATED)
LOCKED = GripperState(holder=Holder.LOCKED)
GRIPPED = GripperState(grip=Grip.GRIPPED, holder=Holder.LOCKED, push_rod_angle=PushRod.CW)


def test_attach_sequence():
    state = INITIAL_STATE
    for cmd in (GripperCommand.SEAT_HOLDER, GripperCommand.LOCK_LEVER, GripperCommand.ROTATE_CW):
        state = dispatch(state, cmd)
    assert state == GRIPPED
    assert (state.holder, state.grip) == (Holder.LOCKED, Grip.GRIPPED)


def test_rotate_cw_is_idempotent():
    assert dispatch(GRIPPED, GripperCommand.ROTATE_CW) == GRIPPED


@pytest.mark.parametrize('state, cmd, expected',
                         [(GRIPPED, GripperCommand.ROTATE_CCW, LOCKED),
                          (LOCKED, GripperCommand.UNLOCK_LEVER, SEATED),
                          (SEATED, GripperCommand.REMOVE_HOLDER, INITIAL_STATE),
                          (SEATED, GripperCommand.ROTATE_CCW, SEATED),
                          (INITIAL_STATE, GripperCommand.SEAT_HOLDER, SEATED),
                          (SEATED, GripperCommand.LOCK_LEVER, LOCKED),
                          ])
def test_legal_transitions(state, cmd, expected):
    assert dispatch(state, cmd) == expected


@pytest.mark.parametrize('state, cmd',
                         [(GRIPPED, GripperCommand.REMOVE_HOLDER),
                          (LOCKED, GripperCommand.REMOVE_HOLDER),
                          (SEATED, GripperCommand.ROTATE_CW),
                          (INITIAL_STATE, GripperCommand.ROTATE_CW),
                          (INITIAL_STATE, GripperCommand.ROTATE_CCW),
                          (INITIAL_STATE, GripperCommand.LOCK_LEVER),
                          (INITIAL_STATE, GripperCommand.UNLOCK_LEVER),
                          (INITIAL_STATE, GripperCommand.REMOVE_HOLDER),
                          (GRIPPED, GripperCommand.UNLOCK_LEVER),
                          (LOCKED, GripperCommand.SEAT_HOLDER),
                          (LOCKED, GripperCommand.LOCK_LEVER),
                          (SEATED, GripperCommand.UNLOCK_LEVER),
                          ])
def test_illegal_transitions(state, cmd):
    with pytest.raises(TransitionError) as excinfo:
        dispatch(state, cmd)
    assert excinfo.value.state == state
    assert excinfo.value.command is cmd
    assert cmd.name in str(excinfo.value)


@pytest.mark.parametrize('state, expected',
                         [(GRIPPED, True),
                          (LOCKED, False),
                          (SEATED, False),
                          (INITIAL_STATE, False),
                          ])
def test_transmits_force(state, expected):
    assert transmits_force(state) is expected


def test_reachable_states():
    reachable = reachable_states()
    logger.debug(reachable)
    assert reachable == {
        (Holder.DETACHED, Grip.RELEASED),
        (Holder.SEATED, Grip.RELEASED),
        (Holder.LOCKED, Grip.RELEASED),
        (Holder.LOCKED, Grip.GRIPPED),
    }
    assert (Holder.DETACHED, Grip.GRIPPED) not in reachable
    assert (Holder.SEATED, Grip.GRIPPED) not in reachable


commands = st.lists(st.sampled_from(list(GripperCommand)), max_size=30)


@settings(max_examples=1000)
@given(cmds=commands, steps=st.integers(min_value=0, max_value=500))
def test_bistability(cmds, steps):
    state = INITIAL_STATE
    for cmd in cmds:
        try:
            state = dispatch(state, cmd)
        except TransitionError:
            pass
        assert is_valid(state)
    assert hold(state, steps) == state


@settings(max_examples=200)
@given(cmds=commands)
def test_dispatch_is_pure(cmds):
    def replay():
        state, trace = INITIAL_STATE, []
        for cmd in cmds:
            try:
                state = dispatch(state, cmd)
            except TransitionError:
                trace.append(None)
                continue
            trace.append(state)
        return trace

    assert replay() == replay()


def test_gripper_attach_and_detach():
    gripper = Gripper()
    assert str(gripper) == "(DETACHED, RELEASED)"
    assert repr(gripper) == "<endoforce.gripper.gripper.Gripper (DETACHED, RELEASED)>"

    gripper.attach_holder(t=0.5)
    gripper.dispatch(GripperCommand.ROTATE_CW, t=1.0)
    assert gripper.transmits_force
    assert [tr.command for tr in gripper.transitions] == [
        GripperCommand.SEAT_HOLDER,
        GripperCommand.LOCK_LEVER,
        GripperCommand.ROTATE_CW,
    ]
    assert gripper.transitions[-1].t == 1.0
    assert gripper.transitions[-1].old == LOCKED

    assert gripper.detach_holder() == INITIAL_STATE
    assert not gripper.transmits_force
    assert len(gripper.transitions) == 6


def test_gripper_rejects_and_keeps_state(locked_gripper):
    with pytest.raises(TransitionError):
        locked_gripper.dispatch(GripperCommand.REMOVE_HOLDER)
    assert locked_gripper.state == LOCKED
    assert len(locked_gripper.transitions) == 2
    assert locked_gripper == Gripper(LOCKED)
