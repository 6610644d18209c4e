#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Bistable gripper and detachable insertion-tube holder.

The gripper linkage has two stable states and keeps either one without
actuation; the holder is seated into the mounting groove and then locked
by the locking lever.
"""
import logging
from collections import deque
from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, Tuple
from endoforce.utils.exceptions import TransitionError

logger = logging.getLogger(__name__)


class Grip(Enum):
    RELEASED = "released"
    GRIPPED = "gripped"


class Holder(Enum):
    DETACHED = "detached"
    SEATED = "seated"
    LOCKED = "locked"


class PushRod(Enum):
    CW = "cw"
    CCW = "ccw"


class GripperCommand(Enum):
    ROTATE_CW = "rotate_cw"
    ROTATE_CCW = "rotate_ccw"
    SEAT_HOLDER = "seat_holder"
    LOCK_LEVER = "lock_lever"
    UNLOCK_LEVER = "unlock_lever"
    REMOVE_HOLDER = "remove_holder"


@dataclass(frozen=True)
class GripperState:
    grip: Grip = Grip.RELEASED
    holder: Holder = Holder.DETACHED
    push_rod_angle: PushRod = PushRod.CCW

    def __str__(self):
        return f"({self.holder.name}, {self.grip.name})"


INITIAL_STATE = GripperState()


def is_valid(state: GripperState) -> bool:
    """Gripped is only possible on a locked holder."""
    return state.grip is not Grip.GRIPPED or state.holder is Holder.LOCKED


def dispatch(state: GripperState, cmd: GripperCommand) -> GripperState:
    """
    Apply one command to the gripper.

    :param state: current state
    :param cmd: the command
    :return: the next state
    :raises TransitionError: when the command is not accepted in ``state``
    """
    holder, grip = state.holder, state.grip

    if cmd is GripperCommand.ROTATE_CW:
        if holder is Holder.LOCKED:
            return replace(state, grip=Grip.GRIPPED, push_rod_angle=PushRod.CW)
    elif cmd is GripperCommand.ROTATE_CCW:
        # push rod needs a mounted holder to act on
        if holder is not Holder.DETACHED:
            return replace(state, grip=Grip.RELEASED, push_rod_angle=PushRod.CCW)
    elif cmd is GripperCommand.SEAT_HOLDER:
        if holder is Holder.DETACHED:
            return replace(state, holder=Holder.SEATED)
    elif cmd is GripperCommand.LOCK_LEVER:
        if holder is Holder.SEATED:
            return replace(state, holder=Holder.LOCKED)
    elif cmd is GripperCommand.UNLOCK_LEVER:
        if holder is Holder.LOCKED and grip is Grip.RELEASED:
            return replace(state, holder=Holder.SEATED)
    elif cmd is GripperCommand.REMOVE_HOLDER:
        if holder is Holder.SEATED:
            return replace(state, holder=Holder.DETACHED)

    raise TransitionError(state, cmd)


def transmits_force(state: GripperState) -> bool:
    return state.grip is Grip.GRIPPED and state.holder is Holder.LOCKED


def hold(state: GripperState, steps: int) -> GripperState:
    """
    Let ``steps`` control ticks pass without actuation.
    """
    for _ in range(steps):
        state = replace(state)
    return state


def reachable_states(start: GripperState = INITIAL_STATE) -> FrozenSet[Tuple[Holder, Grip]]:
    """
    Breadth-first search over all commands from ``start``.

    :return: the reachable (holder, grip) pairs
    """
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for cmd in GripperCommand:
            try:
                nxt = dispatch(current, cmd)
            except TransitionError:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset((s.holder, s.grip) for s in seen)
