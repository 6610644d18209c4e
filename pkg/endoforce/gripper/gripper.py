#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
from typing import List, NamedTuple
from endoforce.gripper.fsm import (
    INITIAL_STATE,
    GripperCommand,
    GripperState,
    dispatch,
    transmits_force,
)
from endoforce.utils.exceptions import TransitionError
from endoforce.utils.twinbase import TwinBase

logger = logging.getLogger(__name__)


class Transition(NamedTuple):
    t: float
    command: GripperCommand
    old: GripperState
    new: GripperState


class Gripper(TwinBase):
    """
    Gripper part with its transition log.
    """

    def __init__(self, state: GripperState = INITIAL_STATE):
        super().__init__(state)
        self.transitions: List[Transition] = []

    def __str__(self):
        return str(self.state)

    def dispatch(self, cmd: GripperCommand, t: float = 0.0) -> GripperState:
        """
        Apply a command and log the transition.

        :param cmd: the command
        :param t: time stamp of the command, s
        :return: the new state
        """
        old = self.state
        try:
            new = dispatch(old, cmd)
        except TransitionError as error:
            logger.error(f"t={t:.3f}s {error}")
            raise
        self.transitions.append(Transition(t, cmd, old, new))
        logger.info(f"t={t:.3f}s gripper {cmd.name}: {old} -> {new}")
        self.state = new
        return new

    def attach_holder(self, t: float = 0.0) -> GripperState:
        """
        Mount a disposable holder: push it into the mounting groove, then
        rotate the locking lever upward.
        """
        self.dispatch(GripperCommand.SEAT_HOLDER, t)
        return self.dispatch(GripperCommand.LOCK_LEVER, t)

    def detach_holder(self, t: float = 0.0) -> GripperState:
        """
        Release the tube, unlock and remove the holder for disposal.
        """
        self.dispatch(GripperCommand.ROTATE_CCW, t)
        self.dispatch(GripperCommand.UNLOCK_LEVER, t)
        return self.dispatch(GripperCommand.REMOVE_HOLDER, t)

    @property
    def transmits_force(self) -> bool:
        return transmits_force(self.state)
