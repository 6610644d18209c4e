#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
from endoforce.sensing.lever import (
    LeverGeometry,
    SensingState,
    capture_tare,
    contact_state,
    tared_reading,
)
from endoforce.utils.twinbase import TwinBase

logger = logging.getLogger(__name__)


class LoadCellSensor(TwinBase):
    """
    The sensing part as seen from the control loop: one geometry, one
    mutable tare / flag state.
    """

    def __init__(self, geometry: LeverGeometry = None):
        self.geometry = geometry or LeverGeometry()
        super().__init__(SensingState())

    def __str__(self):
        return f"tare={self.state.tare_offset:g}N"

    def tare(self):
        """
        Capture the zero-load offset.

        :return: the new SensingState
        """
        self.state = capture_tare(self.geometry, self.state)
        logger.debug(f"Tare captured at {self.state.tare_offset} N")
        return self.state

    def read(self, f_axial: float) -> float:
        """
        Tared reading for an axial force; updates the limiter and lift-off
        flags.

        :param f_axial: axial force on the holder, N
        :return: tared reading, N
        """
        previous = self.state
        self.state = contact_state(f_axial, self.geometry, self.state)
        if self.state.limiter_engaged and not previous.limiter_engaged:
            logger.warning(f"Overload limiter engaged at f_axial={f_axial} N")
        if self.state.contact_lost and not previous.contact_lost:
            logger.warning(f"Ball tip lifted off at f_axial={f_axial} N")
        return tared_reading(f_axial, self.geometry, self.state)

    @property
    def limiter_engaged(self) -> bool:
        return self.state.limiter_engaged

    @property
    def contact_lost(self) -> bool:
        return self.state.contact_lost
