#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Force path of the sensing part: insertion tube holder -> transmission arm
(lever about the hinge) -> ball tip -> load cell, with a tension-spring
preload and an overload limiter that interrupts transmission above a
threshold.
"""
import logging
from dataclasses import dataclass, replace
from typing import Tuple
from endoforce.utils.common import require_finite
from endoforce.utils.exceptions import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeverGeometry:
    """
    :param ratio_in_out: output force / input force of the transmission arm
    :param preload: spring preload at the ball tip, N
    :param overload_threshold: largest force the limiter lets onto the cell, N
    :param hinge_loss: fractional loss at the hinge and ball-tip contact
    """

    ratio_in_out: float = 1.0
    preload: float = 2.0
    overload_threshold: float = 50.0
    hinge_loss: float = 0.0

    def __post_init__(self):
        problems = []
        if not self.ratio_in_out > 0:
            problems.append(f"ratio_in_out must be > 0, got {self.ratio_in_out}")
        if not self.preload >= 0:
            problems.append(f"preload must be >= 0, got {self.preload}")
        if not self.overload_threshold > self.preload:
            problems.append(
                f"overload_threshold ({self.overload_threshold}) must exceed "
                f"preload ({self.preload})"
            )
        if not 0 <= self.hinge_loss < 1:
            problems.append(f"hinge_loss must be in [0, 1), got {self.hinge_loss}")
        if problems:
            message = "Invalid lever geometry: " + "; ".join(problems)
            logger.error(message)
            raise ValidationError(message)

    @property
    def gain(self) -> float:
        """N on the cell per N of axial force inside the affine band."""
        return (1.0 - self.hinge_loss) * self.ratio_in_out


@dataclass(frozen=True)
class SensingState:
    tare_offset: float = 0.0
    limiter_engaged: bool = False
    contact_lost: bool = False

    def __post_init__(self):
        if self.limiter_engaged and self.contact_lost:
            raise ValidationError("limiter_engaged and contact_lost are exclusive")


def pre_clamp_force(f_axial: float, geom: LeverGeometry) -> float:
    f_axial = require_finite(f_axial, "f_axial")
    return geom.preload + geom.gain * f_axial


def raw_cell_force(f_axial: float, geom: LeverGeometry) -> float:
    """
    Force arriving at the load cell for a given axial force on the holder.

    Below zero the ball tip lifts off the cell; above the overload threshold
    the limiter takes the load.

    :param f_axial: axial force at the insertion tube holder, N
    :param geom: lever geometry
    :return: cell force in [0, overload_threshold]
    """
    value = pre_clamp_force(f_axial, geom)
    if value > geom.overload_threshold:
        return geom.overload_threshold
    if value < 0.0:
        return 0.0
    return value


def contact_state(f_axial: float, geom: LeverGeometry, state: SensingState) -> SensingState:
    """
    Update the limiter / lift-off flags for the given axial force.
    """
    value = pre_clamp_force(f_axial, geom)
    return replace(
        state,
        limiter_engaged=value > geom.overload_threshold,
        contact_lost=value < 0.0,
    )


def tared_reading(f_axial: float, geom: LeverGeometry, state: SensingState) -> float:
    return raw_cell_force(f_axial, geom) - state.tare_offset


def capture_tare(geom: LeverGeometry, state: SensingState) -> SensingState:
    """
    Zero the reading with no external load on the holder. The offset is the
    preload; the hinge loss only scales the transmitted part.
    """
    return replace(state, tare_offset=raw_cell_force(0.0, geom))


def measurable_range(geom: LeverGeometry) -> Tuple[float, float]:
    """
    Axial force band on which the reading is affine.

    :return: (f_min, f_max) in N; f_min is the tension that lifts the ball tip
    """
    f_min = -geom.preload / geom.gain
    f_max = (geom.overload_threshold - geom.preload) / geom.gain
    return f_min, f_max
