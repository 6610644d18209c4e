#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import math
from dataclasses import dataclass, replace
from typing import Tuple
import numpy as np
from endoforce.sensing.lever import LeverGeometry, raw_cell_force
from endoforce.testbed.pathway import (
    ContactModel,
    PathwaySpec,
    collision_force,
    friction_force,
)
from endoforce.utils.common import require_finite, require_positive_dt
from endoforce.utils.exceptions import ValidationError
from endoforce.utils.twinbase import TwinBase

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimState:
    depth_mm: float = 0.0
    velocity_mm_s: float = 0.0
    f_friction: float = 0.0
    f_collision: float = 0.0
    f_axial_true: float = 0.0
    t: float = 0.0


@dataclass(frozen=True)
class NoiseSpec:
    """
    Additive white Gaussian noise per channel.

    :param sigma_endoforce_n: std of the EndoForce cell before filtering, N
    :param sigma_ref_cells_n: std of each reference cell before filtering, N
    :param seed: RNG seed, 0 <= seed < 2**64
    """

    sigma_endoforce_n: float = 0.0
    sigma_ref_cells_n: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("sigma_endoforce_n", "sigma_ref_cells_n"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                message = f"noise.{name} must be >= 0, got {value!r}"
                logger.error(message)
                raise ValidationError(message)
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"noise.seed must fit in 64 bits, got {self.seed}")

    @property
    def noise_free(self) -> bool:
        return self.sigma_endoforce_n == 0 and self.sigma_ref_cells_n == 0

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def step_sim(
    state: SimState,
    commanded_velocity: float,
    pathway: PathwaySpec,
    contact: ContactModel,
    dt: float,
) -> SimState:
    """
    Kinematic step: the transport is a stiff position-controlled stage, so
    the scope moves exactly as commanded.

    :param state: current state
    :param commanded_velocity: scope velocity over this tick, mm/s
    :param pathway: insertion channel
    :param contact: end-wall model
    :param dt: tick length, s
    :return: next state
    """
    dt = require_positive_dt(dt)
    velocity = require_finite(commanded_velocity, "commanded_velocity")
    depth = state.depth_mm + velocity * dt
    f_friction = friction_force(depth, velocity, pathway, held=state.f_friction)
    f_collision = collision_force(depth, velocity, contact)
    return SimState(
        depth_mm=depth,
        velocity_mm_s=velocity,
        f_friction=f_friction,
        f_collision=f_collision,
        f_axial_true=f_friction + f_collision,
        t=state.t + dt,
    )


def read_cells(
    state: SimState,
    noise: NoiseSpec,
    rng: np.random.Generator,
    geometry: LeverGeometry = None,
) -> Tuple[float, float, float]:
    """
    Sample the three load cells.

    Three standard normals are drawn per call in channel order, whatever
    the sigmas, so a seed fixes the whole stream.

    :return: (endoforce_raw, plate_cell, end_cell) in N; endoforce_raw is
             the untared cell force
    """
    geometry = geometry or LeverGeometry()
    z_endo, z_plate, z_end = rng.standard_normal(3)
    endoforce_raw = raw_cell_force(state.f_axial_true, geometry)
    return (
        endoforce_raw + noise.sigma_endoforce_n * float(z_endo),
        state.f_friction + noise.sigma_ref_cells_n * float(z_plate),
        state.f_collision + noise.sigma_ref_cells_n * float(z_end),
    )


class Testbed(TwinBase):
    """
    Ureter testbed: sheath on a friction plate, end-wall cell, and the
    EndoForce cell on the holder side. Owns its RNG.
    """

    __test__ = False

    def __init__(
        self,
        pathway: PathwaySpec = None,
        contact: ContactModel = None,
        noise: NoiseSpec = None,
        geometry: LeverGeometry = None,
    ):
        self.pathway = pathway or PathwaySpec()
        self.contact = contact or ContactModel.for_pathway(self.pathway)
        self.noise = noise or NoiseSpec()
        self.geometry = geometry or LeverGeometry()
        self.rng = self.noise.rng()
        self.contact_at_s = None
        super().__init__(SimState())

    def __str__(self):
        return f"{self.pathway.kind.value} depth={self.state.depth_mm:g}mm"

    def step(self, commanded_velocity: float, dt: float) -> SimState:
        self.state = step_sim(self.state, commanded_velocity, self.pathway, self.contact, dt)
        if self.contact_at_s is None and self.state.f_collision > 0:
            self.contact_at_s = self.state.t
            logger.info(f"Wall contact at t={self.state.t:.3f}s, depth {self.state.depth_mm:.3f} mm")
        return self.state

    def read_cells(self) -> Tuple[float, float, float]:
        return read_cells(self.state, self.noise, self.rng, self.geometry)

    def reseed(self, seed: int):
        self.noise = replace(self.noise, seed=seed)
        self.rng = self.noise.rng()
