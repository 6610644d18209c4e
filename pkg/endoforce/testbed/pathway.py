#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Insertion channel of the testbed: an access sheath mounted on a plate, laid
out straight or curved, ending at a wall that stands in for the ureteral
wall the scope tip collides with.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from endoforce.utils.common import clamp, require_finite
from endoforce.utils.exceptions import InputDomainError, ValidationError

logger = logging.getLogger(__name__)


class PathwayKind(Enum):
    STRAIGHT = "straight"
    CURVED = "curved"


DEFAULT_BEND_RAD = math.pi / 2


@dataclass(frozen=True)
class PathwaySpec:
    kind: PathwayKind = PathwayKind.STRAIGHT
    bend_angle_rad: float = 0.0
    sheath_id_mm: float = 4.0
    scope_od_mm: float = 3.0
    length_mm: float = 300.0
    mu: float = 0.2
    normal_load_n_per_mm: float = 0.01

    def __post_init__(self):
        problems = []
        if not self.scope_od_mm < self.sheath_id_mm:
            problems.append(
                f"scope_od_mm ({self.scope_od_mm}) must be below sheath_id_mm ({self.sheath_id_mm})"
            )
        if not self.length_mm > 0:
            problems.append(f"length_mm must be > 0, got {self.length_mm}")
        if not self.mu >= 0:
            problems.append(f"mu must be >= 0, got {self.mu}")
        if not self.normal_load_n_per_mm >= 0:
            problems.append(f"normal_load_n_per_mm must be >= 0, got {self.normal_load_n_per_mm}")
        if not self.bend_angle_rad >= 0:
            problems.append(f"bend_angle_rad must be >= 0, got {self.bend_angle_rad}")
        elif (self.bend_angle_rad == 0) != (self.kind is PathwayKind.STRAIGHT):
            problems.append(
                f"bend_angle_rad is 0 exactly for straight pathways "
                f"(kind={self.kind.value}, bend={self.bend_angle_rad})"
            )
        if problems:
            message = "Invalid pathway: " + "; ".join(problems)
            logger.error(message)
            raise ValidationError(message)

    @classmethod
    def straight(cls, **kwargs):
        return cls(kind=PathwayKind.STRAIGHT, bend_angle_rad=0.0, **kwargs)

    @classmethod
    def curved(cls, bend_angle_rad: float = DEFAULT_BEND_RAD, **kwargs):
        return cls(kind=PathwayKind.CURVED, bend_angle_rad=bend_angle_rad, **kwargs)


@dataclass(frozen=True)
class ContactModel:
    wall_pos_mm: float = 300.0
    wall_stiffness_n_per_mm: float = 4.0
    wall_damping_n_s_per_mm: float = 0.05

    def __post_init__(self):
        if not self.wall_stiffness_n_per_mm > 0:
            raise ValidationError(
                f"wall_stiffness_n_per_mm must be > 0, got {self.wall_stiffness_n_per_mm}"
            )
        if not self.wall_damping_n_s_per_mm >= 0:
            raise ValidationError(
                f"wall_damping_n_s_per_mm must be >= 0, got {self.wall_damping_n_s_per_mm}"
            )

    @classmethod
    def for_pathway(cls, pathway: PathwaySpec, **kwargs):
        return cls(wall_pos_mm=pathway.length_mm, **kwargs)


def _require_depth(depth):
    depth = require_finite(depth, "depth")
    if depth < 0:
        message = f"depth must be >= 0, got {depth}"
        logger.error(message)
        raise InputDomainError(message)
    return depth


def engaged_bend(depth: float, pathway: PathwaySpec) -> float:
    """Wrap angle the scope has passed through so far, rad."""
    return pathway.bend_angle_rad * clamp(depth / pathway.length_mm, 0.0, 1.0)


def capstan_factor(depth: float, pathway: PathwaySpec) -> float:
    return math.exp(pathway.mu * engaged_bend(depth, pathway))


def friction_force(
    depth: float, velocity: float, pathway: PathwaySpec, held: float = 0.0
) -> float:
    """
    Sliding friction between scope and sheath.

    Distributed Coulomb friction over the inserted length, amplified by the
    capstan factor of the engaged bend. While the scope is not sliding
    forward the last friction value is held (static plateau).

    :param depth: inserted length, mm
    :param velocity: scope velocity, mm/s
    :param pathway: insertion channel
    :param held: friction at the last sliding tick, N
    :return: friction force, N
    """
    depth = _require_depth(depth)
    if not velocity > 0:
        return held
    base = pathway.mu * pathway.normal_load_n_per_mm * min(depth, pathway.length_mm)
    if pathway.kind is PathwayKind.CURVED:
        return base * capstan_factor(depth, pathway)
    return base


def collision_force(depth: float, velocity: float, contact: ContactModel) -> float:
    """
    Spring-damper reaction of the end wall, zero until the tip reaches it.
    """
    depth = _require_depth(depth)
    if depth <= contact.wall_pos_mm:
        return 0.0
    penetration = depth - contact.wall_pos_mm
    return max(
        0.0,
        contact.wall_stiffness_n_per_mm * penetration
        + contact.wall_damping_n_s_per_mm * velocity,
    )
