#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Scenario files.

A scenario is a TOML document limited to one dot level::

    name = "straight"
    mode = "reproduction"        # or "oracle" (noise-free)
    duration_s = 60.0
    trials = 3

    pathway.kind = "straight"    # or "curved"
    pathway.mu = 0.2
    transport.speed_mm_s = 10.0
    noise.sigma_endoforce_n = 2.0703125
    dsp.window = 25

Allowed sections are ``pathway``, ``contact``, ``geometry``, ``transport``,
``noise`` and ``dsp``; their keys are the fields of the matching value
types. ``[section]`` table headers are accepted as an equivalent spelling.
"""
import logging
import math
import sys
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from endoforce.dsp.filters import FilterSpec
from endoforce.sensing.lever import LeverGeometry
from endoforce.testbed.pathway import DEFAULT_BEND_RAD, ContactModel, PathwayKind, PathwaySpec
from endoforce.testbed.sim import NoiseSpec
from endoforce.transport.controller import TransportConfig
from endoforce.utils.exceptions import ConfigError, ValidationError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)


class Mode(Enum):
    ORACLE = "oracle"
    REPRODUCTION = "reproduction"


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "straight"
    pathway: PathwaySpec = field(default_factory=PathwaySpec)
    contact: ContactModel = field(default_factory=ContactModel)
    geometry: LeverGeometry = field(default_factory=LeverGeometry)
    transport: TransportConfig = field(default_factory=TransportConfig)
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    filter: FilterSpec = field(default_factory=FilterSpec)
    duration_s: float = 60.0
    trials: int = 3
    mode: Mode = Mode.REPRODUCTION

    def __post_init__(self):
        if not (math.isfinite(self.duration_s) and self.duration_s > 0):
            raise ValidationError(f"duration_s must be > 0, got {self.duration_s!r}")
        if isinstance(self.trials, bool) or not (isinstance(self.trials, int) and self.trials >= 1):
            raise ValidationError(f"trials must be an integer >= 1, got {self.trials!r}")

    @property
    def effective_noise(self) -> NoiseSpec:
        """Oracle runs keep the seed but drop every noise source."""
        if self.mode is Mode.ORACLE:
            return replace(self.noise, sigma_endoforce_n=0.0, sigma_ref_cells_n=0.0)
        return self.noise

    @property
    def ticks(self) -> int:
        return int(round(self.duration_s * self.transport.control_rate_hz))

    def with_pathway(self, kind: PathwayKind) -> "ScenarioConfig":
        """
        Same scenario on the other pathway layout; a new curved pathway gets
        the default bend.
        """
        if kind is self.pathway.kind:
            return self
        bend = DEFAULT_BEND_RAD if kind is PathwayKind.CURVED else 0.0
        return replace(self, pathway=replace(self.pathway, kind=kind, bend_angle_rad=bend))


_TOP_LEVEL = {"name": str, "mode": str, "duration_s": float, "trials": int}
_SECTIONS = {
    "pathway": PathwaySpec,
    "contact": ContactModel,
    "geometry": LeverGeometry,
    "transport": TransportConfig,
    "noise": NoiseSpec,
    "dsp": FilterSpec,
}


def _fail(message):
    logger.error(message)
    raise ConfigError(message)


def _coerce(key, value, kind):
    if isinstance(value, (dict, list)):
        _fail(f"{key}: nested values are not allowed")
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if kind is int and isinstance(value, bool):
        _fail(f"{key}: expected an integer, got {value!r}")
    if not isinstance(value, kind):
        _fail(f"{key}: expected {kind.__name__}, got {value!r}")
    return value


def _build_section(section, values, kind):
    types = {f.name: f.type for f in fields(kind)}
    kwargs = {}
    for key, value in values.items():
        dotted = f"{section}.{key}"
        if key not in types:
            _fail(f"{dotted}: unknown key")
        if section == "pathway" and key == "kind":
            try:
                kwargs[key] = PathwayKind(_coerce(dotted, value, str))
            except ValueError:
                _fail(f"{dotted}: expected 'straight' or 'curved', got {value!r}")
            continue
        expected = types[key] if types[key] in (float, int, bool, str) else float
        kwargs[key] = _coerce(dotted, value, expected)
    return kwargs


def parse_scenario(text: str) -> ScenarioConfig:
    """
    Parse scenario text.

    :param text: TOML text
    :return: ScenarioConfig
    :raises ConfigError: on grammar errors, unknown keys or invalid values
    """
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as error:
        _fail(f"Scenario is not valid: {error}")

    top = {}
    sections = {}
    for key, value in document.items():
        if key in _SECTIONS:
            if not isinstance(value, dict):
                _fail(f"{key}: expected a section of dotted keys")
            sections[key] = _build_section(key, value, _SECTIONS[key])
        elif key in _TOP_LEVEL:
            top[key] = _coerce(key, value, _TOP_LEVEL[key])
        else:
            _fail(f"{key}: unknown key")

    try:
        pathway_kwargs = dict(sections.get("pathway", {}))
        if pathway_kwargs.get("kind") is PathwayKind.CURVED and "bend_angle_rad" not in pathway_kwargs:
            pathway_kwargs["bend_angle_rad"] = DEFAULT_BEND_RAD
        pathway = PathwaySpec(**pathway_kwargs)
        contact_kwargs = dict(sections.get("contact", {}))
        contact_kwargs.setdefault("wall_pos_mm", pathway.length_mm)
        mode = top.pop("mode", Mode.REPRODUCTION.value)
        try:
            mode = Mode(mode)
        except ValueError:
            _fail(f"mode: expected 'oracle' or 'reproduction', got {mode!r}")
        return ScenarioConfig(
            pathway=pathway,
            contact=ContactModel(**contact_kwargs),
            geometry=LeverGeometry(**sections.get("geometry", {})),
            transport=TransportConfig(**sections.get("transport", {})),
            noise=NoiseSpec(**sections.get("noise", {})),
            filter=FilterSpec(**sections.get("dsp", {})),
            mode=mode,
            **top,
        )
    except ValidationError as error:
        _fail(str(error))


def load_scenario(path) -> ScenarioConfig:
    """
    Read a scenario file.

    :param path: scenario file path
    :return: ScenarioConfig
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        _fail(f"Cannot read scenario {path}: {error}")
    config = parse_scenario(text)
    logger.info(f"Loaded scenario {config.name!r} from {path}")
    return config
