#!/usr/bin/env python
# -*- coding:utf-8 -*-
import math
import logging
import numpy as np
from endoforce.utils.exceptions import InputDomainError

logger = logging.getLogger(__name__)


def require_finite(value, name):
    """
    Reject NaN and infinite inputs.

    :param value: the number to check
    :param name: argument name used in the error message
    :return: the value as float
    """
    value = float(value)
    if not math.isfinite(value):
        message = f"{name} must be finite, got {value!r}"
        logger.error(message)
        raise InputDomainError(message)
    return value


def require_positive_dt(dt):
    """
    Reject non-positive time steps.

    :param dt: time step in seconds
    :return:
    """
    dt = require_finite(dt, "dt")
    if dt <= 0:
        message = f"dt must be > 0, got {dt!r}"
        logger.error(message)
        raise InputDomainError(message)
    return dt


def clamp(value, lower, upper):
    return min(max(value, lower), upper)


def derive_seed(master_seed, index):
    """
    Split a master seed into an independent 64-bit seed for one trial.

    The rule is fixed: the first 64-bit word generated by
    ``numpy.random.SeedSequence([master_seed, index])``.

    :param master_seed: scenario seed
    :param index: trial index, starting at 0
    :return: int in [0, 2**64)
    """
    sequence = np.random.SeedSequence([int(master_seed), int(index)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
