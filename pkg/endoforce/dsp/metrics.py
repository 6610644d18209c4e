#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import math
from typing import Sequence
import numpy as np
from endoforce.dsp.acquisition import Frame
from endoforce.utils.exceptions import InputDomainError

logger = logging.getLogger(__name__)


def rmse(a: Sequence[float], b: Sequence[float]) -> float:
    """
    Root mean squared error between two equally long series.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1 or a.size == 0:
        message = f"rmse needs two non-empty series of equal length, got {a.shape} and {b.shape}"
        logger.error(message)
        raise InputDomainError(message)
    return float(np.sqrt(np.mean((a - b) ** 2)))


def stddev(series: Sequence[float]) -> float:
    """
    Population standard deviation (divisor n).
    """
    series = np.asarray(series, dtype=float)
    if series.ndim != 1 or series.size < 2:
        message = f"stddev needs at least 2 samples, got {series.size}"
        logger.error(message)
        raise InputDomainError(message)
    return float(np.std(series, ddof=0))


def sum_channels(frame: Frame, indices: Sequence[int]) -> float:
    values = frame.channel_values
    for index in indices:
        if not (isinstance(index, int) and 0 <= index < len(values)):
            message = f"channel index {index!r} out of range for {len(values)} channels"
            logger.error(message)
            raise InputDomainError(message)
    return math.fsum(values[i] for i in indices)
