#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable
import numpy as np
from endoforce.utils.exceptions import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilterSpec:
    window: int = 25

    def __post_init__(self):
        if isinstance(self.window, bool) or not (isinstance(self.window, int) and self.window >= 1):
            message = f"dsp.window must be an integer >= 1, got {self.window!r}"
            logger.error(message)
            raise ValidationError(message)


class MovingAverage:
    """
    Causal moving average over the last ``window`` samples; the window is
    partial until it fills.
    """

    def __init__(self, spec: FilterSpec = None):
        self.spec = spec or FilterSpec()
        self._window = deque(maxlen=self.spec.window)

    def update(self, value: float) -> float:
        self._window.append(value)
        return math.fsum(self._window) / len(self._window)

    def reset(self):
        self._window.clear()


def moving_average(values: Iterable[float], spec: FilterSpec = None) -> np.ndarray:
    """
    Filter a whole series with the streaming filter.

    :param values: input series
    :param spec: filter spec
    :return: filtered series, same length as the input
    """
    stage = MovingAverage(spec)
    return np.array([stage.update(float(v)) for v in values], dtype=float)
