#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import math
from typing import Sequence, Tuple
from endoforce.dsp.filters import FilterSpec, moving_average
from endoforce.dsp.metrics import rmse, stddev
from endoforce.persistence.trace import TelemetryRecord
from endoforce.utils.exceptions import InputDomainError

logger = logging.getLogger(__name__)


def evaluate(endoforce, reference_sum, spec: FilterSpec) -> Tuple[float, float]:
    """
    Filter both unfiltered series and compare them.

    :param endoforce: tared EndoForce readings
    :param reference_sum: plate + end readings
    :param spec: filter spec
    :return: (rmse, std of the filtered residual), N
    """
    endoforce_filt = moving_average(endoforce, spec)
    reference_filt = moving_average(reference_sum, spec)
    return rmse(endoforce_filt, reference_filt), stddev(endoforce_filt - reference_filt)


def replay_metrics(records: Sequence[TelemetryRecord], spec: FilterSpec = None) -> Tuple[float, float]:
    """
    Recompute a trial's metrics from the unfiltered trace columns.

    :param records: records read back from a trace
    :param spec: the filter the trial used
    :return: (rmse, std), N
    """
    if not records:
        message = "replay_metrics needs at least one record"
        logger.error(message)
        raise InputDomainError(message)
    spec = spec or FilterSpec()
    endoforce = [r.endoforce_raw_n for r in records]
    reference_sum = [math.fsum((r.plate_n, r.end_n)) for r in records]
    return evaluate(endoforce, reference_sum, spec)
