#!/usr/bin/env python
# -*- coding:utf-8 -*-
import logging
import math
import threading
from collections import deque
from dataclasses import dataclass
from typing import List, Sequence, Tuple
from endoforce.sensing.sensor import LoadCellSensor
from endoforce.testbed.sim import Testbed
from endoforce.utils.exceptions import AcquisitionError, InputDomainError

logger = logging.getLogger(__name__)

CHANNELS = ("endoforce", "plate", "end")
ENDOFORCE, PLATE, END = range(len(CHANNELS))


@dataclass(frozen=True)
class Frame:
    t: float
    channel_values: Tuple[float, ...]
    sequence: int


class CellReader:
    """
    A class which reads all load-cell channels at one tick. You can replace
    this class with one of your own implementation to acquire from a real
    bridge interface; ``read`` must return one value per channel, in
    ``CHANNELS`` order, and may raise AcquisitionError with the channel
    index on failure.
    """

    channel_count = len(CHANNELS)

    def read(self) -> Sequence[float]:
        raise NotImplementedError


class SimulatedCellReader(CellReader):
    """
    Reads the testbed cells; the EndoForce channel is tared with the sensor's
    captured offset.
    """

    def __init__(self, testbed: Testbed, sensor: LoadCellSensor):
        self.testbed = testbed
        self.sensor = sensor

    def read(self):
        endoforce_raw, plate, end = self.testbed.read_cells()
        # flags follow the noise-free axial force
        self.sensor.read(self.testbed.state.f_axial_true)
        return endoforce_raw - self.sensor.state.tare_offset, plate, end


def confirm_reading(values, channel_count):
    """
    check a reading delivered by a source

    :param values: channel values
    :param channel_count: expected number of channels
    :return: the values as a tuple of floats
    """
    values = tuple(values)
    if len(values) != channel_count:
        message = f"Source delivered {len(values)} channels, expected {channel_count}"
        logger.error(message)
        raise AcquisitionError(message, channel=min(len(values), channel_count))
    checked = []
    for index, value in enumerate(values):
        try:
            value = float(value)
        except (TypeError, ValueError):
            value = math.nan
        if not math.isfinite(value):
            message = f"Channel {index} read {values[index]!r}"
            logger.error(message)
            raise AcquisitionError(message, channel=index)
        checked.append(value)
    return tuple(checked)


def sample(source: CellReader, t: float, seq: int) -> Frame:
    """
    Read every channel of ``source`` at the same tick.

    :param source: an initialized cell reader
    :param t: tick time, s
    :param seq: frame sequence number
    :return: Frame
    """
    try:
        values = source.read()
    except AcquisitionError:
        raise
    except Exception as error:
        raise AcquisitionError(f"Source failed: {error}") from error
    return Frame(t=t, channel_values=confirm_reading(values, source.channel_count), sequence=seq)


class Acquisition:
    """
    Fixed-rate sampling session: frame k is stamped t = k / rate_hz.
    """

    def __init__(self, source: CellReader, rate_hz: float = 125.0):
        if not rate_hz > 0:
            raise InputDomainError(f"rate_hz must be > 0, got {rate_hz}")
        self.source = source
        self.rate_hz = rate_hz
        self.sequence = 0

    def next_frame(self) -> Frame:
        frame = sample(self.source, self.sequence / self.rate_hz, self.sequence)
        self.sequence += 1
        return frame


class FrameQueue:
    """
    Bounded hand-off between the control loop and a telemetry consumer.
    ``put`` never blocks: when full, the oldest item is dropped and
    counted.
    """

    def __init__(self, maxlen: int = 1024):
        if maxlen < 1:
            raise InputDomainError(f"maxlen must be >= 1, got {maxlen}")
        self._items = deque(maxlen=maxlen)
        self._lock = threading.Lock()
        self.dropped = 0

    def __len__(self):
        with self._lock:
            return len(self._items)

    def put(self, item):
        with self._lock:
            if len(self._items) == self._items.maxlen:
                self.dropped += 1
                logger.warning(f"Frame queue full, dropped oldest ({self.dropped} so far)")
            self._items.append(item)

    def drain(self) -> List:
        with self._lock:
            items = list(self._items)
            self._items.clear()
        return items
