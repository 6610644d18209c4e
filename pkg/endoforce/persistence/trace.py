#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Telemetry trace files.

Layout (UTF-8, ``\\n`` line ends, ``.`` decimal separator)::

    # format=1
    t,seq,phase,depth_mm,endoforce_raw_n,endoforce_filt_n,plate_n,end_n,sum_filt_n,grip,event
    0,0,GRASPING,0,0,0,0,0,0,GRIPPED,gripper:ROTATE_CW;phase:GRASPING
    0.0080000000000000002,1,ADVANCING,0,0,0,0,0,0,GRIPPED,phase:ADVANCING

Floats use ``%.17g`` so every value reads back bit-identical. ``event`` is
empty or a ``;``-separated list of tags. The filter window is not stored;
replaying a trace needs the window the trial ran with.
"""
import csv
import io
import logging
import re
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, List
from endoforce.gripper.fsm import Grip
from endoforce.transport.controller import Phase
from endoforce.utils.exceptions import TraceParseError, TraceWriteError

logger = logging.getLogger(__name__)

FORMAT_LINE = "# format=1"

_FLOAT_RE = re.compile(r"^-?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?$")
_INT_RE = re.compile(r"^(?:0|[1-9]\d*)$")
_EVENT_RE = re.compile(r"^[A-Za-z0-9_:;.\-]*$")


@dataclass(frozen=True)
class TelemetryRecord:
    t: float
    seq: int
    phase: Phase
    depth_mm: float
    endoforce_raw_n: float
    endoforce_filt_n: float
    plate_n: float
    end_n: float
    sum_filt_n: float
    grip: Grip
    event: str = ""


COLUMNS = tuple(f.name for f in fields(TelemetryRecord))
_FLOAT_COLUMNS = {"t", "depth_mm", "endoforce_raw_n", "endoforce_filt_n", "plate_n", "end_n", "sum_filt_n"}


def _format_field(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (Phase, Grip)):
        return value.name
    return str(value)


def format_trace(records: Iterable[TelemetryRecord]) -> str:
    buffer = io.StringIO()
    buffer.write(FORMAT_LINE + "\n")
    writer = csv.writer(buffer, lineterminator="\n", quoting=csv.QUOTE_NONE)
    writer.writerow(COLUMNS)
    for record in records:
        writer.writerow(_format_field(value) for value in astuple(record))
    return buffer.getvalue()


def write_trace(records: Iterable[TelemetryRecord], path) -> Path:
    """
    Write records to a trace file.

    :param records: telemetry records ordered by seq
    :param path: destination file
    :return: the path written
    """
    path = Path(path)
    try:
        text = format_trace(records)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except (OSError, csv.Error) as error:
        message = f"Cannot write trace {path}: {error}"
        logger.error(message)
        raise TraceWriteError(message, path=path) from error
    logger.debug(f"Wrote trace {path}")
    return path


def _parse_field(column, token, line):
    def fail(reason):
        message = f"line {line}, column {column}: {reason} ({token!r})"
        logger.error(message)
        raise TraceParseError(message, line=line, column=column)

    if column in _FLOAT_COLUMNS:
        if not _FLOAT_RE.match(token):
            fail("malformed number")
        return float(token)
    if column == "seq":
        if not _INT_RE.match(token):
            fail("malformed sequence number")
        return int(token)
    if column == "phase":
        try:
            return Phase[token]
        except KeyError:
            fail("unknown phase")
    if column == "grip":
        try:
            return Grip[token]
        except KeyError:
            fail("unknown grip")
    if not _EVENT_RE.match(token):
        fail("malformed event tag")
    return token


def parse_trace(text: str) -> List[TelemetryRecord]:
    """
    Strict parse of trace text; see ``read_trace``.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    elif lines:
        message = f"line {len(lines)}: truncated final line (no line end)"
        logger.error(message)
        raise TraceParseError(message, line=len(lines))

    if not lines or lines[0] != FORMAT_LINE:
        raise TraceParseError(f"line 1: expected '{FORMAT_LINE}'", line=1)
    if len(lines) < 2:
        raise TraceParseError("line 2: missing header", line=2)

    header = lines[1].split(",")
    for index, expected in enumerate(COLUMNS):
        found = header[index] if index < len(header) else None
        if found != expected:
            message = f"line 2: header column {index} is {found!r}, expected {expected!r}"
            logger.error(message)
            raise TraceParseError(message, line=2, column=expected)
    if len(header) != len(COLUMNS):
        raise TraceParseError(
            f"line 2: unexpected extra column {header[len(COLUMNS)]!r}",
            line=2,
            column=header[len(COLUMNS)],
        )

    records = []
    last = None
    for number, row in enumerate(lines[2:], start=3):
        tokens = row.split(",")
        if len(tokens) != len(COLUMNS):
            message = f"line {number}: expected {len(COLUMNS)} fields, got {len(tokens)}"
            logger.error(message)
            column = COLUMNS[len(tokens)] if len(tokens) < len(COLUMNS) else None
            raise TraceParseError(message, line=number, column=column)
        values = [_parse_field(c, tok, number) for c, tok in zip(COLUMNS, tokens)]
        record = TelemetryRecord(*values)
        if last is not None:
            if record.seq <= last.seq:
                raise TraceParseError(
                    f"line {number}: seq {record.seq} not above {last.seq}", line=number, column="seq"
                )
            if record.t < last.t:
                raise TraceParseError(
                    f"line {number}: t {record.t} before {last.t}", line=number, column="t"
                )
        records.append(record)
        last = record
    return records


def read_trace(path) -> List[TelemetryRecord]:
    """
    Read a trace file written by ``write_trace``.

    Rejects a missing version line, any header deviation, wrong field
    counts, malformed numbers or tags, non-increasing seq and a final line
    without line end, naming the line and column.

    :param path: trace file
    :return: records
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            text = f.read()
    except UnicodeDecodeError as error:
        message = f"Trace {path} is not UTF-8: {error}"
        logger.error(message)
        raise TraceParseError(message) from error
    return parse_trace(text)
