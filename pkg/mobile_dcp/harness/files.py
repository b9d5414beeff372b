# Copyright 2026 The mobile_dcp developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later
# version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along with
# this program.  If not, see <http://www.gnu.org/licenses/>.

"""
Reading and writing run traces.

A trace is written as a CSV file with the columns ``step,t,temperature,d1,d2,entropy,
free_energy,tracking_error,wall_us`` followed by ``y<j>_<axis>`` for every controller ``j``
and axis.
Values are written with 17 significant digits, which round-trips every double exactly, and
lines end with ``\\n``.
The trace header, echoing the complete run configuration, goes into a JSON sidecar file
``<stem>.meta.json`` next to the CSV.
"""

__all__ = ["emit_csv", "read_csv", "meta_path", "write_meta", "read_meta"]

import csv
import json
import logging
from pathlib import Path

import numpy as np

from ..errors import ScenarioError
from ..trace import RunTrace, SCALAR_COLUMNS, TraceRow

_log = logging.getLogger(__name__)


def _format(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _columns(num_controllers, dimension):
    return list(SCALAR_COLUMNS) + [f"y{j}_{a}" for j in range(num_controllers) for a in range(dimension)]


def meta_path(path):
    """
    Path of the JSON sidecar belonging to a CSV file.

    :param path: Path of the CSV file.
    """
    path = Path(path)
    return path.with_name(f"{path.stem}.meta.json")


def write_meta(header, path):
    """
    Write a trace header as a JSON file.

    :param header: Dictionary to write.
    :param path: Destination path.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(header, f, sort_keys=True, indent=1)
            f.write("\n")
    except OSError as ex:
        raise ScenarioError(f"Unable to write '{path}': {ex}") from ex


def read_meta(path):
    """
    Read a JSON trace header.

    :param path: Path of the JSON file.
    :returns: Dictionary.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as ex:
        raise ScenarioError(f"Unable to read '{path}': {ex}") from ex
    except json.JSONDecodeError as ex:
        raise ScenarioError(f"'{path}' is not valid JSON: {ex}") from ex


def emit_csv(trace, path, meta=True):
    """
    Write a trace as CSV, plus the header sidecar.

    The output is byte-deterministic for identical traces.

    :param trace: :class:`~mobile_dcp.trace.RunTrace` to write.
    :param path: Destination path of the CSV file.
    :param meta: Also write the ``.meta.json`` sidecar.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(_columns(trace.num_controllers, trace.dimension))
            for row in trace.rows:
                writer.writerow([_format(v) for v in row.values()])
    except OSError as ex:
        raise ScenarioError(f"Unable to write trace '{path}': {ex}") from ex
    if meta:
        write_meta(trace.header, meta_path(path))
    _log.info(f"Wrote {len(trace)} trace rows to {path}.")


def read_csv(path):
    """
    Read a trace written by :func:`emit_csv`.

    The header is read from the sidecar if it exists, otherwise it is left empty.

    :param path: Path of the CSV file.
    :returns: :class:`~mobile_dcp.trace.RunTrace`.
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            columns = next(reader, None)
            records = list(reader)
    except OSError as ex:
        raise ScenarioError(f"Unable to read trace '{path}': {ex}") from ex
    if columns is None or tuple(columns[:len(SCALAR_COLUMNS)]) != SCALAR_COLUMNS:
        raise ScenarioError(f"'{path}' is not a trace file, unexpected columns")
    coords = columns[len(SCALAR_COLUMNS):]
    num_controllers = len({c.split("_")[0] for c in coords})
    if num_controllers == 0 or len(coords) % num_controllers:
        raise ScenarioError(f"'{path}' has inconsistent controller columns")
    dimension = len(coords)//num_controllers
    rows = []
    for n, record in enumerate(records, start=2):
        if len(record) != len(columns):
            raise ScenarioError(f"Line {n} of '{path}' has {len(record)} values, expected {len(columns)}")
        try:
            values = [float(v) for v in record[1:]]
            step = int(record[0])
        except ValueError as ex:
            raise ScenarioError(f"Line {n} of '{path}': {ex}") from ex
        scalars = dict(zip(SCALAR_COLUMNS[1:], values))
        controllers = np.array(values[len(SCALAR_COLUMNS) - 1:]).reshape(num_controllers, dimension)
        rows.append(TraceRow(step=step, controllers=controllers, **scalars))
    mp = meta_path(path)
    header = read_meta(mp) if mp.exists() else {}
    return RunTrace(header=header, rows=tuple(rows))
