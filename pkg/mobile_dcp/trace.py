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
Per-step run records, the unit of output and comparison of all algorithms.
"""

__all__ = ["TraceRow", "RunTrace", "SCALAR_COLUMNS"]

from dataclasses import dataclass, field, replace

import numpy as np

#: Scalar CSV columns, in order. Controller coordinates follow these.
SCALAR_COLUMNS = ("step", "t", "temperature", "d1", "d2", "entropy", "free_energy",
                  "tracking_error", "wall_us")


@dataclass(frozen=True)
class TraceRow:
    """
    Record of a single time step.

    :param step: Step index, starting at 0.
    :param t: Snapshot time, in seconds.
    :param temperature: Temperature used for the snapshot.
    :param d1: Delay cost :math:`D_1`.
    :param d2: Synchronization cost :math:`D_2`.
    :param entropy: Entropy :math:`H`.
    :param free_energy: Free energy :math:`F`.
    :param tracking_error: Distance to the reference placement.
    :param wall_us: Wall time of the placement computation, in microseconds.
    :param controllers: Array of shape ``(M, d)`` of the placement for the snapshot.
    """
    step: int
    t: float
    temperature: float
    d1: float
    d2: float
    entropy: float
    free_energy: float
    tracking_error: float
    wall_us: float
    controllers: np.ndarray = field(compare=False)

    def values(self):
        """
        Row values in CSV column order, controllers flattened row-major.
        """
        return [self.step, self.t, self.temperature, self.d1, self.d2, self.entropy,
                self.free_energy, self.tracking_error, self.wall_us] + [float(v) for v in np.ravel(self.controllers)]


@dataclass(frozen=True)
class RunTrace:
    """
    Complete record of a run.

    :param header: Dictionary echoing the full run configuration.
    :param rows: Tuple of :class:`TraceRow`, one per step, with strictly increasing times.
    """
    header: dict
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        times = [r.t for r in rows]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("trace times must be strictly increasing")
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return len(self.rows)

    @property
    def num_controllers(self):
        """Number of controllers :math:`M`."""
        return self.rows[0].controllers.shape[0] if self.rows else 0

    @property
    def dimension(self):
        """Number of spatial dimensions :math:`d`."""
        return self.rows[0].controllers.shape[1] if self.rows else 0

    def column(self, name):
        """
        Values of a scalar column as an array.

        :param name: One of :data:`SCALAR_COLUMNS`.
        """
        if name not in SCALAR_COLUMNS:
            raise KeyError(f"Unknown trace column '{name}'")
        return np.array([getattr(r, name) for r in self.rows], dtype=float)

    def controllers(self):
        """
        Controller placements of all steps, array of shape ``(n, M, d)``.
        """
        return np.array([r.controllers for r in self.rows], dtype=float)

    def with_tracking_error(self, values):
        """
        Return a copy with the tracking error column replaced.

        :param values: Sequence with one value per row.
        """
        if len(values) != len(self.rows):
            raise ValueError("need one tracking error value per row")
        return RunTrace(self.header, tuple(replace(r, tracking_error=float(v)) for r, v in zip(self.rows, values)))

    def without_walltime(self):
        """
        Return a copy with all wall times set to zero, for byte-deterministic output.
        """
        return RunTrace(self.header, tuple(replace(r, wall_us=0.0) for r in self.rows))
