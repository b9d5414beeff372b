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
Enumerated values used across the simulator.
"""

__all__ = ["Algorithm", "ExitCode"]

from enum import Enum, IntEnum


class Algorithm(str, Enum):
    """
    Placement algorithms which can be run by the harness.

    The string values are the ones accepted by the ``--algo`` command line option.
    """
    RCP = "rcp"
    FRAME = "frame"
    STATIC = "static"

    @property
    def description(self):
        """
        Return a string describing the algorithm.
        """
        return {
            Algorithm.RCP : "Real-time temporal clustering control law, one integration step per snapshot",
            Algorithm.FRAME : "Frame-by-frame deterministic annealing, full solve per snapshot",
            Algorithm.STATIC : "First snapshot solved by deterministic annealing, placement held",
        }[self]


class ExitCode(IntEnum):
    """
    Process exit codes of the command line interface.
    """
    OK = 0
    INVALID = 2
    NUMERIC = 3

    @property
    def description(self):
        """
        Return a string describing the meaning of the exit code.
        """
        return {
            ExitCode.OK : "Success",
            ExitCode.INVALID : "Invalid arguments or configuration",
            ExitCode.NUMERIC : "Runtime numeric failure (non-finite value detected)",
        }[self]
