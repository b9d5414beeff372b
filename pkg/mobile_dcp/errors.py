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
Exceptions raised by the simulator.

Both derive from the built-in exception a caller would otherwise expect, so code catching
``ValueError`` or ``RuntimeError`` keeps working.
"""

__all__ = ["ScenarioError", "NumericalError"]


class ScenarioError(ValueError):
    """
    A scenario, generator configuration or scenario file is invalid.
    """


class NumericalError(RuntimeError):
    """
    A non-finite value appeared during a run.
    """
