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
Controller placement algorithms.

Each algorithm is a subclass of :class:`~mobile_dcp.placement.placer.Placer`, which runs it
over the time horizon of a scenario and records a :class:`~mobile_dcp.trace.RunTrace`.
Functional wrappers such as :func:`run_rcp` and :func:`run_frame_by_frame` are provided for
one-off runs.
"""

from .placer import *
from .rcp import *
from .frame import *
