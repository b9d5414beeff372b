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
Real-time dynamic controller placement for mobile software-defined networks.

Note that everything important from the submodules is imported directly here to the main package.
This means you may use code like ``from mobile_dcp import run_rcp`` (instead of using the full
``from mobile_dcp.placement.rcp import run_rcp`` or similar).
"""

__version__ = "0.1.0"

from .enums import *
from .errors import *
from .model import *
from .clustering import *
from .scenario import *
from .trace import *
from .metrics import *
from .placement import *
from .harness import *
from .utils import *
