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
Utility methods for choosing problem-dependent defaults and for timing.

All algorithms in this package work in normalized coordinates, where every node lies inside
the box :math:`[-1, 1]^d`.
Some of the tuning parameters only make sense relative to that scale, or relative to the
number of nodes and the integration step, so rather than hard-coding numbers they are derived
with the helpers in this module.

The gain :math:`k_0` of the control law is the most important of these.
With a static network the controllers obey :math:`\\dot y = -k_0 N (y - c)`, so one explicit
Euler step of length :math:`\\Delta t` contracts the distance to the cluster centre by the
factor :math:`1 - k_0 N \\Delta t`.
Values of :math:`k_0 N \\Delta t` above 1 overshoot, values above 2 diverge.
A gain for a particular scenario can be built with the python
`partial <https://docs.python.org/3/library/functools.html>`_:

.. code-block:: python

    from functools import partial

    # Half the remaining distance per step, for 200 nodes
    gain_for = partial(suggest_gain, 200)
    k0 = gain_for(dt=0.05)

"""

__all__ = ["default_start_temperature", "suggest_gain", "suggest_decay", "check_finite", "timed"]

import math
import time

import numpy as np

from .errors import NumericalError


def default_start_temperature(dimension=2):
    """
    Starting temperature which counts as "infinite" in the normalized domain.

    This is twice the largest squared distance between two points of :math:`[-1, 1]^d`, which
    makes the initial association weights within about 1e-2 of uniform.
    For ``dimension=2`` the value is 16.

    :param dimension: Number of spatial dimensions.
    :returns: Starting temperature.
    """
    return 8.0*dimension


def suggest_gain(num_nodes, dt, contraction=0.5):
    """
    Control law gain :math:`k_0` which gives :math:`k_0 N \\Delta t` = ``contraction``.

    :param num_nodes: Number of network nodes :math:`N`.
    :param dt: Integration time step, in seconds.
    :param contraction: Fraction of the distance to the cluster centre removed per step.
    :returns: Gain :math:`k_0`.
    """
    if num_nodes < 1 or dt <= 0:
        raise ValueError("num_nodes must be at least 1 and dt must be positive")
    return contraction/(num_nodes*dt)


def suggest_decay(t0, steps, t_min=1e-6, fraction=0.5):
    """
    Per-step temperature decay which reaches ``t_min`` after ``fraction`` of the steps.

    The real-time controllers only settle once the temperature is at its floor, so a schedule
    which is still cooling at the end of the horizon leaves them short of the placement.

    :param t0: Starting temperature.
    :param steps: Number of time steps :math:`n`.
    :param t_min: Temperature floor.
    :param fraction: Share of the horizon spent cooling, in (0, 1].
    :returns: Decay factor :math:`\\alpha` with :math:`t_0 \\alpha^{\\lceil fn \\rceil} = T_{min}`.
    """
    if steps < 1 or not 0 < fraction <= 1:
        raise ValueError("steps must be at least 1 and fraction in (0, 1]")
    if not 0 < t_min < t0:
        raise ValueError("need 0 < t_min < t0")
    return float((t_min/t0)**(1.0/math.ceil(fraction*steps)))


def check_finite(name, *arrays):
    """
    Raise :class:`~mobile_dcp.errors.NumericalError` if any of the arrays contain NaN or inf.

    :param name: Description of the values, used in the error message.
    :param arrays: Arrays or scalars to check.
    """
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise NumericalError(f"Non-finite value detected in {name}.")


def timed(func, *args, **kwargs):
    """
    Call a function and measure its wall time with a monotonic clock.

    :param func: Function to call with ``*args`` and ``**kwargs``.
    :returns: Tuple of ``(result, elapsed_microseconds)``.
    """
    start = time.perf_counter_ns()
    result = func(*args, **kwargs)
    return result, (time.perf_counter_ns() - start)/1000.0
