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

__all__ = ["Placer", "Snapshot", "initial_controllers", "separate_coincident", "SPLIT_RADIUS"]

from collections import namedtuple
import logging

import numpy as np
from scipy.spatial.distance import cdist

from ..metrics import tracking_error
from ..model import node_positions
from ..trace import RunTrace, TraceRow
from ..utils import check_finite

#: Radius of the seeded jitter applied to controllers that (numerically) coincide.
SPLIT_RADIUS = 1e-6

Snapshot = namedtuple("Snapshot", ["controllers", "cost", "temperature", "wall_us", "residual"])
"""
Result of placing controllers for one snapshot of the network.

``controllers`` is the placement used for the snapshot, ``cost`` its
:class:`~mobile_dcp.clustering.types.CostBreakdown`, ``temperature`` the temperature it was
computed at, ``wall_us`` the compute time in microseconds and ``residual`` the distance to the
optimal placement for the snapshot's own association weights.
"""


def _ball(rng, count, dimension, radius):
    """
    Points drawn uniformly from a ball of the given radius around the origin.
    """
    direction = rng.standard_normal((count, dimension))
    direction /= np.maximum(np.linalg.norm(direction, axis=1, keepdims=True), 1e-300)
    r = radius*rng.random((count, 1))**(1.0/dimension)
    return direction*r


def initial_controllers(nodes, num_controllers, rng, radius=1e-3):
    """
    Controllers clustered around the centroid of the nodes.

    Each controller is displaced from the centroid by a random offset of at most ``radius``,
    so no two controllers start at exactly the same position.

    :param nodes: Array of shape ``(N, d)``.
    :param num_controllers: Number of controllers :math:`M`.
    :param rng: :class:`numpy.random.Generator` to draw offsets from.
    :param radius: Maximum offset.
    :returns: Array of shape ``(M, d)``.
    """
    nodes = np.asarray(nodes, dtype=float)
    return nodes.mean(axis=0) + _ball(rng, num_controllers, nodes.shape[1], radius)


def separate_coincident(controllers, rng, radius=SPLIT_RADIUS):
    """
    Jitter controllers which lie within ``radius`` of another controller.

    At high temperature all controllers contract onto the same point and, once they are
    bitwise equal, they receive identical updates forever.
    Re-seeding a tiny offset keeps the symmetry breakable so the controllers can separate once
    the temperature drops below a critical value.

    :param controllers: Array of shape ``(M, d)``. Not modified.
    :param rng: :class:`numpy.random.Generator` to draw offsets from.
    :param radius: Separation below which controllers are considered coincident.
    :returns: Tuple of (controllers, number of controllers jittered).
    """
    y = np.asarray(controllers, dtype=float)
    if y.shape[0] < 2:
        return y, 0
    gaps = cdist(y, y)
    np.fill_diagonal(gaps, np.inf)
    close = gaps.min(axis=1) < radius
    count = int(close.sum())
    if count:
        y = y.copy()
        y[close] += _ball(rng, count, y.shape[1], radius)
    return y, count


class Placer():
    """
    Base class for algorithms which place controllers over the time horizon of a scenario.

    The main parent class steps through the snapshot times :math:`t = (i-1)\\Delta t` for
    :math:`i = 1 \\ldots n`, evaluates the exact node positions, asks the subclass for a
    placement of each snapshot, checks it for non-finite values and records one
    :class:`~mobile_dcp.trace.TraceRow` per step.
    Subclasses implement :meth:`_reset`, :meth:`_solve_snapshot` and :meth:`config`.

    A function may be registered with :meth:`register_step_callback` to observe the rows as a
    run progresses.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param zero_walltime: Record all wall times as zero, for byte-deterministic output.
    """

    algorithm = None
    """The :class:`~mobile_dcp.enums.Algorithm` implemented by the class."""

    def __init__(self, scenario, zero_walltime=False):
        self._log = logging.getLogger(__name__)

        self.scenario = scenario
        """The :class:`~mobile_dcp.scenario.Scenario` being run."""

        self.zero_walltime = zero_walltime
        """If ``True``, the ``wall_us`` column of the traces is zeroed."""

        # List of functions to call for each completed step
        self._step_callbacks = set()


    def _reset(self):
        """
        Prepare internal state for a new run.
        """
        raise NotImplementedError


    def _solve_snapshot(self, step, t, nodes, dt):
        """
        Compute the placement for one snapshot.

        :param step: Step index, starting at 0.
        :param t: Snapshot time.
        :param nodes: Exact node positions at time ``t``.
        :param dt: Time step of the run.
        :returns: :data:`Snapshot`.
        """
        raise NotImplementedError


    def config(self):
        """
        Dictionary of the algorithm specific configuration.
        """
        return {}


    def header(self):
        """
        Full configuration echo of a run, used as the trace header.
        """
        return {
            "algorithm": self.algorithm.value,
            "scenario": self.scenario.config(),
            "config": self.config(),
        }


    def register_step_callback(self, callback_function):
        """
        Register a function to be called after each step of a run.

        The function passed in should have the signature ``callback_function(row)``, where
        ``row`` is the :class:`~mobile_dcp.trace.TraceRow` just recorded.

        :param callback_function: Function to call after each step.
        """
        if callable(callback_function):
            self._step_callbacks.add(callback_function)
        else:
            self._log.warning("Attempted to register a non-callable object as a callback function.")


    def unregister_step_callback(self, callback_function):
        """
        Unregister a previously registered step callback function.

        :param callback_function: Function to unregister.
        """
        if callback_function not in self._step_callbacks:
            self._log.warning("Attempted to unregister an unknown function.")
        else:
            self._step_callbacks.discard(callback_function)


    def run(self, reference=None):
        """
        Run the algorithm over the whole time horizon of the scenario.

        Without a reference the ``tracking_error`` column holds the distance of each placement
        to the optimal placement for its own association weights.
        With a reference, it holds the :func:`~mobile_dcp.metrics.tracking_error` to the
        reference placement of the same step.

        :param reference: Optional sequence of ``(M, d)`` arrays, one per step.
        :returns: :class:`~mobile_dcp.trace.RunTrace`.
        """
        sc = self.scenario
        n = sc.steps
        dt = sc.dt
        if reference is not None and len(reference) != n:
            raise ValueError(f"need one reference placement per step, got {len(reference)} for {n} steps")
        self._log.info(f"Starting {self.algorithm.value} run: N={sc.num_nodes}, M={sc.num_controllers}, n={n}, dt={dt:g}.")
        self._reset()
        rows = []
        for i in range(n):
            t = i*dt
            nodes = node_positions(sc.mobility, t)
            snap = self._solve_snapshot(i, t, nodes, dt)
            check_finite(f"{self.algorithm.value} placement at step {i}", snap.controllers,
                         snap.cost.free_energy, snap.residual)
            if reference is None:
                error = snap.residual
            else:
                error = tracking_error(snap.controllers, reference[i])
            row = TraceRow(
                step=i,
                t=t,
                temperature=snap.temperature,
                d1=snap.cost.delay,
                d2=snap.cost.sync,
                entropy=snap.cost.entropy,
                free_energy=snap.cost.free_energy,
                tracking_error=error,
                wall_us=0.0 if self.zero_walltime else snap.wall_us,
                controllers=np.array(snap.controllers, dtype=float),
            )
            rows.append(row)
            for callback in self._step_callbacks:
                callback(row)
        self._log.info(f"Finished {self.algorithm.value} run, final tracking error {rows[-1].tracking_error:.3g}.")
        return RunTrace(header=self.header(), rows=tuple(rows))
