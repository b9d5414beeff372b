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
Solver-agnostic quality and timing metrics.

Controllers carry no canonical order across solvers, so comparisons between two placements
first match controllers by a minimum-cost assignment.
"""

__all__ = ["tracking_error", "fixed_point_residual", "total_delay", "timing_summary"]

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .clustering import distortions, optimal_centroids, sync_distances


def tracking_error(controllers, reference):
    """
    Mean distance between two placements under the optimal controller matching.

    :param controllers: Array of shape ``(M, d)``.
    :param reference: Array of shape ``(M, d)``.
    :returns: Mean Euclidean distance between matched controllers.
    """
    a = np.atleast_2d(np.asarray(controllers, dtype=float))
    b = np.atleast_2d(np.asarray(reference, dtype=float))
    if a.shape != b.shape:
        raise ValueError(f"controller count mismatch: {a.shape[0]} vs {b.shape[0]}")
    cost = cdist(a, b)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].mean())


def fixed_point_residual(state, assoc, gamma):
    """
    Mean distance from each controller to its optimal placement for the current weights.

    Controllers correspond to their own optimal placement index by index, so no matching is
    needed.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param assoc: :class:`~mobile_dcp.clustering.types.AssociationMatrix` for the state.
    :param gamma: Synchronization weight :math:`\\gamma`.
    """
    target = optimal_centroids(state, assoc, gamma)
    return float(np.linalg.norm(state.controllers - target, axis=1).mean())


def total_delay(state, gamma):
    """
    Total network delay under hard assignment, :math:`D_1 + \\gamma D_2`.

    Every node is assigned to the controller of least distortion, which is the zero
    temperature limit of the association weights.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param gamma: Synchronization weight :math:`\\gamma`.
    """
    d = distortions(state.nodes, state.controllers, gamma)
    assigned = np.argmin(d, axis=1)
    delay = np.sum((state.nodes - state.controllers[assigned])**2)
    counts = np.bincount(assigned, minlength=state.num_controllers)
    return float(delay + gamma*np.dot(sync_distances(state.controllers), counts))


def timing_summary(wall_us):
    """
    Summary statistics of per-step wall times.

    :param wall_us: Sequence of wall times, in microseconds.
    :returns: Dictionary with ``mean_ms``, ``std_ms``, ``min_ms``, ``q1_ms``, ``median_ms``,
        ``q3_ms`` and ``max_ms``.
    """
    ms = np.asarray(wall_us, dtype=float)/1000.0
    if ms.size == 0:
        raise ValueError("no timings to summarize")
    q1, median, q3 = np.percentile(ms, [25, 50, 75])
    return {
        "mean_ms": float(ms.mean()),
        "std_ms": float(ms.std()),
        "min_ms": float(ms.min()),
        "q1_ms": float(q1),
        "median_ms": float(median),
        "q3_ms": float(q3),
        "max_ms": float(ms.max()),
    }
