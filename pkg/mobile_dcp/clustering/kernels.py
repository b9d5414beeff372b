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
Compiled kernels for the per-step clustering work.

A single pass over the nodes gives the Gibbs association weights, the cluster masses, the
posterior means and the terms of the free energy, without the temporaries the array
formulations in :mod:`~mobile_dcp.clustering.functions` allocate.
Results agree with those functions to rounding.
"""

__all__ = ["association_sweep"]

import math

from numba import njit
import numpy as np

from .functions import EPS_MASS


@njit(cache=True, nogil=True)
def association_sweep(nodes, controllers, T, gamma):
    """
    Association weights and everything derived from them, in one pass.

    Weights are evaluated in the log domain with a per-row max shift, and the posterior means
    with a per-column max shift, so no row or column underflows to all zeros.

    :param nodes: Array of shape ``(N, d)``.
    :param controllers: Array of shape ``(M, d)``.
    :param T: Temperature, ``T > 0``.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: Tuple of ``(weights, log_weights, masses, means, delay, sync, entropy)``, where
        ``means`` are the posterior means :math:`c` of shape ``(M, d)`` and the last three are
        the free energy terms :math:`D_1`, :math:`D_2` and :math:`H`.
    """
    n, d = nodes.shape
    m = controllers.shape[0]

    peers = np.zeros(m)
    if gamma != 0.0:
        for j in range(m):
            for k in range(m):
                for a in range(d):
                    diff = controllers[j, a] - controllers[k, a]
                    peers[j] += diff*diff

    sq = np.empty(m)
    weights = np.empty((n, m))
    log_w = np.empty((n, m))
    column = np.zeros(m)
    delay = 0.0
    entropy = 0.0
    for i in range(n):
        top = -np.inf
        for j in range(m):
            s = 0.0
            for a in range(d):
                diff = nodes[i, a] - controllers[j, a]
                s += diff*diff
            sq[j] = s
            e = -(s + gamma*peers[j])/T
            log_w[i, j] = e
            if e > top:
                top = e
        z = 0.0
        for j in range(m):
            log_w[i, j] -= top
            z += math.exp(log_w[i, j])
        shift = math.log(z)
        for j in range(m):
            lw = log_w[i, j] - shift
            w = math.exp(lw)
            log_w[i, j] = lw
            weights[i, j] = w
            column[j] += w
            delay += w*sq[j]
            if w > 0.0:
                entropy -= w*lw

    sync = 0.0
    masses = np.empty(m)
    total = 0.0
    for j in range(m):
        sync += peers[j]*column[j]
        masses[j] = max(column[j]/n, EPS_MASS)
        total += masses[j]
    for j in range(m):
        masses[j] /= total

    means = np.zeros((m, d))
    for j in range(m):
        top = -np.inf
        for i in range(n):
            if log_w[i, j] > top:
                top = log_w[i, j]
        z = 0.0
        for i in range(n):
            p = math.exp(log_w[i, j] - top)
            z += p
            for a in range(d):
                means[j, a] += p*nodes[i, a]
        for a in range(d):
            means[j, a] /= z
    return weights, log_w, masses, means, delay, sync, entropy
