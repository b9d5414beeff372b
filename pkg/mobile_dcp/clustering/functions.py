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
Functional implementation of static maximum entropy clustering.

For nodes :math:`x_i` and controllers :math:`y_j` the distortion is

.. math::

    d(x_i, y_j) = \\|x_i - y_j\\|^2 + \\gamma \\sum_{j'} \\|y_j - y_{j'}\\|^2

with squared Euclidean norms, and the objective is the free energy
:math:`F = D_1 + \\gamma D_2 - T H`.
Every node carries the prior :math:`p(x_i) = 1/N`.

The coupling matrix :math:`\\Theta` (diagonal blocks :math:`\\eta = \\gamma (M-1) + 1`, off
diagonal blocks :math:`-\\gamma`) is never built.
It has eigenvalue 1 along the all-ones block direction and :math:`1 + \\gamma M` orthogonal to
it, so both :func:`theta_apply` and :func:`theta_solve` are exact closed forms in
:math:`O(Md)`, and :math:`\\Theta` is invertible for every :math:`\\gamma \\ge 0`.
"""

__all__ = ["EPS_MASS", "distortion", "distortions", "sync_distances", "gibbs_associations",
           "posteriors_and_masses", "posterior_means", "theta_apply", "theta_solve",
           "optimal_centroids", "free_energy"]

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import entr, log_softmax, logsumexp

from .types import AssociationMatrix, ClusterMasses, CostBreakdown, PosteriorMatrix

#: Floor applied to cluster masses before renormalization.
EPS_MASS = 1e-12


def sync_distances(controllers):
    """
    Sum of squared distances from each controller to all controllers,
    :math:`s_j = \\sum_{j'} \\|y_j - y_{j'}\\|^2`.

    :param controllers: Array of shape ``(M, d)``.
    :returns: Array of shape ``(M,)``.
    """
    y = np.atleast_2d(np.asarray(controllers, dtype=float))
    return cdist(y, y, "sqeuclidean").sum(axis=1)


def distortion(x_i, y_j, controllers, gamma):
    """
    Distortion between a single node and a single controller.

    :param x_i: Node position, shape ``(d,)``.
    :param y_j: Controller position, shape ``(d,)``.
    :param controllers: All controller positions, shape ``(M, d)``.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: :math:`d(x_i, y_j)`.
    """
    x_i = np.asarray(x_i, dtype=float)
    y_j = np.asarray(y_j, dtype=float)
    peers = np.atleast_2d(np.asarray(controllers, dtype=float))
    return float(np.sum((x_i - y_j)**2) + gamma*np.sum((peers - y_j)**2))


def distortions(nodes, controllers, gamma):
    """
    Distortion between every node and every controller.

    :param nodes: Array of shape ``(N, d)``.
    :param controllers: Array of shape ``(M, d)``.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: Array of shape ``(N, M)``.
    """
    d = cdist(nodes, controllers, "sqeuclidean")
    if gamma != 0:
        d += gamma*sync_distances(controllers)
    return d


def gibbs_associations(state, T, gamma):
    """
    Gibbs association weights :math:`p(y_j \\mid x_i) = e^{-d(x_i, y_j)/T}/Z_i`.

    The weights are computed in the log domain with a per-row max shift, so no row can
    underflow to all zeros however small the temperature.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param T: Temperature, ``T > 0``.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: :class:`~mobile_dcp.clustering.types.AssociationMatrix` with log weights.
    """
    if not T > 0:
        raise ValueError("temperature must be positive")
    log_w = log_softmax(-distortions(state.nodes, state.controllers, gamma)/T, axis=1)
    return AssociationMatrix(np.exp(log_w), log_w)


def posteriors_and_masses(assoc):
    """
    Posterior associations and cluster masses from association weights.

    Masses are :math:`p(y_j) = \\frac{1}{N}\\sum_i p(y_j \\mid x_i)`, floored at
    :data:`EPS_MASS` and renormalized.
    Posteriors follow Bayes' rule, :math:`p(x_i \\mid y_j) = p(y_j \\mid x_i)/(N p(y_j))`,
    evaluated as a column normalization (in the log domain when log weights are available).
    A column which is identically zero, which can only come from a hand-built matrix, gets the
    uniform posterior :math:`1/N`.

    :param assoc: Row-stochastic :class:`~mobile_dcp.clustering.types.AssociationMatrix`.
    :returns: Tuple of (:class:`PosteriorMatrix`, :class:`ClusterMasses`).
    """
    w = assoc.weights
    n = w.shape[0]
    masses = np.maximum(w.sum(axis=0)/n, EPS_MASS)
    masses /= masses.sum()
    if assoc.log_weights is not None:
        lw = assoc.log_weights
        posterior = np.exp(lw - logsumexp(lw, axis=0, keepdims=True))
    else:
        col = w.sum(axis=0, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            posterior = np.where(col > 0, w/col, 1.0/n)
    return PosteriorMatrix(posterior), ClusterMasses(masses)


def posterior_means(state, assoc):
    """
    Posterior-weighted node means :math:`c_j = \\sum_i p(x_i \\mid y_j) x_i`.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param assoc: :class:`~mobile_dcp.clustering.types.AssociationMatrix`.
    :returns: Array of shape ``(M, d)``.
    """
    posterior, _ = posteriors_and_masses(assoc)
    return posterior.weights.T @ state.nodes


def theta_apply(y, gamma):
    """
    Product :math:`\\Theta y`, i.e. :math:`(\\Theta y)_j = \\eta y_j - \\gamma \\sum_{j' \\ne j} y_{j'}`.

    :param y: Array of shape ``(M, d)``.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: Array of shape ``(M, d)``.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0]
    return (1.0 + gamma*m)*y - gamma*y.sum(axis=0)


def theta_solve(c, gamma):
    """
    Solve :math:`\\Theta y = c`, giving :math:`y_j = (c_j + \\gamma \\sum_{j'} c_{j'})/(1 + \\gamma M)`.

    Exact for every :math:`\\gamma \\ge 0`.

    :param c: Array of shape ``(M, d)``.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: Array of shape ``(M, d)``.
    """
    c = np.atleast_2d(np.asarray(c, dtype=float))
    m = c.shape[0]
    return (c + gamma*c.sum(axis=0))/(1.0 + gamma*m)


def optimal_centroids(state, assoc, gamma):
    """
    Optimal controller placement :math:`y = \\Theta^{-1} P_{x|y}^T x` for fixed weights.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param assoc: :class:`~mobile_dcp.clustering.types.AssociationMatrix`.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: Array of shape ``(M, d)``.
    """
    return theta_solve(posterior_means(state, assoc), gamma)


def free_energy(state, assoc, T, gamma):
    """
    Evaluate the free energy and its terms.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param assoc: Row-stochastic :class:`~mobile_dcp.clustering.types.AssociationMatrix`.
    :param T: Temperature, ``T > 0``.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :returns: :class:`~mobile_dcp.clustering.types.CostBreakdown`.
    """
    if not T > 0:
        raise ValueError("temperature must be positive")
    w = assoc.weights
    delay = float(np.sum(w*cdist(state.nodes, state.controllers, "sqeuclidean")))
    sync = float(np.dot(sync_distances(state.controllers), w.sum(axis=0)))
    entropy = float(np.sum(entr(w)))
    return CostBreakdown(
        delay=delay,
        sync=sync,
        entropy=entropy,
        free_energy=delay + gamma*sync - T*entropy,
        temperature=float(T),
        gamma=float(gamma),
    )
