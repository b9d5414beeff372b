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
Value types of the maximum entropy clustering core.
"""

__all__ = ["AssociationMatrix", "PosteriorMatrix", "ClusterMasses", "CostBreakdown"]

from dataclasses import dataclass
from typing import Optional

import numpy as np


def _frozen(a):
    if isinstance(a, np.ndarray) and a.dtype == np.float64 and not a.flags.writeable:
        return a
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class AssociationMatrix:
    """
    Row-stochastic matrix of association weights :math:`p(y_j \\mid x_i)`.

    When produced by :func:`~mobile_dcp.clustering.functions.gibbs_associations` the
    logarithms of the weights are kept as well.
    They stay finite where the weights themselves underflow to zero, which lets posteriors be
    computed for controllers that no node is (numerically) associated with.

    :param weights: Array of shape ``(N, M)``.
    :param log_weights: Optional array of shape ``(N, M)`` with ``log(weights)``.
    """
    weights: np.ndarray
    log_weights: Optional[np.ndarray] = None

    def __post_init__(self):
        w = _frozen(self.weights)
        if w.ndim != 2:
            raise ValueError(f"association weights must be a 2D array, got shape {w.shape}")
        object.__setattr__(self, "weights", w)
        if self.log_weights is not None:
            lw = _frozen(self.log_weights)
            if lw.shape != w.shape:
                raise ValueError("log_weights must have the same shape as weights")
            object.__setattr__(self, "log_weights", lw)

    @property
    def shape(self):
        """Tuple ``(N, M)``."""
        return self.weights.shape

    def hard_assignments(self):
        """
        Index of the most strongly associated controller of each node.

        :returns: Integer array of shape ``(N,)``.
        """
        source = self.weights if self.log_weights is None else self.log_weights
        return np.argmax(source, axis=1)


@dataclass(frozen=True)
class PosteriorMatrix:
    """
    Column-stochastic matrix of posterior associations :math:`p(x_i \\mid y_j)`.

    :param weights: Array of shape ``(N, M)``.
    """
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _frozen(self.weights))


@dataclass(frozen=True)
class ClusterMasses:
    """
    Cluster masses :math:`p(y_j)`, floored so no cluster is degenerate.

    :param masses: Array of shape ``(M,)`` summing to 1.
    """
    masses: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "masses", _frozen(self.masses).reshape(-1))


@dataclass(frozen=True)
class CostBreakdown:
    """
    Terms of the free energy :math:`F = D_1 + \\gamma D_2 - T H`.

    :param delay: Delay cost :math:`D_1`.
    :param sync: Synchronization cost :math:`D_2`.
    :param entropy: Entropy :math:`H` of the association weights (natural log).
    :param free_energy: :math:`F`.
    :param temperature: Temperature :math:`T`.
    :param gamma: Synchronization weight :math:`\\gamma`.
    """
    delay: float
    sync: float
    entropy: float
    free_energy: float
    temperature: float
    gamma: float
