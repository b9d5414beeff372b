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
Random scenario generation.

Nodes start in Gaussian clusters with randomized means and standard deviations.
Every start cluster is paired with a destination cluster of equal size, and every node is sent
to a randomly chosen point of its destination cluster.
Node rates follow a Rayleigh distribution, sampled by inverse transform,
:math:`k = \\sigma \\sqrt{-2 \\ln(1 - U)}` with :math:`U` uniform on [0, 1).
Finally all start and end positions are mapped into :math:`[-1, 1]^d`.

All random draws come from a single :func:`numpy.random.default_rng` generator (PCG64) seeded
with the configured seed, so the same configuration always produces the same scenario.
"""

__all__ = ["ScenarioGenConfig", "generate_scenario", "rayleigh_rates"]

from dataclasses import dataclass
import logging
from typing import Optional

import numpy as np

from ..errors import ScenarioError
from ..model import MobilitySpec, fit_domain, normalize
from ..scenario import Scenario
from ..utils import default_start_temperature, suggest_decay, suggest_gain

_log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScenarioGenConfig:
    """
    Parameters of a generated scenario.

    :param num_clusters: Number of start (and destination) clusters.
    :param nodes_per_cluster: Number of nodes in each cluster.
    :param cluster_spread: Typical Gaussian standard deviation of a cluster. Each cluster draws
        its own standard deviation uniformly from half to one and a half times this value.
    :param num_controllers: Number of controllers :math:`M`.
    :param rayleigh_sigma: Rayleigh parameter :math:`\\sigma` of the node rates.
    :param seed: Unsigned 64 bit seed.
    :param horizon: Time horizon :math:`\\tau`, in seconds.
    :param steps: Number of time steps :math:`n`.
    :param gamma: Synchronization weight :math:`\\gamma`.
    :param k0: Control law gain, by default from :func:`~mobile_dcp.utils.suggest_gain`.
    :param alpha: Temperature decay per step, by default from
        :func:`~mobile_dcp.utils.suggest_decay` so the temperature bottoms out half way through
        the horizon.
    :param t0_temperature: Starting temperature, by default from
        :func:`~mobile_dcp.utils.default_start_temperature`.
    :param dimension: Number of spatial dimensions :math:`d`.
    :param extent: Cluster means are drawn uniformly from :math:`[-extent, extent]^d`, before
        normalization.
    :param static: Make every node stay at its start position.
    """
    num_clusters: int = 4
    nodes_per_cluster: int = 50
    cluster_spread: float = 1.0
    num_controllers: int = 4
    rayleigh_sigma: float = 0.5
    seed: int = 0
    horizon: float = 10.0
    steps: int = 200
    gamma: float = 0.0
    k0: Optional[float] = None
    alpha: Optional[float] = None
    t0_temperature: Optional[float] = None
    dimension: int = 2
    extent: float = 10.0
    static: bool = False

    def __post_init__(self):
        if self.num_clusters < 1 or self.nodes_per_cluster < 1:
            raise ScenarioError("num_clusters and nodes_per_cluster must be at least 1")
        if not 1 <= self.num_controllers <= self.num_clusters*self.nodes_per_cluster:
            raise ScenarioError("need num_clusters*nodes_per_cluster >= num_controllers >= 1")
        if not self.cluster_spread > 0:
            raise ScenarioError("cluster_spread must be positive")
        if not self.rayleigh_sigma > 0:
            raise ScenarioError("rayleigh_sigma must be positive")
        if not self.extent > 0:
            raise ScenarioError("extent must be positive")
        if self.dimension < 1:
            raise ScenarioError("dimension must be at least 1")
        if not self.horizon > 0 or self.steps < 1:
            raise ScenarioError("horizon must be positive and steps at least 1")
        if not 0 <= self.seed < 2**64:
            raise ScenarioError("seed must be an unsigned 64 bit integer")

    @property
    def num_nodes(self):
        """Total number of nodes."""
        return self.num_clusters*self.nodes_per_cluster


def rayleigh_rates(rng, count, sigma=0.5):
    """
    Sample Rayleigh distributed rates by inverse transform.

    :param rng: :class:`numpy.random.Generator` to draw from.
    :param count: Number of samples.
    :param sigma: Rayleigh parameter :math:`\\sigma`.
    :returns: Array of shape ``(count,)`` of positive rates.
    """
    u = rng.random(count)
    k = sigma*np.sqrt(-2.0*np.log1p(-u))
    # u == 0 gives exactly zero, which is not a valid rate
    return np.maximum(k, np.finfo(float).tiny)


def _clusters(rng, config):
    d = config.dimension
    means = rng.uniform(-config.extent, config.extent, size=(config.num_clusters, d))
    stds = config.cluster_spread*rng.uniform(0.5, 1.5, size=config.num_clusters)
    points = rng.standard_normal((config.num_clusters, config.nodes_per_cluster, d))
    return means[:, np.newaxis, :] + stds[:, np.newaxis, np.newaxis]*points


def generate_scenario(config):
    """
    Generate a random, normalized scenario.

    :param config: :class:`ScenarioGenConfig`.
    :returns: :class:`~mobile_dcp.scenario.Scenario`.
    """
    rng = np.random.default_rng(config.seed)
    start = _clusters(rng, config)
    if config.static:
        end = start.copy()
    else:
        destination = _clusters(rng, config)
        # Each start point goes to a random point of the paired destination cluster
        end = np.stack([destination[c, rng.permutation(config.nodes_per_cluster)]
                        for c in range(config.num_clusters)])
    d = config.dimension
    start = start.reshape(-1, d)
    end = end.reshape(-1, d)
    rate = rayleigh_rates(rng, config.num_nodes, config.rayleigh_sigma)

    box = fit_domain(np.vstack([start, end]))
    # Clip rounding just outside the box
    start = np.clip(normalize(box, start), -1.0, 1.0)
    end = np.clip(normalize(box, end), -1.0, 1.0)

    k0 = config.k0 if config.k0 is not None else suggest_gain(config.num_nodes, config.horizon/config.steps)
    t0 = config.t0_temperature if config.t0_temperature is not None else default_start_temperature(d)
    alpha = config.alpha if config.alpha is not None else suggest_decay(t0, config.steps)
    scenario = Scenario(
        mobility=MobilitySpec(start, end, rate),
        num_controllers=config.num_controllers,
        gamma=config.gamma,
        k0=k0,
        t0_temperature=t0,
        alpha=alpha,
        horizon=config.horizon,
        steps=config.steps,
        seed=config.seed,
    )
    _log.info(f"Generated scenario with {config.num_nodes} nodes in {config.num_clusters} clusters (seed {config.seed}).")
    return scenario
