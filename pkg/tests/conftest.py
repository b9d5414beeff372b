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

import numpy as np
import pytest

from mobile_dcp import MobilitySpec, Scenario, rayleigh_rates, suggest_gain


def blobs(rng, centers, per_blob, spread):
    """Gaussian blobs of ``per_blob`` points around each centre."""
    centers = np.asarray(centers, dtype=float)
    points = [c + spread*rng.standard_normal((per_blob, centers.shape[1])) for c in centers]
    return np.vstack(points)


def static_scenario(nodes, num_controllers, **kwargs):
    """Scenario whose nodes never move."""
    nodes = np.asarray(nodes, dtype=float)
    return Scenario(MobilitySpec(nodes, nodes, np.ones(nodes.shape[0])), num_controllers, **kwargs)


def lane_scenario(seed, per_lane=30, steps=100, horizon=10.0):
    """
    Two lanes of nodes, one above the other, which translate the same distance along x.

    All nodes of a lane share one rate, so each lane moves as a rigid cluster.
    """
    rng = np.random.default_rng(seed)
    start = blobs(rng, [[-0.5, 0.5], [-0.5, -0.5]], per_lane, 0.05)
    end = start + np.array([1.0, 0.0])
    lane_rates = np.maximum(rayleigh_rates(rng, 2, 0.5), 0.4)
    rate = np.repeat(lane_rates, per_lane)
    dt = horizon/steps
    return Scenario(
        mobility=MobilitySpec(start, end, rate),
        num_controllers=2,
        gamma=0.0,
        k0=suggest_gain(2*per_lane, dt),
        t0_temperature=16.0,
        alpha=0.85,
        horizon=horizon,
        steps=steps,
        seed=seed,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def two_blob_scenario():
    """Static scenario with two tight, well separated blobs and a fixed temperature."""
    rng = np.random.default_rng(7)
    nodes = blobs(rng, [[-0.5, 0.0], [0.5, 0.0]], 20, 0.05)
    return static_scenario(nodes, 2, k0=0.625, t0_temperature=0.05, alpha=0.5, horizon=1.0, steps=100, seed=3)
