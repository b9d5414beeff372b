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

import itertools

import numpy as np
import pytest
from scipy.cluster.vq import kmeans2

from mobile_dcp import (FrameSolverConfig, NetworkState, NumericalError, distortions, gibbs_associations,
                        run_frame_by_frame, solve_frame, static_placement)
from mobile_dcp.placement import frame as frame_module

from conftest import blobs, lane_scenario

# Raw coordinates, well outside the normalized box
WIDE = FrameSolverConfig(t0=400.0, on_increase="continue")


def _lloyd_cost(nodes, centers):
    centroids, labels = kmeans2(nodes, np.asarray(centers, dtype=float), iter=100, minit="matrix")
    return float(np.sum((nodes - centroids[labels])**2))


def test_config_levels():
    config = FrameSolverConfig(t0=1.0, alpha=0.5, t_min=0.1)
    assert config.levels() == [1.0, 0.5, 0.25, 0.125, 0.1]
    assert config.levels(t_start=1e-9) == [0.1]
    assert config.levels(t_start=0.3) == [0.3, 0.15, 0.1]


@pytest.mark.parametrize("kwargs", [
    {"alpha": 1.0},
    {"alpha": 0.0},
    {"t0": 1e-7},
    {"inner_tol": 0.0},
    {"max_inner_iters": 0},
    {"on_increase": "ignore"},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        FrameSolverConfig(**kwargs)


def test_single_blob_mean(rng):
    nodes = blobs(rng, [[0.2, -0.1]], 80, 0.3)
    solution = solve_frame(nodes, 1, 0.0)
    np.testing.assert_allclose(solution.controllers, [nodes.mean(axis=0)], rtol=0, atol=1e-6)


def test_two_blobs_sample_means(rng):
    nodes = blobs(rng, [[0.0, 0.0], [10.0, 0.0]], 50, 1.0)
    solution = solve_frame(nodes, 2, 0.0, WIDE)
    y = solution.controllers[np.argsort(solution.controllers[:, 0])]
    np.testing.assert_allclose(y, [nodes[:50].mean(axis=0), nodes[50:].mean(axis=0)], rtol=0, atol=1e-3)


@pytest.mark.parametrize("centers", [
    [[-5.0, 0.0], [5.0, 0.0]],
    [[-10.0, 0.0], [0.0, 0.0], [10.0, 0.0]],
], ids=["two", "three"])
def test_matches_lloyd_oracle(centers):
    for seed in range(20):
        nodes = blobs(np.random.default_rng(seed), centers, 30, 1.0)
        solution = solve_frame(nodes, len(centers), 0.0, WIDE, seed=seed)
        oracle = _lloyd_cost(nodes, centers)
        assert solution.cost.delay == pytest.approx(oracle, rel=0.01)


def test_free_energy_descends(two_blob_scenario):
    nodes = two_blob_scenario.mobility.start
    config = FrameSolverConfig(t0=1.0, on_increase="raise")
    solution = solve_frame(nodes, 2, 0.0, config, seed=4)
    assert solution.descent_violations == 0
    assert len(solution.free_energy_trace) == solution.iterations
    assert solution.iterations <= config.max_inner_iters*len(config.levels())


def test_hard_limit_consistency(rng):
    nodes = rng.uniform(-1, 1, (60, 2))
    for gamma in (0.0, 0.2):
        solution = solve_frame(nodes, 4, gamma, FrameSolverConfig(t0=2.0))
        d = distortions(nodes, solution.controllers, gamma)
        np.testing.assert_array_equal(solution.assoc.hard_assignments(), np.argmin(d, axis=1))
        assert solution.cost.temperature == 1e-6


def test_solve_is_deterministic(rng):
    nodes = rng.uniform(-1, 1, (40, 2))
    a = solve_frame(nodes, 3, 0.1, seed=9)
    b = solve_frame(nodes, 3, 0.1, seed=9)
    np.testing.assert_array_equal(a.controllers, b.controllers)
    assert a.free_energy_trace == b.free_energy_trace


def test_warm_start_from_solution(two_blob_scenario):
    nodes = two_blob_scenario.mobility.start
    config = FrameSolverConfig(t0=1.0)
    cold = solve_frame(nodes, 2, 0.0, config)
    warm = solve_frame(nodes, 2, 0.0, config, initial=cold.controllers, t_start=config.t_min)
    assert warm.iterations < cold.iterations
    np.testing.assert_allclose(warm.controllers, cold.controllers, rtol=0, atol=1e-6)


def test_increase_policies(monkeypatch, two_blob_scenario):
    nodes = two_blob_scenario.mobility.start
    shifts = itertools.count(1)
    # every update lands further from the nodes than the last
    monkeypatch.setattr(frame_module, "theta_solve", lambda c, gamma: c + float(next(shifts)))
    kwargs = {"t0": 0.05, "t_min": 0.05, "max_inner_iters": 3}

    with pytest.raises(NumericalError):
        solve_frame(nodes, 2, 0.0, FrameSolverConfig(on_increase="raise", **kwargs))
    with pytest.warns(UserWarning, match="Free energy increased"):
        solution = solve_frame(nodes, 2, 0.0, FrameSolverConfig(on_increase="warn", **kwargs))
    assert solution.descent_violations == 2
    solution = solve_frame(nodes, 2, 0.0, FrameSolverConfig(on_increase="continue", **kwargs))
    assert solution.descent_violations == 2


def test_static_network_frames_identical(two_blob_scenario):
    sc = two_blob_scenario.replace(steps=10)
    trace = run_frame_by_frame(sc, config=FrameSolverConfig(t0=1.0))
    assert len(trace) == 10
    first = trace.rows[0].controllers
    for row in trace.rows:
        np.testing.assert_array_equal(row.controllers, first)
    assert trace.header["algorithm"] == "frame"
    assert trace.header["config"]["warm_start"] is False
    assert trace.header["config"]["solver"]["t0"] == 1.0


def test_warm_started_frames_track_cold_frames():
    sc = lane_scenario(2, steps=20)
    config = FrameSolverConfig(t0=16.0)
    cold = run_frame_by_frame(sc, config=config)
    warm = run_frame_by_frame(sc, config=config, warm_start=True)
    assert warm.header["config"]["warm_start"] is True
    np.testing.assert_array_equal(warm.rows[0].controllers, cold.rows[0].controllers)
    for a, b in zip(warm.rows, cold.rows):
        a_sorted = a.controllers[np.argsort(a.controllers[:, 1])]
        b_sorted = b.controllers[np.argsort(b.controllers[:, 1])]
        np.testing.assert_allclose(a_sorted, b_sorted, rtol=0, atol=1e-3)


def test_frame_rows_have_no_residual(two_blob_scenario):
    trace = run_frame_by_frame(two_blob_scenario.replace(steps=3), config=FrameSolverConfig(t0=1.0))
    assert np.all(trace.column("tracking_error") < 1e-5)
    assert np.all(trace.column("temperature") == 1e-6)


def test_static_placement_holds_first_frame():
    sc = lane_scenario(0, steps=15)
    config = FrameSolverConfig(t0=16.0)
    trace = static_placement(sc, config=config)
    assert len(trace) == 15
    assert trace.header["algorithm"] == "static"
    expected = solve_frame(sc.mobility.start, 2, 0.0, config, seed=sc.seed).controllers
    for row in trace.rows:
        np.testing.assert_allclose(row.controllers, expected, rtol=0, atol=1e-9)
    # Held placement falls behind the moving lanes
    assert trace.rows[-1].tracking_error > 0.1
    assert trace.rows[-1].temperature == config.t_min


def test_gibbs_weights_at_solution(rng):
    nodes = rng.uniform(-1, 1, (30, 2))
    solution = solve_frame(nodes, 2, 0.0, FrameSolverConfig(t0=2.0))
    expected = gibbs_associations(NetworkState(0.0, nodes, solution.controllers), 1e-6, 0.0)
    np.testing.assert_array_equal(solution.assoc.weights, expected.weights)
