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

import math

import numpy as np
import pytest
from scipy.linalg import solve

from mobile_dcp import (EPS_MASS, AssociationMatrix, NetworkState, association_sweep, distortion, distortions,
                        free_energy, gibbs_associations, optimal_centroids, posterior_means, posteriors_and_masses,
                        theta_apply, theta_solve)


def _random_state(rng, n, m, d):
    return NetworkState(0.0, rng.uniform(-1, 1, (n, d)), rng.uniform(-1, 1, (m, d)))


def _random_stochastic(rng, n, m):
    w = rng.random((n, m))
    return AssociationMatrix(w/w.sum(axis=1, keepdims=True))


def test_distortion_single_controller():
    assert distortion([0.0, 0.0], [1.0, 0.0], [[1.0, 0.0]], 0.7) == 1.0


def test_distortion_sync_term():
    peers = [[1.0, 0.0], [1.0, 1.0]]
    assert distortion([0.0, 0.0], peers[0], peers, 0.0) == 1.0
    assert distortion([0.0, 0.0], peers[0], peers, 0.5) == pytest.approx(1.5)


def test_distortions_match_pointwise(rng):
    state = _random_state(rng, 7, 3, 2)
    d = distortions(state.nodes, state.controllers, 0.3)
    for i in range(7):
        for j in range(3):
            assert d[i, j] == pytest.approx(distortion(state.nodes[i], state.controllers[j], state.controllers, 0.3))


def test_gibbs_equidistant():
    state = NetworkState(0.0, [[0.0, 0.0], [5.0, 5.0]], [[1.0, 0.0], [-1.0, 0.0]])
    assoc = gibbs_associations(state, 0.3, 0.0)
    np.testing.assert_allclose(assoc.weights[0], [0.5, 0.5])


def test_gibbs_high_temperature(rng):
    state = _random_state(rng, 20, 4, 2)
    assoc = gibbs_associations(state, 1e9, 0.5)
    np.testing.assert_allclose(assoc.weights, 0.25, rtol=0, atol=1e-6)


def test_gibbs_hand_evaluation():
    state = NetworkState(0.0, [[0.0, 0.0], [9.0, 9.0]], [[1.0, 0.0], [2.0, 0.0]])
    assoc = gibbs_associations(state, 1.0, 0.0)
    e = math.exp(-3.0)
    np.testing.assert_allclose(assoc.weights[0], [1/(1 + e), e/(1 + e)], rtol=1e-12)
    assert assoc.weights[0, 0] == pytest.approx(0.9526, abs=1e-4)


@pytest.mark.parametrize("T", [0.0, -1.0])
def test_gibbs_temperature_must_be_positive(T):
    state = NetworkState(0.0, [[0.0, 0.0]], [[1.0, 0.0]])
    with pytest.raises(ValueError, match="temperature must be positive"):
        gibbs_associations(state, T, 0.0)
    with pytest.raises(ValueError, match="temperature must be positive"):
        free_energy(state, AssociationMatrix([[1.0]]), T, 0.0)


def test_gibbs_and_bayes_invariants():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        d = int(rng.choice([2, 3]))
        m = int(rng.integers(1, 17))
        n = int(rng.integers(m, 201))
        T = 10.0**rng.uniform(-6, 9)
        gamma = float(rng.choice([0.0, rng.uniform(0, 2)]))
        state = _random_state(rng, n, m, d)
        assoc = gibbs_associations(state, T, gamma)
        np.testing.assert_allclose(assoc.weights.sum(axis=1), 1.0, rtol=0, atol=1e-9)
        assert np.all(assoc.weights >= 0)
        posterior, masses = posteriors_and_masses(assoc)
        assert masses.masses.sum() == pytest.approx(1.0, abs=1e-9)
        assert np.all(masses.masses >= EPS_MASS*(1 - 1e-6))
        np.testing.assert_allclose(posterior.weights.sum(axis=0), 1.0, rtol=0, atol=1e-9)
        np.testing.assert_allclose(assoc.weights/n, posterior.weights*masses.masses, rtol=0, atol=1e-9)


def test_hard_limit_matches_nearest():
    rng = np.random.default_rng(99)
    checked = 0
    while checked < 100:
        n, m = int(rng.integers(2, 60)), int(rng.integers(1, 9))
        m = min(m, n)
        gamma = float(rng.choice([0.0, 0.2]))
        state = _random_state(rng, n, m, 2)
        d = distortions(state.nodes, state.controllers, gamma)
        ordered = np.sort(d, axis=1)
        if m > 1 and np.min(ordered[:, 1] - ordered[:, 0]) < 1e-6:
            continue
        assoc = gibbs_associations(state, 1e-8, gamma)
        np.testing.assert_array_equal(assoc.hard_assignments(), np.argmin(d, axis=1))
        np.testing.assert_array_equal(np.argmax(assoc.weights, axis=1), np.argmin(d, axis=1))
        checked += 1


def test_posteriors_uniform():
    assoc = AssociationMatrix(np.full((5, 4), 0.25))
    posterior, masses = posteriors_and_masses(assoc)
    np.testing.assert_allclose(masses.masses, 0.25)
    np.testing.assert_allclose(posterior.weights, 0.2)


def test_posteriors_degenerate_cluster():
    w = np.zeros((6, 3))
    w[:, 0] = 1.0
    posterior, masses = posteriors_and_masses(AssociationMatrix(w))
    assert np.all(masses.masses > 0)
    assert masses.masses.sum() == pytest.approx(1.0)
    assert masses.masses[0] == pytest.approx(1.0 - 2*EPS_MASS, rel=1e-9)
    np.testing.assert_allclose(masses.masses[1:], EPS_MASS, rtol=1e-9)
    np.testing.assert_allclose(posterior.weights[:, 0], 1/6)
    np.testing.assert_allclose(posterior.weights[:, 1:], 1/6)


def test_theta_apply_examples():
    y = np.array([[0.3, -0.2]])
    np.testing.assert_allclose(theta_apply(y, 0.9), y, rtol=1e-15, atol=1e-15)
    y = np.array([[1.0, 0.0], [0.0, 1.0]])
    np.testing.assert_array_equal(theta_apply(y, 0.0), y)
    np.testing.assert_allclose(theta_apply(y, 0.5)[0], [1.5, -0.5])


def test_theta_solve_examples():
    c = np.array([[0.3, -0.2], [1.0, 4.0]])
    np.testing.assert_array_equal(theta_solve(c, 0.0), c)
    y = theta_solve(np.array([[0.0, 0.0], [1.0, 0.0]]), 0.5)
    np.testing.assert_allclose(y, [[0.25, 0.0], [0.75, 0.0]])


def test_theta_solve_matches_dense_solve():
    rng = np.random.default_rng(5)
    for _ in range(200):
        m = int(rng.integers(1, 65))
        d = int(rng.choice([1, 2, 3]))
        gamma = rng.uniform(0, 10)
        c = rng.uniform(-5, 5, (m, d))
        theta = (1 + gamma*m)*np.eye(m) - gamma*np.ones((m, m))
        dense = solve(np.kron(theta, np.eye(d)), c.reshape(-1)).reshape(m, d)
        y = theta_solve(c, gamma)
        np.testing.assert_allclose(y, dense, rtol=1e-10, atol=1e-10*np.abs(dense).max())
        np.testing.assert_allclose(theta_apply(y, gamma), c, rtol=1e-10, atol=1e-10*np.abs(c).max())


def test_optimal_centroids_single_controller(rng):
    nodes = rng.uniform(-1, 1, (15, 2))
    state = NetworkState(0.0, nodes, [[0.9, 0.9]])
    assoc = gibbs_associations(state, 0.5, 0.0)
    np.testing.assert_allclose(optimal_centroids(state, assoc, 0.0), [nodes.mean(axis=0)], atol=1e-14)


def test_optimal_centroids_hard_assignment():
    nodes = np.array([[0.0, 0.0], [0.0, 2.0], [5.0, 5.0], [7.0, 5.0]])
    state = NetworkState(0.0, nodes, [[0.0, 0.0], [5.0, 5.0]])
    assoc = AssociationMatrix([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 1.0]])
    np.testing.assert_allclose(optimal_centroids(state, assoc, 0.0), [[0.0, 1.0], [6.0, 5.0]])


@pytest.mark.parametrize("T", [1e-3, 1.0, 100.0])
def test_optimal_centroids_square(T):
    state = NetworkState(0.0, [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [[0.2, 0.7]])
    assoc = gibbs_associations(state, T, 0.0)
    np.testing.assert_allclose(optimal_centroids(state, assoc, 0.0), [[0.5, 0.5]])


def test_posterior_means_are_fixed_point_of_theta(rng):
    state = _random_state(rng, 30, 4, 2)
    assoc = gibbs_associations(state, 0.2, 0.4)
    y = optimal_centroids(state, assoc, 0.4)
    np.testing.assert_allclose(theta_apply(y, 0.4), posterior_means(state, assoc), atol=1e-12)


def test_free_energy_hand_evaluation():
    state = NetworkState(0.0, [[0.0, 0.0], [2.0, 0.0]], [[1.0, 0.0]])
    cost = free_energy(state, AssociationMatrix([[1.0], [1.0]]), 0.5, 0.3)
    assert (cost.delay, cost.sync, cost.entropy, cost.free_energy) == (2.0, 0.0, 0.0, 2.0)
    assert cost.temperature == 0.5 and cost.gamma == 0.3


def test_free_energy_uniform_entropy():
    state = NetworkState(0.0, [[0.0, 0.0], [1.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]])
    cost = free_energy(state, AssociationMatrix([[0.5, 0.5], [0.5, 0.5]]), 1.0, 0.0)
    assert cost.entropy == pytest.approx(2*math.log(2))


def test_free_energy_terms_consistent(rng):
    state = _random_state(rng, 25, 3, 2)
    assoc = gibbs_associations(state, 0.3, 0.7)
    cost = free_energy(state, assoc, 0.3, 0.7)
    assert cost.free_energy == pytest.approx(cost.delay + 0.7*cost.sync - 0.3*cost.entropy, abs=1e-9)
    assert 0 <= cost.entropy <= 25*math.log(3) + 1e-12


def test_gibbs_weights_minimize_free_energy():
    rng = np.random.default_rng(11)
    for _ in range(10):
        n, m = int(rng.integers(2, 30)), int(rng.integers(2, 6))
        m = min(m, n)
        T = 10.0**rng.uniform(-2, 1)
        gamma = float(rng.choice([0.0, 0.5]))
        state = _random_state(rng, n, m, 2)
        best = free_energy(state, gibbs_associations(state, T, gamma), T, gamma).free_energy
        for _ in range(100):
            other = free_energy(state, _random_stochastic(rng, n, m), T, gamma).free_energy
            assert best <= other + 1e-12


def test_centroid_stationarity(rng):
    state = _random_state(rng, 40, 3, 2)
    assoc = gibbs_associations(state, 0.2, 0.0)
    y = optimal_centroids(state, assoc, 0.0)
    base = free_energy(state.with_controllers(y), assoc, 0.2, 0.0).free_energy
    delta = 1e-5
    for j in range(3):
        for a in range(2):
            for sign in (1.0, -1.0):
                moved = y.copy()
                moved[j, a] += sign*delta
                perturbed = free_energy(state.with_controllers(moved), assoc, 0.2, 0.0).free_energy
                assert perturbed >= base - 1e-8


@pytest.mark.parametrize("gamma", [0.0, 0.4])
def test_sweep_matches_array_functions(rng, gamma):
    for _ in range(30):
        n, m, d = int(rng.integers(2, 40)), int(rng.integers(1, 5)), int(rng.integers(1, 4))
        m = min(m, n)
        state = _random_state(rng, n, m, d)
        T = 10.0**rng.uniform(-3, 1)
        weights, log_w, masses, means, delay, sync, entropy = association_sweep(state.nodes, state.controllers, T, gamma)
        assoc = gibbs_associations(state, T, gamma)
        cost = free_energy(state, assoc, T, gamma)
        _, reference_masses = posteriors_and_masses(assoc)
        np.testing.assert_allclose(weights, assoc.weights, rtol=1e-9, atol=1e-300)
        np.testing.assert_allclose(log_w, assoc.log_weights, rtol=1e-9, atol=1e-9)
        np.testing.assert_allclose(masses, reference_masses.masses, rtol=1e-9)
        np.testing.assert_allclose(means, posterior_means(state, assoc), rtol=1e-9, atol=1e-12)
        assert delay == pytest.approx(cost.delay, rel=1e-9, abs=1e-12)
        assert sync == pytest.approx(cost.sync, rel=1e-9, abs=1e-12)
        assert entropy == pytest.approx(cost.entropy, rel=1e-9, abs=1e-12)


def test_sweep_far_controller_at_low_temperature():
    nodes = np.array([[0.0, 0.0], [0.1, 0.0], [0.9, 0.0]])
    controllers = np.array([[0.05, 0.0], [50.0, 0.0]])
    weights, _, masses, means, _, _, _ = association_sweep(nodes, controllers, 1e-4, 0.0)
    assert np.all(weights[:, 1] == 0.0)
    assert masses[1] == pytest.approx(EPS_MASS)
    # nearest node wins the posterior of the idle controller
    np.testing.assert_allclose(means[1], [0.9, 0.0])
    np.testing.assert_allclose(means[0], [1.0/3.0, 0.0])
