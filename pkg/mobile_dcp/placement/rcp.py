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
Real-time controller placement by a free energy descending control law.

Rather than re-solving the placement problem at every snapshot, the controllers are moved with
a velocity

.. math::

    u = -\\left[k_0 + \\frac{\\sum_i \\varphi_i^T (x_i - \\sum_j p(y_j \\mid x_i) y_j)}
    {\\sum_j p(y_j) \\|\\bar y_j\\|^2}\\right] \\bar y,
    \\qquad \\bar y = N \\Theta (y - \\Theta^{-1} c),

which keeps the free energy non-increasing in time, :math:`\\dot F \\le -2 k_0 \\sum_j p(y_j)
\\|\\bar y_j\\|^2`, while the nodes move with known velocities :math:`\\varphi`.
The feed-forward quotient is only applied while it is positive.
The controllers are integrated with explicit Euler steps of fixed length while the temperature
is lowered geometrically, one decay per step.
Near the optimum the denominator vanishes, so within a step the total gain is capped at
:math:`1/(N \\Delta t (1 + \\gamma M))`, the gain at which one step lands exactly on the
optimal placement for the current weights.
The cap never lowers :math:`k_0` itself.
"""

__all__ = ["ControllerGains", "AnnealSchedule", "RcpStepResult", "y_bar", "control_law",
           "lyapunov_rate", "rcp_step", "RCPPlacer", "run_rcp"]

from dataclasses import asdict, dataclass
import logging
import math
from typing import Optional

from numba import njit
import numpy as np

from ..clustering import (AssociationMatrix, ClusterMasses, CostBreakdown, association_sweep,
                          posterior_means, posteriors_and_masses, theta_apply)
from ..enums import Algorithm
from ..metrics import fixed_point_residual
from ..model import NetworkState
from ..utils import check_finite, timed
from .placer import Placer, Snapshot, SPLIT_RADIUS, initial_controllers, separate_coincident

_log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControllerGains:
    """
    Gains of the control law.

    :param k0: Gain :math:`k_0 > 0`. See :func:`~mobile_dcp.utils.suggest_gain` for choosing a
        stable value.
    :param eps_den: Regularizer added to the denominator, which vanishes at the optimum.
    :param u_max: Optional cap on the speed of each controller.
    """
    k0: float
    eps_den: float = 1e-9
    u_max: Optional[float] = None

    def __post_init__(self):
        if not self.k0 > 0:
            raise ValueError("k0 must be positive")
        if not self.eps_den > 0:
            raise ValueError("eps_den must be positive")
        if self.u_max is not None and not self.u_max > 0:
            raise ValueError("u_max must be positive")


@dataclass(frozen=True)
class AnnealSchedule:
    """
    Geometric temperature schedule.

    :param t0: Starting temperature. See :func:`~mobile_dcp.utils.default_start_temperature`.
    :param alpha: Decay factor per step, in (0, 1). See :func:`~mobile_dcp.utils.suggest_decay`.
    :param t_min: Temperature floor.
    """
    t0: float
    alpha: float
    t_min: float = 1e-6

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must be in the open interval (0, 1)")
        if not 0 < self.t_min <= self.t0:
            raise ValueError("need 0 < t_min <= t0")

    def next(self, T):
        """
        Temperature following ``T``, i.e. :math:`\\max(\\alpha T, T_{min})`.
        """
        return max(self.alpha*T, self.t_min)


@dataclass(frozen=True)
class RcpStepResult:
    """
    Outcome of a single integration step.

    :param controllers: Array of shape ``(M, d)`` of the advanced controllers.
    :param u: Array of shape ``(M, d)`` of the applied velocities.
    :param y_bar: Array of shape ``(M, d)`` of the tracking deviation before the step.
    :param lyapunov_rate: Analytic :math:`\\dot F` bound before the step, never positive.
    :param cost: :class:`~mobile_dcp.clustering.types.CostBreakdown` before the step.
    :param assoc: Association weights used for the step.
    """
    controllers: np.ndarray
    u: np.ndarray
    y_bar: np.ndarray
    lyapunov_rate: float
    cost: object
    assoc: object


def y_bar(state, assoc, gamma):
    """
    Tracking deviation :math:`\\bar y = N (\\Theta y - c)`.

    It is zero exactly when the controllers are at the optimal placement for the given weights.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param assoc: :class:`~mobile_dcp.clustering.types.AssociationMatrix`.
    :param gamma: Synchronization weight :math:`\\gamma`.
    :returns: Array of shape ``(M, d)``.
    """
    return state.num_nodes*(theta_apply(state.controllers, gamma) - posterior_means(state, assoc))


@njit(cache=True, nogil=True)
def _total_gain(k0, drift, weighted, eps_den, cap):
    feed = drift/(weighted + eps_den) if drift > 0.0 else 0.0
    return min(k0 + feed, max(k0, cap))


def _gain_cap(num_nodes, num_controllers, gamma, dt):
    if dt is None:
        return np.inf
    return 1.0/(num_nodes*dt*(1.0 + gamma*num_controllers))


def _control(state, assoc, masses, ybar, phi, gains, cap):
    phi = np.asarray(phi, dtype=float)
    # x_i minus its expected controller
    residual = state.nodes - assoc.weights @ state.controllers
    drift = float(np.sum(phi*residual))
    weighted = float(np.dot(masses.masses, np.sum(ybar**2, axis=1)))
    u = -_total_gain(float(gains.k0), drift, weighted, float(gains.eps_den), float(cap))*ybar
    if gains.u_max is not None:
        speed = np.linalg.norm(u, axis=1, keepdims=True)
        u = u*np.minimum(1.0, gains.u_max/np.maximum(speed, 1e-300))
    return u


def control_law(state, assoc, phi, gains, gamma, dt=None):
    """
    Controller velocities which keep the free energy non-increasing.

    With static nodes (``phi`` all zero) this reduces to :math:`u = -k_0 \\bar y`.

    :param state: :class:`~mobile_dcp.model.NetworkState`.
    :param assoc: :class:`~mobile_dcp.clustering.types.AssociationMatrix` for the state.
    :param phi: Array of shape ``(N, d)`` of node velocities.
    :param gains: :class:`ControllerGains`.
    :param gamma: Synchronization weight :math:`\\gamma`.
    :param dt: Euler step length the velocities are for. If given, the feed-forward gain is
        capped so that one step does not pass the optimal placement.
    :returns: Array of shape ``(M, d)``.
    """
    _, masses = posteriors_and_masses(assoc)
    cap = _gain_cap(state.num_nodes, state.num_controllers, gamma, dt)
    return _control(state, assoc, masses, y_bar(state, assoc, gamma), phi, gains, cap)


def lyapunov_rate(y_bar, masses, k0):
    """
    Analytic bound on the rate of change of the free energy, :math:`-2 k_0 \\sum_j p(y_j) \\|\\bar y_j\\|^2`.

    :param y_bar: Array of shape ``(M, d)``.
    :param masses: :class:`~mobile_dcp.clustering.types.ClusterMasses`.
    :param k0: Gain :math:`k_0`.
    """
    ybar = np.atleast_2d(np.asarray(y_bar, dtype=float))
    return -2.0*k0*float(np.dot(masses.masses, np.sum(ybar**2, axis=1)))


@njit(cache=True, nogil=True)
def _rcp_update(nodes, controllers, start, end, rate, t, T, gamma, k0, eps_den, u_max, cap, dt):
    weights, log_w, masses, means, delay, sync, entropy = association_sweep(nodes, controllers, T, gamma)
    n, d = nodes.shape
    m = controllers.shape[0]

    eta = 1.0 + gamma*m
    total = np.zeros(d)
    for j in range(m):
        for a in range(d):
            total[a] += controllers[j, a]
    ybar = np.empty((m, d))
    weighted = 0.0
    for j in range(m):
        s = 0.0
        for a in range(d):
            ybar[j, a] = n*(eta*controllers[j, a] - gamma*total[a] - means[j, a])
            s += ybar[j, a]*ybar[j, a]
        weighted += masses[j]*s

    # phi_i . (x_i - sum_j p(y_j|x_i) y_j)
    drift = 0.0
    for i in range(n):
        decay = math.exp(-rate[i]*t)
        for a in range(d):
            expected = 0.0
            for j in range(m):
                expected += weights[i, j]*controllers[j, a]
            drift += -rate[i]*(start[i, a] - end[i, a])*decay*(nodes[i, a] - expected)

    gain = _total_gain(k0, drift, weighted, eps_den, cap)
    u = np.empty((m, d))
    moved = np.empty((m, d))
    for j in range(m):
        speed = 0.0
        for a in range(d):
            u[j, a] = -gain*ybar[j, a]
            speed += u[j, a]*u[j, a]
        speed = math.sqrt(speed)
        scale = u_max/speed if speed > u_max else 1.0
        for a in range(d):
            u[j, a] *= scale
            moved[j, a] = controllers[j, a] + u[j, a]*dt
    return moved, u, ybar, weights, log_w, masses, delay, sync, entropy, weighted, drift


def _advance(state, spec, T, gains, gamma, dt):
    if spec.start.shape != state.nodes.shape:
        raise ValueError(f"mobility is for {spec.start.shape[0]} nodes, the state has {state.num_nodes}")
    u_max = np.inf if gains.u_max is None else gains.u_max
    cap = _gain_cap(state.num_nodes, state.num_controllers, gamma, dt)
    return _rcp_update(state.nodes, state.controllers, spec.start, spec.end, spec.rate, float(state.t),
                       float(T), float(gamma), float(gains.k0), float(gains.eps_den), float(u_max), cap, float(dt))


def _step_result(raw, T, gamma, gains):
    moved, u, ybar, weights, log_w, masses, delay, sync, entropy, weighted, drift = raw
    if drift > 0 and weighted < gains.eps_den:
        _log.debug(f"Control law regularizer dominates the denominator ({weighted:.3g} < {gains.eps_den:.3g}).")
    return RcpStepResult(
        controllers=moved,
        u=u,
        y_bar=ybar,
        lyapunov_rate=lyapunov_rate(ybar, ClusterMasses(masses), gains.k0),
        cost=CostBreakdown(
            delay=delay,
            sync=sync,
            entropy=entropy,
            free_energy=delay + gamma*sync - T*entropy,
            temperature=float(T),
            gamma=float(gamma),
        ),
        assoc=AssociationMatrix(weights, log_w),
    )


def rcp_step(state, spec, T, gains, gamma, dt):
    """
    Advance the controllers by one explicit Euler step.

    The association weights are recomputed at the current temperature, then the controllers
    move by :math:`u \\Delta t`, with :math:`u` from :func:`control_law` capped for ``dt``.
    Nodes are not advanced, their positions come from the closed form mobility model.

    :param state: :class:`~mobile_dcp.model.NetworkState` at the start of the step.
    :param spec: :class:`~mobile_dcp.model.MobilitySpec` giving the node velocities.
    :param T: Temperature.
    :param gains: :class:`ControllerGains`.
    :param gamma: Synchronization weight :math:`\\gamma`.
    :param dt: Step length, in seconds.
    :returns: :class:`RcpStepResult`.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if not T > 0:
        raise ValueError("temperature must be positive")
    return _step_result(_advance(state, spec, T, gains, gamma, dt), T, gamma, gains)


class RCPPlacer(Placer):
    """
    Real-time controller placement, one control law integration step per snapshot.

    Each trace row holds the controllers, cost and temperature at the start of the step, and the
    ``tracking_error`` column defaults to the distance to the optimal placement for the current
    association weights.
    The recorded wall time covers the association sweep, the control law and the Euler step.
    Whenever the temperature is about to drop, controllers which (numerically) coincide are
    separated by a jitter of at most ``split_radius``, otherwise they could never part.
    At a fixed temperature the controllers are left untouched.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param gains: :class:`ControllerGains`, by default with the scenario's ``k0``.
    :param schedule: :class:`AnnealSchedule`, by default from the scenario's ``t0_temperature``
        and ``alpha``.
    :param initial_controllers: Optional ``(M, d)`` starting placement. By default the
        controllers start within a small radius of the centroid of the node start positions.
    :param split_radius: Separation below which controllers are jittered apart, or ``None`` to
        disable.
    :param zero_walltime: Record all wall times as zero.
    """

    algorithm = Algorithm.RCP

    def __init__(self, scenario, gains=None, schedule=None, initial_controllers=None, split_radius=SPLIT_RADIUS, zero_walltime=False):
        super().__init__(scenario, zero_walltime=zero_walltime)

        self.gains = gains if gains is not None else ControllerGains(k0=scenario.k0)
        """The :class:`ControllerGains` used."""

        self.schedule = schedule if schedule is not None else AnnealSchedule(t0=scenario.t0_temperature, alpha=scenario.alpha)
        """The :class:`AnnealSchedule` used."""

        self.split_radius = split_radius
        """Separation below which controllers are jittered apart."""

        self._initial = None
        if initial_controllers is not None:
            self._initial = np.array(initial_controllers, dtype=float)
            if self._initial.shape != (scenario.num_controllers, scenario.dimension):
                raise ValueError(f"initial controllers must have shape {(scenario.num_controllers, scenario.dimension)}")

        self._rng = None
        self._y = None
        self._T = None


    def config(self):
        return {
            "gains": asdict(self.gains),
            "schedule": asdict(self.schedule),
            "split_radius": self.split_radius,
            "initialization": "given" if self._initial is not None else "centroid",
        }


    def _reset(self):
        sc = self.scenario
        self._rng = np.random.default_rng(sc.seed)
        if self._initial is not None:
            self._y = self._initial.copy()
        else:
            self._y = initial_controllers(sc.mobility.start, sc.num_controllers, self._rng)
        self._T = self.schedule.t0


    def _solve_snapshot(self, step, t, nodes, dt):
        sc = self.scenario
        state = NetworkState(t, nodes, self._y)
        T = self._T
        raw, wall_us = timed(_advance, state, sc.mobility, T, self.gains, sc.gamma, dt)
        result = _step_result(raw, T, sc.gamma, self.gains)
        residual = fixed_point_residual(state, result.assoc, sc.gamma)
        self._log.debug(f"Step {step}: T={T:.4g}, F={result.cost.free_energy:.6g}, dF/dt<={result.lyapunov_rate:.4g}.")

        check_finite(f"controllers after step {step}", result.controllers, result.u)
        self._y = result.controllers
        self._T = self.schedule.next(T)
        if self.split_radius and self._T < T:
            self._y, count = separate_coincident(self._y, self._rng, self.split_radius)
            if count:
                self._log.debug(f"Separated {count} coincident controllers after step {step}.")
        return Snapshot(controllers=state.controllers, cost=result.cost, temperature=T, wall_us=wall_us, residual=residual)


def run_rcp(scenario, gains=None, schedule=None, initial_controllers=None, reference=None, zero_walltime=False):
    """
    Run the real-time placement algorithm over a scenario.

    This is a convenience wrapper around :class:`RCPPlacer`.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param gains: Optional :class:`ControllerGains`.
    :param schedule: Optional :class:`AnnealSchedule`.
    :param initial_controllers: Optional ``(M, d)`` starting placement.
    :param reference: Optional sequence of reference placements, one per step, for the
        ``tracking_error`` column.
    :param zero_walltime: Record all wall times as zero.
    :returns: :class:`~mobile_dcp.trace.RunTrace` with one row per step.
    """
    placer = RCPPlacer(scenario, gains=gains, schedule=schedule, initial_controllers=initial_controllers, zero_walltime=zero_walltime)
    return placer.run(reference=reference)
