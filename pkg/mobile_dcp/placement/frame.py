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
Frame-by-frame placement by deterministic annealing.

Every snapshot of the network is solved from scratch as a static placement problem.
Starting at a high temperature, the association weights and the optimal centroids are
alternately recomputed until the controllers stop moving, then the temperature is lowered
geometrically and the alternation repeated, down to the temperature floor.
"""

__all__ = ["FrameSolverConfig", "FrameSolution", "solve_frame", "FramePlacer", "StaticPlacer",
           "run_frame_by_frame", "static_placement"]

from dataclasses import asdict, dataclass, field
import logging
import time
import warnings

import numpy as np

from ..clustering import association_sweep, free_energy, gibbs_associations, theta_solve
from ..enums import Algorithm
from ..errors import NumericalError
from ..metrics import fixed_point_residual
from ..model import NetworkState
from ..utils import default_start_temperature, timed
from .placer import Placer, Snapshot, SPLIT_RADIUS, initial_controllers, separate_coincident

_log = logging.getLogger(__name__)

_POLICIES = ("continue", "warn", "raise")


@dataclass(frozen=True)
class FrameSolverConfig:
    """
    Configuration of the per-snapshot annealing solver.

    The ``on_increase`` parameter selects the action to take if the free energy increases
    between two inner iterations at the same temperature by more than ``descent_tol``.
    If set to ``"continue"``, the increase is only counted in
    :attr:`FrameSolution.descent_violations`.
    If set to ``"warn"`` (the default), the behaviour is identical, but a warning is emitted.
    To instead abort the solve and raise a
    :class:`~mobile_dcp.errors.NumericalError`, set to ``"raise"``.

    :param t0: Starting temperature.
    :param alpha: Temperature decay factor per level, in (0, 1).
    :param t_min: Final temperature.
    :param inner_tol: Largest controller displacement at which the inner iterations stop.
    :param max_inner_iters: Maximum number of inner iterations per temperature level.
    :param split_radius: Separation below which controllers are jittered apart at the start
        of each temperature level, or ``None`` to disable.
    :param on_increase: Action to take if the free energy increases.
    :param descent_tol: Slack allowed before an increase counts.
    """
    t0: float = field(default_factory=default_start_temperature)
    alpha: float = 0.9
    t_min: float = 1e-6
    inner_tol: float = 1e-6
    max_inner_iters: int = 100
    split_radius: float = SPLIT_RADIUS
    on_increase: str = "warn"
    descent_tol: float = 1e-9

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must be in the open interval (0, 1)")
        if not 0 < self.t_min <= self.t0:
            raise ValueError("need 0 < t_min <= t0")
        if not self.inner_tol > 0:
            raise ValueError("inner_tol must be positive")
        if int(self.max_inner_iters) < 1:
            raise ValueError("max_inner_iters must be at least 1")
        if self.on_increase not in _POLICIES:
            raise ValueError(f"on_increase must be one of {_POLICIES}")

    def levels(self, t_start=None):
        """
        Temperatures of the annealing levels, from ``t_start`` (default :attr:`t0`) to the floor.
        """
        T = self.t0 if t_start is None else max(t_start, self.t_min)
        temps = [T]
        while T > self.t_min:
            T = max(self.alpha*T, self.t_min)
            temps.append(T)
        return temps


@dataclass(frozen=True)
class FrameSolution:
    """
    Placement found for a single snapshot.

    :param controllers: Array of shape ``(M, d)``.
    :param assoc: Association weights at the final temperature.
    :param cost: :class:`~mobile_dcp.clustering.types.CostBreakdown` at the final temperature.
    :param iterations: Total number of inner iterations over all levels.
    :param wall_time: Solve time, in seconds.
    :param free_energy_trace: Free energy at every inner iteration, in order.
    :param descent_violations: Number of free energy increases within a temperature level.
    """
    controllers: np.ndarray
    assoc: object
    cost: object
    iterations: int
    wall_time: float
    free_energy_trace: tuple = ()
    descent_violations: int = 0


def _increase(config, message):
    if config.on_increase == "raise":
        raise NumericalError(message)
    if config.on_increase == "warn":
        warnings.warn(message)


def solve_frame(nodes, M, gamma, config=None, seed=0, initial=None, t_start=None):
    """
    Place ``M`` controllers for a fixed set of nodes by deterministic annealing.

    Unless ``initial`` is given, controllers start within a small radius of the node centroid,
    drawn from a generator seeded with ``seed``, so the result is deterministic.
    The returned controllers are those of the last centroid update, at the final temperature.

    :param nodes: Array of shape ``(N, d)``.
    :param M: Number of controllers, ``1 <= M <= N``.
    :param gamma: Synchronization weight :math:`\\gamma`.
    :param config: :class:`FrameSolverConfig`, defaults if ``None``.
    :param seed: Seed (or :class:`numpy.random.SeedSequence`) for the random choices.
    :param initial: Optional ``(M, d)`` starting placement.
    :param t_start: Optional starting temperature instead of ``config.t0``.
    :returns: :class:`FrameSolution`.
    """
    config = FrameSolverConfig() if config is None else config
    start = time.perf_counter_ns()
    rng = np.random.default_rng(seed)
    nodes = np.asarray(nodes, dtype=float)
    if initial is None:
        y = initial_controllers(nodes, M, rng)
    else:
        y = np.array(initial, dtype=float)
    state = NetworkState(0.0, nodes, y)
    nodes = state.nodes
    trace = []
    violations = 0
    iterations = 0
    temps = config.levels(t_start)
    for T in temps:
        if config.split_radius:
            y, _ = separate_coincident(y, rng, config.split_radius)
        previous = None
        for _ in range(int(config.max_inner_iters)):
            _, _, _, means, delay, sync, entropy = association_sweep(nodes, y, T, gamma)
            F = delay + gamma*sync - T*entropy
            trace.append(F)
            if previous is not None and F > previous + config.descent_tol:
                violations += 1
                _increase(config, "Free energy increased between inner iterations of the frame solver.")
            previous = F
            y_new = theta_solve(means, gamma)
            iterations += 1
            moved = float(np.max(np.linalg.norm(y_new - y, axis=1)))
            y = y_new
            if moved < config.inner_tol:
                break
        _log.debug(f"Level T={T:.4g} done after {iterations} total inner iterations.")
    state = state.with_controllers(y)
    assoc = gibbs_associations(state, temps[-1], gamma)
    cost = free_energy(state, assoc, temps[-1], gamma)
    if violations:
        _log.warning(f"Free energy increased {violations} times during a frame solve (gamma={gamma:g}).")
    return FrameSolution(
        controllers=state.controllers,
        assoc=assoc,
        cost=cost,
        iterations=iterations,
        wall_time=(time.perf_counter_ns() - start)/1e9,
        free_energy_trace=tuple(trace),
        descent_violations=violations,
    )


class FramePlacer(Placer):
    """
    Frame-by-frame placement: every snapshot solved from scratch with :func:`solve_frame`.

    With the default cold start, every frame uses the same seed and ignores the previous
    solution.
    With ``warm_start=True`` each frame starts from the previous frame's placement at the
    final temperature, which forces sequential frame order.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param config: :class:`FrameSolverConfig`, by default with the scenario's
        ``t0_temperature``.
    :param warm_start: Start each frame from the previous solution.
    :param zero_walltime: Record all wall times as zero.
    """

    algorithm = Algorithm.FRAME

    def __init__(self, scenario, config=None, warm_start=False, zero_walltime=False):
        super().__init__(scenario, zero_walltime=zero_walltime)

        self.solver_config = config if config is not None else FrameSolverConfig(t0=scenario.t0_temperature)
        """The :class:`FrameSolverConfig` used for every frame."""

        self.warm_start = warm_start
        """``True`` if frames start from the previous solution."""

        self._previous = None


    def config(self):
        return {
            "solver": asdict(self.solver_config),
            "warm_start": self.warm_start,
        }


    def _reset(self):
        self._previous = None


    def _solve(self, nodes):
        sc = self.scenario
        if self.warm_start and self._previous is not None:
            return solve_frame(nodes, sc.num_controllers, sc.gamma, self.solver_config, seed=sc.seed,
                               initial=self._previous, t_start=self.solver_config.t_min)
        return solve_frame(nodes, sc.num_controllers, sc.gamma, self.solver_config, seed=sc.seed)


    def _solve_snapshot(self, step, t, nodes, dt):
        solution, wall_us = timed(self._solve, nodes)
        self._previous = solution.controllers
        state = NetworkState(t, nodes, solution.controllers)
        self._log.debug(f"Frame {step}: {solution.iterations} inner iterations, F={solution.cost.free_energy:.6g}.")
        return Snapshot(
            controllers=solution.controllers,
            cost=solution.cost,
            temperature=solution.cost.temperature,
            wall_us=wall_us,
            residual=fixed_point_residual(state, solution.assoc, self.scenario.gamma),
        )


class StaticPlacer(FramePlacer):
    """
    Static placement: the first snapshot is solved with :func:`solve_frame` and the placement
    is then held for the rest of the run.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param config: :class:`FrameSolverConfig`.
    :param zero_walltime: Record all wall times as zero.
    """

    algorithm = Algorithm.STATIC

    def __init__(self, scenario, config=None, zero_walltime=False):
        super().__init__(scenario, config=config, warm_start=False, zero_walltime=zero_walltime)


    def config(self):
        return {"solver": asdict(self.solver_config)}


    def _solve_snapshot(self, step, t, nodes, dt):
        if self._previous is None:
            return super()._solve_snapshot(step, t, nodes, dt)
        sc = self.scenario
        T = self.solver_config.t_min
        state = NetworkState(t, nodes, self._previous)
        assoc, wall_us = timed(gibbs_associations, state, T, sc.gamma)
        return Snapshot(
            controllers=self._previous,
            cost=free_energy(state, assoc, T, sc.gamma),
            temperature=T,
            wall_us=wall_us,
            residual=fixed_point_residual(state, assoc, sc.gamma),
        )


def run_frame_by_frame(scenario, config=None, warm_start=False, reference=None, zero_walltime=False):
    """
    Run the frame-by-frame baseline over a scenario.

    This is a convenience wrapper around :class:`FramePlacer`.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param config: Optional :class:`FrameSolverConfig`.
    :param warm_start: Start each frame from the previous solution.
    :param reference: Optional sequence of reference placements, one per step.
    :param zero_walltime: Record all wall times as zero.
    :returns: :class:`~mobile_dcp.trace.RunTrace` with one row per step.
    """
    placer = FramePlacer(scenario, config=config, warm_start=warm_start, zero_walltime=zero_walltime)
    return placer.run(reference=reference)


def static_placement(scenario, config=None, reference=None, zero_walltime=False):
    """
    Solve the first snapshot and hold that placement for the whole run.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param config: Optional :class:`FrameSolverConfig`.
    :param reference: Optional sequence of reference placements, one per step.
    :param zero_walltime: Record all wall times as zero.
    :returns: :class:`~mobile_dcp.trace.RunTrace` with one row per step.
    """
    return StaticPlacer(scenario, config=config, zero_walltime=zero_walltime).run(reference=reference)
