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
Side by side comparison of the real-time and frame-by-frame algorithms, and inference time
benchmarks across network sizes.

Both algorithms of a comparison run one after the other on the same thread, so neither is
timed while the other competes for the processor.
Wall times cover the placement computation only, never file output.
"""

__all__ = ["ComparisonReport", "BenchResult", "compare_runs", "delay_series", "write_comparison",
           "speedup_grid", "scaling_ratio", "write_bench"]

import csv
from dataclasses import asdict, dataclass
import logging
from pathlib import Path

import numpy as np

from ..errors import ScenarioError
from ..metrics import timing_summary, total_delay
from ..model import NetworkState, node_positions
from ..placement import run_frame_by_frame, run_rcp
from .files import emit_csv, write_meta
from .generate import ScenarioGenConfig, generate_scenario
from .plotting import emit_bench_plot, emit_plot, emit_timing_plot

_log = logging.getLogger(__name__)

#: Network sizes of the default benchmark grid.
BENCH_SIZES = (50, 100, 500, 1000)

#: Controller counts of the default benchmark grid.
BENCH_CONTROLLERS = (3, 5, 10)


@dataclass(frozen=True)
class ComparisonReport:
    """
    Outcome of running both algorithms on the same scenario.

    :param scenario: The :class:`~mobile_dcp.scenario.Scenario` that was run.
    :param rcp: :class:`~mobile_dcp.trace.RunTrace` of the real-time algorithm, whose tracking
        error column is the distance to the frame-by-frame placements.
    :param frame: :class:`~mobile_dcp.trace.RunTrace` of the frame-by-frame baseline.
    :param rcp_delay: Total delay of the real-time placements at every step.
    :param frame_delay: Total delay of the frame-by-frame placements at every step.
    """
    scenario: object
    rcp: object
    frame: object
    rcp_delay: np.ndarray
    frame_delay: np.ndarray

    @property
    def tracking_error(self):
        """Distance of the real-time placements to the frame-by-frame ones, per step."""
        return self.rcp.column("tracking_error")

    @property
    def rcp_timing(self):
        """:func:`~mobile_dcp.metrics.timing_summary` of the real-time steps."""
        return timing_summary(self.rcp.column("wall_us"))

    @property
    def frame_timing(self):
        """:func:`~mobile_dcp.metrics.timing_summary` of the frame-by-frame solves."""
        return timing_summary(self.frame.column("wall_us"))

    @property
    def speedup(self):
        """Mean frame time divided by mean real-time step time, ``nan`` without timings."""
        rcp = self.rcp.column("wall_us").mean()
        return float(self.frame.column("wall_us").mean()/rcp) if rcp > 0 else float("nan")

    def summary(self, zero_walltime=False):
        """
        Dictionary of the headline numbers of the comparison.

        :param zero_walltime: Leave out the timing figures, for byte-deterministic output.
        """
        n = len(self.rcp)
        tenth = max(1, n//10)
        quarter = max(1, n//4)
        error = self.tracking_error
        result = {
            "steps": n,
            "tracking_error_first_tenth": float(error[:tenth].mean()),
            "tracking_error_last_tenth": float(error[-tenth:].mean()),
            "tracking_error_final": float(error[-1]),
            "rcp_delay_last_quarter": float(self.rcp_delay[-quarter:].mean()),
            "frame_delay_last_quarter": float(self.frame_delay[-quarter:].mean()),
        }
        if not zero_walltime:
            result["speedup"] = self.speedup
            result["rcp_timing"] = self.rcp_timing
            result["frame_timing"] = self.frame_timing
        return result


@dataclass(frozen=True)
class BenchResult:
    """
    Inference time statistics of both algorithms for one network size and controller count.
    """
    num_nodes: int
    num_controllers: int
    rcp_mean_ms: float
    rcp_std_ms: float
    frame_mean_ms: float
    frame_std_ms: float

    @property
    def speedup(self):
        """Mean frame time divided by mean real-time step time."""
        return self.frame_mean_ms/self.rcp_mean_ms


def delay_series(scenario, trace):
    """
    :func:`~mobile_dcp.metrics.total_delay` of every placement of a trace.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` the trace was run on.
    :param trace: :class:`~mobile_dcp.trace.RunTrace`.
    :returns: Array with one value per row.
    """
    return np.array([
        total_delay(NetworkState(r.t, node_positions(scenario.mobility, r.t), r.controllers), scenario.gamma)
        for r in trace.rows
    ])


def compare_runs(scenario, gains=None, schedule=None, frame_config=None, warm_start=False):
    """
    Run both algorithms on the same scenario and align their traces by step.

    The frame-by-frame baseline runs first, and its placements serve as the reference for the
    real-time algorithm's tracking error.

    :param scenario: :class:`~mobile_dcp.scenario.Scenario` to run.
    :param gains: Optional :class:`~mobile_dcp.placement.rcp.ControllerGains`.
    :param schedule: Optional :class:`~mobile_dcp.placement.rcp.AnnealSchedule`.
    :param frame_config: Optional :class:`~mobile_dcp.placement.frame.FrameSolverConfig`.
    :param warm_start: Warm start the frame-by-frame baseline.
    :returns: :class:`ComparisonReport`.
    """
    frame = run_frame_by_frame(scenario, config=frame_config, warm_start=warm_start)
    rcp = run_rcp(scenario, gains=gains, schedule=schedule, reference=frame.controllers())
    report = ComparisonReport(
        scenario=scenario,
        rcp=rcp,
        frame=frame,
        rcp_delay=delay_series(scenario, rcp),
        frame_delay=delay_series(scenario, frame),
    )
    _log.info(f"Comparison done, speedup {report.speedup:.3g}, final tracking error {report.tracking_error[-1]:.3g}.")
    return report


def write_comparison(report, out_dir, zero_walltime=False):
    """
    Write the traces, summary and plots of a comparison into a directory.

    The files written are ``rcp.csv`` and ``frame.csv`` (with their ``.meta.json`` sidecars),
    ``summary.json``, ``summary.svg`` and ``timing.svg``.

    :param report: :class:`ComparisonReport`.
    :param out_dir: Output directory, created if needed.
    :param zero_walltime: Zero all wall times, for byte-deterministic output.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as ex:
        raise ScenarioError(f"Unable to create output directory '{out}': {ex}") from ex
    rcp, frame = report.rcp, report.frame
    if zero_walltime:
        rcp, frame = rcp.without_walltime(), frame.without_walltime()
    emit_csv(rcp, out/"rcp.csv")
    emit_csv(frame, out/"frame.csv")
    write_meta(report.summary(zero_walltime=zero_walltime), out/"summary.json")
    labels = ["rcp", "frame"]
    emit_plot([rcp, frame], out/"summary.svg", labels=labels, mobility=report.scenario.mobility)
    emit_timing_plot([rcp, frame], out/"timing.svg", labels=labels)


def _bench_scenario(num_nodes, num_controllers, steps, seed):
    clusters = 5
    return generate_scenario(ScenarioGenConfig(
        num_clusters=clusters,
        nodes_per_cluster=max(1, num_nodes//clusters),
        num_controllers=num_controllers,
        seed=seed,
        steps=steps,
    ))


def speedup_grid(sizes=BENCH_SIZES, controllers=BENCH_CONTROLLERS, rcp_steps=50, frame_steps=5, seed=0):
    """
    Measure the inference times of both algorithms over a grid of network sizes and
    controller counts.

    The frame-by-frame solves are far slower, so fewer frames than real-time steps are timed.

    :param sizes: Network sizes :math:`N`, rounded down to a multiple of 5 clusters.
    :param controllers: Controller counts :math:`M`.
    :param rcp_steps: Number of real-time steps to time per grid point.
    :param frame_steps: Number of frames to time per grid point.
    :param seed: Seed for the generated scenarios.
    :returns: List of :class:`BenchResult`.
    """
    results = []
    for n in sizes:
        for m in controllers:
            scenario = _bench_scenario(n, m, rcp_steps, seed)
            rcp = timing_summary(run_rcp(scenario).column("wall_us"))
            frame = timing_summary(run_frame_by_frame(scenario.replace(steps=frame_steps)).column("wall_us"))
            result = BenchResult(
                num_nodes=scenario.num_nodes,
                num_controllers=m,
                rcp_mean_ms=rcp["mean_ms"],
                rcp_std_ms=rcp["std_ms"],
                frame_mean_ms=frame["mean_ms"],
                frame_std_ms=frame["std_ms"],
            )
            _log.info(f"N={result.num_nodes}, M={m}: rcp {result.rcp_mean_ms:.3g} ms, frame {result.frame_mean_ms:.3g} ms, speedup {result.speedup:.3g}.")
            results.append(result)
    return results


def scaling_ratio(small=250, large=1000, num_controllers=5, steps=100, seed=0, repeats=3):
    """
    Ratio of the mean real-time step times of a large and a small network.

    The per-step work is linear in :math:`N`, so the ratio should approach ``large/small`` once
    the fixed per-call cost is small against it.
    Each size is run ``repeats`` times and the fastest run counts.

    :param small: Smaller network size.
    :param large: Larger network size.
    :param num_controllers: Controller count :math:`M`.
    :param steps: Number of steps to time for each size.
    :param seed: Seed for the generated scenarios.
    :param repeats: Number of runs per size.
    """
    means = []
    for n in (small, large):
        scenario = _bench_scenario(n, num_controllers, steps, seed)
        best = np.inf
        for _ in range(max(1, repeats)):
            wall = run_rcp(scenario).column("wall_us")
            # First step includes one-off compilation and allocation costs
            best = min(best, wall[1:].mean() if wall.size > 1 else wall.mean())
        means.append(best)
    return float(means[1]/means[0])


def write_bench(results, out_dir):
    """
    Write benchmark results as ``bench.csv`` and ``bench.svg`` into a directory.

    :param results: Sequence of :class:`BenchResult`.
    :param out_dir: Output directory, created if needed.
    """
    if not results:
        raise ValueError("no benchmark results to write")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        with open(out/"bench.csv", "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(list(asdict(results[0]).keys()) + ["speedup"])
            for r in results:
                writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in asdict(r).values()]
                                + [format(r.speedup, ".17g")])
    except OSError as ex:
        raise ScenarioError(f"Unable to write benchmark results to '{out}': {ex}") from ex
    emit_bench_plot(results, out/"bench.svg")
