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
SVG rendering of run traces.

Figures are drawn with the object oriented matplotlib interface (no global pyplot state), and
written with a fixed ``svg.hashsalt`` and without a date stamp, so identical traces give
identical files.
"""

__all__ = ["emit_plot", "emit_timing_plot", "emit_bench_plot"]

import logging

import matplotlib
from matplotlib.figure import Figure
import numpy as np

from ..errors import ScenarioError

_log = logging.getLogger(__name__)

_RC = {
    "svg.hashsalt": "mobile_dcp",
    "svg.fonttype": "path",
    "path.simplify": False,
}


def _labels(traces, labels):
    if labels is not None:
        if len(labels) != len(traces):
            raise ValueError("need one label per trace")
        return list(labels)
    return [t.header.get("algorithm", f"trace {i}") for i, t in enumerate(traces)]


def _save(fig, path):
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as ex:
        raise ScenarioError(f"Unable to write plot '{path}': {ex}") from ex
    _log.info(f"Wrote plot to {path}.")


def _delay(trace):
    gamma = trace.header.get("scenario", {}).get("gamma", 0.0)
    return trace.column("d1") + gamma*trace.column("d2")


def _trajectories(ax, traces, labels, mobility):
    if mobility is not None:
        start = np.atleast_2d(mobility.start)
        end = np.atleast_2d(mobility.end)
        if start.shape[1] >= 2:
            ax.scatter(start[:, 0], start[:, 1], s=4, color="0.75", label="node start")
            ax.scatter(end[:, 0], end[:, 1], s=4, color="0.45", marker="x", label="node end")
    for trace, label in zip(traces, labels):
        y = trace.controllers()
        for j in range(trace.num_controllers):
            if trace.dimension >= 2:
                line, = ax.plot(y[:, j, 0], y[:, j, 1], linewidth=1, label=label if j == 0 else None)
                ax.plot(y[-1, j, 0], y[-1, j, 1], "o", markersize=3, color=line.get_color())
            else:
                ax.plot(trace.column("t"), y[:, j, 0], linewidth=1, label=label if j == 0 else None)
    ax.set_title("Controller trajectories")
    ax.legend(fontsize="small")


def emit_plot(traces, path, labels=None, mobility=None):
    """
    Summary plot of one or more traces.

    The four panels show the controller trajectories (over faded node start and end positions
    if ``mobility`` is given), the tracking error, the delay cost :math:`D_1 + \\gamma D_2` and
    the distribution of per-step compute times.

    :param traces: Sequence of :class:`~mobile_dcp.trace.RunTrace`.
    :param path: Destination SVG path.
    :param labels: Optional sequence of legend labels, by default the traces' algorithms.
    :param mobility: Optional :class:`~mobile_dcp.model.MobilitySpec` of the nodes.
    """
    traces = list(traces)
    if not traces:
        raise ValueError("no traces to plot")
    labels = _labels(traces, labels)
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(11, 9))
        axes = fig.subplots(2, 2)
        _trajectories(axes[0, 0], traces, labels, mobility)
        for trace, label in zip(traces, labels):
            axes[0, 1].plot(trace.column("t"), trace.column("tracking_error"), linewidth=1, label=label)
            axes[1, 0].plot(trace.column("t"), _delay(trace), linewidth=1, label=label)
        axes[0, 1].set_title("Tracking error")
        axes[0, 1].set_xlabel("t (s)")
        axes[1, 0].set_title("Delay cost")
        axes[1, 0].set_xlabel("t (s)")
        axes[1, 1].boxplot([t.column("wall_us")/1000.0 for t in traces])
        axes[1, 1].set_xticks(range(1, len(traces) + 1), labels)
        axes[1, 1].set_title("Compute time per step (ms)")
        for ax in (axes[0, 1], axes[1, 0]):
            ax.legend(fontsize="small")
        fig.tight_layout()
        _save(fig, path)


def emit_timing_plot(traces, path, labels=None):
    """
    Quartile box plot and empirical CDF of the per-step compute times.

    :param traces: Sequence of :class:`~mobile_dcp.trace.RunTrace`.
    :param path: Destination SVG path.
    :param labels: Optional sequence of legend labels.
    """
    traces = list(traces)
    if not traces:
        raise ValueError("no traces to plot")
    labels = _labels(traces, labels)
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(11, 4.5))
        box, cdf = fig.subplots(1, 2)
        times = [t.column("wall_us")/1000.0 for t in traces]
        box.boxplot(times)
        box.set_xticks(range(1, len(traces) + 1), labels)
        box.set_ylabel("ms")
        box.set_title("Compute time per step")
        for ms, label in zip(times, labels):
            ms = np.sort(ms)
            cdf.step(ms, np.arange(1, ms.size + 1)/ms.size, where="post", label=label)
        cdf.set_xlabel("ms")
        cdf.set_ylabel("fraction of steps")
        cdf.set_title("Compute time CDF")
        cdf.legend(fontsize="small")
        fig.tight_layout()
        _save(fig, path)


def emit_bench_plot(results, path):
    """
    Mean compute time per step against network size, one line per algorithm and controller
    count.

    :param results: Sequence of :class:`~mobile_dcp.harness.compare.BenchResult`.
    :param path: Destination SVG path.
    """
    results = list(results)
    if not results:
        raise ValueError("no benchmark results to plot")
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(7, 5))
        ax = fig.subplots()
        for m in sorted({r.num_controllers for r in results}):
            rows = sorted((r for r in results if r.num_controllers == m), key=lambda r: r.num_nodes)
            n = [r.num_nodes for r in rows]
            line, = ax.plot(n, [r.rcp_mean_ms for r in rows], "o-", label=f"rcp, M={m}")
            ax.plot(n, [r.frame_mean_ms for r in rows], "s--", color=line.get_color(), label=f"frame, M={m}")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("number of nodes N")
        ax.set_ylabel("mean compute time per step (ms)")
        ax.legend(fontsize="small")
        fig.tight_layout()
        _save(fig, path)
