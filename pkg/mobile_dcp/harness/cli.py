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
Command line interface.

Subcommands are registered with the :func:`command` decorator, which maps a subcommand name
to the function running it and to the function declaring its arguments.
:func:`main` returns one of the :class:`~mobile_dcp.enums.ExitCode` values.
"""

__all__ = ["main", "command", "commands"]

import argparse
import logging

from .. import __version__
from ..enums import Algorithm, ExitCode
from ..errors import NumericalError, ScenarioError
from ..placement import (ControllerGains, FramePlacer, FrameSolverConfig, RCPPlacer, StaticPlacer)
from ..scenario import load_scenario, save_scenario
from .compare import (BENCH_CONTROLLERS, BENCH_SIZES, compare_runs, scaling_ratio, speedup_grid,
                      write_bench, write_comparison)
from .files import emit_csv, read_csv
from .generate import ScenarioGenConfig, generate_scenario
from .plotting import emit_plot, emit_timing_plot

_log = logging.getLogger(__name__)

#: Registered subcommands, mapping name to (function, arguments function, help text).
commands = {}


def command(name, help, arguments=None):
    """
    Register a function as a subcommand.

    :param name: Subcommand name.
    :param help: One line description.
    :param arguments: Optional function taking an :class:`argparse.ArgumentParser` and adding
        the subcommand's arguments to it.
    """
    def wrapper(func):
        if name in commands:
            raise ValueError(f"Duplicate command: {name}")
        commands[name] = (func, arguments, help)
        return func
    return wrapper


def _overrides(parser):
    group = parser.add_argument_group("scenario overrides")
    group.add_argument("--seed", type=int, help="Random seed.")
    group.add_argument("--gamma", type=float, help="Synchronization weight.")
    group.add_argument("--k0", type=float, help="Control law gain.")
    group.add_argument("--alpha", type=float, help="Temperature decay per step.")
    group.add_argument("--t0", type=float, help="Starting temperature.")
    group.add_argument("--steps", type=int, help="Number of time steps.")
    group.add_argument("--horizon", type=float, help="Time horizon, in seconds.")


def _algorithm_flags(parser):
    parser.add_argument("--u-max", type=float, help="Speed cap of the real-time controllers.")
    parser.add_argument("--warm-start", action="store_true", help="Warm start the frame-by-frame solver.")
    parser.add_argument("--zero-walltime", action="store_true", help="Write all wall times as zero.")


def _scenario(args):
    scenario = load_scenario(args.scenario)
    return scenario.replace(seed=args.seed, gamma=args.gamma, k0=args.k0, alpha=args.alpha,
                            t0_temperature=args.t0, steps=args.steps, horizon=args.horizon)


def _gen_arguments(parser):
    parser.add_argument("--out", required=True, help="Scenario file to write.")
    parser.add_argument("--clusters", type=int, default=4, help="Number of node clusters.")
    parser.add_argument("--nodes-per-cluster", type=int, default=50, help="Nodes in each cluster.")
    parser.add_argument("--spread", type=float, default=1.0, help="Typical cluster standard deviation.")
    parser.add_argument("--controllers", type=int, default=4, help="Number of controllers.")
    parser.add_argument("--sigma", type=float, default=0.5, help="Rayleigh parameter of the node rates.")
    parser.add_argument("--dimension", type=int, default=2, help="Number of spatial dimensions.")
    parser.add_argument("--static", action="store_true", help="Nodes do not move.")
    parser.add_argument("--seed", type=int, default=0, help="Random seed.")
    parser.add_argument("--gamma", type=float, default=0.0, help="Synchronization weight.")
    parser.add_argument("--k0", type=float, help="Control law gain, by default derived from N and dt.")
    parser.add_argument("--alpha", type=float, help="Temperature decay per step, by default reaching the floor half way.")
    parser.add_argument("--t0", type=float, help="Starting temperature.")
    parser.add_argument("--steps", type=int, default=200, help="Number of time steps.")
    parser.add_argument("--horizon", type=float, default=10.0, help="Time horizon, in seconds.")


@command("gen", "Generate a random scenario file.", _gen_arguments)
def _gen(args):
    config = ScenarioGenConfig(
        num_clusters=args.clusters,
        nodes_per_cluster=args.nodes_per_cluster,
        cluster_spread=args.spread,
        num_controllers=args.controllers,
        rayleigh_sigma=args.sigma,
        seed=args.seed,
        horizon=args.horizon,
        steps=args.steps,
        gamma=args.gamma,
        k0=args.k0,
        alpha=args.alpha,
        t0_temperature=args.t0,
        dimension=args.dimension,
        static=args.static,
    )
    save_scenario(generate_scenario(config), args.out)


def _run_arguments(parser):
    parser.add_argument("--algo", required=True, choices=[a.value for a in Algorithm], help="Placement algorithm.")
    parser.add_argument("--scenario", required=True, help="Scenario file to run.")
    parser.add_argument("--out", required=True, help="Trace CSV to write.")
    _algorithm_flags(parser)
    _overrides(parser)


@command("run", "Run one placement algorithm over a scenario.", _run_arguments)
def _run(args):
    scenario = _scenario(args)
    algorithm = Algorithm(args.algo)
    frame_config = FrameSolverConfig(t0=scenario.t0_temperature)
    if algorithm == Algorithm.RCP:
        placer = RCPPlacer(scenario, gains=ControllerGains(k0=scenario.k0, u_max=args.u_max), zero_walltime=args.zero_walltime)
    elif algorithm == Algorithm.FRAME:
        placer = FramePlacer(scenario, config=frame_config, warm_start=args.warm_start, zero_walltime=args.zero_walltime)
    else:
        placer = StaticPlacer(scenario, config=frame_config, zero_walltime=args.zero_walltime)
    _log.info(f"Running {algorithm.description.lower()}.")
    emit_csv(placer.run(), args.out)


def _compare_arguments(parser):
    parser.add_argument("--scenario", required=True, help="Scenario file to run.")
    parser.add_argument("--out-dir", required=True, help="Directory to write the results into.")
    _algorithm_flags(parser)
    _overrides(parser)


@command("compare", "Run both algorithms on a scenario and compare them.", _compare_arguments)
def _compare(args):
    scenario = _scenario(args)
    report = compare_runs(
        scenario,
        gains=ControllerGains(k0=scenario.k0, u_max=args.u_max),
        frame_config=FrameSolverConfig(t0=scenario.t0_temperature),
        warm_start=args.warm_start,
    )
    write_comparison(report, args.out_dir, zero_walltime=args.zero_walltime)
    if not args.zero_walltime:
        print(f"speedup: {report.speedup:.3g}")


def _plot_arguments(parser):
    parser.add_argument("--trace", required=True, nargs="+", help="Trace CSV files to plot.")
    parser.add_argument("--out", required=True, help="SVG file to write.")
    parser.add_argument("--kind", choices=["summary", "timing"], default="summary", help="Kind of plot.")
    parser.add_argument("--scenario", help="Scenario file, to show the node positions.")


@command("plot", "Plot one or more traces as SVG.", _plot_arguments)
def _plot(args):
    traces = [read_csv(path) for path in args.trace]
    if args.kind == "timing":
        emit_timing_plot(traces, args.out)
    else:
        mobility = load_scenario(args.scenario).mobility if args.scenario else None
        emit_plot(traces, args.out, mobility=mobility)


def _bench_arguments(parser):
    parser.add_argument("--out-dir", required=True, help="Directory to write the results into.")
    parser.add_argument("--sizes", type=int, nargs="+", default=list(BENCH_SIZES), help="Network sizes.")
    parser.add_argument("--controllers", type=int, nargs="+", default=list(BENCH_CONTROLLERS), help="Controller counts.")
    parser.add_argument("--rcp-steps", type=int, default=50, help="Real-time steps timed per grid point.")
    parser.add_argument("--frame-steps", type=int, default=5, help="Frames timed per grid point.")
    parser.add_argument("--scaling", action="store_true", help="Also report the per-step scaling ratio from N=250 to N=1000.")
    parser.add_argument("--seed", type=int, default=0, help="Random seed.")


@command("bench", "Benchmark inference times across network sizes.", _bench_arguments)
def _bench(args):
    results = speedup_grid(args.sizes, args.controllers, rcp_steps=args.rcp_steps, frame_steps=args.frame_steps, seed=args.seed)
    write_bench(results, args.out_dir)
    for r in results:
        print(f"N={r.num_nodes:5d} M={r.num_controllers:3d}  rcp {r.rcp_mean_ms:9.3f} ms  frame {r.frame_mean_ms:9.3f} ms  speedup {r.speedup:7.2f}")
    if args.scaling:
        print(f"scaling ratio N=1000/N=250: {scaling_ratio(seed=args.seed):.3g}")


def _parser():
    parser = argparse.ArgumentParser(prog="mobile-dcp", description="Real-time dynamic controller placement simulator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Increase logging verbosity (repeatable).")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (func, arguments, help) in commands.items():
        sub = subparsers.add_parser(name, help=help, description=help)
        if arguments is not None:
            arguments(sub)
        sub.set_defaults(func=func)
    return parser


def main(argv=None):
    """
    Entry point of the ``mobile-dcp`` command.

    :param argv: Argument list, by default ``sys.argv[1:]``.
    :returns: Process exit code.
    """
    args = _parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except NumericalError as ex:
        _log.error(str(ex))
        return ExitCode.NUMERIC
    except (ScenarioError, ValueError) as ex:
        _log.error(str(ex))
        return ExitCode.INVALID
    return ExitCode.OK
