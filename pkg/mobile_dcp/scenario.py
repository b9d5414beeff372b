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
Scenario description and the JSON scenario file format.

A scenario file is a UTF-8 JSON document:

.. code-block:: json

    {
      "alpha": 0.97,
      "dimension": 2,
      "gamma": 0.0,
      "horizon": 10.0,
      "k0": 0.05,
      "nodes": [{"start": [-0.5, 0.1], "end": [0.4, 0.2], "rate": 0.61}],
      "num_controllers": 1,
      "seed": 42,
      "steps": 200,
      "t0_temperature": 16.0
    }

The field names are part of the contract.
Unknown fields, at the top level or inside a node entry, are rejected with an error naming
the field.
Coordinates are used as given, so scenario files are expected to be normalized already (as
written by :func:`~mobile_dcp.harness.generate.generate_scenario`).
"""

__all__ = ["Scenario", "load_scenario", "save_scenario", "scenario_from_dict", "scenario_to_dict"]

from dataclasses import dataclass, fields, replace
import json
import logging
import math

import numpy as np

from .errors import ScenarioError
from .model import MobilitySpec

_log = logging.getLogger(__name__)

_TOP_FIELDS = ("dimension", "nodes", "num_controllers", "gamma", "k0", "t0_temperature",
               "alpha", "horizon", "steps", "seed")
_NODE_FIELDS = ("start", "end", "rate")


@dataclass(frozen=True)
class Scenario:
    """
    A complete simulation scenario: node mobility plus run parameters.

    :param mobility: :class:`~mobile_dcp.model.MobilitySpec` of the nodes.
    :param num_controllers: Number of controllers :math:`M`.
    :param gamma: Synchronization weight :math:`\\gamma \\ge 0`.
    :param k0: Control law gain :math:`k_0 > 0`.
    :param t0_temperature: Starting temperature.
    :param alpha: Temperature decay per step, in (0, 1).
    :param horizon: Time horizon :math:`\\tau`, in seconds.
    :param steps: Number of time steps :math:`n`.
    :param seed: Unsigned 64 bit seed for all random choices of a run.
    """
    mobility: MobilitySpec
    num_controllers: int
    gamma: float = 0.0
    k0: float = 1.0
    t0_temperature: float = 16.0
    alpha: float = 0.95
    horizon: float = 10.0
    steps: int = 100
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.mobility, MobilitySpec):
            raise ScenarioError("mobility must be a MobilitySpec")
        if not (1 <= int(self.num_controllers) <= self.mobility.num_nodes):
            raise ScenarioError(f"num_controllers must be between 1 and the number of nodes ({self.mobility.num_nodes})")
        for name in ("gamma", "k0", "t0_temperature", "alpha", "horizon"):
            if not math.isfinite(getattr(self, name)):
                raise ScenarioError(f"{name} must be finite")
        if self.gamma < 0:
            raise ScenarioError("gamma must be non-negative")
        if self.k0 <= 0:
            raise ScenarioError("k0 must be positive")
        if self.t0_temperature <= 0:
            raise ScenarioError("t0_temperature must be positive")
        if not 0 < self.alpha < 1:
            raise ScenarioError("alpha must be in the open interval (0, 1)")
        if self.horizon <= 0:
            raise ScenarioError("horizon must be positive")
        if int(self.steps) < 1:
            raise ScenarioError("steps must be at least 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ScenarioError("seed must be an unsigned 64 bit integer")
        object.__setattr__(self, "num_controllers", int(self.num_controllers))
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "seed", int(self.seed))
        for name in ("gamma", "k0", "t0_temperature", "alpha", "horizon"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def dimension(self):
        """Number of spatial dimensions :math:`d`."""
        return self.mobility.dimension

    @property
    def num_nodes(self):
        """Number of network nodes :math:`N`."""
        return self.mobility.num_nodes

    @property
    def dt(self):
        """Integration time step :math:`\\Delta t = \\tau/n`."""
        return self.horizon/self.steps

    def replace(self, **overrides):
        """
        Return a copy with some parameters replaced.

        Parameters given as ``None`` are left unchanged, which suits optional command line flags.
        """
        names = {f.name for f in fields(self)}
        for name in overrides:
            if name not in names:
                raise ScenarioError(f"Unknown scenario parameter '{name}'")
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def config(self):
        """
        Dictionary of the run parameters, without the per-node data.
        """
        return {
            "dimension": self.dimension,
            "num_nodes": self.num_nodes,
            "num_controllers": self.num_controllers,
            "gamma": self.gamma,
            "k0": self.k0,
            "t0_temperature": self.t0_temperature,
            "alpha": self.alpha,
            "horizon": self.horizon,
            "steps": self.steps,
            "seed": self.seed,
        }


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"Field '{name}' must be a number")
    return value


def _integer(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"Field '{name}' must be an integer")
    return value


def scenario_from_dict(data):
    """
    Build a :class:`Scenario` from a decoded scenario document.

    :param data: Dictionary with the scenario file fields.
    :returns: :class:`Scenario`.
    """
    if not isinstance(data, dict):
        raise ScenarioError("Scenario document must be a JSON object")
    for key in data:
        if key not in _TOP_FIELDS:
            raise ScenarioError(f"Unknown field '{key}' in scenario")
    for key in _TOP_FIELDS:
        if key not in data:
            raise ScenarioError(f"Missing field '{key}' in scenario")
    dimension = _integer(data["dimension"], "dimension")
    if dimension < 1:
        raise ScenarioError("Field 'dimension' must be at least 1")
    nodes = data["nodes"]
    if not isinstance(nodes, list) or len(nodes) == 0:
        raise ScenarioError("Field 'nodes' must be a non-empty array")
    start, end, rate = [], [], []
    for i, node in enumerate(nodes):
        if not isinstance(node, dict):
            raise ScenarioError(f"Node {i} must be a JSON object")
        for key in node:
            if key not in _NODE_FIELDS:
                raise ScenarioError(f"Unknown field '{key}' in node {i}")
        for key in _NODE_FIELDS:
            if key not in node:
                raise ScenarioError(f"Missing field '{key}' in node {i}")
        for key in ("start", "end"):
            if not isinstance(node[key], list) or len(node[key]) != dimension:
                raise ScenarioError(f"Field '{key}' of node {i} must be an array of {dimension} numbers")
            for v in node[key]:
                _number(v, key)
        start.append(node["start"])
        end.append(node["end"])
        rate.append(_number(node["rate"], "rate"))
    return Scenario(
        mobility=MobilitySpec(np.array(start, dtype=float), np.array(end, dtype=float), np.array(rate, dtype=float)),
        num_controllers=_integer(data["num_controllers"], "num_controllers"),
        gamma=_number(data["gamma"], "gamma"),
        k0=_number(data["k0"], "k0"),
        t0_temperature=_number(data["t0_temperature"], "t0_temperature"),
        alpha=_number(data["alpha"], "alpha"),
        horizon=_number(data["horizon"], "horizon"),
        steps=_integer(data["steps"], "steps"),
        seed=_integer(data["seed"], "seed"),
    )


def scenario_to_dict(scenario):
    """
    Convert a :class:`Scenario` to the scenario file document.

    :param scenario: :class:`Scenario` to convert.
    :returns: Dictionary suitable for :func:`json.dump`.
    """
    spec = scenario.mobility
    return {
        "dimension": scenario.dimension,
        "nodes": [{"start": [float(v) for v in s], "end": [float(v) for v in e], "rate": float(k)}
                  for s, e, k in zip(spec.start, spec.end, spec.rate)],
        "num_controllers": scenario.num_controllers,
        "gamma": scenario.gamma,
        "k0": scenario.k0,
        "t0_temperature": scenario.t0_temperature,
        "alpha": scenario.alpha,
        "horizon": scenario.horizon,
        "steps": scenario.steps,
        "seed": scenario.seed,
    }


def load_scenario(path):
    """
    Read a scenario file.

    :param path: Path to the JSON scenario file.
    :returns: :class:`Scenario`.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as ex:
        raise ScenarioError(f"Unable to read scenario file '{path}': {ex}") from ex
    except json.JSONDecodeError as ex:
        raise ScenarioError(f"Scenario file '{path}' is not valid JSON: {ex}") from ex
    scenario = scenario_from_dict(data)
    _log.info(f"Loaded scenario from {path} (N={scenario.num_nodes}, M={scenario.num_controllers}).")
    return scenario


def save_scenario(scenario, path):
    """
    Write a scenario file.

    The output is byte-deterministic: keys are sorted and floats are written with the shortest
    representation that round-trips exactly.

    :param scenario: :class:`Scenario` to write.
    :param path: Destination path.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(scenario_to_dict(scenario), f, sort_keys=True, indent=1)
            f.write("\n")
    except OSError as ex:
        raise ScenarioError(f"Unable to write scenario file '{path}': {ex}") from ex
    _log.info(f"Wrote scenario to {path}.")
