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
Domain types for the network, the closed-form mobility model, and coordinate normalization.

Points are plain numpy arrays of shape ``(d,)`` and lists of points are arrays of shape
``(K, d)``.
Every node moves along the exponential trajectory

.. math::

    x_i(t) = x_{start,i} e^{-k_i t} + x_{end,i} (1 - e^{-k_i t})

so both positions and velocities can be evaluated exactly at any time, without integration.
"""

__all__ = ["NetworkState", "MobilitySpec", "DomainBox", "EPS_BOX",
           "node_positions", "node_velocities", "fit_domain", "normalize", "denormalize"]

from dataclasses import dataclass

import numpy as np

from .errors import ScenarioError

#: Half extent used for a degenerate (single point) bounding box.
EPS_BOX = 1e-9


def _as_points(name, values, dimension=None):
    """
    Convert to a float array of shape ``(K, d)`` and check it is finite.
    """
    a = np.array(values, dtype=float, copy=True)
    if a.ndim == 1 and a.size > 0 and dimension is not None and a.size == dimension:
        a = a.reshape(1, -1)
    if a.ndim != 2 or a.shape[1] < 1:
        raise ScenarioError(f"{name} must be a list of points, got array of shape {a.shape}")
    if dimension is not None and a.shape[1] != dimension:
        raise ScenarioError(f"{name} must have dimension {dimension}, got {a.shape[1]}")
    if not np.all(np.isfinite(a)):
        raise ScenarioError(f"{name} contains non-finite coordinates")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class NetworkState:
    """
    Positions of the network nodes and controllers at one time instant.

    :param t: Simulation time, in seconds.
    :param nodes: Array of shape ``(N, d)`` of node positions :math:`x`.
    :param controllers: Array of shape ``(M, d)`` of controller positions :math:`y`.
    """
    t: float
    nodes: np.ndarray
    controllers: np.ndarray

    def __post_init__(self):
        nodes = _as_points("nodes", self.nodes)
        controllers = _as_points("controllers", self.controllers, nodes.shape[1])
        if not np.isfinite(self.t):
            raise ScenarioError("time must be finite")
        if not (nodes.shape[0] >= controllers.shape[0] >= 1):
            raise ScenarioError(f"need N >= M >= 1, got N={nodes.shape[0]}, M={controllers.shape[0]}")
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "controllers", controllers)

    @property
    def num_nodes(self):
        """Number of network nodes :math:`N`."""
        return self.nodes.shape[0]

    @property
    def num_controllers(self):
        """Number of controllers :math:`M`."""
        return self.controllers.shape[0]

    @property
    def dimension(self):
        """Number of spatial dimensions :math:`d`."""
        return self.nodes.shape[1]

    def with_controllers(self, controllers):
        """
        Return a copy of the state with the controllers replaced.

        :param controllers: Array of shape ``(M, d)``.
        """
        return NetworkState(self.t, self.nodes, controllers)


@dataclass(frozen=True)
class MobilitySpec:
    """
    Start point, end point and exponential rate of every node.

    :param start: Array of shape ``(N, d)`` of starting positions.
    :param end: Array of shape ``(N, d)`` of final positions.
    :param rate: Array of shape ``(N,)`` of rates :math:`k_i > 0`, in 1/seconds.
    """
    start: np.ndarray
    end: np.ndarray
    rate: np.ndarray

    def __post_init__(self):
        start = _as_points("start", self.start)
        end = _as_points("end", self.end, start.shape[1])
        rate = np.array(self.rate, dtype=float, copy=True).reshape(-1)
        if end.shape[0] != start.shape[0] or rate.shape[0] != start.shape[0]:
            raise ScenarioError("start, end and rate must have one entry per node")
        if not np.all(np.isfinite(rate)) or np.any(rate <= 0):
            raise ScenarioError("every node rate must be positive and finite")
        rate.setflags(write=False)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)
        object.__setattr__(self, "rate", rate)

    @property
    def num_nodes(self):
        """Number of network nodes :math:`N`."""
        return self.start.shape[0]

    @property
    def dimension(self):
        """Number of spatial dimensions :math:`d`."""
        return self.start.shape[1]

    @property
    def is_static(self):
        """``True`` if every node already sits at its end point."""
        return bool(np.all(self.start == self.end))

    def restarted(self, t):
        """
        Return the mobility spec of the remaining motion after time ``t``.

        The returned spec starts at the positions reached at time ``t`` and keeps the same end
        points and rates, so evaluating it at ``s`` equals evaluating this spec at ``t + s``.

        :param t: Elapsed time, in seconds.
        """
        return MobilitySpec(node_positions(self, t), self.end, self.rate)


@dataclass(frozen=True)
class DomainBox:
    """
    Axis-aligned box used to map raw coordinates into :math:`[-1, 1]^d`.

    :param center: Box centre :math:`\\mu`, array of shape ``(d,)``.
    :param half_extent: Scaling factor :math:`s > 0`.
    """
    center: np.ndarray
    half_extent: float

    def __post_init__(self):
        center = np.array(self.center, dtype=float, copy=True).reshape(-1)
        if not np.all(np.isfinite(center)):
            raise ScenarioError("box center must be finite")
        if not (np.isfinite(self.half_extent) and self.half_extent > 0):
            raise ScenarioError("box half extent must be positive")
        center.setflags(write=False)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "half_extent", float(self.half_extent))


def node_positions(spec, t):
    """
    Exact node positions at time ``t``.

    :param spec: :class:`MobilitySpec` of the network.
    :param t: Time, in seconds, ``t >= 0``.
    :returns: Array of shape ``(N, d)``.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    decay = np.exp(-spec.rate*t)[:, np.newaxis]
    return spec.start*decay + spec.end*(1.0 - decay)


def node_velocities(spec, t):
    """
    Exact node velocities :math:`\\phi_i(t) = -k_i (x_i(t) - x_{end,i})` at time ``t``.

    :param spec: :class:`MobilitySpec` of the network.
    :param t: Time, in seconds, ``t >= 0``.
    :returns: Array of shape ``(N, d)``.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    decay = np.exp(-spec.rate*t)[:, np.newaxis]
    return -spec.rate[:, np.newaxis]*(spec.start - spec.end)*decay


def fit_domain(points):
    """
    Fit the bounding box of a set of points.

    The centre is the midpoint of the axis-aligned bounding box and the half extent is the
    largest half side length, floored at :data:`EPS_BOX` when all points coincide.

    :param points: Array of shape ``(K, d)``.
    :returns: :class:`DomainBox` containing all points.
    """
    a = np.asarray(points, dtype=float)
    if a.size == 0:
        raise ValueError("empty point set")
    a = np.atleast_2d(a)
    if not np.all(np.isfinite(a)):
        raise ValueError("point set contains non-finite coordinates")
    lo = a.min(axis=0)
    hi = a.max(axis=0)
    return DomainBox(center=(lo + hi)/2.0, half_extent=max(float(np.max(hi - lo))/2.0, EPS_BOX))


def normalize(box, p):
    """
    Map raw coordinates into the normalized domain, :math:`(p - \\mu)/s`.

    Points inside the fitted box land in :math:`[-1, 1]^d`.

    :param box: :class:`DomainBox` to normalize with.
    :param p: Point of shape ``(d,)`` or points of shape ``(K, d)``.
    """
    return (np.asarray(p, dtype=float) - box.center)/box.half_extent


def denormalize(box, p):
    """
    Inverse of :func:`normalize`.

    :param box: :class:`DomainBox` that was used to normalize.
    :param p: Point of shape ``(d,)`` or points of shape ``(K, d)``.
    """
    return np.asarray(p, dtype=float)*box.half_extent + box.center
