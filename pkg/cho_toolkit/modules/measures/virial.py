# CHO Toolkit
# Copyright (C) 2026 RERO.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, version 3 of the License.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.

"""Kinetic and potential variances of stationary states.

For an eigenstate ``T psi - <T> psi = -(V - <V>) psi`` away from the walls,
so ``(dT)**2``, ``(dV)**2``, ``<T><V> - <TV>`` and ``<T><V> - <VT>``
coincide. ``<TV>`` applies ``T`` to ``V psi`` and ``<VT>`` multiplies
``T psi`` by ``V``. ``T`` is applied with five-point differences; radial
states are handled through ``u = r R`` with the centrifugal term added.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DifferentiationNoiseError
from ..numerics.api import Grid, integrate, second_derivative
from ..utils import get_config, get_logger

# relative change of (dT)**2 tolerated when the grid step is doubled
STABILITY_TOLERANCE = 1e-3
STABILITY_FLOOR = 1e-10


@dataclass(frozen=True)
class VirialReport:
    """Expectation values and the four variance expressions of one state."""

    energy: float
    kinetic: float
    potential: float
    kinetic_variance: float
    potential_variance: float
    cross_tv: float
    cross_vt: float
    stable: bool

    @property
    def spread(self):
        """Largest difference between the four variance expressions."""
        values = (self.kinetic_variance, self.potential_variance, self.cross_tv, self.cross_vt)
        return max(values) - min(values)


def _potential(state, system, x):
    if state.omega is None:
        return np.zeros_like(x)
    if system is not None:
        return system.potential(x)
    return 0.5 * state.omega**2 * x**2


def _kinetic_action(values, x, h, l=None, potential_at=None):
    """``T f`` for a 1D amplitude or a reduced radial amplitude ``u``.

    With ``potential_at`` the result is ``T (V f)``; the product is also
    formed on the ghost nodes, with the potential at their own positions.
    """
    # u(-r) = (-1)**(l + 1) u(r)
    left = "odd" if l is None or l % 2 == 0 else "even"
    multiplier = None
    if potential_at is not None:
        offsets = h * np.array([2.0, 1.0])
        multiplier = potential_at(np.concatenate((x[0] - offsets, x, x[-1] + offsets[::-1])))
    result = -0.5 * second_derivative(values, h, left, "odd", multiplier)
    if l is None:
        return result
    product = values if multiplier is None else multiplier[2:-2] * values
    result[1:] += l * (l + 1) / (2.0 * x[1:] ** 2) * product[1:]
    result[0] = 0.0
    return result


def _variances(f, x, potential_at, grid, l):
    flat = grid.with_measure("flat")
    potential = potential_at(x)
    tf = _kinetic_action(f, x, grid.step, l)
    tvf = _kinetic_action(f, x, grid.step, l, potential_at)
    kinetic = integrate(f * tf, flat)
    mean_v = integrate(potential * f**2, flat)
    d_t = tf - kinetic * f
    d_v = (potential - mean_v) * f
    return {
        "kinetic": kinetic,
        "potential": mean_v,
        "kinetic_variance": integrate(d_t**2, flat),
        "potential_variance": integrate(d_v**2, flat),
        "cross_tv": kinetic * mean_v - integrate(f * tvf, flat),
        "cross_vt": kinetic * mean_v - integrate(f * potential * tf, flat),
    }


def virial_check(state, system=None, strict=False):
    """Evaluate the variance identity for ``state``.

    The kinetic variance is recomputed with every other node; a relative
    change above the stability tolerance marks the result unstable.

    :param state: Normalized :class:`Eigenstate` from any solver.
    :param system: Its system; its potential is used (see
        :func:`cho_toolkit.modules.measures.api.expectations`).
    :param strict: Raise instead of logging a warning when unstable.
    :returns: :class:`VirialReport`.
    :raises DifferentiationNoiseError: With ``strict`` on an unstable result.
    """
    sampled = state.uniform()
    if (len(sampled.grid) - 1) % 4:
        sampled = state.uniform(get_config("CHO_TOOLKIT_GRID_NODES", 6001))
    x = sampled.grid.nodes
    l = sampled.l if sampled.is_radial else None
    f = x * sampled.values if sampled.is_radial else sampled.values

    def potential_at(points):
        return _potential(state, system, points)

    full = _variances(f, x, potential_at, sampled.grid, l)

    grid = sampled.grid
    half = Grid.simpson(x[0], x[-1], (len(grid) + 1) // 2, grid.measure)
    coarse = _variances(f[::2], half.nodes, potential_at, half, l)
    change = abs(coarse["kinetic_variance"] - full["kinetic_variance"])
    stable = change <= STABILITY_TOLERANCE * abs(full["kinetic_variance"]) + STABILITY_FLOOR
    if not stable:
        message = f"kinetic variance of {state.labels} changes by {change:.3g} when the grid step doubles"
        if strict:
            raise DifferentiationNoiseError(message)
        get_logger().warning(message)
    return VirialReport(energy=state.energy, stable=stable, **full)
