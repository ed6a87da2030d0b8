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

"""Relative Fisher information between two states.

For amplitudes ``f`` (target) and ``g`` (reference) of the same space,
``IR = 4 integral (f' - f g'/g)**2``. Radial states add the angular term
weighted by the target's ``<r**-2>`` (``<p**-2>`` in momentum space); the
radial-angular cross term vanishes because the gradient components are
orthogonal.
"""

import math

import numpy as np
from scipy import special

from ..errors import SupportError
from ..momentum.api import hermite_frequency
from ..numerics.api import Grid, first_derivative, integrate
from ..utils import get_config
from .angular import angular_quadrature

# target samples below this fraction of their maximum count as zero
SUPPORT_TOLERANCE = 1e-8
# reference samples below this fraction of their maximum are treated as zeros
REFERENCE_FLOOR = 1e-14
SPACES = ("position", "momentum")
DIMENSIONS = ("1D", "3D")


def _common_samples(target, reference):
    """Both states on one uniform grid.

    Eigenstates are resampled on the overlap of their grids; momentum
    states must already share their grid.
    """
    if not hasattr(target, "resample"):
        if not np.array_equal(target.grid.nodes, reference.grid.nodes):
            raise ValueError("momentum states must share their grid")
        if target.grid.rule != "simpson":
            raise ValueError("momentum states need a uniform grid")
        return target.grid, np.asarray(target.values), np.asarray(reference.values)
    lo = 0.0 if target.is_radial else max(target.grid.nodes[0], reference.grid.nodes[0])
    hi = min(target.grid.nodes[-1], reference.grid.nodes[-1])
    same = np.array_equal(target.grid.nodes, reference.grid.nodes) and target.grid.rule == "simpson"
    if same:
        return target.grid, target.values, reference.values
    grid = Grid.simpson(lo, hi, get_config("CHO_TOOLKIT_GRID_NODES", 6001), target.grid.measure)
    return grid, target.evaluate(grid.nodes), reference.evaluate(grid.nodes)


def _log_derivative_term(f, g, grid, left):
    """``4 integral (f' - f g'/g)**2`` under the grid measure."""
    h = grid.step
    df = first_derivative(f, h, left, "odd")
    dg = first_derivative(g, h, left, "odd")
    empty = np.abs(g) <= REFERENCE_FLOOR * np.max(np.abs(g))
    if np.any(np.abs(f[empty]) > SUPPORT_TOLERANCE * np.max(np.abs(f))):
        raise SupportError("reference density vanishes where the target does not")
    integrand = np.zeros_like(f)
    keep = ~empty
    integrand[keep] = (df[keep] - f[keep] * dg[keep] / g[keep]) ** 2
    return 4.0 * integrate(integrand, grid)


def _theta(l, m, mu):
    """Normalized polar function and ``(1 - mu**2) dTheta/dmu``."""
    m = abs(m)
    norm = math.sqrt((2 * l + 1) / 2.0 * math.factorial(l - m) / math.factorial(l + m))
    value = special.lpmv(m, l, mu)
    previous = special.lpmv(m, l - 1, mu) if l > m else np.zeros_like(mu)
    return norm * value, norm * ((l + m) * previous - l * mu * value)


def angular_relative_fisher(l, m, ref_l, ref_m):
    """Relative Fisher information of ``|Y_lm|**2`` against ``|Y_ref|**2`` on the sphere.

    :raises SupportError: If the reference vanishes where the target does not.
    """
    if (l, abs(m)) == (ref_l, abs(ref_m)):
        return 0.0
    mu, weights = angular_quadrature(get_config("CHO_TOOLKIT_ANGULAR_NODES", 4000))
    theta, d_theta = _theta(l, m, mu)
    ref, d_ref = _theta(ref_l, ref_m, mu)
    scale = np.max(np.abs(ref))
    if np.any((np.abs(ref) < 1e-12 * scale) & (np.abs(theta) > SUPPORT_TOLERANCE * np.max(np.abs(theta)))):
        raise SupportError(f"Y({ref_l},{ref_m}) vanishes where Y({l},{m}) does not")
    # d/dtheta = -sqrt(1 - mu**2) d/dmu
    integrand = (d_theta - theta * d_ref / ref) ** 2 / (1.0 - mu**2)
    return 4.0 * float(np.dot(weights, integrand))


def relative_fisher_numeric(target, reference):
    """Relative Fisher information of ``target`` with respect to ``reference``.

    :param target: :class:`Eigenstate` or real :class:`MomentumState`.
    :param reference: State of the same kind and space.
    :returns: float
    :raises SupportError: If the reference vanishes where the target does not.
    """
    if np.iscomplexobj(target.values) or np.iscomplexobj(reference.values):
        raise ValueError("relative Fisher information needs real amplitudes")
    radial = len(target.labels) == 3
    if radial != (len(reference.labels) == 3):
        raise ValueError("target and reference must both be radial or both 1D")
    grid, f, g = _common_samples(target, reference)
    if not radial:
        return _log_derivative_term(f, g, grid, "odd")
    l, m = target.labels[1], target.labels[2]
    ref_l, ref_m = reference.labels[1], reference.labels[2]
    if ref_l != l:
        raise ValueError(f"radial amplitudes of different l ({l}, {ref_l}) have different parity at the origin")
    value = _log_derivative_term(f, g, grid, "even" if l % 2 == 0 else "odd")
    angular = angular_relative_fisher(l, m, ref_l, ref_m)
    if angular:
        value += integrate(f**2, grid.with_measure("flat")) * angular
    return value


def relative_fisher_closed_form(space, system, labels, omega, hermite=False):
    """Relative Fisher information of a free oscillator state against its nodeless reference.

    1D: ``4 sqrt(2) omega_H n`` (position), ``8 sqrt(2) n / omega_H``
    (momentum), with the Hermite frequency ``omega_H = sqrt(2) omega``.
    3D: ``16 omega n_r`` and ``16 n_r / omega``.

    :param space: ``position`` or ``momentum``.
    :param system: ``1D`` or ``3D``.
    :param labels: ``n``, ``(n,)`` or ``(n_r, l[, m])``.
    :param omega: Potential frequency (Hermite frequency with ``hermite=True``, 1D only).
    :returns: float

    Values quoted per unit Hermite frequency (``4 sqrt(2)`` for ``n = 1``)
    need ``hermite=True``; the default reads ``omega`` from ``omega**2 x**2 / 2``
    and gives 8 for ``n = 1``, ``omega = 1``.
    """
    if space not in SPACES:
        raise ValueError(f"space must be one of {SPACES}, got {space!r}")
    if system not in DIMENSIONS:
        raise ValueError(f"system must be one of {DIMENSIONS}, got {system!r}")
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    n = labels if isinstance(labels, int) else labels[0]
    if system == "1D":
        omega_h = omega if hermite else hermite_frequency(omega)
        if space == "position":
            return 4.0 * math.sqrt(2.0) * omega_h * n
        return 8.0 * math.sqrt(2.0) * n / omega_h
    return 16.0 * omega * n if space == "position" else 16.0 * n / omega


def relative_fisher_spacing(omega):
    """Gaps ``(8 omega, 8 / omega)`` between consecutive 1D position and momentum values."""
    return 8.0 * omega, 8.0 / omega
