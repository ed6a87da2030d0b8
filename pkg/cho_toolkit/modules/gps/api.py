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

"""Generalized pseudospectral (Legendre collocation) eigensolver.

The radial equation on ``[0, r_max]`` is mapped onto ``[-1, 1]`` by
``r = L (1 + x) / (1 - x + alpha)`` with ``alpha = 2 L / r_max`` and
collocated at the Legendre-Gauss-Lobatto points. Both ends carry Dirichlet
conditions so the Hamiltonian lives on the ``N - 1`` interior points.

Confined spheres use the linear limit ``L = inf`` (``r = r_max (1 + x) / 2``);
the rational map only serves the proxy radius of free systems. Energies are
the Rayleigh quotients of the eigenvectors, with ``H v`` applied factor by
factor.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special
from scipy.interpolate import BarycentricInterpolator

from ..api import BaseSolver, ConfinedSystem1D, ConfinedSystemRadial, Eigenstate
from ..numerics.api import Grid, lowest_eigenpairs
from ..utils import get_config, handle_solver_errors

MIN_ORDER = 32


def gps_collocation_points(N):
    """Legendre-Gauss-Lobatto points: ``-1``, the roots of ``P_N'`` and ``1``."""
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    interior = special.roots_jacobi(N - 1, 1.0, 1.0)[0]
    return np.concatenate(([-1.0], np.sort(interior), [1.0]))


def lobatto_weights(N, points):
    """Lobatto quadrature weights ``2 / (N (N + 1) P_N(x)**2)``."""
    return 2.0 / (N * (N + 1) * special.eval_legendre(N, points) ** 2)


def kinetic_matrix(N):
    """Symmetrized ``-1/2 d**2/dx**2`` on the interior collocation points.

    Diagonal ``N (N + 1) / (6 (1 - x_j**2))``, off-diagonal ``1 / (x_j - x_k)**2``.
    """
    x = gps_collocation_points(N)[1:-1]
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    matrix = 1.0 / diff**2
    np.fill_diagonal(matrix, N * (N + 1) / (6.0 * (1.0 - x**2)))
    return matrix


@dataclass(frozen=True)
class GpsConfig:
    """Collocation order ``N``, outer radius ``r_max`` and mapping parameter ``L``.

    ``L = math.inf`` selects the linear map.
    """

    N: int = 128
    r_max: float = 1.0
    L: float | None = None

    def __post_init__(self):
        """Validate the parameters."""
        if self.N < MIN_ORDER:
            raise ValueError(f"N must be at least {MIN_ORDER}, got {self.N}")
        if not 0 < self.r_max < math.inf:
            raise ValueError(f"r_max must be positive and finite, got {self.r_max}")
        if self.L is None:
            object.__setattr__(self, "L", self.r_max / 4.0)
        if not (0 < self.L < self.r_max or self.L == math.inf):
            raise ValueError(f"L must lie in (0, r_max) or be math.inf, got {self.L}")

    @classmethod
    def for_system(cls, system, **kwargs):
        """Defaults for ``system``: the wall radius with the linear map, or the free proxy radius."""
        if isinstance(system, ConfinedSystemRadial):
            r_max = system.r_c
        else:
            r_max = system.x_c
        values = {"N": get_config("CHO_TOOLKIT_GPS_ORDER", 128), "r_max": r_max, "L": math.inf}
        if math.isinf(r_max):
            values["r_max"] = get_config("CHO_TOOLKIT_GPS_FREE_RADIUS", 20.0) / math.sqrt(system.omega)
            values["L"] = None
        values.update(kwargs)
        return cls(**values)

    @property
    def linear(self):
        """True for the linear map."""
        return math.isinf(self.L)

    @property
    def alpha(self):
        """Mapping constant ``2 L / r_max``."""
        return 2.0 * self.L / self.r_max

    def radius(self, x):
        """Mapped radius ``r(x)``."""
        if self.linear:
            return 0.5 * self.r_max * (1.0 + np.asarray(x, dtype=float))
        return self.L * (1.0 + x) / (1.0 - x + self.alpha)

    def jacobian(self, x):
        """Derivative ``r'(x)``."""
        if self.linear:
            return np.full(np.shape(x), 0.5 * self.r_max)
        return self.L * (2.0 + self.alpha) / (1.0 - x + self.alpha) ** 2

    def inverse(self, r):
        """Collocation coordinate ``x(r)``."""
        r = np.asarray(r, dtype=float)
        if self.linear:
            return 2.0 * r / self.r_max - 1.0
        return (r * (1.0 + self.alpha) - self.L) / (r + self.L)


def mapping_potential(cfg, x):
    """Potential ``(3 r''**2 - 2 r''' r') / (8 r'**4)`` generated by the mapping (zero for both maps)."""
    if cfg.linear:
        return np.zeros(np.shape(x))
    q = 1.0 - np.asarray(x, dtype=float) + cfg.alpha
    scale = cfg.L * (2.0 + cfg.alpha)
    first, second, third = scale / q**2, 2.0 * scale / q**3, 6.0 * scale / q**4
    return (3.0 * second**2 - 2.0 * third * first) / (8.0 * first**4)


def rayleigh_energies(kinetic, scale, diagonal, vectors):
    """Rayleigh quotients of the columns of ``vectors`` for ``scale K scale + diag``.

    The product is applied without forming the scaled matrix.
    """
    applied = scale[:, None] * (kinetic @ (scale[:, None] * vectors)) + diagonal[:, None] * vectors
    return np.einsum("ij,ij->j", vectors, applied) / np.einsum("ij,ij->j", vectors, vectors)


def gps_solve(system, cfg=None, count=1):
    """Lowest ``count`` radial eigenstates by mapped Legendre collocation.

    :param system: :class:`ConfinedSystemRadial` with ``D = 3``.
    :param cfg: :class:`GpsConfig`; ``r_max`` should equal ``r_c`` for confined systems.
    :returns: list of :class:`Eigenstate` holding ``R(r)`` on an ``r_squared`` grid.
    """
    if system.D != 3:
        raise ValueError(f"the collocation solver handles D = 3 only, got D = {system.D}")
    cfg = cfg or GpsConfig.for_system(system)
    points = gps_collocation_points(cfg.N)
    x = points[1:-1]
    r, jacobian = cfg.radius(x), cfg.jacobian(x)
    scale = 1.0 / jacobian
    kinetic = kinetic_matrix(cfg.N)
    diagonal = system.potential(r) + system.l * (system.l + 1) / (2.0 * r**2)
    hamiltonian = scale[:, None] * kinetic * scale[None, :]
    hamiltonian[np.diag_indices_from(hamiltonian)] += diagonal
    _, vectors = lowest_eigenpairs(hamiltonian, count)
    energies = rayleigh_energies(kinetic, scale, diagonal, vectors)

    legendre = special.eval_legendre(cfg.N, x)
    factor = legendre * math.sqrt(0.5 * cfg.N * (cfg.N + 1)) / np.sqrt(jacobian)
    weights = lobatto_weights(cfg.N, points)
    grid = Grid(
        np.append(r, cfg.r_max),
        np.append(weights[1:-1] * jacobian, weights[-1] * cfg.jacobian(1.0)),
        measure="r_squared",
        rule="lobatto",
    )
    states = []
    for n_r in range(count):
        radial = vectors[:, n_r] * factor / r
        if radial[np.argmax(np.abs(radial) > 1e-8 * np.max(np.abs(radial)))] < 0:
            radial = -radial
        values = np.append(radial, 0.0)
        interpolator = BarycentricInterpolator(points[1:], values)
        states.append(
            Eigenstate(
                labels=(n_r, system.l, 0),
                energy=float(energies[n_r]),
                grid=grid,
                values=values,
                omega=system.omega,
                free=system.is_free,
                solver="gps",
                interpolator=lambda radius, bary=interpolator: bary(cfg.inverse(radius)),
            )
        )
    return states


def gps_solve_1d(system, N=None, count=1):
    """Lowest ``count`` states of a finite 1D box by linear Legendre collocation."""
    if system.is_free:
        raise ValueError("1D collocation needs finite walls")
    N = N or get_config("CHO_TOOLKIT_GPS_ORDER", 128)
    points = gps_collocation_points(N)
    half = 0.5 * (system.wall_right - system.wall_left)
    nodes = system.wall_left + half * (points + 1.0)
    kinetic = kinetic_matrix(N)
    scale = np.full(N - 1, 1.0 / half)
    diagonal = system.potential(nodes[1:-1])
    hamiltonian = kinetic / half**2
    hamiltonian[np.diag_indices_from(hamiltonian)] += diagonal
    _, vectors = lowest_eigenpairs(hamiltonian, count)
    energies = rayleigh_energies(kinetic, scale, diagonal, vectors)
    factor = special.eval_legendre(N, points[1:-1]) * math.sqrt(0.5 * N * (N + 1) / half)
    grid = Grid(nodes, lobatto_weights(N, points) * half, rule="lobatto")
    states = []
    for n in range(count):
        values = np.concatenate(([0.0], vectors[:, n] * factor, [0.0]))
        if values[np.argmax(np.abs(values) > 1e-8 * np.max(np.abs(values)))] < 0:
            values = -values
        interpolator = BarycentricInterpolator(points, values)
        states.append(
            Eigenstate(
                labels=(n,),
                energy=float(energies[n]),
                grid=grid,
                values=values,
                parity=("even" if n % 2 == 0 else "odd") if system.is_symmetric else None,
                omega=system.omega,
                solver="gps",
                interpolator=lambda x, bary=interpolator: bary((x - system.wall_left) / half - 1.0),
            )
        )
    return states


class GpsSolver(BaseSolver):
    """Legendre collocation for 3D radial systems and finite 1D boxes."""

    name = "gps"

    def __init__(self, N=None):
        """Initialize the solver with an optional collocation order."""
        self.N = N

    def supports(self, system):
        """3D radial systems (free ones through a proxy radius) and finite 1D boxes."""
        if isinstance(system, ConfinedSystemRadial):
            return system.D == 3
        return isinstance(system, ConfinedSystem1D) and not system.is_free

    @handle_solver_errors("gps")
    def solve(self, system, states):
        """Collocation eigenstates of ``system``."""
        states = list(states)
        count = max(states) + 1
        if isinstance(system, ConfinedSystem1D):
            spectrum = gps_solve_1d(system, self.N, count)
        else:
            kwargs = {"N": self.N} if self.N else {}
            spectrum = gps_solve(system, GpsConfig.for_system(system, **kwargs), count)
        return [spectrum[n] for n in states]
