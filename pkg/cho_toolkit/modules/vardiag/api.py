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

"""Variational diagonalization in a symmetric-oscillator basis.

The Hamiltonian of a 1D box is expanded in the eigenstates of a symmetric
confined oscillator of the same box with well parameter ``alpha`` (frequency
``2 sqrt(2) alpha``, centred in the box). The lowest eigenvalue is minimized
over ``alpha``, which is the single nonlinear parameter of the basis.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize
from scipy.interpolate import BarycentricInterpolator

from ..api import BaseSolver, ConfinedSystem1D, Eigenstate
from ..errors import VardiagRangeError
from ..exact.api import scho_spectrum
from ..numerics.api import Grid, lowest_eigenpairs
from ..utils import get_config, get_logger, handle_solver_errors

# energies of the box reference table are in units of -d2/dx2 + (x - d_m)**2, twice the omega = 1 values
ACHO_TABLE_ENERGY_SCALE = 2.0


@dataclass(frozen=True)
class VardiagConfig:
    """Basis size, ``alpha`` scan range (multiples of omega) and scan resolution."""

    basis_size: int = 50
    alpha_range: tuple = (0.05, 5.0)
    alpha_scan_points: int = 40
    quadrature_order: int = 200
    edge_tolerance: float = 1e-9

    def __post_init__(self):
        """Validate the parameters."""
        lo, hi = self.alpha_range
        if self.basis_size < 10:
            raise ValueError(f"basis_size must be at least 10, got {self.basis_size}")
        if not 0 < lo < hi:
            raise ValueError(f"alpha_range must satisfy 0 < lo < hi, got {self.alpha_range}")
        if self.alpha_scan_points < 3:
            raise ValueError("alpha_scan_points must be at least 3")
        if self.quadrature_order <= self.basis_size:
            raise ValueError("quadrature_order must exceed basis_size")

    @classmethod
    def from_config(cls, **kwargs):
        """Build the parameters from the configuration."""
        values = {
            "basis_size": get_config("CHO_TOOLKIT_VARDIAG_BASIS_SIZE", 50),
            "alpha_range": tuple(get_config("CHO_TOOLKIT_VARDIAG_ALPHA_RANGE", (0.05, 5.0))),
            "alpha_scan_points": get_config("CHO_TOOLKIT_VARDIAG_SCAN_POINTS", 40),
            "quadrature_order": get_config("CHO_TOOLKIT_VARDIAG_QUADRATURE_ORDER", 200),
            "edge_tolerance": get_config("CHO_TOOLKIT_VARDIAG_EDGE_TOLERANCE", 1e-9),
        }
        values.update(kwargs)
        return cls(**values)


def basis_system(system, alpha):
    """Symmetric oscillator of the basis: frequency ``2 sqrt(2) alpha`` centred in the box."""
    if system.is_free:
        raise ValueError("the variational basis needs finite walls")
    return ConfinedSystem1D(
        omega=2.0 * math.sqrt(2.0) * alpha,
        d_m=system.center,
        wall_left=system.wall_left,
        wall_right=system.wall_right,
    )


@lru_cache(maxsize=64)
def _basis_samples(omega, half, size, order):
    reference = Grid.lobatto(-half, half, order)
    energies, values = scho_spectrum(omega, half, size, reference.nodes)
    values /= np.sqrt(reference.weights @ values**2)
    return energies, values.T


def scho_basis(system, alpha, size, order=200):
    """Lowest ``size`` basis states for ``system`` sampled on Lobatto nodes.

    The states are the closed-form eigenstates of the basis oscillator,
    normalized with the Lobatto weights of ``order + 1`` nodes spanning the box.
    """
    basis = basis_system(system, alpha)
    half = 0.5 * (basis.wall_right - basis.wall_left)
    energies, samples = _basis_samples(basis.omega, half, size, order)
    grid = Grid.lobatto(basis.wall_left, basis.wall_right, order)
    points = grid.nodes
    states = []
    for n in range(size):
        values = samples[n].copy()
        states.append(
            Eigenstate(
                labels=(n,),
                energy=float(energies[n]),
                grid=grid,
                values=values,
                parity="even" if n % 2 == 0 else "odd",
                omega=basis.omega,
                solver="exact",
                interpolator=BarycentricInterpolator(points, values),
            )
        )
    return states


def build_hamiltonian_matrix(system, basis, quad=None):
    """Matrix of the box Hamiltonian in the basis.

    The kinetic part comes from the eigen-relation of the basis,
    ``T |n> = (E_n - v_b) |n>``, so ``H_mn = E_n delta_mn + <m| v - v_b |n>``.

    :param system: :class:`ConfinedSystem1D`.
    :param basis: Orthonormal eigenstates of one symmetric oscillator of the same box.
    :param quad: Quadrature grid (the basis grid by default).
    :returns: array - the symmetric matrix.
    """
    reference = basis[0]
    nodes = reference.grid.nodes
    if not (np.isclose(nodes[0], system.wall_left) and np.isclose(nodes[-1], system.wall_right)):
        raise ValueError(f"basis spans [{nodes[0]:g}, {nodes[-1]:g}], not the box of {system}")
    quad = quad or reference.grid
    if quad.nodes.shape == nodes.shape and np.allclose(quad.nodes, nodes):
        samples = np.array([state.values for state in basis])
    else:
        samples = np.array([state.evaluate(quad.nodes) for state in basis])
    center = 0.5 * (nodes[0] + nodes[-1])
    difference = system.potential(quad.nodes) - 0.5 * reference.omega**2 * (quad.nodes - center) ** 2
    matrix = (samples * (quad.weights * difference)) @ samples.T
    matrix[np.diag_indices_from(matrix)] += [state.energy for state in basis]
    return 0.5 * (matrix + matrix.T)


def vardiag_energies(system, alpha, cfg=None, count=1):
    """Lowest ``count`` eigenvalues and eigenvectors at a fixed ``alpha``."""
    cfg = cfg or VardiagConfig.from_config()
    basis = scho_basis(system, alpha, cfg.basis_size, cfg.quadrature_order)
    energies, vectors = lowest_eigenpairs(build_hamiltonian_matrix(system, basis), count)
    return energies, vectors, basis


def optimal_alpha(system, cfg=None):
    """Basis parameter minimizing the ground eigenvalue.

    :raises VardiagRangeError: If the minimum sits at an edge of the scan range.
    """
    cfg = cfg or VardiagConfig.from_config()
    lo, hi = cfg.alpha_range
    log_alphas = np.linspace(math.log(lo * system.omega), math.log(hi * system.omega), cfg.alpha_scan_points)

    def ground(log_alpha):
        return vardiag_energies(system, math.exp(log_alpha), cfg)[0][0]

    values = np.array([ground(value) for value in log_alphas])
    best = int(np.argmin(values))
    if best in (0, len(values) - 1):
        interior = float(np.min(values[1:-1]))
        if interior - values[best] > cfg.edge_tolerance:
            raise VardiagRangeError(math.exp(log_alphas[best]))
        get_logger().warning(f"Variational minimum of {system} at the alpha range edge within tolerance")
        best = 1 + int(np.argmin(values[1:-1]))
    try:
        result = optimize.minimize_scalar(
            ground,
            bracket=(log_alphas[best - 1], log_alphas[best], log_alphas[best + 1]),
            method="golden",
            options={"xtol": 1e-6},
        )
    except ValueError:
        # flat scan: no strict bracket around the minimum
        log_alpha = log_alphas[best]
    else:
        log_alpha = result.x if result.fun <= values[best] else log_alphas[best]
    get_logger().debug(f"Variational optimum for {system}: alpha={math.exp(log_alpha):.6g}")
    return math.exp(log_alpha)


def vardiag_solve(system, cfg=None, count=1):
    """Lowest ``count`` states at the optimal basis parameter.

    :returns: list of :class:`Eigenstate` sampled on the Lobatto nodes of the basis.
    """
    cfg = cfg or VardiagConfig.from_config()
    if count > cfg.basis_size:
        raise ValueError(f"count {count} exceeds the basis size {cfg.basis_size}")
    alpha = optimal_alpha(system, cfg)
    energies, vectors, basis = vardiag_energies(system, alpha, cfg, count)
    grid = basis[0].grid
    points = grid.nodes
    samples = np.array([state.values for state in basis])
    states = []
    for n in range(count):
        values = vectors[:, n] @ samples
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
                solver="vardiag",
                interpolator=interpolator,
            )
        )
    return states


def calibrate_energy_scale(system, n, reference, solver=None):
    """Ratio between a reference energy and the computed one.

    :param reference: Tabulated energy of state ``n``.
    :param solver: :class:`BaseSolver` (variational by default).
    :returns: float - ``reference / computed``.
    """
    solver = solver or VardiagSolver()
    return reference / solver.energy(system, n)


class VardiagSolver(BaseSolver):
    """Variational diagonalization for finite 1D boxes."""

    name = "vardiag"

    def __init__(self, cfg=None):
        """Initialize the solver with optional basis parameters."""
        self.cfg = cfg

    def supports(self, system):
        """Finite 1D boxes."""
        return isinstance(system, ConfinedSystem1D) and not system.is_free

    @handle_solver_errors("vardiag")
    def solve(self, system, states):
        """Variational eigenstates of ``system``."""
        states = list(states)
        spectrum = vardiag_solve(system, self.cfg, max(states) + 1)
        return [spectrum[n] for n in states]
