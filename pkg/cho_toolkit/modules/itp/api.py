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

"""Imaginary-time propagation for 1D boxes.

The diffusion equation ``d psi / d tau = -H psi`` is advanced with the
second-order split ``(1 + dtau H / 2) psi' = (1 - dtau H / 2) psi``, the
kinetic term discretized by the five-point stencil. Each step solves the
pentadiagonal system, projects out the lower states, normalizes and
monitors the energy. A run stops once the energy change is below the
tolerance and the residual ``|H psi - E psi|**2 / gap`` bounds the
remaining energy error by the same tolerance.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import linalg

from ..api import BaseSolver, ConfinedSystem1D, Eigenstate
from ..errors import ItpConvergenceError, ItpDivergenceError, PivotError
from ..numerics.api import Grid, integrate
from ..utils import get_config, get_logger, handle_solver_errors

# smallest number of interior nodes accepted for a box
MIN_NODES = 400
# steps with a growing energy before the run is declared divergent
DIVERGENCE_STEPS = 100
MIN_STEPS = 10


@dataclass
class ItpConfig:
    """Propagation parameters.

    ``h`` (when given) fixes the spatial step, otherwise ``nodes`` interior
    nodes span the box. ``orthogonalize_against`` holds the converged lower
    states of the same system. With ``richardson`` the spectrum is computed
    on the grid and on its refinement and the energies are extrapolated.
    """

    nodes: int = 2001
    dtau: float = 1e-3
    dtau_min: float = 1e-6
    energy_tolerance: float = 1e-12
    max_steps: int = 200000
    h: float | None = None
    richardson: bool = True
    orthogonalize_against: list = field(default_factory=list)

    def __post_init__(self):
        """Validate the parameters."""
        if self.dtau <= 0 or self.dtau_min <= 0 or self.dtau_min > self.dtau:
            raise ValueError("dtau and dtau_min must be positive with dtau_min <= dtau")
        if self.energy_tolerance <= 0 or self.max_steps < MIN_STEPS:
            raise ValueError("energy_tolerance must be positive and max_steps at least 10")

    @classmethod
    def from_config(cls, **kwargs):
        """Build the parameters from the configuration."""
        values = {
            "nodes": get_config("CHO_TOOLKIT_ITP_NODES", 2001),
            "dtau": get_config("CHO_TOOLKIT_ITP_DTAU", 1e-3),
            "dtau_min": get_config("CHO_TOOLKIT_ITP_DTAU_MIN", 1e-6),
            "energy_tolerance": get_config("CHO_TOOLKIT_ITP_ENERGY_TOLERANCE", 1e-12),
            "max_steps": get_config("CHO_TOOLKIT_ITP_MAX_STEPS", 200000),
            "richardson": get_config("CHO_TOOLKIT_ITP_RICHARDSON", True),
        }
        values.update(kwargs)
        return cls(**values)

    def interior_count(self, system):
        """Number of interior nodes for ``system`` (odd, so the full grid suits Simpson)."""
        width = system.wall_right - system.wall_left
        count = self.nodes if self.h is None else round(width / self.h) - 1
        if count % 2 == 0:
            count -= 1
        if count < MIN_NODES:
            raise ValueError(f"at least {MIN_NODES} interior nodes are required, got {count}")
        return count


def initial_time_step(cfg, potential, h, energy):
    """Starting ``dtau``: the configured one, capped by ``1 / sqrt(lambda_max E)``.

    :raises ValueError: If the resulting ``dtau / h**2`` exceeds
        ``CHO_TOOLKIT_ITP_MAX_DTAU_RATIO``.
    """
    largest = 64.0 / (24.0 * h**2) + float(np.max(potential))
    dtau = min(cfg.dtau, 1.0 / math.sqrt(largest * max(energy, 1e-3)))
    ratio = get_config("CHO_TOOLKIT_ITP_MAX_DTAU_RATIO", 1e4)
    if dtau / h**2 > ratio:
        raise ValueError(f"dtau / h**2 = {dtau / h**2:g} exceeds {ratio:g}")
    return dtau


def initial_guess(parity, grid):
    """Gaussian starting function centred in the box.

    ``exp(-x**2)`` (even) or ``x exp(-x**2)`` (odd), times the envelope
    ``(x - a)(b - x)`` so that it vanishes at both walls, normalized on ``grid``.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    x = grid.nodes
    lo, hi = x[0], x[-1]
    shifted = x - 0.5 * (lo + hi)
    values = np.exp(-(shifted**2)) * (x - lo) * (hi - x)
    if parity == "odd":
        values *= shifted
    values[[0, -1]] = 0.0
    return values / math.sqrt(integrate(values**2, grid))


class PentadiagonalFactor:
    """Pivot-free factorization of a pentadiagonal matrix.

    Symmetric positive definite matrices are factored as the banded
    Cholesky ``U^T U``; any other matrix by Gaussian elimination on the
    bands in the natural row order. The factor is reused for every
    right-hand side.

    :param bands: ``(lower2, lower1, diag, upper1, upper2)``, each as long as
        the matrix; ``lower2[i]`` is ``A[i, i-2]``, ``upper1[i]`` is ``A[i, i+1]``
        and so on (entries falling outside the matrix are ignored).
    :raises PivotError: If a pivot vanishes.
    """

    def __init__(self, bands):
        """Factor the matrix."""
        lower2, lower1, diag, upper1, upper2 = (np.asarray(band, dtype=float) for band in bands)
        self.size = diag.size
        if any(band.shape != (self.size,) for band in (lower2, lower1, upper1, upper2)):
            raise ValueError("all five bands must have the same length")
        self.symmetric = np.array_equal(lower1[1:], upper1[:-1]) and np.array_equal(lower2[2:], upper2[:-2])
        if self.symmetric:
            upper = np.zeros((3, self.size))
            upper[0, 2:] = upper2[:-2]
            upper[1, 1:] = upper1[:-1]
            upper[2] = diag
            try:
                self.factor = linalg.cholesky_banded(upper)
            except (linalg.LinAlgError, ValueError):
                # indefinite or not finite: eliminate without the definiteness shortcut
                self.symmetric = False
        if not self.symmetric:
            self._eliminate(lower2, lower1, diag, upper1, upper2)

    def _eliminate(self, lower2, lower1, diag, upper1, upper2):
        # rows[i, j] holds A[i, i - 2 + j]
        rows = np.column_stack((lower2, lower1, diag, upper1, upper2))
        rows[:2, 0] = rows[:1, 1] = 0.0
        rows[-1:, 3] = rows[-2:, 4] = 0.0
        multipliers = np.zeros((self.size, 2))
        tiny = np.finfo(float).eps * float(np.max(np.abs(rows), initial=0.0))
        for k in range(self.size):
            pivot = rows[k, 2]
            if not abs(pivot) > tiny:
                raise PivotError(f"zero pivot at row {k} of the pentadiagonal matrix")
            if k + 1 < self.size:
                multipliers[k + 1, 1] = rows[k + 1, 1] / pivot
                rows[k + 1, 1:4] -= multipliers[k + 1, 1] * rows[k, 2:5]
            if k + 2 < self.size:
                multipliers[k + 2, 0] = rows[k + 2, 0] / pivot
                rows[k + 2, 0:3] -= multipliers[k + 2, 0] * rows[k, 2:5]
        self.rows, self.multipliers = rows, multipliers

    def solve(self, rhs):
        """Solution for one right-hand side."""
        rhs = np.asarray(rhs, dtype=float)
        if rhs.shape != (self.size,):
            raise ValueError(f"right-hand side must have length {self.size}")
        if self.symmetric:
            solution = linalg.cho_solve_banded((self.factor, False), rhs)
        else:
            solution = rhs.copy()
            for i in range(1, self.size):
                solution[i] -= self.multipliers[i, 1] * solution[i - 1]
                if i >= 2:
                    solution[i] -= self.multipliers[i, 0] * solution[i - 2]
            for i in range(self.size - 1, -1, -1):
                if i + 1 < self.size:
                    solution[i] -= self.rows[i, 3] * solution[i + 1]
                if i + 2 < self.size:
                    solution[i] -= self.rows[i, 4] * solution[i + 2]
                solution[i] /= self.rows[i, 2]
        if not np.all(np.isfinite(solution)):
            raise PivotError("pentadiagonal solution is not finite")
        return solution


def pentadiagonal_solve(bands, rhs):
    """Solve a pentadiagonal system by banded elimination without pivoting.

    :param bands: ``(lower2, lower1, diag, upper1, upper2)``, see :class:`PentadiagonalFactor`.
    :param rhs: Right-hand side.
    :returns: array - the solution.
    :raises PivotError: If a pivot vanishes.
    """
    if len(bands[2]) != len(rhs):
        raise ValueError("all bands must match the right-hand side length")
    return PentadiagonalFactor(bands).solve(rhs)


def apply_hamiltonian(psi, potential, h):
    """Five-point Hamiltonian on the interior nodes (walls at zero, odd ghost nodes beyond)."""
    phi = np.concatenate(([-psi[0], 0.0], psi, [0.0, -psi[-1]]))
    kinetic = 30.0 * phi[2:-2] - 16.0 * (phi[1:-3] + phi[3:-1]) + (phi[:-4] + phi[4:])
    return kinetic / (24.0 * h**2) + potential * psi


class _Propagator:
    """Crank-Nicolson step on the interior nodes."""

    def __init__(self, potential, h, dtau):
        self.potential = potential
        self.h = h
        self.set_dtau(dtau)

    def set_dtau(self, dtau):
        h2 = self.h**2
        size = self.potential.size
        self.dtau = dtau
        self.alpha = dtau / (48.0 * h2)
        self.beta = -dtau / (3.0 * h2)
        self.gamma = 1.0 + 5.0 * dtau / (8.0 * h2) + 0.5 * dtau * self.potential
        # odd reflection psi_{-1} = -psi_1 beyond each wall
        self.gamma[[0, -1]] -= self.alpha
        outer = np.full(size, self.alpha)
        inner = np.full(size, self.beta)
        try:
            self.factor = PentadiagonalFactor((outer, inner, self.gamma, inner, outer))
        except PivotError as err:
            raise PivotError(f"propagation matrix is singular for dtau={dtau:g}") from err

    def apply(self, psi):
        """Product of the pentadiagonal matrix with ``psi``."""
        result = self.gamma * psi
        result[1:] += self.beta * psi[:-1]
        result[:-1] += self.beta * psi[1:]
        result[2:] += self.alpha * psi[:-2]
        result[:-2] += self.alpha * psi[2:]
        return result

    def step(self, psi):
        """One propagation step."""
        return self.factor.solve(2.0 * psi - self.apply(psi))


def discrete_energy(psi, potential, h):
    """Rayleigh quotient of the five-point Hamiltonian.

    The kinetic form is summed from first and second differences of the
    wavefunction extended with the walls and the odd ghost nodes.
    """
    phi = np.concatenate(([-psi[0], 0.0], psi, [0.0, -psi[-1]]))
    first = np.sum(np.diff(phi[1:-1]) ** 2)
    second = np.sum((phi[2:] - phi[:-2]) ** 2) - 2.0 * psi[0] ** 2 - 2.0 * psi[-1] ** 2
    kinetic = (16.0 * first - second) / (24.0 * h**2)
    return (kinetic + np.dot(potential, psi**2)) / np.dot(psi, psi)


def _lower_vectors(states, x, h):
    vectors = []
    for state in states:
        vector = state.evaluate(x)
        for previous in vectors:
            vector -= np.dot(previous, vector) * h * previous
        vectors.append(vector / math.sqrt(np.dot(vector, vector) * h))
    return vectors


def _project(psi, lower, h):
    for vector in lower:
        psi -= np.dot(vector, psi) * h * vector
    return psi


def residual_bound(psi, energy, potential, h, lower, n):
    """Bound on the energy error of a normalized ``psi`` of state ``n``.

    ``|P (H - E) psi|**2 / gap``, ``P`` projecting out the lower states and
    ``gap`` a lower estimate ``max(|E|, 1) / (4 (n + 1))`` of the distance
    to the next level.
    """
    residual = _project(apply_hamiltonian(psi, potential, h) - energy * psi, lower, h)
    gap = max(abs(energy), 1.0) / (4.0 * (n + 1))
    return float(np.dot(residual, residual) * h) / gap


def itp_solve(system, n, cfg=None, history=None):
    """Propagate state ``n`` of a 1D box in imaginary time.

    :param system: :class:`ConfinedSystem1D` with finite walls.
    :param n: State index; ``cfg.orthogonalize_against`` must hold states ``0 .. n-1``.
    :param cfg: :class:`ItpConfig`, defaults to the configuration.
    :param history: Optional list receiving the energy after every accepted step.
    :returns: :class:`Eigenstate` on the Simpson grid through walls and nodes.
    :raises ItpConvergenceError: If ``max_steps`` steps do not converge.
    :raises ItpDivergenceError: If the energy keeps growing.
    """
    cfg = cfg or ItpConfig.from_config()
    if system.is_free:
        raise ValueError("imaginary-time propagation needs finite walls")
    if len(cfg.orthogonalize_against) < n:
        raise ValueError(f"state {n} needs the {n} lower states to project out")
    count = cfg.interior_count(system)
    full = Grid.simpson(system.wall_left, system.wall_right, count + 2)
    x, h = full.nodes[1:-1], full.step
    potential = system.potential(x)
    lower = _lower_vectors(cfg.orthogonalize_against[:n], x, h)

    psi = _project(initial_guess("even" if n % 2 == 0 else "odd", full)[1:-1], lower, h)
    psi /= math.sqrt(np.dot(psi, psi) * h)
    energy = discrete_energy(psi, potential, h)
    propagator = _Propagator(potential, h, initial_time_step(cfg, potential, h, energy))
    logger = get_logger()
    growing = 0
    for step in range(1, cfg.max_steps + 1):
        candidate = _project(propagator.step(psi), lower, h)
        candidate /= math.sqrt(np.dot(candidate, candidate) * h)
        new_energy = discrete_energy(candidate, potential, h)
        delta = new_energy - energy
        if delta > cfg.energy_tolerance * abs(energy) and propagator.dtau > cfg.dtau_min:
            # overshoot: retry the step with half the time step
            propagator.set_dtau(max(0.5 * propagator.dtau, cfg.dtau_min))
            logger.debug(f"ITP state {n} of {system}: dtau halved to {propagator.dtau:g} at step {step}")
            continue
        growing = growing + 1 if abs(new_energy) > abs(energy) else 0
        if growing >= DIVERGENCE_STEPS:
            raise ItpDivergenceError(f"energy of state {n} grew for {DIVERGENCE_STEPS} steps on {system}")
        psi, energy = candidate, new_energy
        if history is not None:
            history.append(float(energy))
        threshold = cfg.energy_tolerance * max(abs(energy), 1.0)
        if step < MIN_STEPS or abs(delta) > threshold:
            continue
        if residual_bound(psi, energy, potential, h, lower, n) <= threshold:
            logger.debug(f"ITP state {n} of {system} converged in {step} steps: E={energy:.12g}")
            break
    else:
        raise ItpConvergenceError(cfg.max_steps, energy)

    values = np.concatenate(([0.0], psi, [0.0]))
    values /= math.sqrt(integrate(values**2, full))
    return Eigenstate(
        labels=(n,),
        energy=float(energy),
        grid=full,
        values=values,
        parity=("even" if n % 2 == 0 else "odd") if system.is_symmetric else None,
        omega=system.omega,
        solver="itp",
    )


def _grid_spectrum(system, count, cfg):
    states = []
    for n in range(count):
        states.append(itp_solve(system, n, replace(cfg, orthogonalize_against=list(states))))
    return states


def itp_spectrum(system, count, cfg=None):
    """Lowest ``count`` states, each projected against the ones before it.

    With ``cfg.richardson`` the states come from the refined grid (half the
    step) and carry the energies extrapolated from both grids.
    """
    cfg = cfg or ItpConfig.from_config()
    if not cfg.richardson:
        return _grid_spectrum(system, count, cfg)
    coarse_nodes = cfg.interior_count(system)
    coarse = _grid_spectrum(system, count, replace(cfg, h=None, nodes=coarse_nodes))
    fine = _grid_spectrum(system, count, replace(cfg, h=None, nodes=2 * coarse_nodes + 1))
    return [
        replace(state, energy=(16.0 * state.energy - rough.energy) / 15.0)
        for rough, state in zip(coarse, fine, strict=True)
    ]


def richardson_energy(system, n, cfg=None):
    """Energy extrapolated from a grid and its refinement (fourth-order stencil)."""
    cfg = cfg or ItpConfig.from_config()
    return itp_spectrum(system, n + 1, replace(cfg, richardson=True))[-1].energy


class ItpSolver(BaseSolver):
    """Imaginary-time propagation for symmetric and asymmetric 1D boxes."""

    name = "itp"

    def __init__(self, cfg=None):
        """Initialize the solver with optional propagation parameters."""
        self.cfg = cfg

    def supports(self, system):
        """Finite 1D boxes."""
        return isinstance(system, ConfinedSystem1D) and not system.is_free

    @handle_solver_errors("itp")
    def solve(self, system, states):
        """Propagate the states (lower states are computed first)."""
        states = list(states)
        spectrum = itp_spectrum(system, max(states) + 1, self.cfg)
        return [spectrum[n] for n in states]
