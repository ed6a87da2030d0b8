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

"""Systems, eigenstates and the base solver class.

This module defines the problem descriptions shared by every solver and the
abstract base class solvers inherit from. Solvers are registered through the
``cho_toolkit.solvers`` entry point group.

Example:
    Creating a new solver by inheriting from BaseSolver::

        from cho_toolkit.modules.api import BaseSolver, ConfinedSystem1D

        class MySolver(BaseSolver):
            '''Solver for symmetric boxes only.'''

            name = "mine"

            def supports(self, system):
                return isinstance(system, ConfinedSystem1D) and system.is_symmetric

            def solve(self, system, states):
                ...
"""

import hashlib
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import CubicSpline

from .numerics.api import Grid, integrate
from .utils import get_config


@dataclass(frozen=True)
class ConfinedSystem1D:
    """Harmonic well ``v(x) = omega**2 (x - d_m)**2 / 2`` between two hard walls.

    Infinite walls give the free oscillator. The symmetric case (SCHO) has
    ``d_m = 0`` and ``wall_left = -wall_right``; any other placement is the
    asymmetric oscillator (ACHO).
    """

    omega: float = 1.0
    d_m: float = 0.0
    wall_left: float = -math.inf
    wall_right: float = math.inf

    def __post_init__(self):
        """Validate the system."""
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.wall_left < self.wall_right:
            raise ValueError("wall_left must lie below wall_right")
        if math.isinf(self.wall_left) != math.isinf(self.wall_right):
            raise ValueError("walls must be both finite or both infinite")
        if not math.isfinite(self.d_m):
            raise ValueError("d_m must be finite")

    @classmethod
    def symmetric(cls, omega, x_c):
        """SCHO with walls at ``-x_c`` and ``x_c`` (``math.inf`` for the free oscillator)."""
        if not x_c > 0:
            raise ValueError(f"x_c must be positive, got {x_c}")
        return cls(omega=omega, d_m=0.0, wall_left=-x_c, wall_right=x_c)

    @property
    def alpha(self):
        """Well parameter ``omega / (2 sqrt 2)``."""
        return self.omega / (2.0 * math.sqrt(2.0))

    @property
    def is_free(self):
        """True without walls."""
        return math.isinf(self.wall_right)

    @property
    def is_symmetric(self):
        """True for the SCHO placement."""
        return self.d_m == 0.0 and self.wall_left == -self.wall_right

    @property
    def x_c(self):
        """Half width of a symmetric box."""
        return 0.5 * (self.wall_right - self.wall_left)

    @property
    def center(self):
        """Centre of the box (the well centre when free)."""
        if self.is_free:
            return self.d_m
        return 0.5 * (self.wall_right + self.wall_left)

    def potential(self, x):
        """Harmonic potential at ``x``."""
        return 0.5 * self.omega**2 * (np.asarray(x, dtype=float) - self.d_m) ** 2

    def cache_key(self):
        """Stable hash of the system parameters."""
        text = f"1d:{self.omega!r}:{self.d_m!r}:{self.wall_left!r}:{self.wall_right!r}"
        return hashlib.sha1(text.encode(), usedforsecurity=False).hexdigest()[:16]

    def __str__(self):
        """Short description used in logs."""
        return f"1D(omega={self.omega:g}, d_m={self.d_m:g}, walls=[{self.wall_left:g}, {self.wall_right:g}])"


@dataclass(frozen=True)
class ConfinedSystemRadial:
    """Radial oscillator of angular momentum ``l`` in ``D`` dimensions inside a sphere of radius ``r_c``."""

    omega: float = 1.0
    l: int = 0
    D: int = 3
    r_c: float = math.inf

    def __post_init__(self):
        """Validate the system."""
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.l < 0 or int(self.l) != self.l:
            raise ValueError(f"l must be a non-negative integer, got {self.l}")
        if self.D < 1 or int(self.D) != self.D:
            raise ValueError(f"D must be a positive integer, got {self.D}")
        if not self.r_c > 0:
            raise ValueError(f"r_c must be positive, got {self.r_c}")

    @property
    def alpha(self):
        """Well parameter ``omega / (2 sqrt 2)``."""
        return self.omega / (2.0 * math.sqrt(2.0))

    @property
    def is_free(self):
        """True without a confining sphere."""
        return math.isinf(self.r_c)

    @property
    def b(self):
        """Second 1F1 parameter ``l + D/2`` of the regular solution."""
        return self.l + 0.5 * self.D

    def potential(self, r):
        """Harmonic potential at ``r``."""
        return 0.5 * self.omega**2 * np.asarray(r, dtype=float) ** 2

    def cache_key(self):
        """Stable hash of the system parameters."""
        text = f"radial:{self.omega!r}:{self.l}:{self.D}:{self.r_c!r}"
        return hashlib.sha1(text.encode(), usedforsecurity=False).hexdigest()[:16]

    def __str__(self):
        """Short description used in logs."""
        return f"radial(omega={self.omega:g}, l={self.l}, D={self.D}, r_c={self.r_c:g})"


@dataclass
class Eigenstate:
    """Eigenvalue and sampled, normalized wavefunction.

    ``labels`` is ``(n,)`` for 1D states and ``(n_r, l, m)`` for radial
    states, whose ``values`` are the radial function ``R(r)`` on an
    ``r_squared`` grid.
    """

    labels: tuple
    energy: float
    grid: Grid
    values: np.ndarray
    parity: str | None = None
    omega: float | None = None
    free: bool = False
    solver: str | None = None
    interpolator: object = field(default=None, repr=False, compare=False)

    @property
    def is_radial(self):
        """True for radial states."""
        return len(self.labels) == 3

    @property
    def n(self):
        """Principal label (``n`` in 1D, ``n_r`` for radial states)."""
        return self.labels[0]

    @property
    def l(self):
        """Angular momentum (0 in 1D)."""
        return self.labels[1] if self.is_radial else 0

    @property
    def m(self):
        """Magnetic quantum number (0 in 1D)."""
        return self.labels[2] if self.is_radial else 0

    def with_m(self, m):
        """Return a copy labelled with magnetic quantum number ``m``."""
        if not self.is_radial:
            raise ValueError("only radial states carry m")
        if abs(m) > self.l:
            raise ValueError(f"|m| must not exceed l={self.l}, got {m}")
        return replace(self, labels=(self.labels[0], self.labels[1], m))

    def density(self):
        """Probability density on the grid (radial part for radial states)."""
        return self.values**2

    def norm(self):
        """Norm ``integral |psi|**2`` under the grid measure."""
        return integrate(self.values**2, self.grid)

    def node_count(self, threshold=1e-8):
        """Number of interior sign changes, ignoring samples near zero."""
        values = self.values[np.abs(self.values) > threshold * np.max(np.abs(self.values))]
        return int(np.count_nonzero(np.diff(np.sign(values))))

    def evaluate(self, x):
        """Wavefunction at arbitrary points, zero outside the grid."""
        x = np.asarray(x, dtype=float)
        lo = 0.0 if self.is_radial else self.grid.nodes[0]
        hi = self.grid.nodes[-1]
        inside = (x >= lo) & (x <= hi)
        result = np.zeros_like(x)
        if self.interpolator is not None:
            result[inside] = self.interpolator(x[inside])
        else:
            result[inside] = CubicSpline(self.grid.nodes, self.values)(x[inside])
        return result

    def resample(self, grid):
        """Return the state sampled on another grid."""
        return replace(self, grid=grid, values=self.evaluate(grid.nodes))

    def uniform(self, count=None):
        """Return the state on a uniform Simpson grid.

        The state itself is returned when it already lives on one with
        ``count`` nodes (any count when ``count`` is None).
        """
        if self.grid.rule == "simpson" and count in (None, len(self.grid)):
            return self
        count = count or get_config("CHO_TOOLKIT_GRID_NODES", 6001)
        lo = 0.0 if self.is_radial else self.grid.nodes[0]
        return self.resample(Grid.simpson(lo, self.grid.nodes[-1], count, self.grid.measure))


class BaseSolver(ABC):
    """Abstract base class for eigensolvers.

    A solver declares which systems it handles through :meth:`supports` and
    returns normalized eigenstates from :meth:`solve`. The ``auto`` solver
    resolution walks ``CHO_TOOLKIT_SOLVERS`` and picks the first solver
    supporting the system.
    """

    name = None

    @abstractmethod
    def supports(self, system):
        """Tell whether the solver handles ``system``.

        :param system: :class:`ConfinedSystem1D` or :class:`ConfinedSystemRadial`.
        :returns: bool
        """
        raise NotImplementedError("Subclasses must implement supports method.")

    @abstractmethod
    def solve(self, system, states):
        """Compute eigenstates.

        :param system: The system to solve.
        :param states: Iterable of state indices (``n`` in 1D, ``n_r`` for radial systems).
        :returns: list of :class:`Eigenstate` in the order of ``states``.
        """
        raise NotImplementedError("Subclasses must implement solve method.")

    def energy(self, system, state):
        """Energy of a single state."""
        return self.solve(system, [state])[0].energy

    def __repr__(self):
        """Return string representation of the solver."""
        return f"<{self.__class__.__name__}>"
