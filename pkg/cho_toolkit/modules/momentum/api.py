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

"""Momentum-space wavefunctions.

Radial states are transformed with the kernel

    f(r, p) = sum_k a_k cos(pr) / (p**k r**(k-1)) + sum_j b_j sin(pr) / (p**j r**(j-1))

so that ``psi(p) = (-i)**l integral psi(r) f(r, p) / p dr``. The phase is
dropped (only densities are used downstream) and ``psi(p)`` is normalized
on a ``p_squared`` grid. Below ``pr = max(l, 1)`` the kernel is evaluated
through its spherical Bessel form to avoid cancellation between terms.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import special

from ..errors import KernelRangeError, MomentumGridError
from ..numerics.api import Grid, assoc_laguerre, hermite, integrate
from ..utils import get_config

MAX_KERNEL_L = 9
# p-nodes transformed per matrix product
CHUNK_SIZE = 256
# p_max = FREE_MOMENTUM_EXTENT * sqrt(omega) for free states
FREE_MOMENTUM_EXTENT = 25.0

# coefficients as tabulated, in units of 1/sqrt(pi): l -> ({k: a_k}, {j: b_j})
PRINTED_COEFFICIENTS = {
    0: ({}, {0: 1}),
    1: ({0: 1}, {1: -1}),
    2: ({1: 3}, {0: 1, 2: -3}),
    3: ({0: 1, 2: -15}, {1: -6, 3: 15}),
    4: ({1: 30, 3: -315}, {0: 1, 2: -105, 4: 315}),
    5: ({0: 1, 2: -105, 4: 945}, {1: -15, 3: 420, 5: -945}),
    6: ({1: 21, 3: -1260, 5: 10395}, {0: 1, 2: -210, 4: 4725, 6: -10395}),
    7: ({0: 1, 2: -378, 4: 17325, 6: -135135}, {1: -28, 3: 3150, 5: -2370, 7: 135135}),
    8: (
        {1: 36, 3: -6930, 5: 270270, 7: -2027025},
        {0: 1, 2: -630, 4: 51975, 6: -945945, 8: 2027025},
    ),
    9: (
        {0: 1, 2: -990, 4: 135135, 6: -4729725, 8: 34459425},
        {1: -45, 3: 13860, 5: -945945, 7: 16216200, 9: -34459425},
    ),
}

# tabulated entries that disagree with the Bessel expansion: (l, "a" or "b", index)
KNOWN_MISPRINTS = frozenset({(4, "a", 1), (4, "a", 3), (4, "b", 2), (4, "b", 4), (7, "b", 5)})


@dataclass(frozen=True)
class KernelCoefficients:
    """Coefficients ``a_k`` (cosine terms) and ``b_j`` (sine terms) of the kernel, in units of ``1/sqrt(pi)``."""

    l: int
    a_coeffs: dict
    b_coeffs: dict

    @classmethod
    def derived(cls, l):
        """Coefficients from the expansion of ``p r**2 j_l(pr)``.

        With ``c_k = (l + k)! / (k! (l - k)! 2**k)`` the sine terms carry the
        even (even ``l``) or odd (odd ``l``) ``k`` and alternate in sign.
        """
        if not 0 <= l <= MAX_KERNEL_L:
            raise KernelRangeError(f"kernel coefficients are available for l <= {MAX_KERNEL_L}, got {l}")
        a_coeffs, b_coeffs = {}, {}
        for k in range(l + 1):
            c = math.factorial(l + k) // (math.factorial(k) * math.factorial(l - k) * 2**k)
            if l % 2 == 0:
                if k % 2 == 0:
                    b_coeffs[k] = (-1) ** (k // 2) * c
                else:
                    a_coeffs[k] = (-1) ** ((k - 1) // 2) * c
            elif k % 2 == 0:
                a_coeffs[k] = (-1) ** (k // 2) * c
            else:
                b_coeffs[k] = -((-1) ** ((k - 1) // 2)) * c
        return cls(l, a_coeffs, b_coeffs)

    @classmethod
    def printed(cls, l):
        """Coefficients exactly as tabulated."""
        if l not in PRINTED_COEFFICIENTS:
            raise KernelRangeError(f"kernel coefficients are available for l <= {MAX_KERNEL_L}, got {l}")
        a_coeffs, b_coeffs = PRINTED_COEFFICIENTS[l]
        return cls(l, dict(a_coeffs), dict(b_coeffs))

    def exact(self, kind, index):
        """Exact rational value of a coefficient."""
        return Fraction((self.a_coeffs if kind == "a" else self.b_coeffs)[index])


def _bessel_sign(l):
    """Sign relating the kernel to ``p r**2 j_l(pr) / sqrt(pi)``."""
    if l % 2 == 0:
        return (-1) ** (l // 2)
    return -((-1) ** ((l - 1) // 2))


def kernel(l, r, p):
    """Kernel ``f(r, p)`` of the radial momentum transform.

    :param l: Angular momentum, at most 9.
    :param r: Radius (scalar or array).
    :param p: Momentum (scalar or array, broadcast against ``r``).
    :raises KernelRangeError: For ``l > 9``.
    """
    coefficients = KernelCoefficients.derived(l)
    r, p = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(p, dtype=float))
    pr = p * r
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = np.zeros_like(pr)
        for k, a_k in coefficients.a_coeffs.items():
            closed += a_k * np.cos(pr) / (p**k * r ** (k - 1))
        for j, b_j in coefficients.b_coeffs.items():
            closed += b_j * np.sin(pr) / (p**j * r ** (j - 1))
    small = pr < max(l, 1)
    bessel = _bessel_sign(l) * p * r**2 * special.spherical_jn(l, pr)
    result = np.where(small, bessel, closed) / math.sqrt(math.pi)
    return float(result) if result.ndim == 0 else result


def _reduced_kernel(l, r, p):
    """``f(r, p) / p`` without the removable singularity at ``p = 0``."""
    coefficients = KernelCoefficients.derived(l)
    pr = np.outer(p, r)
    small = pr < max(l, 1)
    result = _bessel_sign(l) * r**2 * special.spherical_jn(l, pr)
    if np.any(~small):
        pp = np.where(small, 1.0, np.outer(p, np.ones_like(r)))
        rr = np.where(small, 1.0, np.outer(np.ones_like(p), r))
        closed = np.zeros_like(pr)
        for k, a_k in coefficients.a_coeffs.items():
            closed += a_k * np.cos(pr) / (pp ** (k + 1) * rr ** (k - 1))
        for j, b_j in coefficients.b_coeffs.items():
            closed += b_j * np.sin(pr) / (pp ** (j + 1) * rr ** (j - 1))
        result = np.where(small, result, closed)
    return result / math.sqrt(math.pi)


@dataclass
class MomentumState:
    """Momentum-space wavefunction.

    Radial states live on a ``p_squared`` grid over ``[0, p_max]``, 1D states
    on a flat grid over ``[-p_max, p_max]``. ``normalization`` is the factor
    applied to the raw transform.
    """

    labels: tuple
    grid: Grid
    values: np.ndarray
    normalized: bool = True
    normalization: float = 1.0
    omega: float | None = None
    metadata: dict = field(default_factory=dict)

    def density(self):
        """Momentum density ``|psi(p)|**2`` (radial part for radial states)."""
        return np.abs(self.values) ** 2

    def norm(self):
        """Norm under the grid measure."""
        return integrate(self.density(), self.grid)


def momentum_cutoff(state):
    """Largest momentum sampled for ``state``."""
    omega = state.omega or 1.0
    free_extent = FREE_MOMENTUM_EXTENT * math.sqrt(omega)
    if state.free:
        return free_extent
    wall = state.grid.nodes[-1] if state.is_radial else 0.5 * (state.grid.nodes[-1] - state.grid.nodes[0])
    return max(free_extent, get_config("CHO_TOOLKIT_MOMENTUM_CUTOFF", 1500.0) / wall)


def momentum_grid(state, count=None):
    """Default Simpson ``p`` grid of ``state``."""
    count = count or get_config("CHO_TOOLKIT_MOMENTUM_NODES", 4001)
    p_max = momentum_cutoff(state)
    if state.is_radial:
        return Grid.simpson(0.0, p_max, count, measure="p_squared")
    return Grid.simpson(-p_max, p_max, 2 * count - 1)


def _check_tail(tail):
    tolerance = get_config("CHO_TOOLKIT_MOMENTUM_TAIL_TOLERANCE", 1e-6)
    if tail > tolerance:
        raise MomentumGridError(tail)


def to_momentum(state, l=None, p_grid=None):
    """Momentum-space transform of a radial state.

    :param state: Normalized radial :class:`Eigenstate`.
    :param l: Angular momentum (defaults to the state's).
    :param p_grid: ``p_squared`` grid, defaults to :func:`momentum_grid`.
    :returns: :class:`MomentumState`.
    :raises MomentumGridError: If the grid misses more than the tolerated norm.
    """
    if not state.is_radial:
        raise ValueError("to_momentum needs a radial state, use to_momentum_1d for 1D states")
    l = state.l if l is None else l
    if l != state.l:
        raise ValueError(f"l={l} does not match the state's l={state.l}")
    p_grid = p_grid or momentum_grid(state)
    sampled = state.uniform()
    r = sampled.grid.nodes
    weighted = sampled.grid.weights * sampled.values
    raw = np.empty_like(p_grid.nodes)
    for start in range(0, p_grid.nodes.size, CHUNK_SIZE):
        chunk = p_grid.nodes[start : start + CHUNK_SIZE]
        raw[start : start + chunk.size] = _reduced_kernel(l, r, chunk) @ weighted
    raw_norm = integrate(raw**2, p_grid)
    # the kernel carries 1/sqrt(pi) where the unitary transform has sqrt(2/pi)
    _check_tail(1.0 - 2.0 * raw_norm)
    scale = 1.0 / math.sqrt(raw_norm)
    return MomentumState(state.labels, p_grid, raw * scale, normalization=scale, omega=state.omega)


def to_momentum_1d(state, p_grid=None):
    """Momentum-space transform of a 1D state.

    ``psi(p) = (C(p) - i S(p)) / sqrt(2 pi)`` with the cosine and sine
    transforms ``C`` and ``S``; states of definite parity keep the real
    amplitude of their single non-vanishing part.
    """
    if state.is_radial:
        raise ValueError("to_momentum_1d needs a 1D state")
    p_grid = p_grid or momentum_grid(state)
    sampled = state.uniform()
    x, weighted = sampled.grid.nodes, sampled.grid.weights * sampled.values
    p = p_grid.nodes
    cosine, sine = np.empty_like(p), np.empty_like(p)
    for start in range(0, p.size, CHUNK_SIZE):
        phase = np.outer(p[start : start + CHUNK_SIZE], x)
        cosine[start : start + phase.shape[0]] = np.cos(phase) @ weighted
        sine[start : start + phase.shape[0]] = np.sin(phase) @ weighted
    if state.parity == "even":
        raw = cosine / math.sqrt(2.0 * math.pi)
    elif state.parity == "odd":
        raw = -sine / math.sqrt(2.0 * math.pi)
    else:
        raw = (cosine - 1j * sine) / math.sqrt(2.0 * math.pi)
    raw_norm = integrate(np.abs(raw) ** 2, p_grid)
    _check_tail(1.0 - raw_norm)
    scale = 1.0 / math.sqrt(raw_norm)
    return MomentumState(state.labels, p_grid, raw * scale, normalization=scale, omega=state.omega)


def free_momentum_state(n_r, l, omega, p_grid=None):
    """Free 3D oscillator in momentum space.

    ``psi(p) = sqrt(2 n_r! / (Gamma(n_r + l + 3/2) omega**(l + 3/2))) p**l
    exp(-p**2 / (2 omega)) L_{n_r}^{l+1/2}(p**2 / omega)``.
    """
    count = get_config("CHO_TOOLKIT_MOMENTUM_NODES", 4001)
    p_grid = p_grid or Grid.simpson(0.0, FREE_MOMENTUM_EXTENT * math.sqrt(omega), count, measure="p_squared")
    p = p_grid.nodes
    norm = math.sqrt(2.0 * math.factorial(n_r) / (math.gamma(n_r + l + 1.5) * omega ** (l + 1.5)))
    values = norm * p**l * np.exp(-(p**2) / (2.0 * omega)) * assoc_laguerre(n_r, l + 0.5, p**2 / omega)
    return MomentumState((n_r, l, 0), p_grid, values, omega=omega)


def hermite_frequency(omega):
    """Frequency ``sqrt(2) omega`` of the Hermite form ``exp(-omega_H x**2 / (2 sqrt 2))``."""
    return math.sqrt(2.0) * omega


def free_momentum_state_1d(n, omega, p_grid=None):
    """Free 1D oscillator in momentum space, ``H_n(p / sqrt(omega)) exp(-p**2 / (2 omega))`` normalized.

    At ``omega = 1`` (Hermite frequency ``sqrt 2``) the state has the same
    functional form as in position space.
    """
    count = get_config("CHO_TOOLKIT_MOMENTUM_NODES", 4001)
    extent = FREE_MOMENTUM_EXTENT * math.sqrt(omega)
    p_grid = p_grid or Grid.simpson(-extent, extent, count)
    p = p_grid.nodes
    norm = (1.0 / (math.pi * omega)) ** 0.25 / math.sqrt(2.0**n * math.factorial(n))
    values = norm * hermite(n, p / math.sqrt(omega)) * np.exp(-(p**2) / (2.0 * omega))
    return MomentumState((n,), p_grid, values, omega=omega)
