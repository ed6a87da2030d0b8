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

"""Information-theoretic measures of position and momentum densities.

Every measure is evaluated on a :class:`RadialDensityPair`, the radial
densities of one state in both spaces plus its angular labels. Net values
add (entropies) or multiply (moments) the angular factor of ``|Y_lm|**2``,
which is the same in both spaces.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from ..momentum.api import to_momentum, to_momentum_1d
from ..numerics.api import first_derivative, integrate
from ..utils import get_config, get_logger
from .angular import angular_factor, trivial_factor

# relative slack of the bound checks
BOUND_TOLERANCE = 1e-6
# pair densities further than this from unit norm are rejected
NORM_LIMIT = 1e-3
NORM_WARNING = 1e-8


@dataclass(frozen=True, eq=False)
class RadialDensityPair:
    """Position and momentum densities of one state.

    3D pairs hold radial densities on ``r_squared`` and ``p_squared`` grids;
    1D pairs (``D=1``) hold full densities on flat grids.
    """

    r_grid: object
    rho_r: np.ndarray
    p_grid: object
    rho_p: np.ndarray
    l: int = 0
    m: int = 0
    D: int = 3
    parity: str | None = None

    def __post_init__(self):
        """Check dimensions, labels and normalization."""
        if self.D not in (1, 3):
            raise ValueError(f"D must be 1 or 3, got {self.D}")
        if abs(self.m) > self.l:
            raise ValueError(f"|m| must not exceed l, got l={self.l}, m={self.m}")
        if self.D == 1 and self.l:
            raise ValueError("1D densities carry no angular momentum")
        expected = ("r_squared", "p_squared") if self.D == 3 else ("flat", "flat")
        if (self.r_grid.measure, self.p_grid.measure) != expected:
            raise ValueError(f"D={self.D} densities need {expected[0]} and {expected[1]} grids")
        for space, rho, grid in (("position", self.rho_r, self.r_grid), ("momentum", self.rho_p, self.p_grid)):
            rho = np.asarray(rho, dtype=float)
            if np.min(rho) < 0:
                raise ValueError(f"{space} density has negative samples")
            norm = integrate(rho, grid)
            if abs(norm - 1.0) > NORM_LIMIT:
                raise ValueError(f"{space} density is not normalized (norm {norm:.10g})")
            if abs(norm - 1.0) > NORM_WARNING:
                get_logger().warning(f"{space} density norm deviates from 1 by {norm - 1.0:.3g}")
            object.__setattr__(self, "rho_r" if space == "position" else "rho_p", rho)

    @property
    def angular(self):
        """:class:`AngularFactor` of the pair."""
        return angular_factor(self.l, self.m) if self.D == 3 else trivial_factor()


def density_pair(state, momentum=None, m=None):
    """Build the density pair of an eigenstate.

    :param state: Normalized :class:`Eigenstate`.
    :param momentum: Its :class:`MomentumState`, computed when omitted.
    :param m: Magnetic quantum number (defaults to the state's).
    :returns: :class:`RadialDensityPair`.
    """
    if momentum is None:
        momentum = to_momentum(state) if state.is_radial else to_momentum_1d(state)
    return RadialDensityPair(
        r_grid=state.grid,
        rho_r=state.density(),
        p_grid=momentum.grid,
        rho_p=momentum.density(),
        l=state.l,
        m=state.m if m is None else m,
        D=3 if state.is_radial else 1,
        parity=state.parity,
    )


def shannon(pair):
    """Shannon entropies ``(S_r, S_p, S_t)``.

    ``rho ln rho`` is taken as 0 where the density vanishes.
    """
    angular = pair.angular.entropy
    S_r = integrate(special.entr(pair.rho_r), pair.r_grid) + angular
    S_p = integrate(special.entr(pair.rho_p), pair.p_grid) + angular
    return S_r, S_p, S_r + S_p


def _renyi(rho, grid, angular, order):
    if order <= 0:
        raise ValueError(f"Renyi order must be positive, got {order}")
    if order == 1:
        raise ValueError("order 1 is the Shannon entropy, use shannon()")
    moment = integrate(rho**order, grid) * angular.entropic_moment(order)
    return math.log(moment) / (1.0 - order)


def renyi(pair, alpha=None, beta=None):
    """Renyi entropies ``(R_r, R_p, R_t)`` of orders ``alpha`` (position) and ``beta`` (momentum).

    Orders default to ``CHO_TOOLKIT_RENYI_ORDERS``.
    """
    default_alpha, default_beta = get_config("CHO_TOOLKIT_RENYI_ORDERS", (0.6, 3.0))
    alpha = default_alpha if alpha is None else alpha
    beta = default_beta if beta is None else beta
    R_r = _renyi(pair.rho_r, pair.r_grid, pair.angular, alpha)
    R_p = _renyi(pair.rho_p, pair.p_grid, pair.angular, beta)
    return R_r, R_p, R_r + R_p


def onicescu(pair):
    """Onicescu energies ``(E_r, E_p, E_t)``, angular factor included in each space."""
    angular = pair.angular.onicescu
    E_r = integrate(pair.rho_r**2, pair.r_grid) * angular
    E_p = integrate(pair.rho_p**2, pair.p_grid) * angular
    return E_r, E_p, E_r * E_p


def expectations(state, system=None, momentum=None):
    """Moments entering the Fisher information.

    ``<p**2> = 2 (E - <V>)`` avoids differentiating the wavefunction. In 1D,
    ``r2`` is the variance of ``x``.

    :param state: Normalized :class:`Eigenstate`.
    :param system: System of the state; its potential is used for ``<V>``
        (``omega**2 x**2 / 2`` about the origin when omitted, 0 for the
        hard-sphere states that carry no ``omega``).
    :param momentum: Radial :class:`MomentumState`, needed for ``<p**-2>``.
    :returns: dict with ``r2``, ``p2``, ``V`` and, for radial states,
        ``r_minus2`` (plus ``p_minus2`` with ``momentum``).
    """
    x, density, grid = state.grid.nodes, state.density(), state.grid
    if state.omega is None:
        potential = np.zeros_like(x)
    elif system is not None:
        potential = system.potential(x)
    else:
        potential = 0.5 * state.omega**2 * x**2
    V = integrate(potential * density, grid)
    result = {"V": V, "p2": 2.0 * (state.energy - V)}
    if state.is_radial:
        result["r2"] = integrate(x**2 * density, grid)
        # R**2 / r**2 under r**2 dr is R**2 under dr
        result["r_minus2"] = integrate(density, grid.with_measure("flat"))
        if momentum is not None:
            result["p_minus2"] = integrate(momentum.density(), momentum.grid.with_measure("flat"))
    else:
        mean = integrate(x * density, grid)
        result["x"] = mean
        result["r2"] = integrate((x - mean) ** 2 * density, grid)
    return result


@dataclass(frozen=True)
class FisherInformation:
    """Net Fisher information and the bounds on ``I_t``."""

    I_r: float
    I_p: float
    I_t: float
    lower_bound: float
    upper_bound: float

    @property
    def within_bounds(self):
        """Whether ``lower_bound <= I_t <= upper_bound`` within the bound tolerance."""
        return (
            self.I_t >= self.lower_bound * (1.0 - BOUND_TOLERANCE)
            and self.I_t <= self.upper_bound * (1.0 + BOUND_TOLERANCE)
        )


def _numeric_fisher(rho, grid):
    """``integral rho'**2 / rho`` on a uniform flat grid."""
    derivative = first_derivative(rho, grid.step, "zero", "zero")
    positive = rho > 0
    integrand = np.zeros_like(rho)
    integrand[positive] = derivative[positive] ** 2 / rho[positive]
    return integrate(integrand, grid)


def fisher(pair, moments):
    """Net Fisher information in both spaces.

    ``I_r = 4 <p**2> - 2 (2l + 1) |m| <r**-2>`` and the mirror formula in
    momentum space. 1D states without definite parity get ``I_p`` by
    numerical differentiation of the momentum density.

    :param pair: :class:`RadialDensityPair`.
    :param moments: Output of :func:`expectations`.
    :returns: :class:`FisherInformation`.
    :raises ValueError: If ``<p**-2>`` is missing for ``m != 0``.
    """
    r2, p2 = moments["r2"], moments["p2"]
    I_r, I_p = 4.0 * p2, 4.0 * r2
    if pair.D == 1 and pair.parity is None:
        I_p = _numeric_fisher(pair.rho_p, pair.p_grid)
    m = abs(pair.m)
    if m:
        if moments.get("p_minus2") is None:
            raise ValueError("<p**-2> is needed for m != 0, pass the momentum state to expectations()")
        factor = 2.0 * (2 * pair.l + 1) * m
        I_r -= factor * moments["r_minus2"]
        I_p -= factor * moments["p_minus2"]
    return FisherInformation(
        I_r=I_r,
        I_p=I_p,
        I_t=I_r * I_p,
        lower_bound=pair.D**4 / (r2 * p2),
        upper_bound=16.0 * r2 * p2,
    )


def fisher_omega_scaling(I_r_at_1, I_p_at_1, omega):
    """Fisher information at frequency ``omega`` from its ``omega = 1`` value.

    ``I_r`` scales with ``omega / sqrt(2)`` and ``I_p`` with its inverse.
    """
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    scale = omega / math.sqrt(2.0)
    return I_r_at_1 * scale, I_p_at_1 / scale


def entropic_bounds(D, alpha=None, beta=None):
    """Lower bounds of ``S_t`` and ``R_t``.

    The Renyi bound is None unless ``1/alpha + 1/beta = 2``.
    """
    default_alpha, default_beta = get_config("CHO_TOOLKIT_RENYI_ORDERS", (0.6, 3.0))
    alpha = default_alpha if alpha is None else alpha
    beta = default_beta if beta is None else beta
    shannon_bound = D * (1.0 + math.log(math.pi))
    renyi_bound = None
    if math.isclose(1.0 / alpha + 1.0 / beta, 2.0, rel_tol=1e-12):
        renyi_bound = 0.5 * D * (math.log(alpha) / (alpha - 1.0) + math.log(beta) / (beta - 1.0)) + D * math.log(
            math.pi
        )
    return shannon_bound, renyi_bound


def complexity(pair, b, fisher_info=None, alpha=None, beta=None):
    """Complexities ``C = A exp(b B)`` with ``A`` in {E, I} and ``B`` in {R, S}.

    :param pair: :class:`RadialDensityPair`.
    :param b: Exponent.
    :param fisher_info: :class:`FisherInformation`; Fisher-based
        complexities are skipped without it.
    :returns: dict keyed ``C_ER_r``, ``C_ES_p``, ``C_IR_t``, ...
    """
    if b <= 0:
        raise ValueError(f"b must be positive, got {b}")
    entropies, renyis, energies = shannon(pair), renyi(pair, alpha, beta), onicescu(pair)
    fishers = None if fisher_info is None else (fisher_info.I_r, fisher_info.I_p, fisher_info.I_t)
    result = {}
    for index, space in enumerate(("r", "p", "t")):
        result[f"C_ER_{space}"] = energies[index] * math.exp(b * renyis[index])
        result[f"C_ES_{space}"] = energies[index] * math.exp(b * entropies[index])
        if fishers is not None:
            result[f"C_IR_{space}"] = fishers[index] * math.exp(b * renyis[index])
            result[f"C_IS_{space}"] = fishers[index] * math.exp(b * entropies[index])
    return result


@dataclass
class MeasureReport:
    """All measures of one state."""

    labels: tuple
    energy: float
    S_r: float
    S_p: float
    S_t: float
    R_r: float
    R_p: float
    R_t: float
    E_r: float
    E_p: float
    E_t: float
    I_r: float
    I_p: float
    I_t: float
    orders: tuple
    complexities: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    bound_flags: dict = field(default_factory=dict)

    def as_row(self):
        """Flat mapping of every value, for tabular output."""
        row = {
            name: getattr(self, name)
            for name in ("S_r", "S_p", "S_t", "R_r", "R_p", "R_t", "E_r", "E_p", "E_t", "I_r", "I_p", "I_t")
        }
        row.update(self.complexities)
        row.update({f"bound_{name}": value for name, value in self.bounds.items()})
        row.update({f"holds_{name}": value for name, value in self.bound_flags.items()})
        return row


def measure_report(state, system=None, momentum=None, m=None, alpha=None, beta=None, exponents=None):
    """Compute every measure of ``state``.

    :param state: Normalized :class:`Eigenstate`.
    :param system: Its system (see :func:`expectations`).
    :param momentum: Its :class:`MomentumState`, computed when omitted.
    :param m: Magnetic quantum number.
    :param exponents: Complexity exponents, ``CHO_TOOLKIT_COMPLEXITY_EXPONENTS`` by default.
    :returns: :class:`MeasureReport`.
    """
    if momentum is None:
        momentum = to_momentum(state) if state.is_radial else to_momentum_1d(state)
    default_alpha, default_beta = get_config("CHO_TOOLKIT_RENYI_ORDERS", (0.6, 3.0))
    alpha = default_alpha if alpha is None else alpha
    beta = default_beta if beta is None else beta
    exponents = exponents or get_config("CHO_TOOLKIT_COMPLEXITY_EXPONENTS", (2 / 3, 1.0))
    pair = density_pair(state, momentum, m)
    S_r, S_p, S_t = shannon(pair)
    R_r, R_p, R_t = renyi(pair, alpha, beta)
    E_r, E_p, E_t = onicescu(pair)
    info = fisher(pair, expectations(state, system, momentum))
    complexities = {}
    for b in exponents:
        complexities.update(
            {f"{name}_b{b:.4g}": value for name, value in complexity(pair, b, info, alpha, beta).items()}
        )
    shannon_bound, renyi_bound = entropic_bounds(pair.D, alpha, beta)
    bounds = {
        "shannon": shannon_bound,
        "renyi": renyi_bound,
        "fisher_lower": info.lower_bound,
        "fisher_upper": info.upper_bound,
    }
    flags = {
        "shannon": S_t >= shannon_bound - BOUND_TOLERANCE,
        "renyi": None if renyi_bound is None else R_t >= renyi_bound - BOUND_TOLERANCE,
        "fisher": info.within_bounds,
    }
    return MeasureReport(
        labels=tuple(pair_labels(state, pair)),
        energy=state.energy,
        S_r=S_r,
        S_p=S_p,
        S_t=S_t,
        R_r=R_r,
        R_p=R_p,
        R_t=R_t,
        E_r=E_r,
        E_p=E_p,
        E_t=E_t,
        I_r=info.I_r,
        I_p=info.I_p,
        I_t=info.I_t,
        orders=(alpha, beta),
        complexities=complexities,
        bounds=bounds,
        bound_flags=flags,
    )


def pair_labels(state, pair):
    """State labels with the magnetic quantum number used for ``pair``."""
    if not state.is_radial:
        return state.labels
    return (state.labels[0], state.labels[1], pair.m)
