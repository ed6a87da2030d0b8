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

"""Exact eigenstates of confined harmonic oscillators.

Every sector (1D even, 1D odd, radial ``l`` in ``D`` dimensions) has the
regular solution ``x**p exp(-omega x**2 / 2) 1F1(a, b, omega x**2)`` with
``a = (b - E/omega) / 2``. Energies are the roots in ``E`` of the 1F1 at the
wall, bracketed between the box and free levels, and the root is accepted
when its wavefunction has the requested number of interior nodes.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

from ..api import BaseSolver, ConfinedSystem1D, ConfinedSystemRadial, Eigenstate
from ..errors import KummerArgumentError, KummerConvergenceError, RootScanError
from ..numerics.api import (
    Grid,
    SeriesTruncation,
    assoc_laguerre,
    bessel_zero,
    find_root_bracketed,
    hermite,
    integrate,
    kummer_1f1,
    spherical_bessel_zero,
)
from ..utils import get_config, get_logger, handle_solver_errors, scan_with_retries

# interior samples used to count the nodes of a candidate root
NODE_SAMPLES = 400

# largest kappa * step of one Taylor step of the continuation
TAYLOR_STEP = 1.5
TAYLOR_TOLERANCE = 1e-17
TAYLOR_MAX_TERMS = 200
RESCALE_LIMIT = 1e150
MAX_BISECTIONS = 200
MAX_SECANT_STEPS = 100


@dataclass
class DegeneracyHit:
    """States sharing one energy at one boundary.

    ``members`` holds ``(n_r, l, D)`` triples (``(n, 0, 1)`` in 1D) and
    ``boundary`` the shared ``r_c`` or ``x_c``. ``free_level`` is the free
    oscillator level whose energy the confined states reach, when relevant.
    """

    energy: float
    members: list = field(default_factory=list)
    boundary: float = math.inf
    free_level: int | None = None


def free_tail(b, k, y_wall):
    """Estimate of the free density beyond ``y = omega * wall**2``."""
    return float(special.gammaincc(2 * k + b, y_wall))


def _box_energy(b, k, wall):
    return bessel_zero(b - 1.0, k + 1) ** 2 / (2.0 * wall**2)


def _count_nodes(values):
    return int(np.count_nonzero(np.diff(np.sign(values[values != 0.0]))))


def sector_energy(omega, b, k, wall, trunc=None):
    """Energy of the ``k``-th state of the sector ``b`` inside ``wall``.

    :param omega: Oscillator frequency.
    :param b: 1F1 parameter of the sector (1/2 even, 3/2 odd, ``l + D/2`` radial).
    :param k: Number of interior nodes of the radial (half-line) solution.
    :param wall: Wall position (``math.inf`` for the free oscillator).
    :param trunc: :class:`SeriesTruncation` of the 1F1 series.
    :returns: float - the energy.
    :raises KummerArgumentError: If the wall lies beyond the series range
        while the free density there is not negligible.
    :raises RootScanError: If no root with ``k`` nodes is found.
    """
    free_energy = (2 * k + b) * omega
    if math.isinf(wall):
        return free_energy
    y_wall = omega * wall**2
    limit = get_config("CHO_TOOLKIT_KUMMER_MAX_ARGUMENT", 36.0)
    if y_wall > limit:
        if free_tail(b, k, y_wall) < get_config("CHO_TOOLKIT_FREE_TAIL_TOLERANCE", 1e-14):
            get_logger().debug(f"Wall at y={y_wall:g} beyond series range, using free level {free_energy:g}")
            return free_energy
        raise KummerArgumentError(y_wall, limit)
    trunc = trunc or SeriesTruncation.from_config()
    box_energy = _box_energy(b, k, wall)
    lo = max(box_energy, free_energy) * (1.0 - 1e-10)
    hi = box_energy + 0.5 * omega**2 * wall**2
    samples = omega * np.linspace(0.0, wall, NODE_SAMPLES + 2)[1:-1] ** 2

    def boundary(energy):
        return kummer_1f1(0.5 * (b - energy / omega), b, y_wall, trunc)

    def scan(step):
        energies = np.append(np.arange(lo, hi, step), hi)
        values = [boundary(energy) for energy in energies]
        found = 0
        for index in range(len(energies) - 1):
            if values[index] * values[index + 1] >= 0:
                continue
            root = find_root_bracketed(boundary, energies[index], energies[index + 1], tol=1e-14)
            found += 1
            if _count_nodes(kummer_1f1(0.5 * (b - root / omega), b, samples, trunc)) == k:
                return root
        raise RootScanError(k, found)

    step = min(get_config("CHO_TOOLKIT_ROOT_SCAN_FRACTION", 0.25) * omega, (hi - lo) / 64.0)
    return scan_with_retries(scan, step)


def _regular_solution(omega, a, b, power, trunc):
    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return x**power * np.exp(-0.5 * omega * x**2) * kummer_1f1(a, b, omega * x**2, trunc)

    return evaluate


def _normalized_state(evaluate, grid, wall_indices, **kwargs):
    values = evaluate(grid.nodes)
    values[wall_indices] = 0.0
    scale = 1.0 / math.sqrt(integrate(values**2, grid))
    return Eigenstate(grid=grid, values=values * scale, interpolator=lambda x: scale * evaluate(x), **kwargs)


def free_extent(omega, b, k):
    """Half width beyond which a free state is negligible (density below ``e**-40``)."""
    return math.sqrt((2.0 * (2 * k + b) + 80.0) / omega)


def free_eigenstate_1d(omega, n, extent=None):
    """Free 1D oscillator state ``H_n(sqrt(omega) x) exp(-omega x**2 / 2)``.

    The sign is chosen so that the state (or its slope) is positive at the origin.
    """
    k, b = n // 2, 0.5 + n % 2
    extent = extent or free_extent(omega, b, k)
    norm = (omega / math.pi) ** 0.25 / math.sqrt(2.0**n * math.factorial(n)) * (-1) ** k

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return norm * hermite(n, math.sqrt(omega) * x) * np.exp(-0.5 * omega * x**2)

    grid = Grid.simpson(-extent, extent, get_config("CHO_TOOLKIT_GRID_NODES", 6001))
    return Eigenstate(
        labels=(n,),
        energy=(n + 0.5) * omega,
        grid=grid,
        values=evaluate(grid.nodes),
        parity="even" if n % 2 == 0 else "odd",
        omega=omega,
        free=True,
        solver="exact",
        interpolator=evaluate,
    )


def free_eigenstate_radial(omega, l, n_r, extent=None):
    """Free 3D oscillator radial function ``r**l exp(-omega r**2 / 2) L_{n_r}^{l+1/2}(omega r**2)``."""
    b = l + 1.5
    extent = extent or free_extent(omega, b, n_r)
    norm = math.sqrt(2.0 * omega**b * math.factorial(n_r) / math.gamma(n_r + b))

    def evaluate(r):
        r = np.asarray(r, dtype=float)
        return norm * r**l * np.exp(-0.5 * omega * r**2) * assoc_laguerre(n_r, l + 0.5, omega * r**2)

    grid = Grid.simpson(0.0, extent, get_config("CHO_TOOLKIT_GRID_NODES", 6001), measure="r_squared")
    return Eigenstate(
        labels=(n_r, l, 0),
        energy=(2 * n_r + b) * omega,
        grid=grid,
        values=evaluate(grid.nodes),
        omega=omega,
        free=True,
        solver="exact",
        interpolator=evaluate,
    )


def scho_eigenstate(system, n, trunc=None):
    """``n``-th eigenstate of the symmetric confined oscillator.

    Even states come from ``1F1(a, 1/2, omega x**2)``, odd states from
    ``x 1F1(a, 3/2, omega x**2)``; state ``n`` is the ``n // 2``-th root of
    its parity sector.

    :param system: Symmetric :class:`ConfinedSystem1D`.
    :param n: State index.
    :returns: :class:`Eigenstate` on a Simpson grid spanning the box.
    """
    if not system.is_symmetric:
        raise ValueError(f"{system} is not a symmetric box")
    if n < 0:
        raise ValueError("state index must be non-negative")
    omega, k, power = system.omega, n // 2, n % 2
    b = 0.5 + power
    energy = sector_energy(omega, b, k, system.x_c, trunc)
    if system.is_free or omega * system.x_c**2 > get_config("CHO_TOOLKIT_KUMMER_MAX_ARGUMENT", 36.0):
        extent = min(system.x_c, free_extent(omega, b, k))
        state = free_eigenstate_1d(omega, n, extent)
        if not system.is_free:
            state.values[[0, -1]] = 0.0
        return state
    grid = Grid.simpson(-system.x_c, system.x_c, get_config("CHO_TOOLKIT_GRID_NODES", 6001))
    evaluate = _regular_solution(omega, 0.5 * (b - energy / omega), b, power, trunc)
    return _normalized_state(
        evaluate,
        grid,
        [0, -1],
        labels=(n,),
        energy=energy,
        parity="even" if power == 0 else "odd",
        omega=omega,
        solver="exact",
    )


def taylor_march(omega, energies, stops, psi, slope):
    """March ``psi'' = (omega**2 x**2 - 2 E) psi`` through ``stops``.

    One column per energy. Each step sums the Taylor series of the solution
    about the current stop, in any direction along ``stops``. A column that
    grows beyond ``RESCALE_LIMIT`` is rescaled together with its history.

    :returns: ``(values, slopes)``, each of shape ``(len(stops), len(energies))``.
    :raises KummerConvergenceError: If a step needs more than ``TAYLOR_MAX_TERMS`` terms.
    """
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    psi = np.broadcast_to(np.asarray(psi, dtype=float), energies.shape).copy()
    slope = np.broadcast_to(np.asarray(slope, dtype=float), energies.shape).copy()
    values = np.empty((len(stops), energies.size))
    slopes = np.empty_like(values)
    values[0], slopes[0] = psi, slope
    zero = np.zeros_like(psi)
    for index in range(1, len(stops)):
        x0, delta = stops[index - 1], stops[index] - stops[index - 1]
        a = (omega**2 * x0**2 - 2.0 * energies) * delta**2
        b = 2.0 * omega**2 * x0 * delta**3
        c = omega**2 * delta**4
        # scaled coefficients d_m = psi^(m)(x0) delta**m / m!, last four kept
        terms = [zero, zero, psi, slope * delta]
        total, moment = psi + terms[3], terms[3].copy()
        for m in range(TAYLOR_MAX_TERMS - 2):
            term = (a * terms[2] + b * terms[1] + c * terms[0]) / ((m + 2) * (m + 1))
            terms = [terms[1], terms[2], terms[3], term]
            total += term
            moment += (m + 2) * term
            tail = np.abs(terms[1]) + np.abs(terms[2]) + np.abs(terms[3])
            if np.all(tail <= TAYLOR_TOLERANCE * (np.abs(total) + np.abs(moment))):
                break
        else:
            raise KummerConvergenceError(total, TAYLOR_MAX_TERMS)
        psi, slope = total, moment / delta
        size = np.maximum(np.abs(psi), np.abs(slope))
        if np.any(size > RESCALE_LIMIT):
            factor = np.where(size > RESCALE_LIMIT, 1.0 / size, 1.0)
            psi, slope = psi * factor, slope * factor
            values[:index] *= factor
            slopes[:index] *= factor
        values[index], slopes[index] = psi, slope
    return values, slopes


def _centre_nodes(omega, energies, odd, stops):
    """Sign changes on ``(0, x_c]`` of the solutions started at the centre."""
    values, _ = taylor_march(omega, energies, stops, np.where(odd, 0.0, 1.0), np.where(odd, 1.0, 0.0))
    return np.count_nonzero(values[:-1] * values[1:] < 0, axis=0)


def _centre_mismatch(omega, energies, odd, stops):
    """Centre condition of the solutions started at the wall, free of their scale.

    ``psi(0)`` for odd states and ``psi'(0)`` for even ones, divided by
    ``|(psi(0), psi'(0) / k)|``.
    """
    values, slopes = taylor_march(omega, energies, stops[::-1], 0.0, -1.0)
    psi, slope = values[-1], slopes[-1]
    k = np.sqrt(np.maximum(2.0 * energies, 1.0))
    return np.where(odd, psi, slope / k) / np.hypot(psi, slope / k)


def _illinois(f, lo, hi):
    """Vectorized Illinois iteration on brackets ``[lo, hi]`` with one sign change each."""
    f_lo, f_hi = f(lo), f(hi)
    side = np.zeros(lo.shape, dtype=int)
    eps = np.finfo(float).eps
    for _ in range(MAX_SECANT_STEPS):
        active = (hi - lo > 4.0 * eps * np.abs(hi)) & (f_lo != 0.0) & (f_hi != 0.0)
        if not active.any():
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            guess = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        inside = np.isfinite(guess) & (guess > lo) & (guess < hi)
        guess = np.where(inside, guess, 0.5 * (lo + hi))
        f_guess = f(guess)
        left = active & (np.sign(f_guess) == np.sign(f_lo))
        right = active & ~left
        # a side kept twice in a row has its value halved
        f_hi = np.where(left & (side == 1), 0.5 * f_hi, f_hi)
        f_lo = np.where(right & (side == -1), 0.5 * f_lo, f_lo)
        lo, f_lo = np.where(left, guess, lo), np.where(left, f_guess, f_lo)
        hi, f_hi = np.where(right, guess, hi), np.where(right, f_guess, f_hi)
        side = np.where(left, 1, np.where(right, -1, side))
    return np.where(np.abs(f_lo) < np.abs(f_hi), lo, hi)


def scho_spectrum(omega, x_c, count, points=None):
    """Lowest ``count`` levels of the symmetric box ``[-x_c, x_c]`` and their wavefunctions.

    The regular solutions are continued by Taylor steps of the oscillator
    equation, which holds for every ``omega x_c**2`` and state index where
    the ascending 1F1 series cancels. Each level is isolated by the nodes
    of the solution started at the centre and refined on the centre
    condition of the solution started at the wall.

    :param points: Optional sample points inside the box.
    :returns: ``(energies, values)``; ``values`` holds one column per state,
        unnormalized, even states positive and odd states rising at the
        centre (``None`` without points).
    :raises RootScanError: If a level cannot be isolated.
    """
    if not omega > 0 or not 0 < x_c < math.inf:
        raise ValueError(f"omega and x_c must be positive and finite, got {omega}, {x_c}")
    if count < 1:
        raise ValueError("count must be positive")
    n = np.arange(count)
    odd, k = n % 2 == 1, n // 2
    box = ((n + 1) * math.pi / (2.0 * x_c)) ** 2 / 2.0
    lo = np.maximum(box, (n + 0.5) * omega) * (1.0 - 1e-12)
    hi = (box + 0.5 * omega**2 * x_c**2) * (1.0 + 1e-9)
    kappa = math.sqrt(max(2.0 * hi[-1], omega**2 * x_c**2) + 1.0)
    stops = np.linspace(0.0, x_c, math.ceil(kappa * x_c / TAYLOR_STEP) + 1)

    nodes_lo, nodes_hi = _centre_nodes(omega, lo, odd, stops), _centre_nodes(omega, hi, odd, stops)
    for _ in range(MAX_BISECTIONS):
        isolated = (nodes_lo == k) & (nodes_hi == k + 1)
        if isolated.all():
            break
        mid = 0.5 * (lo + hi)
        nodes_mid = _centre_nodes(omega, mid, odd, stops)
        below = ~isolated & (nodes_mid <= k)
        above = ~isolated & (nodes_mid > k)
        lo, nodes_lo = np.where(below, mid, lo), np.where(below, nodes_mid, nodes_lo)
        hi, nodes_hi = np.where(above, mid, hi), np.where(above, nodes_mid, nodes_hi)
    else:
        missing = int(np.argmin((nodes_lo == k) & (nodes_hi == k + 1)))
        raise RootScanError(int(k[missing]), [int(nodes_lo[missing]), int(nodes_hi[missing])])
    energies = _illinois(lambda energy: _centre_mismatch(omega, energy, odd, stops), lo, hi)
    if points is None:
        return energies, None

    points = np.asarray(points, dtype=float)
    radius = np.abs(points)
    path = np.union1d(stops, radius)
    values, slopes = taylor_march(omega, energies, path[::-1], 0.0, -1.0)
    sign = np.sign(np.where(odd, slopes[-1], values[-1]))
    rows = len(path) - 1 - np.searchsorted(path, radius)
    samples = values[rows] * sign
    samples[points < 0] *= np.where(odd, -1.0, 1.0)
    samples[np.ix_(points == 0.0, odd)] = 0.0
    return energies, samples


def cho3d_eigenstate(system, n_r, trunc=None):
    """``n_r``-th radial eigenstate of the 3D oscillator confined in a sphere.

    :param system: :class:`ConfinedSystemRadial` with ``D = 3``.
    :param n_r: Radial quantum number.
    :returns: :class:`Eigenstate` holding ``R(r)`` on an ``r_squared`` grid.
    """
    if system.D != 3:
        raise ValueError(f"radial eigenstates are built for D = 3 only, got D = {system.D}")
    if n_r < 0:
        raise ValueError("n_r must be non-negative")
    omega, l, b = system.omega, system.l, system.b
    energy = sector_energy(omega, b, n_r, system.r_c, trunc)
    if system.is_free or omega * system.r_c**2 > get_config("CHO_TOOLKIT_KUMMER_MAX_ARGUMENT", 36.0):
        extent = min(system.r_c, free_extent(omega, b, n_r))
        state = free_eigenstate_radial(omega, l, n_r, extent)
        if not system.is_free:
            state.values[-1] = 0.0
        return state
    grid = Grid.simpson(0.0, system.r_c, get_config("CHO_TOOLKIT_GRID_NODES", 6001), measure="r_squared")
    evaluate = _regular_solution(omega, 0.5 * (b - energy / omega), b, l, trunc)
    return _normalized_state(evaluate, grid, [-1], labels=(n_r, l, 0), energy=energy, omega=omega, solver="exact")


def pisb_energy(l, n_r, r_c):
    """Particle-in-a-spherical-box energy ``Z**2 / (2 r_c**2)``.

    ``Z`` is the ``(n_r + 1)``-th zero of the spherical Bessel function ``j_l``.
    """
    if not r_c > 0 or math.isinf(r_c):
        raise ValueError(f"r_c must be positive and finite, got {r_c}")
    return spherical_bessel_zero(l, n_r + 1) ** 2 / (2.0 * r_c**2)


def pisb_eigenstate(l, n_r, r_c):
    """Normalized particle-in-a-spherical-box radial function ``j_l(Z r / r_c)``."""
    zero = spherical_bessel_zero(l, n_r + 1)
    grid = Grid.simpson(0.0, r_c, get_config("CHO_TOOLKIT_GRID_NODES", 6001), measure="r_squared")

    def evaluate(r):
        return special.spherical_jn(l, zero * np.asarray(r, dtype=float) / r_c)

    return _normalized_state(
        evaluate, grid, [-1], labels=(n_r, l, 0), energy=zero**2 / (2.0 * r_c**2), solver="pisb"
    )


def _truncated_roots(a, b):
    """Ascending roots of the terminating series ``1F1(a, b, y)`` for a non-positive integer ``a``."""
    coefficients = [1.0]
    for j in range(int(-a)):
        coefficients.append(coefficients[-1] * (a + j) / ((b + j) * (j + 1)))
    return np.sort(Polynomial(coefficients).roots().real)


def find_incidental_degeneracies_1d(alpha, max_terms):
    """Boxes where an even SCHO state reaches a free oscillator level.

    Truncating the even series after ``k`` terms (``a = 1 - k``) gives the
    energy ``(4k - 3) sqrt(2) alpha`` of the free level ``2(k - 1)``. Every
    root ``y`` of the truncated polynomial is a half width
    ``x_c = sqrt(y / omega)``; the ``i``-th root (ascending) hosts state ``2i``.

    :param alpha: Well parameter ``omega / (2 sqrt 2)``.
    :param max_terms: Largest truncation length, between 2 and 8.
    :returns: list of :class:`DegeneracyHit` ordered by truncation and box size.
    """
    if not 2 <= max_terms <= 8:
        raise ValueError(f"max_terms must lie in [2, 8], got {max_terms}")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    omega = 2.0 * math.sqrt(2.0) * alpha
    hits = []
    for k in range(2, max_terms + 1):
        energy = (4 * k - 3) * math.sqrt(2.0) * alpha
        for index, root in enumerate(_truncated_roots(1.0 - k, 0.5)):
            hits.append(DegeneracyHit(energy, [(2 * index, 0, 1)], math.sqrt(root / omega), free_level=2 * (k - 1)))
    return hits


def degeneracy_selection_3d(n_r, l, D, j, alpha=1.0 / (2.0 * math.sqrt(2.0))):
    """Inter-dimensional degenerate partner of the state ``(n_r, l, D)``.

    Truncating the radial series at ``a = -(n_r + 1)`` fixes the energy
    ``(2 n_r + 2 + b) omega`` and the radius from the largest polynomial root,
    both depending on ``b = l + D/2`` only, so ``(n_r, l + j, D - 2j)`` shares
    them. For ``n_r = 0`` the energy is ``sqrt(2) alpha (D + 2l + 4)`` at
    ``r_c = sqrt((l + D/2) / (2 sqrt(2) alpha))``.

    :param j: Signed shift of the angular momentum (0 returns the state alone).
    :raises ValueError: If the partner quantum numbers are invalid.
    """
    if n_r < 0 or l < 0 or D < 2:
        raise ValueError(f"invalid state (n_r={n_r}, l={l}, D={D})")
    if l + j < 0 or D - 2 * j < 2:
        raise ValueError(f"invalid partner (l={l + j}, D={D - 2 * j})")
    omega = 2.0 * math.sqrt(2.0) * alpha
    b = l + 0.5 * D
    y = _truncated_roots(-(n_r + 1.0), b)[-1]
    members = [(n_r, l, D)] if j == 0 else [(n_r, l, D), (n_r, l + j, D - 2 * j)]
    return DegeneracyHit((2 * n_r + 2 + b) * omega, members, math.sqrt(y / omega))


def simultaneous_degeneracy(pairs, n_r=0, alpha=1.0 / (2.0 * math.sqrt(2.0))):
    """Group ``(l, D)`` pairs whose truncated states share energy and radius.

    :param pairs: Iterable of ``(l, D)``.
    :returns: list of :class:`DegeneracyHit` with at least two members.
    """
    groups = {}
    for l, D in pairs:
        hit = degeneracy_selection_3d(n_r, l, D, 0, alpha)
        key = (round(hit.energy, 10), round(hit.boundary, 10))
        groups.setdefault(key, DegeneracyHit(hit.energy, [], hit.boundary)).members.extend(hit.members)
    return [hit for hit in groups.values() if len(hit.members) > 1]


class ExactSolver(BaseSolver):
    """1F1 boundary-root solver for symmetric 1D boxes and 3D spheres."""

    name = "exact"

    def __init__(self, trunc=None):
        """Initialize the solver with an optional series truncation."""
        self.trunc = trunc

    def supports(self, system):
        """Symmetric 1D boxes and 3D radial systems."""
        if isinstance(system, ConfinedSystem1D):
            return system.is_symmetric
        return isinstance(system, ConfinedSystemRadial) and system.D == 3

    @handle_solver_errors("exact")
    def solve(self, system, states):
        """Exact eigenstates of ``system``."""
        if isinstance(system, ConfinedSystem1D):
            return [scho_eigenstate(system, n, self.trunc) for n in states]
        return [cho3d_eigenstate(system, n_r, self.trunc) for n_r in states]


class PisbSolver(BaseSolver):
    """Particle in a spherical box of the same radius (the oscillator is dropped)."""

    name = "pisb"

    def supports(self, system):
        """Finite 3D spheres."""
        return isinstance(system, ConfinedSystemRadial) and system.D == 3 and not system.is_free

    @handle_solver_errors("pisb")
    def solve(self, system, states):
        """Spherical-Bessel eigenstates of the box."""
        return [pisb_eigenstate(system.l, n_r, system.r_c) for n_r in states]
