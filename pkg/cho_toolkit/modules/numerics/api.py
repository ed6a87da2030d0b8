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

"""Special functions, quadrature and linear algebra shared by the solvers."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg, optimize, special

from ..errors import (
    BesselZeroError,
    EigensolverError,
    KummerConvergenceError,
    QuadratureError,
    RootBracketError,
)
from ..utils import get_config

MEASURES = ("flat", "r_squared", "p_squared")


@dataclass(frozen=True, eq=False)
class Grid:
    """Quadrature grid with its integration measure.

    :param nodes: Strictly increasing nodes.
    :param weights: Positive quadrature weights (one per node).
    :param measure: ``flat``, ``r_squared`` or ``p_squared``; the squared
        measures fold ``x**2`` into every integral.
    :param rule: Name of the node rule (``simpson``, ``lobatto``, ``gauss``
        or ``custom``).
    """

    nodes: np.ndarray
    weights: np.ndarray
    measure: str = "flat"
    rule: str = "custom"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        """Validate the grid invariants."""
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1D arrays of the same length")
        if nodes.size > 1 and np.any(np.diff(nodes) <= 0):
            raise ValueError("grid nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def simpson(cls, lo, hi, count, measure="flat"):
        """Composite Simpson grid on ``[lo, hi]`` with an odd node count."""
        if count < 3 or count % 2 == 0:
            raise ValueError(f"Simpson grids need an odd node count >= 3, got {count}")
        nodes = np.linspace(lo, hi, count)
        h = (hi - lo) / (count - 1)
        weights = np.full(count, 2.0)
        weights[1::2] = 4.0
        weights[0] = weights[-1] = 1.0
        return cls(nodes, weights * h / 3.0, measure, "simpson")

    @classmethod
    def gauss_legendre(cls, lo, hi, count, measure="flat"):
        """Gauss-Legendre grid on ``[lo, hi]``."""
        x, w = special.roots_legendre(count)
        half = 0.5 * (hi - lo)
        return cls(half * x + 0.5 * (hi + lo), half * w, measure, "gauss")

    @classmethod
    def lobatto(cls, lo, hi, order, measure="flat"):
        """Legendre-Gauss-Lobatto grid of ``order + 1`` nodes on ``[lo, hi]``, both ends included."""
        if order < 2:
            raise ValueError(f"Lobatto grids need an order >= 2, got {order}")
        interior = np.sort(special.roots_jacobi(order - 1, 1.0, 1.0)[0])
        x = np.concatenate(([-1.0], interior, [1.0]))
        w = 2.0 / (order * (order + 1) * special.eval_legendre(order, x) ** 2)
        half = 0.5 * (hi - lo)
        nodes = half * x + 0.5 * (hi + lo)
        nodes[[0, -1]] = lo, hi
        return cls(nodes, half * w, measure, "lobatto")

    @property
    def step(self):
        """Node spacing of uniform grids (``None`` otherwise)."""
        if self.rule != "simpson":
            return None
        return float(self.nodes[1] - self.nodes[0])

    @property
    def measure_factor(self):
        """Weight function folded into integrals."""
        if self.measure == "flat":
            return np.ones_like(self.nodes)
        return self.nodes**2

    def with_measure(self, measure):
        """Return the same nodes and weights under another measure."""
        return Grid(self.nodes, self.weights, measure, self.rule, dict(self.metadata))

    def __len__(self):
        """Number of nodes."""
        return self.nodes.size


@dataclass(frozen=True)
class SeriesTruncation:
    """Stopping rule of the 1F1 ascending series."""

    max_terms: int = 500
    tail_tolerance: float = 1e-16

    def __post_init__(self):
        """Validate the truncation parameters."""
        if self.max_terms < 10:
            raise ValueError("max_terms must be at least 10")
        if not 0 < self.tail_tolerance <= 1e-6:
            raise ValueError("tail_tolerance must lie in (0, 1e-6]")

    @classmethod
    def from_config(cls):
        """Build the truncation from the configuration."""
        return cls(
            max_terms=get_config("CHO_TOOLKIT_KUMMER_MAX_TERMS", 500),
            tail_tolerance=get_config("CHO_TOOLKIT_KUMMER_TAIL_TOLERANCE", 1e-16),
        )


def _is_non_positive_integer(value):
    return value <= 0 and float(value).is_integer()


def _kummer_scalar(a, b, y, trunc):
    total, compensation, term = 1.0, 0.0, 1.0
    polynomial = _is_non_positive_integer(a)
    for k in range(trunc.max_terms):
        term *= (a + k) / (b + k) * y / (k + 1)
        # Neumaier compensated summation
        partial = total + term
        if abs(total) >= abs(term):
            compensation += (total - partial) + term
        else:
            compensation += (term - partial) + total
        total = partial
        if polynomial and term == 0.0:
            return total + compensation
        ratio = abs((a + k + 1) / (b + k + 1)) * y / (k + 2)
        if ratio < 0.5 and abs(term) * ratio / (1.0 - ratio) <= trunc.tail_tolerance * abs(total + compensation):
            return total + compensation
        if term == 0.0:
            return total + compensation
    raise KummerConvergenceError(total + compensation, trunc.max_terms)


def _kummer_array(a, b, y, trunc):
    total = np.ones_like(y)
    compensation = np.zeros_like(y)
    term = np.ones_like(y)
    polynomial = _is_non_positive_integer(a)
    for k in range(trunc.max_terms):
        term = term * ((a + k) / (b + k)) * y / (k + 1)
        partial = total + term
        compensation += np.where(np.abs(total) >= np.abs(term), (total - partial) + term, (term - partial) + total)
        total = partial
        if polynomial and not np.any(term):
            return total + compensation
        ratio = abs((a + k + 1) / (b + k + 1)) * y / (k + 2)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(ratio < 0.5, np.abs(term) * ratio / (1.0 - ratio), np.inf)
        if np.all((tail <= trunc.tail_tolerance * np.abs(total + compensation)) | (term == 0.0)):
            return total + compensation
    raise KummerConvergenceError(total + compensation, trunc.max_terms)


def kummer_1f1(a, b, y, trunc=None):
    """Kummer confluent hypergeometric function by its ascending series.

    The series ``sum (a)_k / (b)_k y**k / k!`` is summed with compensated
    summation and stopped once the tail bound falls below
    ``trunc.tail_tolerance`` times the partial sum. For ``a`` a non-positive
    integer the sum is the terminating polynomial.

    :param a: First parameter.
    :param b: Second parameter, not a non-positive integer.
    :param y: Non-negative argument (scalar or array).
    :param trunc: :class:`SeriesTruncation`, defaults to the configuration.
    :returns: float or array matching ``y``.
    :raises KummerConvergenceError: If ``trunc.max_terms`` terms do not suffice.
    """
    if _is_non_positive_integer(b):
        raise ValueError(f"b must not be a non-positive integer, got {b}")
    trunc = trunc or SeriesTruncation.from_config()
    values = np.asarray(y, dtype=float)
    if np.any(values < 0):
        raise ValueError("the 1F1 argument must be non-negative")
    if values.ndim == 0:
        return _kummer_scalar(float(a), float(b), float(values), trunc)
    return _kummer_array(float(a), float(b), values, trunc)


def hermite(n, y):
    """Physicists' Hermite polynomial by the three-term recurrence.

    :param n: Non-negative degree.
    :param y: Scalar or array argument.
    """
    if n < 0:
        raise ValueError("Hermite degree must be non-negative")
    y = np.asarray(y, dtype=float)
    previous, current = np.zeros_like(y), np.ones_like(y)
    for k in range(n):
        previous, current = current, 2.0 * y * current - 2.0 * k * previous
    return float(current) if current.ndim == 0 else current


def hermite_derivative(n, y):
    """Derivative of ``H_n`` through ``H_n' = 2 n H_{n-1}``."""
    if n == 0:
        return 0.0 * np.asarray(y, dtype=float) if np.ndim(y) else 0.0
    return 2.0 * n * hermite(n - 1, y)


def assoc_laguerre(n, k, u):
    """Associated Laguerre polynomial ``L_n^k(u)`` by its recurrence.

    :param n: Non-negative degree.
    :param k: Order, ``k > -1``.
    :param u: Scalar or array argument.
    """
    if n < 0:
        raise ValueError("Laguerre degree must be non-negative")
    if k <= -1:
        raise ValueError("Laguerre order must be greater than -1")
    u = np.asarray(u, dtype=float)
    previous, current = np.zeros_like(u), np.ones_like(u)
    for j in range(n):
        previous, current = current, ((2 * j + 1 + k - u) * current - (j + k) * previous) / (j + 1)
    return float(current) if current.ndim == 0 else current


def assoc_laguerre_derivative(n, k, u):
    """Derivative ``d/du L_n^k(u) = -L_{n-1}^{k+1}(u)``."""
    if n == 0:
        return 0.0 * np.asarray(u, dtype=float) if np.ndim(u) else 0.0
    return -assoc_laguerre(n - 1, k + 1, u)


def bessel_zero(nu, zero_index, step=0.25):
    """Positive zero of the Bessel function ``J_nu`` (``nu >= -1/2``).

    :param nu: Order.
    :param zero_index: 1-based index of the zero.
    :param step: Bracketing scan step.
    :returns: float - the zero.
    """
    if zero_index < 1:
        raise ValueError("zero_index starts at 1")
    if nu < -0.5:
        raise ValueError("only orders nu >= -1/2 are supported")
    if nu == -0.5:
        return (zero_index - 0.5) * math.pi
    return _scan_zero(lambda z: special.jv(nu, z), nu, zero_index, step, label=nu - 0.5)


def _scan_zero(func, nu, zero_index, step, label):
    z_hi = (zero_index + 0.5 * nu + 2.0) * math.pi + nu + 10.0
    lo = max(nu, 0.0) + 1e-6
    f_lo = func(lo)
    found = 0
    while lo < z_hi:
        hi = lo + step
        f_hi = func(hi)
        if f_lo * f_hi < 0:
            found += 1
            if found == zero_index:
                return optimize.brentq(func, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        lo, f_lo = hi, f_hi
    raise BesselZeroError(label, zero_index)


def spherical_bessel_zero(l, zero_index):
    """Zero ``Z_{n_r, l}`` of the spherical Bessel function ``j_l``.

    :param l: Angular momentum, ``0 <= l <= 30``.
    :param zero_index: 1-based index, at most 50.
    :returns: float - the zero, refined to ``|j_l| < 1e-13``.
    :raises BesselZeroError: If no bracket is found.
    """
    if not 0 <= l <= 30 or not 1 <= zero_index <= 50:
        raise ValueError(f"supported range is l <= 30 and zero_index <= 50, got ({l}, {zero_index})")
    if l == 0:
        return zero_index * math.pi
    root = _scan_zero(lambda z: special.spherical_jn(l, z), l + 0.5, zero_index, 0.25, label=l)
    if abs(special.spherical_jn(l, root)) >= 1e-13:
        raise BesselZeroError(l, zero_index)
    return root


def integrate(f, grid):
    """Integrate sampled or callable ``f`` on ``grid``.

    The grid measure is folded in (``r**2`` for radial densities).

    :param f: Callable of the nodes or array of samples.
    :param grid: :class:`Grid`.
    :returns: float - the quadrature sum.
    :raises QuadratureError: On a non-finite sample.
    """
    values = np.asarray(f(grid.nodes) if callable(f) else f, dtype=float)
    if values.shape != grid.nodes.shape:
        raise ValueError(f"expected {grid.nodes.size} samples, got {values.shape}")
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise QuadratureError(int(bad[0]), values[bad[0]])
    return float(np.dot(grid.weights, values * grid.measure_factor))


def lowest_eigenpairs(matrix, count):
    """Lowest ``count`` eigenvalues (ascending) and eigenvectors as columns."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("a square matrix is required")
    if not 1 <= count <= matrix.shape[0]:
        raise ValueError(f"count must lie in [1, {matrix.shape[0]}]")
    scale = max(float(np.max(np.abs(matrix))), np.finfo(float).tiny)
    if np.max(np.abs(matrix - matrix.T)) > 1e-10 * scale:
        raise ValueError("matrix is not symmetric")
    try:
        return linalg.eigh(matrix, subset_by_index=[0, count - 1])
    except linalg.LinAlgError as err:
        raise EigensolverError(str(err)) from err


def solve_symmetric_eigen(matrix, count):
    """Lowest ``count`` eigenpairs of a dense symmetric matrix.

    :returns: list of ``(eigenvalue, eigenvector)`` with ascending eigenvalues.
    """
    values, vectors = lowest_eigenpairs(matrix, count)
    return [(float(value), vectors[:, index]) for index, value in enumerate(values)]


def find_root_bracketed(f, lo, hi, tol=1e-12):
    """Root of ``f`` inside ``[lo, hi]`` by Brent's method.

    :raises RootBracketError: Without a sign change or on iteration exhaustion.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if f_lo * f_hi > 0:
        raise RootBracketError(lo, hi)
    root, result = optimize.brentq(
        f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200, full_output=True, disp=False
    )
    if not result.converged:
        raise RootBracketError(lo, hi, reason="maximum iterations reached")
    return root


def _pad(values, left, right):
    """Extend samples by two ghost nodes on each side.

    ``odd`` and ``even`` reflect about the end node, ``zero`` pads zeros.
    """
    ghosts = []
    for side, kind in (("left", left), ("right", right)):
        inner = values[1:3] if side == "left" else values[-3:-1][::-1]
        if kind == "odd":
            ghost = 2 * values[0 if side == "left" else -1] - inner
        elif kind == "even":
            ghost = inner.copy()
        elif kind == "zero":
            ghost = np.zeros(2)
        else:
            raise ValueError(f"unknown boundary kind {kind!r}")
        ghosts.append(ghost)
    return np.concatenate([ghosts[0][::-1], values, ghosts[1]])


def first_derivative(values, h, left="zero", right="zero"):
    """Five-point first derivative of uniformly sampled values."""
    padded = _pad(np.asarray(values, dtype=float), left, right)
    return (padded[:-4] - 8 * padded[1:-3] + 8 * padded[3:-1] - padded[4:]) / (12.0 * h)


def second_derivative(values, h, left="zero", right="zero", multiplier=None):
    """Five-point second derivative of uniformly sampled values.

    :param multiplier: Optional factor sampled on the nodes and on the two
        ghost positions beyond each end; the derivative is taken of the
        product, ghosts included.
    """
    padded = _pad(np.asarray(values, dtype=float), left, right)
    if multiplier is not None:
        padded = padded * multiplier
    return (-padded[:-4] + 16 * padded[1:-3] - 30 * padded[2:-2] + 16 * padded[3:-1] - padded[4:]) / (12.0 * h * h)
