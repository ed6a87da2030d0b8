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

"""Tests for the numerical primitives."""

import math

import numpy as np
import pytest
from scipy import special

from cho_toolkit.modules.errors import KummerConvergenceError, QuadratureError, RootBracketError
from cho_toolkit.modules.numerics.api import (
    Grid,
    SeriesTruncation,
    assoc_laguerre,
    assoc_laguerre_derivative,
    bessel_zero,
    find_root_bracketed,
    first_derivative,
    hermite,
    hermite_derivative,
    integrate,
    kummer_1f1,
    lowest_eigenpairs,
    second_derivative,
    solve_symmetric_eigen,
    spherical_bessel_zero,
)


class TestGrid:
    """Test grid construction and integration."""

    def test_simpson_is_exact_for_cubics(self):
        """Test Simpson integration of a cubic."""
        grid = Grid.simpson(0.0, 2.0, 11)
        assert integrate(lambda x: x**3 - x, grid) == pytest.approx(2.0, rel=1e-13)

    def test_simpson_needs_odd_count(self):
        """Test Simpson node count validation."""
        with pytest.raises(ValueError, match="odd node count"):
            Grid.simpson(0.0, 1.0, 10)
        with pytest.raises(ValueError):
            Grid.simpson(0.0, 1.0, 1)

    def test_squared_measure(self):
        """Test that the r**2 measure is folded into integrals."""
        grid = Grid.simpson(0.0, 1.0, 101, measure="r_squared")
        assert integrate(np.ones(101), grid) == pytest.approx(1.0 / 3.0, rel=1e-12)
        flat = grid.with_measure("flat")
        assert integrate(np.ones(101), flat) == pytest.approx(1.0, rel=1e-12)

    def test_gauss_legendre(self):
        """Test Gauss-Legendre nodes and weights."""
        grid = Grid.gauss_legendre(-1.0, 3.0, 20)
        assert integrate(np.exp, grid) == pytest.approx(math.exp(3.0) - math.exp(-1.0), rel=1e-13)
        assert grid.step is None
        assert len(grid) == 20

    def test_lobatto(self):
        """Test Lobatto nodes through both ends and their weights."""
        grid = Grid.lobatto(-0.5, 2.0, 30)
        assert len(grid) == 31
        assert grid.nodes[0] == -0.5
        assert grid.nodes[-1] == 2.0
        assert grid.rule == "lobatto"
        assert integrate(grid.nodes**8, grid) == pytest.approx((2.0**9 + 0.5**9) / 9.0, rel=1e-13)
        assert integrate(np.exp, grid) == pytest.approx(math.exp(2.0) - math.exp(-0.5), rel=1e-13)
        with pytest.raises(ValueError):
            Grid.lobatto(0.0, 1.0, 1)

    def test_step(self):
        """Test the node spacing of uniform grids."""
        assert Grid.simpson(0.0, 1.0, 5).step == pytest.approx(0.25)

    def test_invalid_grids(self):
        """Test grid invariants."""
        with pytest.raises(ValueError, match="increasing"):
            Grid(np.array([0.0, 0.0, 1.0]), np.ones(3))
        with pytest.raises(ValueError, match="positive"):
            Grid(np.array([0.0, 1.0]), np.array([1.0, -1.0]))
        with pytest.raises(ValueError, match="measure"):
            Grid(np.array([0.0, 1.0]), np.ones(2), measure="cubic")
        with pytest.raises(ValueError, match="same length"):
            Grid(np.array([0.0, 1.0]), np.ones(3))

    def test_integrate_rejects_bad_samples(self):
        """Test quadrature guards."""
        grid = Grid.simpson(0.0, 1.0, 5)
        with pytest.raises(QuadratureError) as excinfo:
            integrate(np.array([0.0, 1.0, np.nan, 1.0, 0.0]), grid)
        assert excinfo.value.index == 2
        with pytest.raises(ValueError, match="samples"):
            integrate(np.ones(4), grid)


class TestKummer:
    """Test the confluent hypergeometric series."""

    @pytest.mark.parametrize(
        ("a", "b", "y"),
        [(0.3, 0.5, 2.0), (-1.7, 1.5, 10.0), (-4.2, 3.5, 8.0), (1.0, 1.5, 0.0), (-0.25, 0.5, 20.0)],
    )
    def test_matches_scipy(self, a, b, y):
        """Test agreement with scipy's hyp1f1."""
        assert kummer_1f1(a, b, y) == pytest.approx(special.hyp1f1(a, b, y), rel=1e-11, abs=1e-13)

    def test_terminating_series(self):
        """Test the polynomial case a = -2."""
        y = 0.7
        assert kummer_1f1(-2, 0.5, y) == pytest.approx(1.0 - 4.0 * y + 4.0 / 3.0 * y**2, rel=1e-14)
        assert kummer_1f1(0, 1.5, 12.0) == 1.0

    def test_array_matches_scalar(self):
        """Test vectorized evaluation."""
        y = np.linspace(0.0, 20.0, 9)
        values = kummer_1f1(-1.3, 1.5, y)
        assert values.shape == y.shape
        for yi, value in zip(y, values, strict=True):
            assert value == pytest.approx(kummer_1f1(-1.3, 1.5, float(yi)), rel=1e-12, abs=1e-14)

    def test_invalid_arguments(self):
        """Test argument validation."""
        with pytest.raises(ValueError, match="non-positive integer"):
            kummer_1f1(0.5, 0, 1.0)
        with pytest.raises(ValueError, match="non-positive integer"):
            kummer_1f1(0.5, -2, 1.0)
        with pytest.raises(ValueError, match="non-negative"):
            kummer_1f1(0.5, 0.5, -1.0)

    def test_convergence_error(self):
        """Test the term cap."""
        with pytest.raises(KummerConvergenceError) as excinfo:
            kummer_1f1(0.3, 0.5, 30.0, SeriesTruncation(max_terms=10))
        assert excinfo.value.terms == 10

    def test_truncation_validation(self):
        """Test truncation parameter ranges."""
        with pytest.raises(ValueError):
            SeriesTruncation(max_terms=5)
        with pytest.raises(ValueError):
            SeriesTruncation(tail_tolerance=1e-3)
        assert SeriesTruncation.from_config().max_terms == 500


class TestPolynomials:
    """Test orthogonal polynomials."""

    def test_hermite(self):
        """Test H_3 and its derivative."""
        y = np.array([-1.2, 0.0, 0.4, 2.0])
        np.testing.assert_allclose(hermite(3, y), 8 * y**3 - 12 * y)
        np.testing.assert_allclose(hermite_derivative(3, y), 24 * y**2 - 12)
        assert hermite(0, 0.3) == 1.0
        assert hermite_derivative(0, 0.3) == 0.0
        with pytest.raises(ValueError):
            hermite(-1, 0.0)

    def test_laguerre(self):
        """Test associated Laguerre polynomials against scipy."""
        u = np.linspace(0.0, 8.0, 7)
        for n in range(5):
            np.testing.assert_allclose(assoc_laguerre(n, 1.5, u), special.eval_genlaguerre(n, 1.5, u), rtol=1e-12)
        np.testing.assert_allclose(
            assoc_laguerre_derivative(3, 0.5, u), -special.eval_genlaguerre(2, 1.5, u), rtol=1e-12
        )
        with pytest.raises(ValueError):
            assoc_laguerre(2, -1.0, u)


class TestBesselZeros:
    """Test Bessel function zeros."""

    def test_cylindrical(self):
        """Test zeros of J_nu."""
        assert bessel_zero(0.0, 1) == pytest.approx(2.404825557695773, rel=1e-13)
        assert bessel_zero(-0.5, 2) == pytest.approx(1.5 * math.pi, rel=1e-15)
        assert bessel_zero(0.5, 3) == pytest.approx(3 * math.pi, rel=1e-13)
        with pytest.raises(ValueError):
            bessel_zero(0.0, 0)

    def test_spherical(self):
        """Test zeros of j_l."""
        assert spherical_bessel_zero(0, 3) == pytest.approx(3 * math.pi)
        assert spherical_bessel_zero(1, 1) == pytest.approx(4.493409457909064, rel=1e-13)
        assert spherical_bessel_zero(2, 1) == pytest.approx(5.763459196894550, rel=1e-13)
        assert spherical_bessel_zero(4, 1) == pytest.approx(8.182561452571243, rel=1e-13)
        with pytest.raises(ValueError):
            spherical_bessel_zero(31, 1)
        with pytest.raises(ValueError):
            spherical_bessel_zero(1, 51)


class TestLinearAlgebra:
    """Test eigensolvers and root finding."""

    def test_lowest_eigenpairs(self):
        """Test the lowest eigenpairs of a symmetric matrix."""
        matrix = np.diag([3.0, 1.0, 2.0])
        values, vectors = lowest_eigenpairs(matrix, 2)
        np.testing.assert_allclose(values, [1.0, 2.0])
        assert abs(vectors[1, 0]) == pytest.approx(1.0)
        pairs = solve_symmetric_eigen(matrix, 3)
        assert [value for value, _ in pairs] == pytest.approx([1.0, 2.0, 3.0])

    def test_eigen_validation(self):
        """Test eigensolver input checks."""
        with pytest.raises(ValueError, match="symmetric"):
            lowest_eigenpairs(np.array([[1.0, 2.0], [0.0, 1.0]]), 1)
        with pytest.raises(ValueError):
            lowest_eigenpairs(np.eye(2), 3)
        with pytest.raises(ValueError, match="square"):
            lowest_eigenpairs(np.ones((2, 3)), 1)

    def test_find_root(self):
        """Test bracketed root finding."""
        assert find_root_bracketed(math.cos, 0.0, 2.0) == pytest.approx(math.pi / 2, abs=1e-12)
        assert find_root_bracketed(math.sin, 0.0, 1.0) == 0.0
        with pytest.raises(RootBracketError):
            find_root_bracketed(math.cos, 0.0, 1.0)


class TestFiniteDifferences:
    """Test five-point derivatives."""

    def test_derivatives_with_odd_walls(self):
        """Test derivatives of sin on [0, pi] with odd reflections."""
        x = np.linspace(0.0, math.pi, 1001)
        h = x[1] - x[0]
        np.testing.assert_allclose(first_derivative(np.sin(x), h, "odd", "odd"), np.cos(x), atol=1e-10)
        np.testing.assert_allclose(second_derivative(np.sin(x), h, "odd", "odd"), -np.sin(x), atol=1e-7)

    def test_even_boundary(self):
        """Test an even reflection at the origin."""
        x = np.linspace(0.0, 1.0, 501)
        h = x[1] - x[0]
        np.testing.assert_allclose(second_derivative(np.cos(x), h, "even", "zero")[:-2], -np.cos(x)[:-2], atol=1e-7)

    def test_unknown_boundary(self):
        """Test boundary kind validation."""
        with pytest.raises(ValueError, match="boundary"):
            first_derivative(np.ones(5), 0.1, "periodic", "odd")
