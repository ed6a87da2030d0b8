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

"""Tests for the momentum-space transforms."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import special

from cho_toolkit.modules.api import ConfinedSystem1D
from cho_toolkit.modules.errors import KernelRangeError, MomentumGridError
from cho_toolkit.modules.exact.api import free_eigenstate_1d, free_eigenstate_radial, scho_eigenstate
from cho_toolkit.modules.momentum.api import (
    KNOWN_MISPRINTS,
    KernelCoefficients,
    free_momentum_state,
    free_momentum_state_1d,
    hermite_frequency,
    kernel,
    momentum_cutoff,
    momentum_grid,
    to_momentum,
    to_momentum_1d,
)
from cho_toolkit.modules.numerics.api import Grid


class TestKernel:
    """Test the radial transform kernel."""

    @pytest.mark.parametrize("l", range(10))
    def test_printed_against_derived(self, l):
        """Test that tabulated coefficients match the expansion except the known misprints."""
        printed, derived = KernelCoefficients.printed(l), KernelCoefficients.derived(l)
        for kind in ("a", "b"):
            printed_coeffs = printed.a_coeffs if kind == "a" else printed.b_coeffs
            derived_coeffs = derived.a_coeffs if kind == "a" else derived.b_coeffs
            assert set(printed_coeffs) == set(derived_coeffs)
            for index in derived_coeffs:
                same = printed.exact(kind, index) == derived.exact(kind, index)
                assert same != ((l, kind, index) in KNOWN_MISPRINTS)

    def test_corrected_values(self):
        """Test the corrected entries."""
        l4 = KernelCoefficients.derived(4)
        assert l4.a_coeffs == {1: 10, 3: -105}
        assert l4.b_coeffs == {0: 1, 2: -45, 4: 105}
        assert KernelCoefficients.derived(7).exact("b", 5) == Fraction(-62370)

    @pytest.mark.parametrize("l", range(10))
    def test_bessel_form(self, l):
        """Test the kernel against p r**2 j_l(pr) / sqrt(pi)."""
        r = 1.3
        p = np.linspace(0.05, 60.0, 400)
        expected = np.abs(p * r**2 * special.spherical_jn(l, p * r)) / math.sqrt(math.pi)
        np.testing.assert_allclose(np.abs(kernel(l, r, p)), expected, rtol=1e-8, atol=1e-10 * np.max(expected))

    def test_range(self):
        """Test the largest supported angular momentum."""
        with pytest.raises(KernelRangeError):
            kernel(10, 1.0, 1.0)
        with pytest.raises(KernelRangeError):
            KernelCoefficients.printed(10)


class TestRadialTransform:
    """Test radial momentum wavefunctions."""

    @pytest.mark.parametrize(("n_r", "l"), [(0, 0), (1, 1), (0, 3)])
    def test_free_closed_form(self, n_r, l):
        """Test the transform of free states against the closed form."""
        momentum = to_momentum(free_eigenstate_radial(1.0, l, n_r))
        expected = free_momentum_state(n_r, l, 1.0, momentum.grid)
        np.testing.assert_allclose(np.abs(momentum.values), np.abs(expected.values), atol=1e-7)
        assert momentum.norm() == pytest.approx(1.0, abs=1e-10)
        # the kernel lacks the sqrt(2) of the unitary transform
        assert momentum.normalization == pytest.approx(math.sqrt(2.0), rel=1e-6)

    def test_confined_state(self, sphere_1s):
        """Test the transform of a confined state."""
        momentum = to_momentum(sphere_1s)
        assert momentum.grid.nodes[-1] == pytest.approx(1500.0)
        assert momentum.grid.measure == "p_squared"
        assert momentum.norm() == pytest.approx(1.0, abs=1e-10)
        assert momentum.labels == (0, 0, 0)

    def test_invalid_requests(self, sphere_1s):
        """Test the transform input checks."""
        with pytest.raises(ValueError, match="radial"):
            to_momentum(free_eigenstate_1d(1.0, 0))
        with pytest.raises(ValueError, match="does not match"):
            to_momentum(sphere_1s, l=1)
        with pytest.raises(KernelRangeError):
            to_momentum(free_eigenstate_radial(1.0, 10, 0))

    def test_short_grid(self, free_1s):
        """Test the missing-norm check."""
        with pytest.raises(MomentumGridError) as excinfo:
            to_momentum(free_1s, p_grid=Grid.simpson(0.0, 2.0, 101, measure="p_squared"))
        assert excinfo.value.tail > 0.01


class TestOneDimension:
    """Test 1D momentum wavefunctions."""

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_free_closed_form(self, n):
        """Test the transform of free states against the closed form."""
        momentum = to_momentum_1d(free_eigenstate_1d(1.0, n))
        expected = free_momentum_state_1d(n, 1.0, momentum.grid)
        np.testing.assert_allclose(np.abs(momentum.values), np.abs(expected.values), atol=1e-8)

    def test_same_form_in_both_spaces(self):
        """Test the self-similarity of free states at omega = 1."""
        momentum = free_momentum_state_1d(3, 1.0)
        position = free_eigenstate_1d(1.0, 3)
        np.testing.assert_allclose(
            np.abs(momentum.values), np.abs(position.evaluate(momentum.grid.nodes)), atol=1e-12
        )
        assert hermite_frequency(1.0) == pytest.approx(math.sqrt(2.0))

    def test_box_state(self):
        """Test the transform of a box state."""
        state = scho_eigenstate(ConfinedSystem1D.symmetric(1.0, 0.5), 1)
        momentum = to_momentum_1d(state)
        assert momentum.grid.nodes[-1] == pytest.approx(3000.0)
        assert momentum.norm() == pytest.approx(1.0, abs=1e-10)
        assert momentum.normalization == pytest.approx(1.0, abs=1e-5)
        np.testing.assert_allclose(momentum.density(), momentum.density()[::-1], atol=1e-12)

    def test_asymmetric_state_is_complex(self):
        """Test that states without parity keep both transforms."""
        state = free_eigenstate_1d(1.0, 0)
        state.parity = None
        state.values = state.evaluate(state.grid.nodes - 0.5)
        state.interpolator = None
        momentum = to_momentum_1d(state)
        assert np.iscomplexobj(momentum.values)
        assert momentum.norm() == pytest.approx(1.0, abs=1e-10)

    def test_radial_rejected(self, free_1s):
        """Test the dimension check."""
        with pytest.raises(ValueError):
            to_momentum_1d(free_1s)


def test_cutoffs():
    """Test the default momentum extents."""
    box = scho_eigenstate(ConfinedSystem1D.symmetric(1.0, 0.5), 0)
    assert momentum_cutoff(box) == pytest.approx(3000.0)
    assert momentum_cutoff(free_eigenstate_radial(4.0, 0, 0)) == pytest.approx(50.0)
    grid = momentum_grid(box, count=101)
    assert len(grid) == 201
    assert grid.nodes[0] == pytest.approx(-3000.0)
