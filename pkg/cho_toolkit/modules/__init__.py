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

"""Eigensolvers, transforms and measures of confined harmonic oscillators.

This package contains the numerical building blocks of the toolkit. Every
solver implements :class:`~cho_toolkit.modules.api.BaseSolver` and returns
normalized :class:`~cho_toolkit.modules.api.Eigenstate` objects, which the
momentum and measures packages consume.

Available solvers:
    exact: Kummer-function solutions of the symmetric 1D box and the 3D
        radial sphere, with the free oscillator as the infinite-wall limit.

    pisb: Particle in a spherical box (spherical Bessel zeros).

    itp: Imaginary-time propagation with a Crank-Nicolson scheme on a
        uniform grid, for any 1D box including asymmetric ones.

    gps: Generalized pseudospectral collocation on mapped Legendre-Lobatto
        nodes (radial and 1D).

    vardiag: Variational diagonalization of asymmetric 1D boxes in a basis
        of symmetric box states.

Shared packages:
    numerics: Grids, series, special functions, quadrature, root finding,
        dense eigenproblems and finite differences.

    momentum: Position to momentum transforms and free momentum states.

    measures: Shannon, Renyi, Onicescu and Fisher measures, complexities,
        relative Fisher information and the kinetic/potential variance
        identity.

    utils: Configuration access, logging, solver error handling and retries.

Solver interface:
    Solvers declare the systems they handle and compute states by index::

        class MySolver(BaseSolver):
            name = "mine"

            def supports(self, system):
                ...

            def solve(self, system, states):
                ...

Error Handling:
    Solver entry points are wrapped by ``handle_solver_errors``: invalid
    input is logged as a warning and numerical failures as errors, both with
    the solver name and the system, then re-raised. All numerical failures
    derive from :class:`~cho_toolkit.modules.errors.CHOToolkitError`.
"""
