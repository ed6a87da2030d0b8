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

"""Exact solutions of confined and free oscillators.

Energies of the symmetric 1D box and of the 3D sphere are roots of the
regular Kummer solution at the wall. Roots are bracketed between the box
and free energies, then refined by Brent's method; the root whose
wavefunction has the requested number of nodes is kept.

Key Features:
    - Symmetric 1D boxes of both parities
    - Radial states of any ``l`` in a sphere
    - Free oscillator limit (Hermite and Laguerre states)
    - Particle in a spherical box through spherical Bessel zeros
    - Incidental and inter-dimensional degeneracies

Example:
    Ground state of a sphere of radius 0.5::

        from cho_toolkit.modules.api import ConfinedSystemRadial
        from cho_toolkit.modules.exact.api import ExactSolver

        state = ExactSolver().solve(ConfinedSystemRadial(r_c=0.5), [0])[0]
        state.energy  # 19.77453418...
"""
