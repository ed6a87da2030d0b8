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

"""Variational diagonalization for asymmetric boxes.

The Hamiltonian of an asymmetric box is expanded in the states of a
symmetric box with the same walls, whose oscillator parameter is chosen to
minimize the wanted energy.

Note:
    Published reference energies of asymmetric boxes use the operator
    ``-d2/dx2 + (x - d_m)**2``, twice the atomic-unit Hamiltonian at
    ``omega = 1``; see ``ACHO_TABLE_ENERGY_SCALE``.
"""
