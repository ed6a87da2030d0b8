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

"""Information measures of position and momentum densities.

Key Features:
    - Shannon, Renyi and Onicescu measures, net of the angular part
    - Fisher information with its magnetic quantum number dependence
    - Statistical complexities ``C = A exp(b B)``
    - Entropic and Fisher uncertainty bounds
    - Relative Fisher information, numerical and closed form
    - Kinetic and potential variance identity

Example:
    Measures of a confined ground state::

        from cho_toolkit.modules.api import ConfinedSystemRadial
        from cho_toolkit.modules.exact.api import ExactSolver
        from cho_toolkit.modules.measures.api import measure_report

        system = ConfinedSystemRadial(r_c=1.0)
        state = ExactSolver().solve(system, [0])[0]
        report = measure_report(state, system)
        report.S_r  # 0.6652222...
"""
