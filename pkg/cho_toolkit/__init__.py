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

"""Confined quantum harmonic oscillators.

This package provides a Flask/Invenio extension to compute eigenstates of
free and confined harmonic oscillators with several independent solvers,
transform them to momentum space and evaluate their information measures.

Features:
    - Exact, imaginary-time, pseudospectral and variational solvers
    - Pluggable solvers through the ``cho_toolkit.solvers`` entry points
    - Energy caching via invenio_cache
    - Momentum-space transforms
    - Shannon, Renyi, Onicescu and Fisher measures, complexities and bounds
    - Batch parameter sweeps written as CSV or JSON

Usage::

    from cho_toolkit import CHOToolkit
    ext = CHOToolkit(app)
    # Or: ext = CHOToolkit(); ext.init_app(app)

Configuration:
    CHO_TOOLKIT_SOLVERS: Solver names tried in order by ``solver="auto"``
    CHO_TOOLKIT_CACHE_EXPIRE: Cache expiration time in seconds
    CHO_TOOLKIT_TOLERANCE_PROFILES: Grid and tolerance presets of the batch driver
"""

from importlib.metadata import PackageNotFoundError, version

from .api import get_energy, resolve_solver, solve_states
from .ext import CHOToolkit
from .modules.api import ConfinedSystem1D, ConfinedSystemRadial, Eigenstate
from .modules.exact.api import ExactSolver, PisbSolver
from .modules.gps.api import GpsSolver
from .modules.itp.api import ItpSolver
from .modules.vardiag.api import VardiagSolver

try:
    __version__ = version("cho-toolkit")
except PackageNotFoundError:
    __version__ = "0.1.0"

__all__ = (
    "CHOToolkit",
    "ConfinedSystem1D",
    "ConfinedSystemRadial",
    "Eigenstate",
    "ExactSolver",
    "GpsSolver",
    "ItpSolver",
    "PisbSolver",
    "VardiagSolver",
    "__version__",
    "get_energy",
    "resolve_solver",
    "solve_states",
)
