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

"""Solver discovery, resolution and cached energies.

Solvers are discovered through the ``cho_toolkit.solvers`` entry point
group. ``solver="auto"`` walks ``CHO_TOOLKIT_SOLVERS`` and uses the first
solver supporting the system.

Registering a custom solver in pyproject.toml::

    [project.entry-points."cho_toolkit.solvers"]
    mine = "my_module.solvers:MySolver"
"""

import json
from contextlib import suppress
from importlib.metadata import entry_points

from flask import current_app
from invenio_cache import current_cache

from .modules.errors import SolverCompatibilityError
from .modules.utils import get_config, get_logger

DEFAULT_CACHE_EXPIRE = 3600


def _load_solvers():
    """Load eigensolvers from entry points.

    :returns: dict - solver names mapped to solver classes.
    """
    eps = entry_points()
    solver_eps = (
        eps.get("cho_toolkit.solvers", []) if hasattr(eps, "get") else eps.select(group="cho_toolkit.solvers")
    )
    return {ep.name: ep.load() for ep in solver_eps}


SOLVERS = _load_solvers()


class EnergyCache:
    """Energy cache on top of invenio_cache."""

    def get(self, key):
        """Cached JSON document or None."""
        return current_cache.get(key)

    def set(self, key, value, timeout):
        """Store a JSON document for ``timeout`` seconds."""
        current_cache.set(key, value, timeout=timeout)


def resolve_solver(system, solver="auto"):
    """Instantiate the solver used for ``system``.

    :param system: :class:`ConfinedSystem1D` or :class:`ConfinedSystemRadial`.
    :param solver: Solver name or ``auto``.
    :returns: A :class:`BaseSolver` instance.
    :raises ValueError: For an unknown solver name.
    :raises SolverCompatibilityError: If the solver (or, for ``auto``, every
        configured solver) does not support the system.
    """
    if solver == "auto":
        for name in get_config("CHO_TOOLKIT_SOLVERS", list(SOLVERS)):
            if name not in SOLVERS:
                get_logger().warning(f"Configured solver {name!r} is not installed")
                continue
            candidate = SOLVERS[name]()
            if candidate.supports(system):
                return candidate
        raise SolverCompatibilityError(f"no configured solver supports {system}")
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}, available: {', '.join(sorted(SOLVERS))}")
    instance = SOLVERS[solver]()
    if not instance.supports(system):
        raise SolverCompatibilityError(f"solver {solver!r} does not support {system}")
    return instance


def solve_states(system, states, solver="auto"):
    """Compute eigenstates of ``system``.

    :param system: The system to solve.
    :param states: State indices (``n`` in 1D, ``n_r`` for radial systems).
    :param solver: Solver name or ``auto``.
    :returns: tuple - (list of :class:`Eigenstate`, solver name).
    """
    instance = resolve_solver(system, solver)
    return instance.solve(system, list(states)), instance.name


def get_energy(system, state, solver="auto", cached=True):
    """Energy of one state, cached through invenio_cache.

    :param system: The system to solve.
    :param state: State index.
    :param solver: Solver name or ``auto``.
    :param cached: Whether to read and write the cache. When False the
        solver is always run.
    :returns: tuple - (energy, solver name).

    Note:
        Results are stored as JSON under
        ``cho_toolkit_<system hash>_<state>_<solver>`` for
        ``CHO_TOOLKIT_CACHE_EXPIRE`` seconds.
    """
    cache = EnergyCache()
    cache_key = f"cho_toolkit_{system.cache_key()}_{state}_{solver}"
    if cached and (cached_result := cache.get(cache_key)) is not None:
        with suppress(json.JSONDecodeError, AttributeError, TypeError, KeyError):
            data = json.loads(cached_result)
            return float(data["energy"]), data["solver"]

    instance = resolve_solver(system, solver)
    energy = instance.energy(system, state)
    if cached:
        timeout = current_app.config.get("CHO_TOOLKIT_CACHE_EXPIRE", DEFAULT_CACHE_EXPIRE)
        cache.set(cache_key, json.dumps({"energy": energy, "solver": instance.name}), timeout=timeout)
    return energy, instance.name
