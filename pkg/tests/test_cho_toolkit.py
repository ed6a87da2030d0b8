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

"""Module tests."""

import contextlib
import json
from unittest.mock import MagicMock, patch

import pytest
from flask import Flask
from invenio_cache import current_cache

from cho_toolkit import CHOToolkit, ConfinedSystem1D, ConfinedSystemRadial
from cho_toolkit.api import get_energy, resolve_solver, solve_states
from cho_toolkit.modules.errors import SolverCompatibilityError

BOX = ConfinedSystem1D.symmetric(1.0, 0.5)
SHIFTED = ConfinedSystem1D(omega=1.0, d_m=0.36, wall_left=-1.0, wall_right=1.0)


def _cache_key(system, state, solver="auto"):
    return f"cho_toolkit_{system.cache_key()}_{state}_{solver}"


def _safe_cache_delete(key):
    """Safely delete a cache entry without raising exceptions."""
    with contextlib.suppress(Exception):
        current_cache.delete(key)


def _fake_solver(energy=1.5, supports=True):
    """Solver class mock returning a fixed energy."""
    instance = MagicMock()
    instance.name = "fake"
    instance.supports.return_value = supports
    instance.energy.return_value = energy
    return MagicMock(return_value=instance)


def test_version():
    """Test version import."""
    from cho_toolkit import __version__

    assert __version__


def test_init():
    """Test extension initialization."""
    app = Flask("testapp")
    ext = CHOToolkit()
    assert "cho-toolkit" not in app.extensions
    ext.init_app(app)
    assert "cho-toolkit" in app.extensions
    assert app.config["CHO_TOOLKIT_GPS_ORDER"] == 128
    assert "cho" in app.cli.commands


def test_init_keeps_app_config():
    """Test that application values win over the defaults."""
    app = Flask("testapp")
    app.config["CHO_TOOLKIT_GRID_NODES"] = 2001
    CHOToolkit(app)
    assert app.config["CHO_TOOLKIT_GRID_NODES"] == 2001


def test_cache_keys():
    """Test that systems hash to stable, distinct keys."""
    assert BOX.cache_key() == ConfinedSystem1D.symmetric(1.0, 0.5).cache_key()
    assert BOX.cache_key() != SHIFTED.cache_key()
    assert ConfinedSystemRadial(l=1).cache_key() != ConfinedSystemRadial(l=2).cache_key()


class TestResolveSolver:
    """Test solver resolution."""

    def test_auto(self, app):
        """Test the automatic choice."""
        with app.app_context():
            assert resolve_solver(BOX).name == "exact"
            assert resolve_solver(SHIFTED).name == "vardiag"
            assert resolve_solver(ConfinedSystemRadial(r_c=1.0)).name == "exact"
            with pytest.raises(SolverCompatibilityError):
                resolve_solver(ConfinedSystemRadial(D=2))

    def test_auto_skips_missing(self, app, caplog):
        """Test that configured but missing solvers are skipped."""
        with app.app_context():
            app.config["CHO_TOOLKIT_SOLVERS"] = ["missing", "gps"]
            assert resolve_solver(SHIFTED).name == "gps"
        assert "not installed" in caplog.text

    def test_auto_without_candidate(self, app):
        """Test that auto fails when no solver fits."""
        with app.app_context():
            app.config["CHO_TOOLKIT_SOLVERS"] = ["itp"]
            with pytest.raises(SolverCompatibilityError):
                resolve_solver(ConfinedSystemRadial(r_c=1.0))

    def test_explicit(self, app):
        """Test explicit solver names."""
        with app.app_context():
            assert resolve_solver(SHIFTED, "itp").name == "itp"
            with pytest.raises(SolverCompatibilityError):
                resolve_solver(ConfinedSystemRadial(r_c=1.0), "itp")
            with pytest.raises(ValueError, match="unknown solver"):
                resolve_solver(BOX, "nonexistent")

    def test_solve_states(self, app):
        """Test solving through the resolved solver."""
        with app.app_context():
            states, name = solve_states(ConfinedSystemRadial(r_c=0.5, l=1), [0], "pisb")
        assert name == "pisb"
        assert states[0].energy == pytest.approx(40.38145711, rel=1e-9)


class TestGetEnergy:
    """Test cached energies."""

    def test_exact_energy(self, app):
        """Test an energy through the automatic solver."""
        with app.app_context():
            _safe_cache_delete(_cache_key(BOX, 0))
            energy, name = get_energy(BOX, 0)
        assert energy == pytest.approx(4.9511293232, rel=1e-9)
        assert name == "exact"

    def test_cached(self, app):
        """Test that a second call is served from the cache."""
        solver_class = _fake_solver()
        with app.app_context(), patch.dict("cho_toolkit.api.SOLVERS", {"fake": solver_class}, clear=True):
            app.config["CHO_TOOLKIT_SOLVERS"] = ["fake"]
            _safe_cache_delete(_cache_key(BOX, 0))
            assert get_energy(BOX, 0) == (1.5, "fake")
            assert get_energy(BOX, 0) == (1.5, "fake")
            solver_class.assert_called_once()
            cached = json.loads(current_cache.get(_cache_key(BOX, 0)))
            assert cached == {"energy": 1.5, "solver": "fake"}

    def test_uncached(self, app):
        """Test that cached=False always runs the solver."""
        solver_class = _fake_solver()
        with app.app_context(), patch.dict("cho_toolkit.api.SOLVERS", {"fake": solver_class}, clear=True):
            app.config["CHO_TOOLKIT_SOLVERS"] = ["fake"]
            get_energy(BOX, 1, cached=False)
            get_energy(BOX, 1, cached=False)
            assert solver_class.call_count == 2
            assert current_cache.get(_cache_key(BOX, 1)) is None

    def test_corrupt_cache_entry(self, app):
        """Test that an unreadable cache entry is recomputed."""
        solver_class = _fake_solver(energy=2.5)
        with app.app_context(), patch.dict("cho_toolkit.api.SOLVERS", {"fake": solver_class}, clear=True):
            app.config["CHO_TOOLKIT_SOLVERS"] = ["fake"]
            current_cache.set(_cache_key(BOX, 2), "not json")
            assert get_energy(BOX, 2) == (2.5, "fake")

    def test_named_solver_key(self, app):
        """Test that the solver name is part of the cache key."""
        solver_class = _fake_solver(energy=3.0)
        with app.app_context(), patch.dict("cho_toolkit.api.SOLVERS", {"fake": solver_class}, clear=True):
            _safe_cache_delete(_cache_key(BOX, 0, "fake"))
            assert get_energy(BOX, 0, "fake") == (3.0, "fake")
            assert current_cache.get(_cache_key(BOX, 0, "fake")) is not None

    def test_solver_failure(self, app, caplog):
        """Test that solver errors propagate after logging."""
        with app.app_context():
            _safe_cache_delete(_cache_key(BOX, -1))
            with pytest.raises(ValueError):
                get_energy(BOX, -1)
        assert "exact" in caplog.text
