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

"""Tests of the shared solver utilities."""

import logging
import os
from unittest.mock import MagicMock, patch

import pytest
from flask import g

from cho_toolkit.modules.errors import KummerConvergenceError, RootScanError
from cho_toolkit.modules.utils import (
    get_config,
    get_logger,
    get_worker_count,
    handle_solver_errors,
    scan_with_retries,
)


class FakeSolver:
    """Solver whose solve method fails on demand."""

    def __init__(self, error=None):
        """Store the error raised by solve."""
        self.error = error

    @handle_solver_errors("fake")
    def solve(self, system, states):
        """Raise the configured error or echo the states."""
        if self.error:
            raise self.error
        return list(states)


class TestConfig:
    """Test configuration lookup."""

    def test_outside_app_context(self):
        """Test that module defaults are used without an application."""
        assert get_config("CHO_TOOLKIT_GPS_ORDER") == 128
        assert get_config("CHO_TOOLKIT_UNKNOWN", "fallback") == "fallback"

    def test_inside_app_context(self, app):
        """Test that the application config wins."""
        app.config["CHO_TOOLKIT_GPS_ORDER"] = 64
        with app.app_context():
            assert get_config("CHO_TOOLKIT_GPS_ORDER") == 64
            assert get_config("CHO_TOOLKIT_UNKNOWN", 3) == 3

    def test_context_overrides(self, app):
        """Test that overrides stored in ``g`` win and stay in their context."""
        app.config["CHO_TOOLKIT_GPS_ORDER"] = 64
        with app.app_context():
            g.cho_toolkit_overrides = {"CHO_TOOLKIT_GPS_ORDER": 32}
            assert get_config("CHO_TOOLKIT_GPS_ORDER") == 32
            assert get_config("CHO_TOOLKIT_GRID_NODES") == 6001
        with app.app_context():
            assert get_config("CHO_TOOLKIT_GPS_ORDER") == 64
        assert app.config["CHO_TOOLKIT_GPS_ORDER"] == 64

    def test_logger(self, app):
        """Test the logger inside and outside an application context."""
        assert get_logger() is logging.getLogger("cho_toolkit")
        with app.app_context():
            assert get_logger() is app.logger


class TestHandleSolverErrors:
    """Test the solver error decorator."""

    def test_success(self):
        """Test that results pass through."""
        assert FakeSolver().solve("system", (0, 1)) == [0, 1]

    def test_value_error(self, app, caplog):
        """Test that invalid input is logged as a warning and re-raised."""
        with app.app_context(), pytest.raises(ValueError, match="bad state"):
            FakeSolver(ValueError("bad state")).solve("box", [0])
        assert "Invalid input for fake solver on box" in caplog.text

    def test_other_error(self, app, caplog):
        """Test that other errors are logged as errors and re-raised."""
        error = KummerConvergenceError(1.0, 10)
        with app.app_context(), pytest.raises(KummerConvergenceError):
            FakeSolver(error).solve("box", [0])
        records = [record for record in caplog.records if record.levelno == logging.ERROR]
        assert records
        assert "Error solving box with fake" in records[0].getMessage()

    def test_wraps(self):
        """Test that the decorated method keeps its metadata."""
        assert FakeSolver.solve.__name__ == "solve"
        assert "echo" in FakeSolver.solve.__doc__


class TestScanWithRetries:
    """Test the retried energy scan."""

    def test_first_attempt(self):
        """Test a scan succeeding immediately."""
        scan = MagicMock(return_value=[1.0])
        assert scan_with_retries(scan, 0.1) == [1.0]
        scan.assert_called_once_with(0.1)

    def test_halved_step(self, app):
        """Test that the step is halved after a missed root."""
        scan = MagicMock(side_effect=[RootScanError(2, 1), RootScanError(2, 1), [1.0, 2.0, 3.0]])
        with app.app_context():
            assert scan_with_retries(scan, 0.4) == [1.0, 2.0, 3.0]
        steps = [call.args[0] for call in scan.call_args_list]
        assert steps == pytest.approx([0.4, 0.2, 0.1])

    def test_exhausted(self, app):
        """Test that the last error is raised when every attempt fails."""
        scan = MagicMock(side_effect=RootScanError(3, 0))
        app.config["CHO_TOOLKIT_ROOT_SCAN_ATTEMPTS"] = 2
        with app.app_context(), pytest.raises(RootScanError):
            scan_with_retries(scan, 0.1)
        assert scan.call_count == 2

    def test_other_errors_not_retried(self):
        """Test that only missed roots are retried."""
        scan = MagicMock(side_effect=ValueError("bad interval"))
        with pytest.raises(ValueError):
            scan_with_retries(scan, 0.1)
        scan.assert_called_once()


class TestWorkerCount:
    """Test the sweep worker count."""

    def test_environment(self, monkeypatch):
        """Test the environment variable."""
        monkeypatch.setenv("CHO_TOOLKIT_THREADS", "3")
        assert get_worker_count() == 3

    def test_config(self, app, monkeypatch):
        """Test the configuration value."""
        monkeypatch.delenv("CHO_TOOLKIT_THREADS", raising=False)
        app.config["CHO_TOOLKIT_THREADS"] = 2
        with app.app_context():
            assert get_worker_count() == 2

    def test_default(self, monkeypatch):
        """Test that all cores are used by default."""
        monkeypatch.delenv("CHO_TOOLKIT_THREADS", raising=False)
        with patch("cho_toolkit.modules.utils.os.cpu_count", return_value=5):
            assert get_worker_count() == 5
        with patch("cho_toolkit.modules.utils.os.cpu_count", return_value=None):
            assert get_worker_count() == 1

    @pytest.mark.parametrize("value", ["0", "-2", "many"])
    def test_invalid(self, monkeypatch, value):
        """Test invalid environment values."""
        monkeypatch.setenv("CHO_TOOLKIT_THREADS", value)
        with pytest.raises(ValueError):
            get_worker_count()

    def test_environment_is_read_each_time(self, monkeypatch):
        """Test that changes to the environment are picked up."""
        monkeypatch.setenv("CHO_TOOLKIT_THREADS", "4")
        assert get_worker_count() == 4
        monkeypatch.setenv("CHO_TOOLKIT_THREADS", "1")
        assert get_worker_count() == int(os.environ["CHO_TOOLKIT_THREADS"])
