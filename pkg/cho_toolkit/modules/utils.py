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

"""Utility functions shared by the solver modules.

This module provides:
    - configuration lookup from the Flask app with module defaults as fallback,
      under per-context overrides held in ``flask.g``
    - the package logger (Flask app logger inside an application context)
    - standardized solver error logging
    - retry logic for energy root scans (the scan step halves on each attempt)
    - worker count resolution for sweeps
"""

import logging
import os
from contextlib import suppress
from functools import wraps

from flask import current_app, g, has_app_context
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt, wait_none

from cho_toolkit import config

from .errors import RootScanError


def get_config(name, default=None):
    """Return a configuration value.

    Inside an application context the overrides stored in
    ``g.cho_toolkit_overrides`` win, then the Flask application config; the
    defaults of :mod:`cho_toolkit.config` are used otherwise.

    :param name: Configuration key, e.g. ``CHO_TOOLKIT_GPS_ORDER``.
    :param default: Value returned when the key is unknown.
    :returns: The configured value.
    """
    fallback = getattr(config, name, default)
    with suppress(Exception):
        if has_app_context():
            overrides = g.get("cho_toolkit_overrides") or {}
            if name in overrides:
                return overrides[name]
            return current_app.config.get(name, fallback)
    return fallback


def get_logger():
    """Return the logger used by the toolkit.

    :returns: ``current_app.logger`` inside an application context,
        the ``cho_toolkit`` logger otherwise.
    """
    if has_app_context():
        return current_app.logger
    return logging.getLogger("cho_toolkit")


def handle_solver_errors(solver_name):
    """Standardize error logging across solvers.

    Errors are logged with the solver name and the system and re-raised.

    :param solver_name: Name of the solver for logging.
    """

    def decorator(func):
        @wraps(func)
        def wrapper(self, system, *args, **kwargs):
            try:
                return func(self, system, *args, **kwargs)
            except ValueError as err:
                get_logger().warning(f"Invalid input for {solver_name} solver on {system}: {err!s}")
                raise
            except Exception as err:
                get_logger().error(f"Error solving {system} with {solver_name}: {err!s}")
                raise

        return wrapper

    return decorator


def scan_with_retries(scan, step):
    """Run an energy scan, halving the step after each failed attempt.

    :param scan: Callable taking the scan step and returning the result;
        it raises :class:`RootScanError` when the wanted root is missed.
    :param step: Initial scan step.
    :returns: The result of the first successful scan.
    :raises RootScanError: If every attempt misses the root.
    """
    attempts = get_config("CHO_TOOLKIT_ROOT_SCAN_ATTEMPTS", 4)
    retrying = Retrying(
        stop=stop_after_attempt(attempts),
        wait=wait_none(),
        retry=retry_if_exception_type(RootScanError),
        reraise=True,
    )
    for attempt in retrying:
        with attempt:
            number = attempt.retry_state.attempt_number
            if number > 1:
                get_logger().debug(f"Retrying energy scan with step {step / 2 ** (number - 1):g}")
            return scan(step / 2 ** (number - 1))
    return None  # pragma: no cover


def get_worker_count():
    """Return the number of sweep workers.

    The ``CHO_TOOLKIT_THREADS`` environment variable wins over the
    configuration; ``None`` means all available cores.

    :returns: int - a positive worker count.
    :raises ValueError: If the environment variable is not a positive integer.
    """
    value = os.getenv("CHO_TOOLKIT_THREADS") or get_config("CHO_TOOLKIT_THREADS")
    if value in (None, ""):
        return os.cpu_count() or 1
    count = int(value)
    if count < 1:
        raise ValueError(f"CHO_TOOLKIT_THREADS must be a positive integer, got {value!r}")
    return count
