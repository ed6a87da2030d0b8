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

"""Pytest configuration.

See https://pytest-invenio.readthedocs.io/ for documentation on which test
fixtures are available.
"""

import contextlib

import pytest
from flask import Flask
from invenio_cache.ext import InvenioCache

from cho_toolkit.ext import CHOToolkit
from cho_toolkit.modules.api import ConfinedSystem1D, ConfinedSystemRadial
from cho_toolkit.modules.exact.api import cho3d_eigenstate, free_eigenstate_radial, scho_eigenstate


@pytest.fixture
def app():
    """Create a Flask application for testing."""
    app = Flask(__name__)
    app.config["TESTING"] = True

    # Configure cache for testing (use simple in-memory cache, not Redis)
    app.config["CACHE_TYPE"] = "SimpleCache"

    InvenioCache(app)
    CHOToolkit(app)

    # Clear cache after initialization
    with contextlib.suppress(Exception):
        from invenio_cache import current_cache

        with app.app_context():
            current_cache.clear()

    return app


@pytest.fixture(scope="session")
def sphere_1s():
    """Ground state confined in a sphere of radius 1."""
    return cho3d_eigenstate(ConfinedSystemRadial(r_c=1.0), 0)


@pytest.fixture(scope="session")
def free_1s():
    """Free 3D ground state at omega = 1."""
    return free_eigenstate_radial(1.0, 0, 0)


@pytest.fixture(scope="session")
def box_states():
    """The two lowest states of the symmetric box of half width 0.5."""
    system = ConfinedSystem1D.symmetric(1.0, 0.5)
    return system, [scho_eigenstate(system, n) for n in (0, 1)]
