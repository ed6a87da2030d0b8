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

"""Flask extension for the CHO toolkit.

This module provides the Flask extension class that configures the solvers
and registers the ``cho`` command group.
"""

from . import config
from .cli import cho


class CHOToolkit:
    """cho-toolkit extension."""

    def __init__(self, app=None):
        """Extension initialization."""
        if app:
            self.init_app(app)

    def init_app(self, app):
        """Flask application initialization."""
        self.init_config(app)
        self.init_cli(app)
        app.extensions["cho-toolkit"] = self

    def init_config(self, app):
        """Initialize configuration."""
        for key in dir(config):
            if key.startswith("CHO_TOOLKIT_"):
                app.config.setdefault(key, getattr(config, key))

    def init_cli(self, app):
        """Register the command line group."""
        app.cli.add_command(cho)
