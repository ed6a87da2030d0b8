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

"""Configuration options for the CHO toolkit.

This module defines all configurable parameters of the solvers and of the
batch driver: solver resolution order, caching, root scans, grid sizes,
imaginary-time propagation, collocation, variational diagonalization,
momentum-space transforms and the information measures.
"""

# List of solvers tried in order by ``solver="auto"`` (first solver supporting the system wins)
CHO_TOOLKIT_SOLVERS = ["exact", "pisb", "vardiag", "itp", "gps"]

# Cache expiration time in seconds for computed energies (default: 1 hour)
CHO_TOOLKIT_CACHE_EXPIRE = 60 * 60

# Number of sweep workers (None: number of available cores).
# The CHO_TOOLKIT_THREADS environment variable takes precedence.
CHO_TOOLKIT_THREADS = None

# Kummer 1F1 series control
CHO_TOOLKIT_KUMMER_MAX_TERMS = 500
CHO_TOOLKIT_KUMMER_TAIL_TOLERANCE = 1e-16

# Largest 1F1 argument y = omega * wall**2 evaluated by the ascending series
CHO_TOOLKIT_KUMMER_MAX_ARGUMENT = 36.0

# Beyond the series range a state is taken as free when its density outside the wall is below this value
CHO_TOOLKIT_FREE_TAIL_TOLERANCE = 1e-14

# Energy scan step as a fraction of omega, and number of scans (the step halves each time)
CHO_TOOLKIT_ROOT_SCAN_FRACTION = 0.25
CHO_TOOLKIT_ROOT_SCAN_ATTEMPTS = 4

# Simpson nodes used to sample exact and PISB wavefunctions (keep it 1 modulo 4)
CHO_TOOLKIT_GRID_NODES = 6001

# Imaginary-time propagation
CHO_TOOLKIT_ITP_NODES = 2001
CHO_TOOLKIT_ITP_DTAU = 1e-3
CHO_TOOLKIT_ITP_DTAU_MIN = 1e-6
CHO_TOOLKIT_ITP_ENERGY_TOLERANCE = 1e-12
CHO_TOOLKIT_ITP_MAX_STEPS = 200000
# Upper limit of the starting dtau / h**2 of a propagation
CHO_TOOLKIT_ITP_MAX_DTAU_RATIO = 1e4
# Extrapolate ITP energies from the grid and its refinement
CHO_TOOLKIT_ITP_RICHARDSON = True

# Generalized pseudospectral method
CHO_TOOLKIT_GPS_ORDER = 128
# Free-system proxy radius in units of 1/sqrt(omega)
CHO_TOOLKIT_GPS_FREE_RADIUS = 20.0

# Variational diagonalization in a SCHO basis
CHO_TOOLKIT_VARDIAG_BASIS_SIZE = 50
CHO_TOOLKIT_VARDIAG_QUADRATURE_ORDER = 200
# Scan range of the basis parameter alpha, in multiples of omega
CHO_TOOLKIT_VARDIAG_ALPHA_RANGE = (0.05, 5.0)
CHO_TOOLKIT_VARDIAG_SCAN_POINTS = 40
CHO_TOOLKIT_VARDIAG_EDGE_TOLERANCE = 1e-9

# Momentum space: p_max * wall for confined states, grid nodes and accepted missing norm
CHO_TOOLKIT_MOMENTUM_CUTOFF = 1500.0
CHO_TOOLKIT_MOMENTUM_NODES = 4001
CHO_TOOLKIT_MOMENTUM_TAIL_TOLERANCE = 1e-6

# Information measures
CHO_TOOLKIT_RENYI_ORDERS = (0.6, 3.0)
CHO_TOOLKIT_COMPLEXITY_EXPONENTS = (2 / 3, 1.0)
CHO_TOOLKIT_ANGULAR_NODES = 4000

# Tolerance profiles selectable from the command line; values override the keys above
CHO_TOOLKIT_TOLERANCE_PROFILES = {
    "fast": {
        "CHO_TOOLKIT_GRID_NODES": 2001,
        "CHO_TOOLKIT_ITP_NODES": 801,
        "CHO_TOOLKIT_ITP_ENERGY_TOLERANCE": 1e-10,
        "CHO_TOOLKIT_ITP_RICHARDSON": False,
        "CHO_TOOLKIT_GPS_ORDER": 64,
        "CHO_TOOLKIT_VARDIAG_BASIS_SIZE": 30,
        "CHO_TOOLKIT_VARDIAG_QUADRATURE_ORDER": 120,
        "CHO_TOOLKIT_MOMENTUM_NODES": 2001,
    },
    "paper": {
        "CHO_TOOLKIT_GRID_NODES": 6001,
        "CHO_TOOLKIT_ITP_NODES": 2001,
        "CHO_TOOLKIT_ITP_ENERGY_TOLERANCE": 1e-12,
        "CHO_TOOLKIT_ITP_RICHARDSON": True,
        "CHO_TOOLKIT_GPS_ORDER": 128,
        "CHO_TOOLKIT_VARDIAG_BASIS_SIZE": 50,
        "CHO_TOOLKIT_VARDIAG_QUADRATURE_ORDER": 200,
        "CHO_TOOLKIT_MOMENTUM_NODES": 4001,
    },
}

# Significant digits written in CSV reports
CHO_TOOLKIT_CSV_DIGITS = 12
