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

"""Angular factors of the information measures.

Densities of central-potential states factor as ``R(r)**2 |Y_lm|**2``; the
angular part ``|Y_lm|**2`` is the same in position and momentum space.
Integrals over the sphere are ``2 pi`` times Gauss-Legendre sums in
``mu = cos(theta)``.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from ..utils import get_config


@lru_cache(maxsize=8)
def angular_quadrature(count):
    """Gauss-Legendre nodes and weights in ``mu``."""
    return special.roots_legendre(count)


def angular_density(l, m, mu):
    """``|Y_lm|**2`` as a function of ``mu = cos(theta)``."""
    if not 0 <= abs(m) <= l:
        raise ValueError(f"|m| must not exceed l, got l={l}, m={m}")
    m = abs(m)
    norm = (2 * l + 1) / (4.0 * math.pi) * math.factorial(l - m) / math.factorial(l + m)
    return norm * special.lpmv(m, l, mu) ** 2


def sphere_integral(values, weights):
    """``integral f dOmega`` for an azimuth-independent ``f`` sampled at the quadrature nodes."""
    return 2.0 * math.pi * float(np.dot(weights, values))


@dataclass(frozen=True)
class AngularFactor:
    """Entropy, Onicescu energy and entropic moments of ``|Y_lm|**2``."""

    l: int
    m: int
    entropy: float
    onicescu: float
    norm: float
    trivial: bool = False

    def entropic_moment(self, order):
        """``integral |Y_lm|**(2 order) dOmega``."""
        if self.trivial:
            return 1.0
        return _entropic_moment(self.l, abs(self.m), float(order), _node_count())


def _node_count():
    return get_config("CHO_TOOLKIT_ANGULAR_NODES", 4000)


@lru_cache(maxsize=256)
def _entropic_moment(l, m, order, count):
    mu, weights = angular_quadrature(count)
    return sphere_integral(angular_density(l, m, mu) ** order, weights)


@lru_cache(maxsize=256)
def _angular_factor(l, m, count):
    mu, weights = angular_quadrature(count)
    chi = angular_density(l, m, mu)
    return AngularFactor(
        l=l,
        m=m,
        entropy=sphere_integral(special.entr(chi), weights),
        onicescu=sphere_integral(chi**2, weights),
        norm=sphere_integral(chi, weights),
    )


def angular_factor(l, m):
    """Angular factor of the state ``(l, m)`` (cached)."""
    if not 0 <= abs(m) <= l:
        raise ValueError(f"|m| must not exceed l, got l={l}, m={m}")
    return _angular_factor(l, abs(m), _node_count())


def trivial_factor():
    """Angular factor of 1D densities (no angular part)."""
    return AngularFactor(l=0, m=0, entropy=0.0, onicescu=1.0, norm=1.0, trivial=True)
