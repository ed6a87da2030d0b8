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

"""Exceptions raised by the solvers and the measures."""


class CHOToolkitError(Exception):
    """Base class of all toolkit errors."""


class KummerConvergenceError(CHOToolkitError):
    """The 1F1 series did not reach its tail tolerance."""

    def __init__(self, partial_sum, terms):
        """Keep the partial sum and the number of summed terms."""
        super().__init__(f"1F1 series not converged after {terms} terms (partial sum {partial_sum!r})")
        self.partial_sum = partial_sum
        self.terms = terms


class KummerArgumentError(CHOToolkitError):
    """The 1F1 argument is beyond the range of the ascending series."""

    def __init__(self, y, limit):
        """Keep the offending argument."""
        super().__init__(f"1F1 argument y={y:g} exceeds the series limit {limit:g}")
        self.y = y
        self.limit = limit


class RootBracketError(CHOToolkitError):
    """No sign change inside the requested bracket."""

    def __init__(self, lo, hi, reason="no sign change"):
        """Keep the bracket."""
        super().__init__(f"{reason} on [{lo!r}, {hi!r}]")
        self.lo = lo
        self.hi = hi


class RootScanError(CHOToolkitError):
    """An energy scan did not find the root with the requested node count."""

    def __init__(self, state, found):
        """Keep the requested state and the node counts of the roots found."""
        super().__init__(f"no root with {state} nodes in the scan window (node counts found: {found})")
        self.state = state
        self.found = found


class BesselZeroError(CHOToolkitError):
    """A Bessel zero could not be bracketed."""

    def __init__(self, l, zero_index):
        """Keep the order and the zero index."""
        super().__init__(f"cannot bracket zero {zero_index} of the Bessel function of order l={l}")
        self.l = l
        self.zero_index = zero_index


class QuadratureError(CHOToolkitError):
    """A quadrature sample is not finite."""

    def __init__(self, index, value):
        """Keep the offending node index."""
        super().__init__(f"non-finite integrand {value!r} at node {index}")
        self.index = index


class EigensolverError(CHOToolkitError):
    """Dense symmetric eigensolver failure."""


class PivotError(CHOToolkitError):
    """Zero pivot in a banded solve."""


class ItpConvergenceError(CHOToolkitError):
    """Imaginary-time propagation hit its step limit."""

    def __init__(self, steps, energy):
        """Keep the number of steps and the last energy."""
        super().__init__(f"propagation not converged after {steps} steps (last energy {energy!r})")
        self.steps = steps
        self.energy = energy


class ItpDivergenceError(CHOToolkitError):
    """The propagated energy keeps growing."""


class VardiagRangeError(CHOToolkitError):
    """The optimal basis parameter sits on the edge of the scanned range."""

    def __init__(self, alpha):
        """Keep the edge value."""
        super().__init__(f"basis parameter minimum at the scan edge alpha={alpha:g}; widen the range")
        self.alpha = alpha


class KernelRangeError(CHOToolkitError):
    """No closed-form momentum kernel for this angular momentum."""


class MomentumGridError(CHOToolkitError):
    """The momentum grid misses a noticeable part of the norm."""

    def __init__(self, tail):
        """Keep the missing norm."""
        super().__init__(f"momentum grid misses {tail:.3e} of the norm; extend p_max")
        self.tail = tail


class SupportError(CHOToolkitError):
    """Reference density vanishes where the target density does not."""


class SolverCompatibilityError(CHOToolkitError):
    """The requested solver cannot handle the system."""


class DifferentiationNoiseError(CHOToolkitError):
    """Finite-difference kinetic terms are not stable under grid halving."""
