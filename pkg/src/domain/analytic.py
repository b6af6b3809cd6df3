"""
Closed-form construction of the physical domain D.

All four energies are real iff C_minus <= C <= C_plus, where the bounds are
the values of (A/2) z^2 + 3 f^2 z at the two negative critical points of the
secular curve. These critical points solve 4z^3 - 2Az = 4f^2 and have a
trigonometric closed form once f is traded for the angle phi through
f^2 = f_upper(A)^2 cos(phi).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from model.hamiltonian import Couplings, secular_arrays, secular_quartic

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2.0

DEFAULT_BOUNDARY_BAND = 1e-9

# f^2 / f_upper^2 may exceed 1 by this much from rounding before f counts as too large
PHI_RATIO_SLACK = 1e-12


class DomainError(ValueError):
    """Raised when A <= 0 where the closed forms need A > 0."""
    pass


class AsymmetryOutOfRangeError(DomainError):
    """Raised when f exceeds f_upper(A); carries the excess f - f_upper."""

    def __init__(self, message: str, excess: float):
        super().__init__(message)
        self.excess = excess


class Verdict(str, Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"
    BOUNDARY = "Boundary"


class Reason(str, Enum):
    A_NONPOSITIVE = "A-nonpositive"
    F_EXCEEDS_UPPER = "f-exceeds-upper"
    C_BELOW_MINUS = "C-below-minus"
    C_ABOVE_PLUS = "C-above-plus"
    INTERIOR = "interior"


VERDICT_CODES = (Verdict.INSIDE, Verdict.OUTSIDE, Verdict.BOUNDARY)
REASON_CODES = (
    Reason.A_NONPOSITIVE,
    Reason.F_EXCEEDS_UPPER,
    Reason.C_BELOW_MINUS,
    Reason.C_ABOVE_PLUS,
    Reason.INTERIOR,
)


@dataclass(frozen=True)
class CriticalPoints:
    """Leftmost minimum and subsequent maximum of the secular curve."""
    z_min: float
    z_max: float
    f_upper: float
    phi: float
    A: float

    @property
    def f2(self) -> float:
        """f^2 implied by phi."""
        return self.f_upper ** 2 * exact_cos(self.phi)

    def cubic_residual(self, z: float) -> float:
        """Residual of 4z^3 - 2Az - 4f^2 at z."""
        return 4.0 * z ** 3 - 2.0 * self.A * z - 4.0 * self.f2


@dataclass(frozen=True)
class Membership:
    """Analytic verdict with its signed slack in the C coordinate."""
    verdict: Verdict
    slack: float
    reason: Reason
    A: float
    C: float

    @property
    def is_inside(self) -> bool:
        return self.verdict is Verdict.INSIDE


def exact_cos(angle: float) -> float:
    """cos with the exact zero at pi/2."""
    return 0.0 if angle == HALF_PI else math.cos(angle)


def boundary_width(C: float, band: float = DEFAULT_BOUNDARY_BAND) -> float:
    return band * (1.0 + abs(C))


def verdict_for(slack: float, C: float, band: float = DEFAULT_BOUNDARY_BAND) -> Verdict:
    """Boundary iff |slack| <= band (1 + |C|); otherwise the slack sign decides."""
    width = boundary_width(C, band)
    if abs(slack) <= width:
        return Verdict.BOUNDARY
    return Verdict.INSIDE if slack > 0 else Verdict.OUTSIDE


def f_upper(A: float) -> float:
    """Largest asymmetry for which the critical-point cubic keeps its two negative roots."""
    if not A > 0:
        raise DomainError(f"f_upper needs A > 0, got A={A!r}")
    return (A ** 3 / 54.0) ** 0.25


def f_upper_squared(A: float) -> float:
    if not A > 0:
        raise DomainError(f"f_upper needs A > 0, got A={A!r}")
    return math.sqrt(A ** 3 / 54.0)


def phi_of(A: float, f: float) -> float:
    """Angle phi in [0, pi/2] with f^2 = f_upper(A)^2 cos(phi)."""
    fu2 = f_upper_squared(A)
    ratio = f * f / fu2
    if ratio > 1.0 + PHI_RATIO_SLACK:
        fu = math.sqrt(fu2)
        raise AsymmetryOutOfRangeError(
            f"f={f!r} exceeds f_upper({A!r})={fu!r}", excess=abs(f) - fu
        )
    return math.acos(min(ratio, 1.0))


def critical_points(A: float, phi: float) -> CriticalPoints:
    """Trigonometric roots z_min <= z_max <= 0 of 4z^3 - 2Az = 4f^2."""
    if not A > 0:
        raise DomainError(f"critical_points needs A > 0, got A={A!r}")
    if not 0.0 <= phi <= HALF_PI:
        raise DomainError(f"Invalid phi: {phi!r}. Must be in [0, pi/2]")

    lo, mid = -math.sqrt(A / 2.0), -math.sqrt(A / 6.0)
    if phi == HALF_PI:
        z_min, z_max = lo, 0.0
    elif phi == 0.0:
        z_min = z_max = mid
    else:
        r = math.sqrt(2.0 * A / 3.0)
        z_min = -r * math.cos((math.pi - phi) / 3.0)
        z_max = -r * math.cos((math.pi + phi) / 3.0)
        # Clamp rounding spill-over at the interval ends
        z_min = min(max(z_min, lo), mid)
        z_max = min(max(z_max, mid), 0.0)
    return CriticalPoints(z_min=z_min, z_max=z_max, f_upper=f_upper(A), phi=phi, A=A)


def bound_at(A: float, f2: float, z: float) -> float:
    """Simplified bound (A/2) z^2 + 3 f^2 z, valid at a critical point."""
    return 0.5 * A * z * z + 3.0 * f2 * z


def bound_at_unsimplified(A: float, f2: float, z: float) -> float:
    """Bound before eliminating z^4 with the cubic: 4 f^2 z + A z^2 - z^4."""
    return 4.0 * f2 * z + A * z * z - z ** 4


def c_bounds_at_phi(A: float, phi: float) -> Tuple[float, float]:
    """(C_minus, C_plus) with the asymmetry given through phi."""
    if phi == HALF_PI:
        return 0.0, A * A / 4.0
    cp = critical_points(A, phi)
    return bound_at(A, cp.f2, cp.z_max), bound_at(A, cp.f2, cp.z_min)


def c_bounds(A: float, f: float) -> Tuple[float, float]:
    """(C_minus, C_plus): the reality bounds on C at fixed A and f."""
    if f == 0.0:
        if not A > 0:
            raise DomainError(f"c_bounds needs A > 0, got A={A!r}")
        return 0.0, A * A / 4.0
    phi = phi_of(A, f)
    cp = critical_points(A, phi)
    f2 = f * f
    return bound_at(A, f2, cp.z_max), bound_at(A, f2, cp.z_min)


def third_extremum_bound(A: float, f: float) -> float:
    """Bound from the positive critical point z3 = -(z_min + z_max).

    Reality at the rightmost pair needs C <= this value; it never binds
    because it is at least C_plus.
    """
    cp = critical_points(A, phi_of(A, f))
    z3 = -(cp.z_min + cp.z_max)
    return bound_at(A, f * f, z3)


def _nearest_bound_reason(C: float, c_minus: float, c_plus: float) -> Reason:
    return Reason.C_BELOW_MINUS if C - c_minus <= c_plus - C else Reason.C_ABOVE_PLUS


def membership_analytic(couplings: Couplings, band: float = DEFAULT_BOUNDARY_BAND) -> Membership:
    """Decide membership in D from the closed-form bounds."""
    q = secular_quartic(couplings)
    A, C, f = q.A, q.C, couplings.f

    if f == 0.0:
        # Biquadratic: E^2 = (A +- sqrt(A^2 - 4C)) / 2
        c_minus, c_plus = 0.0, A * A / 4.0
        slack = min(C - c_minus, c_plus - C)
        if A < 0:
            slack = min(slack, A)
            reason = Reason.A_NONPOSITIVE
        else:
            reason = _nearest_bound_reason(C, c_minus, c_plus)
    elif A <= 0:
        slack = A - q.f2
        reason = Reason.A_NONPOSITIVE
    else:
        fu2 = f_upper_squared(A)
        if q.f2 > fu2 * (1.0 + PHI_RATIO_SLACK):
            slack = fu2 - q.f2
            reason = Reason.F_EXCEEDS_UPPER
        else:
            c_minus, c_plus = c_bounds_at_phi(A, math.acos(min(q.f2 / fu2, 1.0)))
            slack = min(C - c_minus, c_plus - C)
            reason = _nearest_bound_reason(C, c_minus, c_plus)

    verdict = verdict_for(slack, C, band)
    if verdict is Verdict.INSIDE:
        reason = Reason.INTERIOR
    logger.debug("Membership %s: %s (%s, slack %.3g)", couplings, verdict.value, reason.value, slack)
    return Membership(verdict=verdict, slack=slack, reason=reason, A=A, C=C)


def membership_arrays(
    a: np.ndarray, c: np.ndarray, f: np.ndarray, band: float = DEFAULT_BOUNDARY_BAND
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized membership_analytic.

    Returns (verdict_codes, slack, reason_codes, A, C); codes index
    VERDICT_CODES and REASON_CODES.
    """
    f = np.abs(np.asarray(f, dtype=float))
    A, C, f2 = secular_arrays(np.abs(a), np.abs(c), f)
    A, C, f2, f = (np.ravel(x) for x in np.broadcast_arrays(A, C, f2, f))

    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        positive_A = np.where(A > 0, A, 1.0)
        fu2 = np.sqrt(positive_A ** 3 / 54.0)
        ratio = np.where(A > 0, f2 / fu2, np.inf)
        phi = np.arccos(np.clip(ratio, 0.0, 1.0))
        r = np.sqrt(2.0 * positive_A / 3.0)
        z_min = -r * np.cos((np.pi - phi) / 3.0)
        z_max = -r * np.cos((np.pi + phi) / 3.0)
        c_minus = 0.5 * A * z_max ** 2 + 3.0 * f2 * z_max
        c_plus = 0.5 * A * z_min ** 2 + 3.0 * f2 * z_min

    zero_f = f == 0.0
    c_minus = np.where(zero_f, 0.0, c_minus)
    c_plus = np.where(zero_f, A * A / 4.0, c_plus)
    slack = np.minimum(C - c_minus, c_plus - C)
    reason = np.where(C - c_minus <= c_plus - C, 2, 3)

    zero_f_negative_A = zero_f & (A < 0)
    slack = np.where(zero_f_negative_A, np.minimum(slack, A), slack)
    gate_A = ~zero_f & (A <= 0)
    slack = np.where(gate_A, A - f2, slack)
    gate_f = ~zero_f & (A > 0) & (ratio > 1.0 + PHI_RATIO_SLACK)
    slack = np.where(gate_f, fu2 - f2, slack)
    reason = np.where(zero_f_negative_A | gate_A, 0, np.where(gate_f, 1, reason))

    width = band * (1.0 + np.abs(C))
    verdict = np.where(np.abs(slack) <= width, 2, np.where(slack > 0, 0, 1))
    reason = np.where(verdict == 0, 4, reason)
    return verdict, slack, reason, A, C
