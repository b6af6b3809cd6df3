"""
The (alpha, delta, phi) chart of the coupling octant.

A = 10 sin^2(alpha), a^2 = 10 cos^2(alpha) sin^2(delta),
2c^2 + f^2 = 10 cos^2(alpha) cos^2(delta), f^2 = f_upper(A)^2 cos(phi).

In this chart the C-bounds do not depend on delta and the reality
condition becomes

    sqrt(B_minus) <= 12 + 5 cos^2(alpha) cos^2(delta) <= sqrt(B_plus)

with B = C_bound + 90 cos^2(alpha) + 135 + f^4/4. The box overcovers the
octant: chart points whose implied c^2 is negative have no couplings.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from model.hamiltonian import Couplings, SecularConsistencyError, secular_quartic
from domain.analytic import (
    HALF_PI,
    DEFAULT_BOUNDARY_BAND,
    AsymmetryOutOfRangeError,
    Membership,
    Reason,
    Verdict,
    c_bounds_at_phi,
    exact_cos,
    f_upper_squared,
    phi_of,
    verdict_for,
)

logger = logging.getLogger(__name__)

# Negative c^2 from rounding up to this size is read as c = 0
C2_ROUNDING_TOL = 1e-12

BOUND_POSITIVITY_TOL = 1e-9
C_FORM_TOL = 1e-10


class NotRepresentableError(ValueError):
    """Raised when a point has no image in the chart (or no couplings)."""

    def __init__(self, message: str, constraint: str):
        super().__init__(message)
        self.constraint = constraint


class BoundsPositivityError(RuntimeError):
    """Raised when a shifted bound comes out negative."""
    pass


@dataclass(frozen=True)
class ReparamPoint:
    """Chart coordinates: alpha in (0, pi/2], delta and phi in [0, pi/2]."""
    alpha: float
    delta: float
    phi: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= HALF_PI:
            raise NotRepresentableError(
                f"Invalid alpha: {self.alpha!r}. Must be in (0, pi/2]", "alpha-range"
            )
        if not 0.0 <= self.delta <= HALF_PI:
            raise NotRepresentableError(
                f"Invalid delta: {self.delta!r}. Must be in [0, pi/2]", "delta-range"
            )
        if not 0.0 <= self.phi <= HALF_PI:
            raise NotRepresentableError(
                f"Invalid phi: {self.phi!r}. Must be in [0, pi/2]", "phi-range"
            )

    @property
    def cos2_alpha(self) -> float:
        return exact_cos(self.alpha) ** 2

    @property
    def cos2_delta(self) -> float:
        return exact_cos(self.delta) ** 2

    @property
    def A(self) -> float:
        return 10.0 * math.sin(self.alpha) ** 2

    @property
    def f2(self) -> float:
        return f_upper_squared(self.A) * exact_cos(self.phi)

    @property
    def middle(self) -> float:
        """The delta-dependent middle term 12 + 5 cos^2(alpha) cos^2(delta)."""
        return 12.0 + 5.0 * self.cos2_alpha * self.cos2_delta


@dataclass(frozen=True)
class DomainBounds:
    """C-bounds and their shifted, positive B counterparts."""
    c_minus: float
    c_plus: float
    b_minus: float
    b_plus: float


@dataclass(frozen=True)
class DeltaInterval:
    """Closed interval [lo, hi] of delta, or empty."""
    lo: Optional[float]
    hi: Optional[float]

    @classmethod
    def empty(cls) -> "DeltaInterval":
        return cls(None, None)

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    @property
    def width(self) -> float:
        if self.lo is None or self.hi is None:
            return 0.0
        return self.hi - self.lo

    def contains(self, delta: float) -> bool:
        if self.lo is None or self.hi is None:
            return False
        return self.lo <= delta <= self.hi


def to_reparam(couplings: Couplings) -> ReparamPoint:
    """Chart coordinates of a coupling triple."""
    q = secular_quartic(couplings)
    if not q.A > 0:
        raise NotRepresentableError(
            f"A={q.A!r} <= 0 has no chart image", Reason.A_NONPOSITIVE.value
        )
    a, c, f = couplings.as_tuple()
    radial = a * a + 2.0 * c * c + f * f  # 10 cos^2(alpha)
    alpha = math.atan2(math.sqrt(q.A), math.sqrt(radial))
    delta = 0.0 if radial == 0.0 else math.atan2(a, math.sqrt(2.0 * c * c + f * f))
    try:
        phi = phi_of(q.A, f)
    except AsymmetryOutOfRangeError as e:
        raise NotRepresentableError(str(e), Reason.F_EXCEEDS_UPPER.value) from e
    return ReparamPoint(alpha=alpha, delta=delta, phi=phi)


def from_reparam(p: ReparamPoint) -> Couplings:
    """Couplings of a chart point; fails where the implied c^2 is negative."""
    f2 = p.f2
    a2 = 10.0 * p.cos2_alpha * math.sin(p.delta) ** 2
    c2 = (10.0 * p.cos2_alpha * p.cos2_delta - f2) / 2.0
    if c2 < 0.0:
        if c2 < -C2_ROUNDING_TOL:
            raise NotRepresentableError(
                f"Chart point {p} implies c^2={c2!r} < 0", "c-squared-negative"
            )
        c2 = 0.0
    return Couplings(math.sqrt(a2), math.sqrt(c2), math.sqrt(f2))


def c_from_reparam(p: ReparamPoint) -> float:
    """C evaluated in chart coordinates; both printed chart forms are checked."""
    cos2a = p.cos2_alpha
    K = 5.0 * cos2a * p.cos2_delta
    f4 = p.f2 ** 2
    first = (3.0 + K) ** 2 - 90.0 * cos2a * math.sin(p.delta) ** 2 - f4 / 4.0
    second = (12.0 + K) ** 2 - 90.0 * cos2a - 135.0 - f4 / 4.0
    if abs(first - second) > C_FORM_TOL * (1.0 + abs(second)):
        raise SecularConsistencyError(
            f"Chart forms of C disagree: {first!r} vs {second!r}",
            {"chart_sin": first, "chart_shifted": second},
        )
    return second


def c_bounds_reparam(alpha: float, phi: float) -> Tuple[float, float]:
    """(C_minus, C_plus) from the delta-independent chart formula."""
    s2 = math.sin(alpha) ** 2
    scale = 100.0 / 3.0 * s2 * s2
    cos_phi = exact_cos(phi)
    k_minus = 0.0 if phi == HALF_PI else math.cos((math.pi + phi) / 3.0)
    k_plus = math.cos((math.pi - phi) / 3.0)
    return scale * k_minus * (k_minus - cos_phi), scale * k_plus * (k_plus - cos_phi)


def _shift(alpha: float, phi: float) -> float:
    A = 10.0 * math.sin(alpha) ** 2
    f2 = f_upper_squared(A) * exact_cos(phi)
    return 90.0 * exact_cos(alpha) ** 2 + 135.0 + f2 * f2 / 4.0


def domain_bounds(alpha: float, phi: float) -> DomainBounds:
    """C-bounds and B-bounds at a chart (alpha, phi)."""
    if not 0.0 < alpha <= HALF_PI:
        raise NotRepresentableError(f"Invalid alpha: {alpha!r}. Must be in (0, pi/2]", "alpha-range")
    if not 0.0 <= phi <= HALF_PI:
        raise NotRepresentableError(f"Invalid phi: {phi!r}. Must be in [0, pi/2]", "phi-range")
    A = 10.0 * math.sin(alpha) ** 2
    c_minus, c_plus = c_bounds_at_phi(A, phi)
    shift = _shift(alpha, phi)
    b_minus, b_plus = c_minus + shift, c_plus + shift
    for name, value in (("b_minus", b_minus), ("b_plus", b_plus)):
        if value < -BOUND_POSITIVITY_TOL:
            logger.error("Shifted bound %s=%r is negative at alpha=%r phi=%r", name, value, alpha, phi)
            raise BoundsPositivityError(f"{name}={value!r} is negative")
    return DomainBounds(c_minus=c_minus, c_plus=c_plus, b_minus=max(b_minus, 0.0), b_plus=max(b_plus, 0.0))


def b_bounds(alpha: float, phi: float) -> Tuple[float, float]:
    """(B_minus, B_plus): the shifted bounds, both non-negative."""
    bounds = domain_bounds(alpha, phi)
    return bounds.b_minus, bounds.b_plus


def membership_reparam(p: ReparamPoint, band: float = DEFAULT_BOUNDARY_BAND) -> Membership:
    """Membership from sqrt(B_minus) <= 12 + 5 cos^2(alpha) cos^2(delta) <= sqrt(B_plus)."""
    from_reparam(p)
    b_minus, b_plus = b_bounds(p.alpha, p.phi)
    middle2 = p.middle ** 2
    # Differences of squares are the C-coordinate slacks
    lower, upper = middle2 - b_minus, b_plus - middle2
    slack = min(lower, upper)
    C = c_from_reparam(p)
    verdict = verdict_for(slack, C, band)
    if verdict is Verdict.INSIDE:
        reason = Reason.INTERIOR
    else:
        reason = Reason.C_BELOW_MINUS if lower <= upper else Reason.C_ABOVE_PLUS
    return Membership(verdict=verdict, slack=slack, reason=reason, A=p.A, C=C)


def delta_interval(alpha: float, phi: float) -> DeltaInterval:
    """Range of delta inside D at fixed (alpha, phi); may be empty.

    Chart points whose implied c^2 is negative are excluded.
    """
    b_minus, b_plus = b_bounds(alpha, phi)
    lo_root, hi_root = math.sqrt(b_minus), math.sqrt(b_plus)
    cos2a = exact_cos(alpha) ** 2
    f2 = f_upper_squared(10.0 * math.sin(alpha) ** 2) * exact_cos(phi)

    if cos2a == 0.0:
        # delta drops out; c^2 = -f^2/2 leaves only f = 0
        if lo_root <= 12.0 <= hi_root and f2 == 0.0:
            return DeltaInterval(0.0, HALF_PI)
        return DeltaInterval.empty()

    # x = cos^2(delta)
    x_lo = max((lo_root - 12.0) / (5.0 * cos2a), f2 / (10.0 * cos2a), 0.0)
    x_hi = min((hi_root - 12.0) / (5.0 * cos2a), 1.0)
    if x_lo > x_hi:
        logger.debug("Empty delta interval at alpha=%r phi=%r", alpha, phi)
        return DeltaInterval.empty()
    return DeltaInterval(lo=math.acos(math.sqrt(x_hi)), hi=math.acos(math.sqrt(x_lo)))
