"""
Ray-fan tracing of the reality boundary in a fixed-f slice.

Rays leave an interior seed at evenly spaced angles. Each ray is marched
outward on the analytic slack until it turns non-positive, then the
crossing is refined with bisection. The oracle is only consulted when a
trace is validated.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from model.hamiltonian import Couplings, build_hamiltonian, secular_quartic
from domain.analytic import membership_arrays
from spectrum.oracle import (
    DEFAULT_TOLERANCE,
    Classification,
    NumericFailureError,
    RealityTolerance,
    classify_reality,
    matrix_eigenvalues,
)

logger = logging.getLogger(__name__)

MIN_RAYS = 8
MARCH_STEP = 0.02
SEED_RESOLUTION = 41
DEFAULT_SEED_WINDOW = (0.0, 4.0, 0.0, 4.0)
# a^2 + 2c^2 > 10 forces A < 0, so nothing lies past this radius from the origin
OUTER_RADIUS = math.sqrt(10.0) + 1.0


class NoInteriorSeedError(RuntimeError):
    """Raised when a coarse scan finds no Inside node to trace from."""

    def __init__(self, message: str, fixed_f: float):
        super().__init__(message)
        self.fixed_f = fixed_f


@dataclass(frozen=True)
class BoundaryPoint:
    ray_angle: float
    a: float
    c: float
    slack: float
    radius: float

    def as_row(self):
        return {"ray_angle": self.ray_angle, "a": self.a, "c": self.c, "slack": self.slack}


@dataclass
class BoundaryTrace:
    """Boundary points ordered by ray angle in [0, 2 pi)."""
    fixed_f: float
    points: List[BoundaryPoint] = field(default_factory=list)
    method_tol: float = 1e-8
    seed: Tuple[float, float] = (0.0, 0.0)

    @property
    def angular_step(self) -> float:
        return 2.0 * math.pi / len(self.points) if self.points else 0.0

    @property
    def max_abs_slack(self) -> float:
        return max((abs(p.slack) for p in self.points), default=0.0)


@dataclass(frozen=True)
class TraceValidity:
    """Straddle-check results for one trace."""
    fixed_f: float
    points: int
    opposite_verdicts: int
    max_abs_slack: float
    oracle_transitions: int
    max_zero_f_residual: Optional[float] = None

    @property
    def all_opposite(self) -> bool:
        return self.opposite_verdicts == self.points


def slack_values(a: np.ndarray, c: np.ndarray, f: float) -> np.ndarray:
    """Analytic slack at each (a, c) for the fixed f."""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    c = np.atleast_1d(np.asarray(c, dtype=float))
    _, slack, _, _, _ = membership_arrays(a, c, np.full(a.shape, f))
    return slack


def find_interior_seed(
    fixed_f: float,
    window: Sequence[float] = DEFAULT_SEED_WINDOW,
    resolution: int = SEED_RESOLUTION,
) -> Tuple[float, float]:
    """Inside node of a coarse scan with the largest slack (first in row-major order on ties)."""
    lo_a, hi_a, lo_c, hi_c = window
    aa, cc = np.meshgrid(
        np.linspace(lo_a, hi_a, resolution), np.linspace(lo_c, hi_c, resolution), indexing="ij"
    )
    a_flat, c_flat = aa.ravel(), cc.ravel()
    verdict, slack, _, _, _ = membership_arrays(a_flat, c_flat, np.full(a_flat.shape, fixed_f))
    inside = verdict == 0
    if not inside.any():
        raise NoInteriorSeedError(
            f"No interior seed for f={fixed_f} in window {tuple(window)}", fixed_f=fixed_f
        )
    index = int(np.argmax(np.where(inside, slack, -np.inf)))
    seed = (float(a_flat[index]), float(c_flat[index]))
    logger.debug("Seed for f=%g at %s (slack %.6g)", fixed_f, seed, slack[index])
    return seed


def _ray_slack(seed: Tuple[float, float], angle: float, f: float) -> Callable[[float], float]:
    cos_t, sin_t = math.cos(angle), math.sin(angle)

    def slack(r: float) -> float:
        return float(slack_values(seed[0] + r * cos_t, seed[1] + r * sin_t, f)[0])

    return slack


def _trace_ray(seed: Tuple[float, float], angle: float, f: float, tol: float) -> BoundaryPoint:
    cos_t, sin_t = math.cos(angle), math.sin(angle)
    max_radius = math.hypot(*seed) + OUTER_RADIUS
    radii = np.arange(0.0, max_radius + MARCH_STEP, MARCH_STEP)
    marched = slack_values(seed[0] + radii * cos_t, seed[1] + radii * sin_t, f)

    outside = np.nonzero(marched <= 0.0)[0]
    if outside.size == 0:
        raise NumericFailureError(f"Ray at angle {angle:.6g} never left the domain (f={f})")
    i = int(outside[0])
    slack = _ray_slack(seed, angle, f)
    if marched[i] == 0.0 or i == 0:
        r = float(radii[i])
    else:
        xtol = max(tol * 1e-6, 1e-15)
        r = bisect(slack, float(radii[i - 1]), float(radii[i]), xtol=xtol, maxiter=200)

    point = BoundaryPoint(
        ray_angle=angle,
        a=seed[0] + r * cos_t,
        c=seed[1] + r * sin_t,
        slack=slack(r),
        radius=r,
    )
    if abs(point.slack) > tol:
        logger.warning("Ray %.6g: residual slack %.3g exceeds tol %.3g", angle, point.slack, tol)
    return point


def trace_boundary(
    fixed_f: float,
    rays: int = 64,
    tol: float = 1e-8,
    seed: Optional[Tuple[float, float]] = None,
    window: Sequence[float] = DEFAULT_SEED_WINDOW,
    workers: int = 1,
) -> BoundaryTrace:
    """Trace the boundary of the reality domain along a fan of rays."""
    if rays < MIN_RAYS:
        raise ValueError(f"Invalid rays: {rays}. Must be >= {MIN_RAYS}")
    if not tol > 0:
        raise ValueError(f"Invalid tol: {tol}. Must be > 0")
    if not math.isfinite(fixed_f) or fixed_f < 0:
        raise ValueError(f"Invalid fixed_f: {fixed_f}. Must be finite and >= 0")

    if seed is None:
        seed = find_interior_seed(fixed_f, window)
    angles = [2.0 * math.pi * k / rays for k in range(rays)]

    def run(angle: float) -> BoundaryPoint:
        return _trace_ray(seed, angle, fixed_f, tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(run, angles))
    else:
        points = [run(angle) for angle in angles]

    trace = BoundaryTrace(fixed_f=fixed_f, points=points, method_tol=tol, seed=seed)
    logger.info(
        "Traced f=%g from seed %s: %d points, max |slack| %.3g",
        fixed_f, seed, len(points), trace.max_abs_slack,
    )
    return trace


def straddle_couplings(point: BoundaryPoint, fixed_f: float, offset: float) -> Tuple[Couplings, Couplings]:
    """Couplings at point -/+ offset along the point's ray."""
    dx, dy = math.cos(point.ray_angle) * offset, math.sin(point.ray_angle) * offset
    inner = Couplings(point.a - dx, point.c - dy, fixed_f)
    outer = Couplings(point.a + dx, point.c + dy, fixed_f)
    return inner, outer


def _oracle_class(couplings: Couplings, tol: RealityTolerance):
    try:
        return classify_reality(matrix_eigenvalues(build_hamiltonian(couplings)), tol)
    except NumericFailureError as e:
        logger.warning("Oracle check failed at %s: %s", couplings, e)
        return None


def validate_trace(trace: BoundaryTrace, oracle_tol: RealityTolerance = DEFAULT_TOLERANCE) -> TraceValidity:
    """Check each point at +/- method_tol along its ray.

    Straddle verdicts are the sign of the slack with no boundary band. An
    oracle transition is a straddle pair whose reality differs or either of
    whose spectra is degenerate.
    """
    opposite = 0
    transitions = 0
    zero_f_residual = 0.0 if trace.fixed_f == 0.0 else None
    for point in trace.points:
        inner, outer = straddle_couplings(point, trace.fixed_f, trace.method_tol)
        s_in, s_out = slack_values(np.array([inner.a, outer.a]), np.array([inner.c, outer.c]), trace.fixed_f)
        if (s_in > 0) != (s_out > 0):
            opposite += 1

        k_in, k_out = _oracle_class(inner, oracle_tol), _oracle_class(outer, oracle_tol)
        if k_in is not None and k_out is not None and (
            k_in.is_real != k_out.is_real
            or Classification.DEGENERATE_REAL in (k_in, k_out)
        ):
            transitions += 1

        if zero_f_residual is not None:
            q = secular_quartic(Couplings(point.a, point.c, 0.0))
            residual = min(abs(q.C), abs(q.A * q.A / 4.0 - q.C))
            zero_f_residual = max(zero_f_residual, residual)

    validity = TraceValidity(
        fixed_f=trace.fixed_f,
        points=len(trace.points),
        opposite_verdicts=opposite,
        max_abs_slack=trace.max_abs_slack,
        oracle_transitions=transitions,
        max_zero_f_residual=zero_f_residual,
    )
    logger.info(
        "Trace f=%g: %d/%d opposite straddles, %d oracle transitions",
        trace.fixed_f, opposite, validity.points, transitions,
    )
    return validity
