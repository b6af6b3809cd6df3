"""
Property sweeps that check the closed-form domain against the oracle.

Each sweep draws reproducible samples from a seeded numpy Generator and
returns a SweepResult. Sweeps that check a proven property carry a
pass/fail verdict; purely descriptive sweeps report with passed=None.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from model.hamiltonian import Couplings, hamiltonian_stack, secular_arrays
from domain.analytic import (
    HALF_PI,
    DEFAULT_BOUNDARY_BAND,
    Verdict,
    bound_at,
    c_bounds,
    c_bounds_at_phi,
    critical_points,
    f_upper_squared,
    membership_analytic,
    membership_arrays,
)
from domain.reparam import (
    NotRepresentableError,
    BoundsPositivityError,
    c_bounds_reparam,
    c_from_reparam,
    delta_interval,
    from_reparam,
    membership_reparam,
    to_reparam,
)
from spectrum.oracle import (
    BASELINE_COUPLINGS,
    BASELINE_LINE,
    DEFAULT_TOLERANCE,
    RealityTolerance,
    SpectrumPreconditionError,
    batch_is_real,
    batch_matrix_eigenvalues,
    batch_quartic_roots,
    root_shift_signs,
    spectrum_of,
)
from scan.boundary import NoInteriorSeedError, trace_boundary, validate_trace
from scan.figures import figure1_data, figure2_data
from scan.grid import DEFAULT_AGREEMENT_BAND, inside_count_profile

logger = logging.getLogger(__name__)

CHUNK_SIZE = 50_000
AGREEMENT_THRESHOLD = 0.999
SELF_DUALITY_TOL = 1e-10
CUBIC_RESIDUAL_TOL = 1e-10
VIETA_TOL = 1e-9
DETERMINANT_TOL = 1e-10
CHART_TOL = 1e-10
# Root pairs closer than this are too ill-conditioned to compare between paths
PATH_GAP_FLOOR = 1e-3
PATH_TOL = 1e-9
# Round trips through the chart: relative where every coupling is at least
# WELL_CONDITIONED_FLOOR, otherwise on the squares (c^2 comes from a difference)
WELL_CONDITIONED_FLOOR = 0.1
ROUNDTRIP_REL_TOL = 1e-12
ROUNDTRIP_SQUARE_TOL = 1e-13
SAMPLE_BOX = (4.0, 4.0, 2.0)
TRACE_F_VALUES = (0.0, 0.25, 0.5, 1.0)
SHRINKAGE_F_VALUES = (0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0)


@dataclass
class SweepResult:
    """Outcome of one sweep; passed is None for report-only sweeps."""
    name: str
    passed: Optional[bool]
    metrics: Dict[str, float] = field(default_factory=dict)

    @property
    def asserted(self) -> bool:
        return self.passed is not None


@dataclass
class ValidationReport:
    results: List[SweepResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.asserted)

    @property
    def failures(self) -> List[str]:
        return [r.name for r in self.results if r.asserted and not r.passed]

    def get(self, name: str) -> SweepResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def sample_couplings(rng: np.random.Generator, n: int, box: Sequence[float] = SAMPLE_BOX) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Uniform samples in [0, a_max] x [0, c_max] x [0, f_max]."""
    a_max, c_max, f_max = box
    return rng.uniform(0.0, a_max, n), rng.uniform(0.0, c_max, n), rng.uniform(0.0, f_max, n)


def _chunks(n: int, size: int = CHUNK_SIZE) -> List[Tuple[int, int]]:
    return [(start, min(start + size, n)) for start in range(0, n, size)]


def _map_chunks(fn: Callable[[int, int], object], n: int, workers: int) -> list:
    """Apply fn to index chunks, results in chunk order."""
    spans = _chunks(n)
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda span: fn(*span), spans))
    return [fn(*span) for span in spans]


def oracle_agreement(
    samples: int,
    seed: int,
    tol: RealityTolerance = DEFAULT_TOLERANCE,
    band: float = DEFAULT_BOUNDARY_BAND,
    agreement_band: float = DEFAULT_AGREEMENT_BAND,
    workers: int = 1,
) -> SweepResult:
    """Analytic verdict against eigenvalue reality on uniform samples."""
    a, c, f = sample_couplings(np.random.default_rng(seed), samples)

    def run(start: int, stop: int) -> Tuple[int, int]:
        _, slack, _, _, _ = membership_arrays(a[start:stop], c[start:stop], f[start:stop], band)
        roots = batch_matrix_eigenvalues(hamiltonian_stack(a[start:stop], c[start:stop], f[start:stop]))
        real = batch_is_real(roots, tol)
        compared = np.abs(slack) >= agreement_band
        agree = (slack > 0) == real
        return int(np.count_nonzero(compared)), int(np.count_nonzero(compared & ~agree))

    counts = _map_chunks(run, samples, workers)
    compared = sum(x for x, _ in counts)
    disagreements = sum(y for _, y in counts)
    rate = 1.0 if compared == 0 else (compared - disagreements) / compared
    logger.info("Oracle agreement: %d/%d compared samples agree (%.6f)", compared - disagreements, compared, rate)
    return SweepResult("oracle_agreement", rate >= AGREEMENT_THRESHOLD, {
        "samples": samples,
        "compared": compared,
        "disagreements": disagreements,
        "agreement_rate": rate,
    })


def self_duality_sweep(
    samples: int, seed: int, tol: RealityTolerance = DEFAULT_TOLERANCE
) -> SweepResult:
    """Max |E_j + E_{5-j}| over AllReal f = 0 spectra drawn from SAMPLE_BOX."""
    rng = np.random.default_rng(seed)
    residuals: List[np.ndarray] = []
    found = 0
    drawn = 0
    while found < samples and drawn < 100 * samples:
        a, c, _ = sample_couplings(rng, samples)
        drawn += samples
        roots = batch_matrix_eigenvalues(hamiltonian_stack(a, c, np.zeros(samples)))
        real = batch_is_real(roots, tol)
        gaps = np.min(np.diff(roots.real, axis=-1), axis=-1)
        keep = real & (gaps > tol.degeneracy_gap)
        re = roots.real[keep][: samples - found]
        residuals.append(np.max(np.abs(re + re[:, ::-1]), axis=-1))
        found += re.shape[0]
    worst = float(np.max(np.concatenate(residuals))) if found else 0.0
    logger.info("Self-duality: %d real f=0 spectra, max residual %.3g", found, worst)
    return SweepResult("self_duality", found >= samples and worst < SELF_DUALITY_TOL, {
        "samples": found,
        "max_residual": worst,
    })


def f_zero_reduction(
    a_values: int, samples: int, seed: int, band: float = DEFAULT_BOUNDARY_BAND
) -> SweepResult:
    """c_bounds(A, 0) = (0, A^2/4) and the biquadratic membership rule."""
    rng = np.random.default_rng(seed)
    A = 10.0 - rng.uniform(0.0, 10.0, a_values)  # (0, 10]
    bound_error = 0.0
    for value in A:
        lo, hi = c_bounds(float(value), 0.0)
        lo_phi, hi_phi = c_bounds_at_phi(float(value), HALF_PI)
        expected = value * value / 4.0
        bound_error = max(bound_error, abs(lo), abs(hi - expected), abs(lo_phi), abs(hi_phi - expected))

    a, c, _ = sample_couplings(rng, samples)
    zeros = np.zeros(samples)
    _, slack, _, A_s, C_s = membership_arrays(a, c, zeros, band)
    rule = (A_s >= 0) & (C_s > 0) & (C_s < A_s * A_s / 4.0)
    mismatches = int(np.count_nonzero((slack > 0) != rule))

    # The scalar path must give the same verdicts as the vectorized one
    scalar_mismatches = 0
    for k in range(min(samples, 1000)):
        m = membership_analytic(Couplings(float(a[k]), float(c[k]), 0.0), band)
        if (m.slack > 0) != bool(rule[k]):
            scalar_mismatches += 1

    passed = bound_error == 0.0 and mismatches == 0 and scalar_mismatches == 0
    return SweepResult("f_zero_reduction", passed, {
        "a_values": a_values,
        "samples": samples,
        "max_bound_error": bound_error,
        "rule_mismatches": mismatches,
        "scalar_mismatches": scalar_mismatches,
    })


def _cubic(A: float, f2: float) -> Callable[[float], float]:
    return lambda z: 4.0 * z ** 3 - 2.0 * A * z - 4.0 * f2


def critical_point_sweep(samples: int, seed: int, brentq_samples: int = 200) -> SweepResult:
    """Cubic residual and interval placement of the trigonometric roots."""
    rng = np.random.default_rng(seed)
    A_values = 10.0 - rng.uniform(0.0, 10.0, samples)
    phis = rng.uniform(0.0, HALF_PI, samples)

    worst_residual = 0.0
    interval_violations = 0
    third_violations = 0
    brentq_error = 0.0
    for k, (A, phi) in enumerate(zip(A_values, phis)):
        A, phi = float(A), float(phi)
        cp = critical_points(A, phi)
        scale = 1.0 + A ** 1.5
        worst_residual = max(
            worst_residual,
            abs(cp.cubic_residual(cp.z_min)) / scale,
            abs(cp.cubic_residual(cp.z_max)) / scale,
        )
        lo, mid = -math.sqrt(A / 2.0), -math.sqrt(A / 6.0)
        if not (lo <= cp.z_min <= mid <= cp.z_max <= 0.0):
            interval_violations += 1

        f2 = cp.f2
        z3 = -(cp.z_min + cp.z_max)
        c_plus = bound_at(A, f2, cp.z_min)
        if bound_at(A, f2, z3) < c_plus - CHART_TOL * (1.0 + A * A):
            third_violations += 1

        if k < brentq_samples and 1e-6 < phi < HALF_PI - 1e-6:
            cubic = _cubic(A, f2)
            z_min = brentq(cubic, lo, mid, xtol=1e-14)
            z_max = brentq(cubic, mid, 0.0, xtol=1e-14)
            brentq_error = max(brentq_error, abs(z_min - cp.z_min), abs(z_max - cp.z_max))

    passed = (
        worst_residual < CUBIC_RESIDUAL_TOL
        and interval_violations == 0
        and third_violations == 0
        and brentq_error < 1e-8
    )
    logger.info("Critical points: max scaled residual %.3g, brentq error %.3g", worst_residual, brentq_error)
    return SweepResult("critical_points", passed, {
        "samples": samples,
        "max_scaled_residual": worst_residual,
        "interval_violations": interval_violations,
        "third_extremum_violations": third_violations,
        "max_brentq_error": brentq_error,
    })


def elementary_symmetric(roots: np.ndarray) -> np.ndarray:
    """Monic coefficients prod(E - r_j), highest degree first, row-wise."""
    coeffs = np.zeros((roots.shape[0], roots.shape[1] + 1), dtype=complex)
    coeffs[:, 0] = 1.0
    for k in range(roots.shape[1]):
        shifted = coeffs[:, :-1] * roots[:, k:k + 1]
        coeffs[:, 1:] = coeffs[:, 1:] - shifted
    return coeffs


def _min_pair_distance(roots: np.ndarray) -> np.ndarray:
    diff = np.abs(roots[:, :, None] - roots[:, None, :])
    diff[:, range(4), range(4)] = np.inf
    return np.min(diff.reshape(roots.shape[0], -1), axis=-1)


def vieta_sweep(samples: int, seed: int, workers: int = 1) -> SweepResult:
    """Root sums and products against the secular coefficients; det(H) = C."""
    a, c, f = sample_couplings(np.random.default_rng(seed), samples)

    def run(start: int, stop: int) -> Tuple[float, float, float, int]:
        A, C, f2 = secular_arrays(a[start:stop], c[start:stop], f[start:stop])
        roots = batch_quartic_roots(A, C, f2)
        s = np.max(np.abs(roots), axis=-1)
        coeffs = elementary_symmetric(roots)
        expected = np.stack([np.ones_like(A), np.zeros_like(A), -A, -4.0 * f2, C], axis=-1)
        scales = np.stack([np.ones_like(s), 1 + s, 1 + s ** 2, 1 + s ** 3, 1 + s ** 4], axis=-1)
        vieta = float(np.max(np.abs(coeffs - expected) / scales))

        stack = hamiltonian_stack(a[start:stop], c[start:stop], f[start:stop])
        det = float(np.max(np.abs(np.linalg.det(stack) - C) / (1.0 + np.abs(C))))

        from_matrix = batch_matrix_eigenvalues(stack)
        separated = _min_pair_distance(roots) >= PATH_GAP_FLOOR
        path = float(np.max(np.abs(from_matrix - roots)[separated], initial=0.0))
        return vieta, det, path, int(np.count_nonzero(separated))

    parts = _map_chunks(run, samples, workers)
    vieta = max(p[0] for p in parts)
    det = max(p[1] for p in parts)
    path = max(p[2] for p in parts)
    compared = sum(p[3] for p in parts)
    logger.info("Vieta: max scaled error %.3g, det %.3g, path discrepancy %.3g", vieta, det, path)
    return SweepResult("vieta", vieta < VIETA_TOL and det < DETERMINANT_TOL and path < PATH_TOL, {
        "samples": samples,
        "max_vieta_error": vieta,
        "max_det_error": det,
        "max_path_discrepancy": path,
        "path_compared": compared,
    })


def rightmost_gap_sweep(
    samples: int, seed: int, tol: RealityTolerance = DEFAULT_TOLERANCE, workers: int = 1
) -> SweepResult:
    """Smallest E4 - E3 over real spectra with f > 1e-3."""
    a, c, f = sample_couplings(np.random.default_rng(seed), samples)

    def run(start: int, stop: int) -> Tuple[float, int]:
        sl = slice(start, stop)
        roots = batch_matrix_eigenvalues(hamiltonian_stack(a[sl], c[sl], f[sl]))
        keep = batch_is_real(roots, tol) & (f[sl] > 1e-3)
        gaps = roots.real[keep, 3] - roots.real[keep, 2]
        return float(np.min(gaps, initial=np.inf)), int(np.count_nonzero(keep))

    parts = _map_chunks(run, samples, workers)
    minimum = min(p[0] for p in parts)
    real = sum(p[1] for p in parts)
    logger.info("Rightmost gap: min E4 - E3 = %.6g over %d real spectra", minimum, real)
    return SweepResult("rightmost_gap", real > 0 and minimum > 0.0, {
        "samples": samples,
        "real_spectra": real,
        "min_gap": minimum,
    })


def root_shift_sweep(
    samples: int,
    seed: int,
    baseline: str = BASELINE_LINE,
    tol: RealityTolerance = DEFAULT_TOLERANCE,
    agreement_band: float = DEFAULT_AGREEMENT_BAND,
) -> SweepResult:
    """Sign pattern of root shifts over Inside samples with a real baseline.

    Asserted for the line baseline; the couplings baseline is reported.
    """
    rng = np.random.default_rng(seed)
    checked = follows = strict = skipped = 0
    drawn = 0
    while checked < samples and drawn < 200 * samples:
        a, c, f = sample_couplings(rng, samples)
        drawn += samples
        _, slack, _, _, _ = membership_arrays(a, c, f)
        for k in np.nonzero((slack >= agreement_band) & (f > 0))[0]:
            try:
                shift = root_shift_signs(Couplings(float(a[k]), float(c[k]), float(f[k])), baseline, tol)
            except SpectrumPreconditionError:
                skipped += 1
                continue
            checked += 1
            follows += shift.follows_pattern
            strict += shift.is_strict
            if checked >= samples:
                break

    rate = follows / checked if checked else 0.0
    logger.info("Root shifts (%s): %d/%d follow (+,-,-,+), %d skipped", baseline, follows, checked, skipped)
    passed = (checked >= samples and follows == checked) if baseline == BASELINE_LINE else None
    return SweepResult(f"root_shift_{baseline}", passed, {
        "samples": checked,
        "follows_pattern": follows,
        "strict": strict,
        "skipped": skipped,
        "pattern_rate": rate,
    })


def figure_consistency_sweep(
    samples: int, seed: int, steps: int = 4001, tol: RealityTolerance = DEFAULT_TOLERANCE
) -> SweepResult:
    """Sign changes of the sampled secular curve against real-root counts,
    and cubic crossings against the trigonometric critical points."""
    rng = np.random.default_rng(seed)
    a, c, f = sample_couplings(rng, samples)
    compared = mismatches = 0
    for k in range(samples):
        couplings = Couplings(float(a[k]), float(c[k]), float(f[k]))
        result = spectrum_of(couplings, tol)
        extent = max(abs(r) for r in result.roots) + 1.0
        curves = figure1_data(couplings, (-extent, extent, steps))
        step = 2.0 * extent / (steps - 1)
        real = [r.real for r in result.roots if abs(r.imag) <= result.tol_used]
        nearly_real = [r for r in result.roots if result.tol_used < abs(r.imag) < 1e-6]
        close = any(y - x < 10.0 * step for x, y in zip(real, real[1:]))
        if close or nearly_real:
            continue
        compared += 1
        if curves.sign_changes != result.real_count:
            mismatches += 1
            logger.warning("figure1 at %s: %d sign changes vs %d real roots",
                           couplings, curves.sign_changes, result.real_count)

    cubic_compared = cubic_mismatches = 0
    for k in range(samples):
        A = float(rng.uniform(0.5, 10.0))
        phi = float(rng.uniform(0.05, HALF_PI - 0.05))
        fv = math.sqrt(f_upper_squared(A) * math.cos(phi))
        half = math.sqrt(A / 2.0) + 0.25
        curves = figure2_data(A, fv, (-half, half, steps))
        step = 2.0 * half / (steps - 1)
        negative = [z for z in curves.crossings() if z < 0.0]
        cp = critical_points(A, phi)
        cubic_compared += 1
        if len(negative) != 2 or abs(negative[0] - cp.z_min) > step or abs(negative[1] - cp.z_max) > step:
            cubic_mismatches += 1

    return SweepResult("figure_consistency", compared > 0 and mismatches == 0 and cubic_mismatches == 0, {
        "samples": samples,
        "secular_compared": compared,
        "secular_mismatches": mismatches,
        "cubic_compared": cubic_compared,
        "cubic_mismatches": cubic_mismatches,
    })


def roundtrip_errors(original: Couplings, back: Couplings) -> Tuple[Optional[float], float]:
    """(relative error, square error) of a chart round trip.

    The relative error is None unless every coupling is at least
    WELL_CONDITIONED_FLOOR.
    """
    pairs = list(zip(original.as_tuple(), back.as_tuple()))
    square = max(abs(x * x - y * y) / (1.0 + x * x) for x, y in pairs)
    if min(x for x, _ in pairs) < WELL_CONDITIONED_FLOOR:
        return None, square
    return max(abs(x - y) / x for x, y in pairs), square


def chart_consistency_sweep(
    samples: int,
    seed: int,
    band: float = DEFAULT_BOUNDARY_BAND,
    agreement_band: float = DEFAULT_AGREEMENT_BAND,
) -> SweepResult:
    """The chart reproduces C, its bounds and membership for representable samples."""
    a, c, f = sample_couplings(np.random.default_rng(seed), samples)
    represented = verdict_mismatches = interval_mismatches = 0
    positivity_failures = 0
    c_error = bound_error = rel_error = square_error = 0.0
    conditioned = 0
    for k in range(samples):
        couplings = Couplings(float(a[k]), float(c[k]), float(f[k]))
        try:
            p = to_reparam(couplings)
            back = from_reparam(p)
            membership = membership_reparam(p, band)
        except NotRepresentableError:
            continue
        except BoundsPositivityError:
            positivity_failures += 1
            continue
        represented += 1
        analytic = membership_analytic(couplings, band)

        rel, square = roundtrip_errors(couplings, back)
        square_error = max(square_error, square)
        if rel is not None:
            conditioned += 1
            rel_error = max(rel_error, rel)
        c_error = max(c_error, abs(c_from_reparam(p) - analytic.C) / (1.0 + abs(analytic.C)))
        lo, hi = c_bounds_reparam(p.alpha, p.phi)
        ref_lo, ref_hi = c_bounds(analytic.A, couplings.f)
        scale = 1.0 + analytic.A ** 2
        bound_error = max(bound_error, abs(lo - ref_lo) / scale, abs(hi - ref_hi) / scale)

        if abs(analytic.slack) >= agreement_band:
            if membership.verdict != analytic.verdict:
                verdict_mismatches += 1
            inside = analytic.verdict is Verdict.INSIDE
            if delta_interval(p.alpha, p.phi).contains(p.delta) != inside:
                interval_mismatches += 1

    passed = (
        c_error < CHART_TOL
        and bound_error < CHART_TOL
        and rel_error < ROUNDTRIP_REL_TOL
        and square_error < ROUNDTRIP_SQUARE_TOL
        and verdict_mismatches == 0
        and interval_mismatches == 0
        and positivity_failures == 0
    )
    return SweepResult("chart_consistency", passed, {
        "samples": samples,
        "represented": represented,
        "max_c_error": c_error,
        "max_bound_error": bound_error,
        "roundtrip_conditioned": conditioned,
        "max_roundtrip_rel_error": rel_error,
        "max_roundtrip_square_error": square_error,
        "verdict_mismatches": verdict_mismatches,
        "interval_mismatches": interval_mismatches,
        "positivity_failures": positivity_failures,
    })


def trace_validity(
    f_values: Sequence[float] = TRACE_F_VALUES, rays: int = 64, tol: float = 1e-8, workers: int = 1
) -> SweepResult:
    """Straddle-check every traced boundary point; f = 0 traces must sit on C = 0 or C = A^2/4."""
    metrics: Dict[str, float] = {}
    passed = True
    for f in f_values:
        try:
            validity = validate_trace(trace_boundary(f, rays=rays, tol=tol, workers=workers))
        except NoInteriorSeedError as e:
            logger.error("Trace at f=%g failed: %s", f, e)
            passed = False
            continue
        metrics[f"opposite_f={f:g}"] = validity.opposite_verdicts / max(validity.points, 1)
        metrics[f"max_slack_f={f:g}"] = validity.max_abs_slack
        metrics[f"oracle_transitions_f={f:g}"] = validity.oracle_transitions
        ok = validity.all_opposite and validity.max_abs_slack <= tol
        if validity.max_zero_f_residual is not None:
            metrics["zero_f_residual"] = validity.max_zero_f_residual
            ok = ok and validity.max_zero_f_residual <= tol
        passed = passed and ok
    return SweepResult("trace_validity", passed, metrics)


def shrinkage_profile(
    f_values: Sequence[float] = SHRINKAGE_F_VALUES,
    window: Sequence[float] = (0.0, 4.0, 0.0, 4.0),
    resolution: int = 101,
) -> SweepResult:
    """Inside-cell counts as f grows; an observation only."""
    profile = inside_count_profile(f_values, window, resolution)
    metrics: Dict[str, float] = {f"inside_f={f:g}": n for f, n in zip(profile.f_values, profile.inside_counts)}
    metrics["is_monotone"] = float(profile.is_monotone)
    return SweepResult("shrinkage_profile", None, metrics)


def run_all(
    samples: int = 20000,
    seed: int = 12345,
    tol: RealityTolerance = DEFAULT_TOLERANCE,
    band: float = DEFAULT_BOUNDARY_BAND,
    agreement_band: float = DEFAULT_AGREEMENT_BAND,
    rays: int = 64,
    trace_tol: float = 1e-8,
    workers: int = 1,
) -> ValidationReport:
    """Run every sweep at a common sample size."""
    small = max(samples // 10, 10)
    report = ValidationReport()
    sweeps: List[Callable[[], SweepResult]] = [
        lambda: oracle_agreement(samples, seed, tol, band, agreement_band, workers),
        lambda: self_duality_sweep(small, seed + 1, tol),
        lambda: f_zero_reduction(min(small, 1000), small, seed + 2, band),
        lambda: critical_point_sweep(small, seed + 3),
        lambda: vieta_sweep(samples, seed + 4, workers),
        lambda: rightmost_gap_sweep(samples, seed + 5, tol, workers),
        lambda: root_shift_sweep(min(small, 2000), seed + 6, BASELINE_LINE, tol, agreement_band),
        lambda: root_shift_sweep(min(small, 2000), seed + 6, BASELINE_COUPLINGS, tol, agreement_band),
        lambda: figure_consistency_sweep(100, seed + 7),
        lambda: chart_consistency_sweep(small, seed + 8, band, agreement_band),
        lambda: trace_validity(TRACE_F_VALUES, rays, trace_tol, workers),
        lambda: shrinkage_profile(),
    ]
    for sweep in sweeps:
        result = sweep()
        logger.info("%s: %s", result.name, {True: "passed", False: "FAILED", None: "reported"}[result.passed])
        report.results.append(result)
    return report
