"""
Brute-force spectral ground truth for the chain Hamiltonian.

Two independent root paths are provided: the dense non-symmetric
eigenvalue solver applied to the Hamiltonian itself (LAPACK geev through
scipy), and the eigenvalues of the companion matrix of the secular quartic
(numpy). Roots are always returned sorted ascending by real part, ties
broken by imaginary part.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from model.hamiltonian import (
    Couplings,
    Matrix4,
    SecularQuartic,
    build_hamiltonian,
    secular_quartic,
)

logger = logging.getLogger(__name__)

Roots = Tuple[complex, complex, complex, complex]

# Signs E_j(f) - E_j(0) expected inside the physical domain
EXPECTED_SHIFT_PATTERN = (1, -1, -1, 1)
SHIFT_ZERO_TOL = 1e-9

BASELINE_LINE = "line"
BASELINE_COUPLINGS = "couplings"


class NumericFailureError(RuntimeError):
    """Raised when an eigenvalue iteration fails to converge."""

    def __init__(self, message: str, original_error: Optional[Exception] = None):
        super().__init__(message)
        self.original_error = original_error


class SpectrumPreconditionError(ValueError):
    """Raised when a spectrum does not meet an operation's precondition."""
    pass


class ToleranceError(ValueError):
    """Raised for an invalid reality tolerance."""
    pass


class Classification(str, Enum):
    """Reality class of a four-root spectrum."""
    ALL_REAL = "AllReal"
    ONE_COMPLEX_PAIR = "OneComplexPair"
    TWO_COMPLEX_PAIRS = "TwoComplexPairs"
    DEGENERATE_REAL = "DegenerateReal"

    @property
    def is_real(self) -> bool:
        return self in (Classification.ALL_REAL, Classification.DEGENERATE_REAL)


@dataclass(frozen=True)
class RealityTolerance:
    """Two-tier band inside which an imaginary part counts as zero."""
    abs_tol: float = 1e-10
    rel_tol: float = 1e-12

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ToleranceError(
                f"Invalid tolerance ({self.abs_tol}, {self.rel_tol}). Both must be >= 0"
            )
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ToleranceError("At least one of abs_tol, rel_tol must be > 0")

    def threshold(self, scale: float) -> float:
        """Imaginary-part threshold for a spectrum of magnitude `scale`."""
        return self.abs_tol + self.rel_tol * scale

    @property
    def degeneracy_gap(self) -> float:
        """Adjacent real roots closer than this flag an exceptional point."""
        return self.abs_tol * 10.0


DEFAULT_TOLERANCE = RealityTolerance()


@dataclass(frozen=True)
class SpectrumResult:
    """Sorted roots with their reality classification."""
    roots: Roots
    classification: Classification
    tol_used: float
    path_discrepancy: Optional[float] = field(default=None, compare=False)

    @property
    def real_count(self) -> int:
        return sum(1 for r in self.roots if abs(r.imag) <= self.tol_used)

    @property
    def max_abs_imag(self) -> float:
        return max(abs(r.imag) for r in self.roots)

    @property
    def min_real_gap(self) -> float:
        re = [r.real for r in self.roots]
        return min(re[k + 1] - re[k] for k in range(3))

    @property
    def energies(self) -> Tuple[float, float, float, float]:
        """Real parts, meaningful when the spectrum is real."""
        return tuple(r.real for r in self.roots)  # type: ignore[return-value]


@dataclass(frozen=True)
class RootShift:
    """Shifts E_j(f) - E_j(baseline) and their signs for j = 1..4."""
    shifts: Tuple[float, float, float, float]
    signs: Tuple[int, int, int, int]
    baseline: str

    @property
    def follows_pattern(self) -> bool:
        """True when every sign is zero or matches (+, -, -, +)."""
        return all(s == 0 or s == e for s, e in zip(self.signs, EXPECTED_SHIFT_PATTERN))

    @property
    def is_strict(self) -> bool:
        return self.signs == EXPECTED_SHIFT_PATTERN

    @property
    def reported(self) -> Tuple[int, int, int, int]:
        """Signs with zero shifts shown as the nonstrict pattern sign."""
        return tuple(  # type: ignore[return-value]
            e if s == 0 else s for s, e in zip(self.signs, EXPECTED_SHIFT_PATTERN)
        )


def sort_roots(values: Iterable[complex]) -> Roots:
    """Sort ascending by real part, ties broken by imaginary part."""
    arr = np.asarray(list(values), dtype=complex)
    order = np.lexsort((arr.imag, arr.real))
    return tuple(complex(v) for v in arr[order])  # type: ignore[return-value]


def _check_sorted(roots: Sequence[complex]):
    if len(roots) != 4:
        raise SpectrumPreconditionError(f"Expected 4 roots, got {len(roots)}")
    for k in range(3):
        if roots[k].real > roots[k + 1].real:
            raise SpectrumPreconditionError(
                "Roots must be sorted ascending by real part"
            )


def matrix_eigenvalues(m: Matrix4) -> Roots:
    """Eigenvalues of the Hamiltonian by the dense general eigensolver."""
    try:
        values = scipy.linalg.eigvals(m.entries, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error("Eigenvalue iteration failed: %s", e)
        raise NumericFailureError(f"Eigenvalue iteration failed: {e}", original_error=e)
    return sort_roots(values)


def companion_matrix(q: SecularQuartic) -> np.ndarray:
    """Companion matrix of E^4 - A E^2 - 4 f2 E + C."""
    return np.polynomial.polynomial.polycompanion(
        [q.C, -4.0 * q.f2, -q.A, 0.0, 1.0]
    )


def quartic_roots(q: SecularQuartic) -> Roots:
    """Roots of the secular quartic from its companion matrix."""
    try:
        values = np.linalg.eigvals(companion_matrix(q))
    except np.linalg.LinAlgError as e:
        logger.error("Companion eigenvalue iteration failed: %s", e)
        raise NumericFailureError(f"Companion root-finding failed: {e}", original_error=e)
    return sort_roots(values)


def classify_reality(roots: Sequence[complex], tol: RealityTolerance = DEFAULT_TOLERANCE) -> Classification:
    """Count conjugate pairs; flag real spectra with coalescing roots."""
    _check_sorted(roots)
    scale = max(abs(r) for r in roots)
    threshold = tol.threshold(scale)
    nonreal = sum(1 for r in roots if abs(r.imag) > threshold)
    if nonreal == 0:
        gaps = [roots[k + 1].real - roots[k].real for k in range(3)]
        if min(gaps) <= tol.degeneracy_gap:
            return Classification.DEGENERATE_REAL
        return Classification.ALL_REAL
    if nonreal >= 4:
        return Classification.TWO_COMPLEX_PAIRS
    return Classification.ONE_COMPLEX_PAIR


def self_duality_residual(roots: Sequence[complex], tol: RealityTolerance = DEFAULT_TOLERANCE) -> float:
    """Return max_j |E_j + E_{5-j}| for a real, sorted spectrum."""
    _check_sorted(roots)
    if not classify_reality(roots, tol).is_real:
        raise SpectrumPreconditionError("Self-duality residual needs a real spectrum")
    re = [r.real for r in roots]
    return max(abs(re[j] + re[3 - j]) for j in range(2))


def spectrum_of(couplings: Couplings, tol: RealityTolerance = DEFAULT_TOLERANCE) -> SpectrumResult:
    """Classify the matrix spectrum and record the discrepancy between root paths."""
    from_matrix = matrix_eigenvalues(build_hamiltonian(couplings))
    from_quartic = quartic_roots(secular_quartic(couplings))
    discrepancy = max(abs(x - y) for x, y in zip(from_matrix, from_quartic))
    scale = max(abs(r) for r in from_matrix)
    logger.debug("Spectrum of %s: %s (path discrepancy %.3g)", couplings, from_matrix, discrepancy)
    return SpectrumResult(
        roots=from_matrix,
        classification=classify_reality(from_matrix, tol),
        tol_used=tol.threshold(scale),
        path_discrepancy=discrepancy,
    )


def _require_real(roots: Roots, tol: RealityTolerance, label: str):
    if not classify_reality(roots, tol).is_real:
        raise SpectrumPreconditionError(f"The {label} spectrum is not real: {roots}")


def root_shift_signs(
    couplings: Couplings,
    baseline: str = BASELINE_LINE,
    tol: RealityTolerance = DEFAULT_TOLERANCE,
    zero_tol: float = SHIFT_ZERO_TOL,
) -> RootShift:
    """Signs of E_j(f) - E_j(0) for j = 1..4.

    baseline="line" compares with the same quartic without its linear term
    (A and C held fixed); baseline="couplings" compares with the spectrum
    at (a, c, 0).
    """
    q = secular_quartic(couplings)
    if baseline == BASELINE_LINE:
        current = quartic_roots(q)
        reference = quartic_roots(SecularQuartic(A=q.A, C=q.C, f2=0.0))
    elif baseline == BASELINE_COUPLINGS:
        current = matrix_eigenvalues(build_hamiltonian(couplings))
        reference = matrix_eigenvalues(build_hamiltonian(couplings.with_f(0.0)))
    else:
        raise ValueError(
            f"Invalid baseline: {baseline}. Must be one of "
            f"{[BASELINE_LINE, BASELINE_COUPLINGS]}"
        )
    _require_real(current, tol, "perturbed")
    _require_real(reference, tol, "baseline")

    shifts = tuple(x.real - y.real for x, y in zip(current, reference))
    signs = tuple(0 if abs(s) <= zero_tol else (1 if s > 0 else -1) for s in shifts)
    return RootShift(shifts=shifts, signs=signs, baseline=baseline)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Batched root paths used by scans and validation sweeps
# ---------------------------------------------------------------------------

def _sort_rows(values: np.ndarray) -> np.ndarray:
    order = np.lexsort((values.imag, values.real), axis=-1)
    return np.take_along_axis(values, order, axis=-1)


def batch_matrix_eigenvalues(stack: np.ndarray) -> np.ndarray:
    """Sorted eigenvalues of an (N, 4, 4) stack of Hamiltonians."""
    try:
        values = np.linalg.eigvals(stack)
    except np.linalg.LinAlgError as e:
        raise NumericFailureError(f"Batched eigenvalue iteration failed: {e}", original_error=e)
    return _sort_rows(values.astype(complex))


def batch_quartic_roots(A: np.ndarray, C: np.ndarray, f2: np.ndarray) -> np.ndarray:
    """Sorted roots of N secular quartics from stacked companion matrices."""
    A, C, f2 = (np.ravel(x).astype(float) for x in np.broadcast_arrays(A, C, f2))
    comp = np.zeros((A.size, 4, 4))
    comp[:, 1, 0] = comp[:, 2, 1] = comp[:, 3, 2] = 1.0
    comp[:, 0, 3] = -C
    comp[:, 1, 3] = 4.0 * f2
    comp[:, 2, 3] = A
    try:
        values = np.linalg.eigvals(comp)
    except np.linalg.LinAlgError as e:
        raise NumericFailureError(f"Batched companion root-finding failed: {e}", original_error=e)
    return _sort_rows(values.astype(complex))


def batch_classify(roots: np.ndarray, tol: RealityTolerance = DEFAULT_TOLERANCE) -> List[Classification]:
    """classify_reality applied row-wise to an (N, 4) array of sorted roots."""
    scale = np.max(np.abs(roots), axis=-1)
    threshold = tol.threshold(scale)[:, None]
    nonreal = np.sum(np.abs(roots.imag) > threshold, axis=-1)
    gaps = np.min(np.diff(roots.real, axis=-1), axis=-1)

    result = []
    for n, gap in zip(nonreal, gaps):
        if n == 0:
            degenerate = gap <= tol.degeneracy_gap
            result.append(Classification.DEGENERATE_REAL if degenerate else Classification.ALL_REAL)
        elif n >= 4:
            result.append(Classification.TWO_COMPLEX_PAIRS)
        else:
            result.append(Classification.ONE_COMPLEX_PAIR)
    return result


def roots_are_finite(roots: Sequence[complex]) -> bool:
    return all(math.isfinite(r.real) and math.isfinite(r.imag) for r in roots)


def batch_is_real(roots: np.ndarray, tol: RealityTolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Boolean mask of rows whose four roots are all real."""
    scale = np.max(np.abs(roots), axis=-1)
    return np.all(np.abs(roots.imag) <= tol.threshold(scale)[:, None], axis=-1)
