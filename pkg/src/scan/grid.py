"""
Grid classification of fixed-f slices of the coupling space.

Every node of an (a, c) grid is classified twice: by the closed-form
membership test and by the eigenvalue oracle. Rows are evaluated in
index-tagged chunks, optionally on a thread pool, and written back by
index so the cell order never depends on scheduling.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from model.hamiltonian import Couplings, build_hamiltonian, hamiltonian_stack
from domain.analytic import (
    DEFAULT_BOUNDARY_BAND,
    VERDICT_CODES,
    Verdict,
    membership_arrays,
)
from spectrum.oracle import (
    DEFAULT_TOLERANCE,
    Classification,
    NumericFailureError,
    RealityTolerance,
    batch_classify,
    batch_matrix_eigenvalues,
    classify_reality,
    matrix_eigenvalues,
    roots_are_finite,
)

logger = logging.getLogger(__name__)

NUMERIC_FAILURE = "NumericFailure"
DEFAULT_AGREEMENT_BAND = 1e-6


class SliceSpecError(ValueError):
    """Raised for an invalid slice or axis specification."""
    pass


@dataclass(frozen=True)
class AxisRange:
    """Evenly spaced samples lo..hi (inclusive), steps >= 2."""
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise SliceSpecError(f"Axis bounds must be finite, got ({self.lo}, {self.hi})")
        if self.lo > self.hi:
            raise SliceSpecError(f"Invalid axis: lo={self.lo} > hi={self.hi}")
        if self.steps < 2:
            raise SliceSpecError(f"Invalid steps: {self.steps}. Must be >= 2")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.steps - 1)


@dataclass(frozen=True)
class SliceSpec:
    """An (a, c) window at fixed asymmetry f."""
    fixed_f: float
    a_range: AxisRange
    c_range: AxisRange

    def __post_init__(self):
        if not math.isfinite(self.fixed_f) or self.fixed_f < 0:
            raise SliceSpecError(f"Invalid fixed_f: {self.fixed_f}. Must be finite and >= 0")

    @classmethod
    def from_window(cls, fixed_f: float, window: Sequence[float], resolution: int) -> "SliceSpec":
        """Build from (lo_a, hi_a, lo_c, hi_c) and a common resolution."""
        lo_a, hi_a, lo_c, hi_c = window
        return cls(fixed_f, AxisRange(lo_a, hi_a, resolution), AxisRange(lo_c, hi_c, resolution))

    @property
    def cell_count(self) -> int:
        return self.a_range.steps * self.c_range.steps


@dataclass(frozen=True)
class GridCell:
    """One classified grid node."""
    a: float
    c: float
    f: float
    A: float
    C: float
    verdict: Verdict
    slack: float
    oracle_class: Union[Classification, str]
    agree: bool

    def as_row(self) -> Dict[str, object]:
        oracle = self.oracle_class.value if isinstance(self.oracle_class, Classification) else self.oracle_class
        return {
            "a": self.a,
            "c": self.c,
            "f": self.f,
            "A": self.A,
            "C": self.C,
            "verdict": self.verdict.value,
            "slack": self.slack,
            "oracle_class": oracle,
            "agree": self.agree,
        }


@dataclass
class ScanSummary:
    cells: int = 0
    inside: int = 0
    outside: int = 0
    boundary: int = 0
    disagreements: int = 0
    compared: int = 0
    numeric_failures: int = 0

    @property
    def agreement_rate(self) -> float:
        if self.compared == 0:
            return 1.0
        return (self.compared - self.disagreements) / self.compared

    def to_dict(self) -> Dict[str, float]:
        return {
            "cells": self.cells,
            "inside": self.inside,
            "outside": self.outside,
            "boundary": self.boundary,
            "disagreements": self.disagreements,
            "compared": self.compared,
            "numeric_failures": self.numeric_failures,
            "agreement_rate": self.agreement_rate,
        }


@dataclass
class ClassifiedGrid:
    """Row-major cells (a outer, c inner) with summary counts."""
    spec: SliceSpec
    cells: List[GridCell] = field(default_factory=list)
    summary: ScanSummary = field(default_factory=ScanSummary)

    def cell(self, i_a: int, i_c: int) -> GridCell:
        return self.cells[i_a * self.spec.c_range.steps + i_c]


def verdicts_agree(verdict: Verdict, oracle_class: Union[Classification, str]) -> bool:
    """Boundary agrees with anything; otherwise Inside pairs with a real spectrum."""
    if verdict is Verdict.BOUNDARY:
        return True
    if not isinstance(oracle_class, Classification):
        return False
    return (verdict is Verdict.INSIDE) == oracle_class.is_real


def _oracle_per_cell(a: np.ndarray, c: np.ndarray, f: float, tol: RealityTolerance) -> List[Union[Classification, str]]:
    """Cell-by-cell fallback used when a batched solve fails."""
    classes: List[Union[Classification, str]] = []
    for a_k, c_k in zip(a, c):
        couplings = Couplings(float(a_k), float(c_k), f)
        try:
            roots = matrix_eigenvalues(build_hamiltonian(couplings))
            if not roots_are_finite(roots):
                raise NumericFailureError(f"Non-finite eigenvalues at {couplings}")
            classes.append(classify_reality(roots, tol))
        except NumericFailureError as e:
            logger.warning("Oracle failed at %s: %s", couplings, e)
            classes.append(NUMERIC_FAILURE)
    return classes


def _classify_chunk(
    a: np.ndarray, c: np.ndarray, f: float, tol: RealityTolerance, band: float
) -> List[GridCell]:
    verdict, slack, _, A, C = membership_arrays(a, c, np.full_like(a, f), band)
    try:
        classes: List[Union[Classification, str]] = list(
            batch_classify(batch_matrix_eigenvalues(hamiltonian_stack(a, c, np.full_like(a, f))), tol)
        )
    except NumericFailureError as e:
        logger.warning("Batched oracle failed (%s); falling back to per-cell solves", e)
        classes = _oracle_per_cell(a, c, f, tol)

    cells = []
    for k in range(a.size):
        v = VERDICT_CODES[verdict[k]]
        cells.append(GridCell(
            a=float(a[k]),
            c=float(c[k]),
            f=f,
            A=float(A[k]),
            C=float(C[k]),
            verdict=v,
            slack=float(slack[k]),
            oracle_class=classes[k],
            agree=verdicts_agree(v, classes[k]),
        ))
    return cells


def _summarize(cells: Sequence[GridCell], agreement_band: float) -> ScanSummary:
    summary = ScanSummary(cells=len(cells))
    for cell in cells:
        if cell.verdict is Verdict.INSIDE:
            summary.inside += 1
        elif cell.verdict is Verdict.OUTSIDE:
            summary.outside += 1
        else:
            summary.boundary += 1
        if cell.oracle_class == NUMERIC_FAILURE:
            summary.numeric_failures += 1
        if abs(cell.slack) >= agreement_band:
            summary.compared += 1
            if not cell.agree:
                summary.disagreements += 1
    return summary


def scan_slice(
    spec: SliceSpec,
    tol: RealityTolerance = DEFAULT_TOLERANCE,
    band: float = DEFAULT_BOUNDARY_BAND,
    agreement_band: float = DEFAULT_AGREEMENT_BAND,
    workers: int = 1,
) -> ClassifiedGrid:
    """Classify every node of the slice analytically and by the oracle."""
    a_values = spec.a_range.values()
    c_values = spec.c_range.values()
    aa, cc = np.meshgrid(a_values, c_values, indexing="ij")
    a_flat, c_flat = aa.ravel(), cc.ravel()

    row = spec.c_range.steps
    chunks: List[Tuple[int, int]] = [
        (start, min(start + row, a_flat.size)) for start in range(0, a_flat.size, row)
    ]
    results: List[Optional[List[GridCell]]] = [None] * len(chunks)

    def run(index: int):
        start, stop = chunks[index]
        results[index] = _classify_chunk(a_flat[start:stop], c_flat[start:stop], spec.fixed_f, tol, band)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(len(chunks))))
    else:
        for index in range(len(chunks)):
            run(index)

    cells = [cell for chunk in results for cell in (chunk or [])]
    summary = _summarize(cells, agreement_band)
    logger.info(
        "Scanned f=%g: %d cells, %d inside, %d outside, %d boundary, %d disagreements",
        spec.fixed_f, summary.cells, summary.inside, summary.outside,
        summary.boundary, summary.disagreements,
    )
    return ClassifiedGrid(spec=spec, cells=cells, summary=summary)


@dataclass(frozen=True)
class ShrinkageProfile:
    """Inside-cell counts on a fixed window as f grows."""
    f_values: Tuple[float, ...]
    inside_counts: Tuple[int, ...]

    @property
    def is_monotone(self) -> bool:
        """Observed non-increasing counts; reported, not asserted."""
        return all(x >= y for x, y in zip(self.inside_counts, self.inside_counts[1:]))


def inside_count_profile(
    f_values: Sequence[float],
    window: Sequence[float] = (0.0, 4.0, 0.0, 4.0),
    resolution: int = 101,
    band: float = DEFAULT_BOUNDARY_BAND,
) -> ShrinkageProfile:
    """Count analytic Inside cells per f on a common window and resolution."""
    counts = []
    for f in f_values:
        spec = SliceSpec.from_window(f, window, resolution)
        aa, cc = np.meshgrid(spec.a_range.values(), spec.c_range.values(), indexing="ij")
        verdict, *_ = membership_arrays(aa.ravel(), cc.ravel(), np.full(aa.size, f), band)
        counts.append(int(np.count_nonzero(verdict == 0)))
    profile = ShrinkageProfile(tuple(float(f) for f in f_values), tuple(counts))
    logger.info("Inside counts over f=%s: %s (monotone=%s)", profile.f_values, counts, profile.is_monotone)
    return profile
