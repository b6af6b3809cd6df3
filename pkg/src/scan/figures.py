"""
Sampled curves behind the graphical solutions of the secular equation.

figure1_data samples the quartic side E^4 - A E^2 + C against the line
4 f^2 E. figure2_data samples the critical-point cubic 4 z^3 - 2 A z
against the constant 4 f^2.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from model.hamiltonian import Couplings, secular_quartic

logger = logging.getLogger(__name__)


class FigureSpecError(ValueError):
    """Raised for an invalid sampling range or figure parameters."""
    pass


@dataclass(frozen=True)
class FigureCurves:
    """Two curves sampled on a common abscissa."""
    x: np.ndarray
    left: np.ndarray
    right: np.ndarray
    label: str = ""

    @property
    def difference(self) -> np.ndarray:
        return self.left - self.right

    @property
    def sign_changes(self) -> int:
        return count_sign_changes(self.difference)

    def crossings(self) -> List[float]:
        return crossings(self.x, self.difference)

    def rows(self) -> Iterator[Dict[str, float]]:
        for x, left, right in zip(self.x, self.left, self.right):
            yield {"x": float(x), "curve_left": float(left), "curve_right": float(right)}


def sample_range(lo: float, hi: float, steps: int) -> np.ndarray:
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise FigureSpecError(f"Invalid range: ({lo}, {hi}). Must be finite with lo <= hi")
    if steps < 2:
        raise FigureSpecError(f"Invalid steps: {steps}. Must be >= 2")
    return np.linspace(lo, hi, int(steps))


def count_sign_changes(values: Sequence[float]) -> int:
    """Sign flips along the samples, exact zeros skipped."""
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def crossings(x: Sequence[float], values: Sequence[float]) -> List[float]:
    """Abscissae where the samples cross zero.

    Exact zeros are reported at their grid point; other sign flips are
    located by linear interpolation.
    """
    x = np.asarray(x, dtype=float)
    d = np.asarray(values, dtype=float)
    found: List[float] = []
    last_sign = 0.0
    for i in range(d.size):
        if d[i] == 0.0:
            found.append(float(x[i]))
            last_sign = 0.0
            continue
        sign = math.copysign(1.0, d[i])
        if i > 0 and last_sign != 0.0 and sign != last_sign:
            t = d[i - 1] / (d[i - 1] - d[i])
            found.append(float(x[i - 1] + t * (x[i] - x[i - 1])))
        last_sign = sign
    return found


def figure1_data(couplings: Couplings, e_range: Tuple[float, float, int]) -> FigureCurves:
    """Quartic side and tilted line of the secular equation over e_range."""
    e = sample_range(*e_range)
    q = secular_quartic(couplings)
    e2 = e * e
    left = e2 * e2 - q.A * e2 + q.C
    right = 4.0 * q.f2 * e
    curves = FigureCurves(x=e, left=left, right=right, label="secular")
    logger.debug("figure1 at %s: %d sign changes", couplings, curves.sign_changes)
    return curves


def figure2_data(A: float, f: float, z_range: Tuple[float, float, int]) -> FigureCurves:
    """Critical-point cubic 4z^3 - 2Az against the constant 4f^2 over z_range."""
    if not A > 0:
        raise FigureSpecError(f"Invalid A: {A}. Must be > 0")
    if not math.isfinite(f):
        raise FigureSpecError(f"Invalid f: {f}. Must be finite")
    z = sample_range(*z_range)
    left = 4.0 * z ** 3 - 2.0 * A * z
    right = np.full_like(z, 4.0 * f * f)
    curves = FigureCurves(x=z, left=left, right=right, label="critical")
    logger.debug("figure2 at A=%g f=%g: crossings %s", A, f, curves.crossings())
    return curves
