"""
End-to-end acceptance checks at their full sample sizes.

The sweeps here are the same ones `validate` runs, at the sizes the
release checks call for. Deselect with ``-m "not slow"``.
"""

import os
import sys
import unittest

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from model.hamiltonian import Couplings, build_hamiltonian, secular_quartic  # noqa: E402
from domain.reparam import NotRepresentableError, from_reparam, to_reparam  # noqa: E402
from spectrum.oracle import BASELINE_LINE, matrix_eigenvalues, quartic_roots  # noqa: E402
from scan.validation import (  # noqa: E402
    ROUNDTRIP_REL_TOL,
    ROUNDTRIP_SQUARE_TOL,
    chart_consistency_sweep,
    critical_point_sweep,
    f_zero_reduction,
    figure_consistency_sweep,
    oracle_agreement,
    rightmost_gap_sweep,
    root_shift_sweep,
    roundtrip_errors,
    self_duality_sweep,
    trace_validity,
    vieta_sweep,
)


class TestTrivialSpectrum(unittest.TestCase):

    def test_both_root_paths(self):
        couplings = Couplings(0.0, 0.0, 0.0)
        for roots in (
            matrix_eigenvalues(build_hamiltonian(couplings)),
            quartic_roots(secular_quartic(couplings)),
        ):
            for got, expected in zip(roots, (-3.0, -1.0, 1.0, 3.0)):
                self.assertAlmostEqual(got.real, expected, delta=1e-12)
                self.assertAlmostEqual(got.imag, 0.0, delta=1e-12)


@pytest.mark.slow
class TestFullSweeps(unittest.TestCase):
    """Every proven property at release sample sizes."""

    def assertPassed(self, result):
        self.assertTrue(result.passed, msg=f"{result.name}: {result.metrics}")

    def test_oracle_agreement(self):
        result = oracle_agreement(1_000_000, seed=101, workers=4)
        self.assertPassed(result)
        self.assertGreaterEqual(result.metrics["agreement_rate"], 0.999)

    def test_self_duality(self):
        self.assertPassed(self_duality_sweep(10_000, seed=102))

    def test_f_zero_reduction(self):
        self.assertPassed(f_zero_reduction(1_000, 10_000, seed=103))

    def test_critical_points(self):
        self.assertPassed(critical_point_sweep(100_000, seed=104))

    def test_vieta(self):
        self.assertPassed(vieta_sweep(100_000, seed=105, workers=4))

    def test_rightmost_gap(self):
        result = rightmost_gap_sweep(100_000, seed=106, workers=4)
        self.assertPassed(result)
        self.assertGreater(result.metrics["min_gap"], 0.0)

    def test_root_shift_pattern(self):
        self.assertPassed(root_shift_sweep(10_000, seed=107, baseline=BASELINE_LINE))

    def test_chart_round_trip(self):
        rng = np.random.default_rng(109)
        checked = conditioned = 0
        worst_rel = worst_square = 0.0
        while checked < 10_000:
            couplings = Couplings(*(float(x) for x in rng.uniform(0.0, 4.0, 3)))
            try:
                back = from_reparam(to_reparam(couplings))
            except NotRepresentableError:
                continue
            checked += 1
            rel, square = roundtrip_errors(couplings, back)
            worst_square = max(worst_square, square)
            if rel is not None:
                conditioned += 1
                worst_rel = max(worst_rel, rel)
        self.assertGreater(conditioned, 1000)
        self.assertLess(worst_rel, ROUNDTRIP_REL_TOL)
        self.assertLess(worst_square, ROUNDTRIP_SQUARE_TOL)

    def test_chart_consistency(self):
        result = chart_consistency_sweep(100_000, seed=110)
        self.assertPassed(result)
        self.assertGreaterEqual(result.metrics["represented"], 10_000)

    def test_figures(self):
        self.assertPassed(figure_consistency_sweep(100, seed=108))

    def test_boundary_validity(self):
        result = trace_validity((0.0, 0.25, 0.5, 1.0), rays=64, tol=1e-8, workers=4)
        self.assertPassed(result)
        self.assertLessEqual(result.metrics["zero_f_residual"], 1e-8)


if __name__ == '__main__':
    unittest.main()
