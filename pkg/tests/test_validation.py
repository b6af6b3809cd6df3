"""
Tests for the property sweeps, run at small sample sizes.
"""

import os
import sys
import unittest
from unittest.mock import patch

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from model.hamiltonian import Couplings  # noqa: E402
from spectrum.oracle import BASELINE_COUPLINGS, BASELINE_LINE, batch_matrix_eigenvalues  # noqa: E402
from scan.validation import (  # noqa: E402
    PATH_TOL,
    ROUNDTRIP_REL_TOL,
    ROUNDTRIP_SQUARE_TOL,
    SAMPLE_BOX,
    WELL_CONDITIONED_FLOOR,
    SweepResult,
    ValidationReport,
    chart_consistency_sweep,
    critical_point_sweep,
    elementary_symmetric,
    f_zero_reduction,
    figure_consistency_sweep,
    oracle_agreement,
    rightmost_gap_sweep,
    root_shift_sweep,
    roundtrip_errors,
    run_all,
    sample_couplings,
    self_duality_sweep,
    shrinkage_profile,
    trace_validity,
    vieta_sweep,
)


class TestSampling(unittest.TestCase):

    def test_reproducible(self):
        first = sample_couplings(np.random.default_rng(42), 100)
        second = sample_couplings(np.random.default_rng(42), 100)
        for x, y in zip(first, second):
            np.testing.assert_array_equal(x, y)

    def test_box(self):
        a, c, f = sample_couplings(np.random.default_rng(0), 1000, box=(1.0, 2.0, 0.5))
        self.assertLessEqual(a.max(), 1.0)
        self.assertLessEqual(c.max(), 2.0)
        self.assertLessEqual(f.max(), 0.5)
        self.assertGreaterEqual(min(a.min(), c.min(), f.min()), 0.0)

    def test_elementary_symmetric(self):
        roots = np.array([[-3.0, -1.0, 1.0, 3.0]], dtype=complex)
        np.testing.assert_allclose(elementary_symmetric(roots)[0].real, [1.0, 0.0, -10.0, 0.0, 9.0])


class TestRoundtripErrors(unittest.TestCase):

    def test_relative_when_well_conditioned(self):
        rel, square = roundtrip_errors(Couplings(1.0, 1.0, 1.0), Couplings(1.0, 1.0, 1.0 + 1e-13))
        self.assertAlmostEqual(rel, 1e-13, delta=1e-15)
        self.assertAlmostEqual(square, 1e-13, delta=1e-15)

    def test_small_coupling_only_squares(self):
        rel, square = roundtrip_errors(Couplings(1.0, 0.01, 1.0), Couplings(1.0, 0.0100001, 1.0))
        self.assertIsNone(rel)
        self.assertLess(square, 1e-8)
        self.assertEqual(WELL_CONDITIONED_FLOOR, 0.1)


class TestSweeps(unittest.TestCase):
    """Each proven property holds on a small seeded sample."""

    def assertPassed(self, result):
        self.assertTrue(result.passed, msg=f"{result.name}: {result.metrics}")

    def test_oracle_agreement(self):
        result = oracle_agreement(2000, seed=1)
        self.assertPassed(result)
        self.assertGreater(result.metrics["compared"], 1900)

    def test_oracle_agreement_threads(self):
        serial = oracle_agreement(1000, seed=2, workers=1)
        pooled = oracle_agreement(1000, seed=2, workers=4)
        self.assertEqual(serial.metrics, pooled.metrics)

    def test_self_duality(self):
        result = self_duality_sweep(200, seed=3)
        self.assertPassed(result)
        self.assertEqual(result.metrics["samples"], 200)

    def test_self_duality_draws_whole_box(self):
        drawn = []

        def spy(stack):
            drawn.append(stack)
            return batch_matrix_eigenvalues(stack)

        with patch('scan.validation.batch_matrix_eigenvalues', side_effect=spy):
            result = self_duality_sweep(200, seed=3)
        self.assertPassed(result)
        stacks = np.concatenate(drawn)
        self.assertGreater(stacks[:, 1, 2].max(), SAMPLE_BOX[0] - 0.5)
        self.assertGreater(stacks[:, 2, 3].max(), SAMPLE_BOX[1] - 0.5)
        self.assertTrue(np.all(stacks[:, 0, 1] == stacks[:, 2, 3]))

    def test_vieta_path_discrepancy_is_tight(self):
        result = vieta_sweep(2000, seed=6)
        self.assertLess(result.metrics["max_path_discrepancy"], PATH_TOL)
        self.assertEqual(PATH_TOL, 1e-9)

    def test_vieta_catches_small_path_drift(self):
        def drifted(stack):
            return batch_matrix_eigenvalues(stack) + 5e-9

        with patch('scan.validation.batch_matrix_eigenvalues', side_effect=drifted):
            result = vieta_sweep(500, seed=6)
        self.assertFalse(result.passed)
        self.assertLess(result.metrics["max_vieta_error"], 1e-9)

    def test_f_zero_reduction(self):
        result = f_zero_reduction(50, 500, seed=4)
        self.assertPassed(result)
        self.assertEqual(result.metrics["max_bound_error"], 0.0)

    def test_critical_points(self):
        self.assertPassed(critical_point_sweep(200, seed=5, brentq_samples=50))

    def test_vieta(self):
        result = vieta_sweep(2000, seed=6)
        self.assertPassed(result)
        self.assertGreater(result.metrics["path_compared"], 0)

    def test_rightmost_gap(self):
        result = rightmost_gap_sweep(2000, seed=7)
        self.assertPassed(result)
        self.assertGreater(result.metrics["min_gap"], 0.0)

    def test_root_shift_line_asserted(self):
        result = root_shift_sweep(100, seed=8, baseline=BASELINE_LINE)
        self.assertEqual(result.name, "root_shift_line")
        self.assertPassed(result)
        self.assertEqual(result.metrics["pattern_rate"], 1.0)

    def test_root_shift_couplings_reported(self):
        result = root_shift_sweep(50, seed=8, baseline=BASELINE_COUPLINGS)
        self.assertIsNone(result.passed)
        self.assertFalse(result.asserted)
        self.assertLessEqual(result.metrics["pattern_rate"], 1.0)

    def test_figure_consistency(self):
        result = figure_consistency_sweep(20, seed=9, steps=2001)
        self.assertPassed(result)
        self.assertGreater(result.metrics["secular_compared"], 0)

    def test_chart_consistency(self):
        result = chart_consistency_sweep(300, seed=10)
        self.assertPassed(result)
        self.assertGreater(result.metrics["represented"], 0)
        self.assertGreater(result.metrics["roundtrip_conditioned"], 0)
        self.assertLess(result.metrics["max_roundtrip_rel_error"], ROUNDTRIP_REL_TOL)
        self.assertLess(result.metrics["max_roundtrip_square_error"], ROUNDTRIP_SQUARE_TOL)

    def test_trace_validity(self):
        result = trace_validity((0.0, 0.5), rays=16)
        self.assertPassed(result)
        self.assertIn("zero_f_residual", result.metrics)
        self.assertEqual(result.metrics["opposite_f=0.5"], 1.0)

    def test_trace_validity_without_seed_fails(self):
        self.assertFalse(trace_validity((2.0,), rays=8).passed)

    def test_shrinkage_reported(self):
        result = shrinkage_profile((0.0, 0.5, 1.0), resolution=21)
        self.assertIsNone(result.passed)
        self.assertGreater(result.metrics["inside_f=0"], result.metrics["inside_f=1"])


class TestValidationReport(unittest.TestCase):

    def test_reported_sweeps_do_not_fail(self):
        report = ValidationReport([
            SweepResult("a", True),
            SweepResult("b", None),
        ])
        self.assertTrue(report.passed)
        self.assertEqual(report.failures, [])

    def test_failures_listed(self):
        report = ValidationReport([SweepResult("a", True), SweepResult("b", False)])
        self.assertFalse(report.passed)
        self.assertEqual(report.failures, ["b"])
        self.assertEqual(report.get("b").name, "b")
        with self.assertRaises(KeyError):
            report.get("missing")


@pytest.mark.slow
class TestRunAll(unittest.TestCase):

    def test_small_run_passes(self):
        report = run_all(samples=500, seed=2024, rays=16)
        self.assertTrue(report.passed, msg=str(report.failures))
        names = [r.name for r in report.results]
        self.assertIn("root_shift_line", names)
        self.assertIn("root_shift_couplings", names)
        self.assertIsNone(report.get("shrinkage_profile").passed)


if __name__ == '__main__':
    unittest.main()
