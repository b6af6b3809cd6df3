"""
Tests for deterministic results under concurrent use.

Verifies:
- scan_slice cells do not depend on the worker count
- concurrent callers of the pure classification functions see the same answers
- boundary traces are identical serial and pooled
"""

import os
import sys
import threading
import unittest
from concurrent.futures import ThreadPoolExecutor

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from model.hamiltonian import Couplings  # noqa: E402
from domain.analytic import membership_analytic  # noqa: E402
from spectrum.oracle import spectrum_of  # noqa: E402
from scan.boundary import trace_boundary  # noqa: E402
from scan.grid import SliceSpec, scan_slice  # noqa: E402
from export.writers import scan_table  # noqa: E402


class TestScanDeterminism(unittest.TestCase):
    """Worker count never changes output bytes."""

    def test_csv_identical_across_workers(self):
        spec = SliceSpec.from_window(0.5, (0.0, 4.0, 0.0, 4.0), 41)
        outputs = {w: scan_table(scan_slice(spec, workers=w)).render_csv() for w in (1, 2, 8)}
        self.assertEqual(outputs[1], outputs[2])
        self.assertEqual(outputs[1], outputs[8])

    def test_concurrent_scans(self):
        spec = SliceSpec.from_window(0.25, (-2.0, 2.0, -2.0, 2.0), 21)
        expected = [c.as_row() for c in scan_slice(spec).cells]
        with ThreadPoolExecutor(max_workers=4) as pool:
            grids = list(pool.map(lambda _: scan_slice(spec, workers=2), range(4)))
        for grid in grids:
            self.assertEqual([c.as_row() for c in grid.cells], expected)


class TestConcurrentClassification(unittest.TestCase):

    def test_membership_and_spectrum(self):
        rng = np.random.default_rng(99)
        points = [Couplings(*map(float, row)) for row in rng.uniform(0.0, 2.0, (200, 3))]
        expected = [(membership_analytic(p), spectrum_of(p).classification) for p in points]
        errors = []
        results = {}

        def worker(index):
            try:
                results[index] = [(membership_analytic(p), spectrum_of(p).classification) for p in points]
            except Exception as e:
                errors.append(e)

        threads = [threading.Thread(target=worker, args=(k,)) for k in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join(timeout=60)
            self.assertFalse(t.is_alive(), "Thread deadlocked")
        self.assertEqual(errors, [])
        for k in range(4):
            self.assertEqual(results[k], expected)


class TestTraceDeterminism(unittest.TestCase):

    def test_pooled_rays(self):
        serial = trace_boundary(0.5, rays=32, workers=1)
        pooled = trace_boundary(0.5, rays=32, workers=8)
        self.assertEqual(serial.points, pooled.points)
        self.assertEqual(serial.seed, pooled.seed)


if __name__ == '__main__':
    unittest.main()
