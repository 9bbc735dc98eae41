import unittest
import sys
import os
import tempfile

import numpy as np
import pandas as pd

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import DomainError, InputFileError
from src.reporting.golden import generate_airy_golden, golden_points, load_golden
from src.reporting.metrics import error_report, tail_error_direct, tail_error_rescaled
from src.schemas.targets import TargetSpec


class TestErrorReport(unittest.TestCase):
    """Test cases for grid error reports"""

    def test_identical(self):
        """Test an approximant equal to the target has zero error"""
        target = TargetSpec.parse("exp-neg")
        report = error_report(lambda x: np.exp(-x), target, (-1.0, 3.0), 25)
        self.assertEqual(report.sup_error, 0.0)
        self.assertEqual(report.l2_error, 0.0)
        self.assertEqual(len(report.pointwise), 25)

    def test_hand_computed(self):
        """Test Q = 0 against f = 1 on [0,1] with N = 4"""
        report = error_report(np.zeros_like, np.ones_like, (0.0, 1.0), 4)
        self.assertEqual(report.sup_error, 1.0)
        self.assertEqual(report.l2_error, 1.0)
        self.assertEqual(report.warning_count, 0)

    def test_invariants(self):
        """Test sup and L2 agree with the pointwise column"""
        report = error_report(lambda x: 1.0 + x, TargetSpec.parse("exp-neg"), (0.0, 2.0), 16)
        errors = np.array([row.abs_err for row in report.pointwise])
        self.assertEqual(report.sup_error, float(np.max(errors)))
        self.assertAlmostEqual(report.l2_error ** 2, float(np.sum(errors ** 2) * 2.0 / 16), places=14)

    def test_failed_points_excluded(self):
        """Test points where the target is undefined are flagged and skipped"""
        report = error_report(lambda x: np.zeros_like(x), TargetSpec.parse("log"), (-1.0, 1.0), 4)
        self.assertEqual(report.warning_count, 2)
        self.assertEqual(report.excluded_points, [-0.75, -0.25])
        self.assertEqual([row.x for row in report.pointwise], [0.25, 0.75])


class TestTailError(unittest.TestCase):
    """Test cases for the rescaled one-sided tail error"""

    def test_change_of_variables(self):
        """Test direct and substituted quadrature agree"""
        rng = np.random.default_rng(17)
        for n in (4, 16, 64):
            coeffs = rng.standard_normal(4)
            direct = tail_error_direct(coeffs, n, 5.0, 2000)
            rescaled = tail_error_rescaled(coeffs, n, 5.0, 2000)
            self.assertLess(abs(direct - rescaled) / direct, 1e-10)

    def test_invalid_arguments(self):
        """Test non-positive n or X"""
        with self.assertRaises(DomainError):
            tail_error_direct([1.0], 0, 1.0, 10)
        with self.assertRaises(DomainError):
            tail_error_rescaled([1.0], 4, -1.0, 10)


class TestGoldenTable(unittest.TestCase):
    """Test cases for the golden table writer"""

    def setUp(self):
        """Set up test fixtures"""
        self.path = os.path.join(tempfile.mkdtemp(), "golden.csv")

    def test_schema(self):
        """Test the table header and grid"""
        frame = generate_airy_golden(self.path, step=5.0, dps=30)
        self.assertEqual(len(frame), 9)
        with open(self.path) as handle:
            self.assertEqual(handle.readline().strip(), "x,bi_x")
        reloaded = load_golden(self.path)
        np.testing.assert_array_equal(reloaded["x"].to_numpy(), golden_points(5.0))
        np.testing.assert_array_equal(reloaded["bi_x"].to_numpy(), frame["bi_x"].to_numpy())

    def test_wrong_columns(self):
        """Test a table with other columns is rejected"""
        pd.DataFrame({"x": [0.0], "y": [1.0]}).to_csv(self.path, index=False)
        with self.assertRaises(InputFileError):
            load_golden(self.path)


if __name__ == '__main__':
    unittest.main()
