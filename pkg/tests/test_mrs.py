import unittest
import sys
import os
import math

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import DomainError, SolverError
from src.schemas.weights import FieldSpec, WeightSpec
from src.solvers import mrs as M


class TestMrsNumbers(unittest.TestCase):
    """Test cases for closed-form and numeric MRS numbers"""

    def test_gamma_two_is_one(self):
        """Test gamma_2 = 1"""
        self.assertAlmostEqual(M.gamma_lambda(2.0), 1.0, delta=1e-14)

    def test_closed_forms(self):
        """Test a_n = sqrt(n) for lambda = 2 and pi n / 2 for lambda = 1"""
        for n in (1, 2, 4, 9):
            gauss = M.freud_mrs(2.0, n)
            self.assertEqual(gauss.method, "closed_form")
            self.assertLess(abs(gauss.a_n - math.sqrt(n)) / math.sqrt(n), 1e-12)
            self.assertLess(abs(M.freud_mrs(1.0, n).a_n - math.pi * n / 2) / (math.pi * n / 2), 1e-12)

    def test_lambda_four(self):
        """Test gamma_4 = 2/3 and agreement with the numeric solve"""
        expected = (2.0 / 3.0) ** 0.25
        self.assertAlmostEqual(M.freud_mrs(4.0, 1).a_n, expected, places=13)
        self.assertAlmostEqual(M.mrs_numeric(FieldSpec(c=1.0, n=4.0), 1).a_n, expected, delta=1e-8)

    def test_invalid_arguments(self):
        """Test lambda < 1 and n <= 0"""
        with self.assertRaises(DomainError):
            M.freud_mrs(0.5, 1)
        with self.assertRaises(DomainError):
            M.freud_mrs(2.0, 0)
        with self.assertRaises(DomainError):
            M.mrs_numeric(FieldSpec(c=1.0, n=2.0), -1)

    def test_numeric_matches_closed_form(self):
        """Test the numeric solve against sqrt(n) for the Gaussian field"""
        for n in (1, 2, 4, 9, 16):
            result = M.mrs_numeric(FieldSpec(c=1.0, n=2.0), n)
            self.assertEqual(result.method, "numeric")
            self.assertLess(result.residual, 1e-10)
            self.assertLess(abs(result.a_n - math.sqrt(n)) / math.sqrt(n), 1e-8)

    def test_freud_weight_numeric(self):
        """Test a Freud weight solved numerically"""
        numeric = M.mrs_numeric(WeightSpec.parse("freud:3"), 5)
        self.assertAlmostEqual(numeric.a_n, M.freud_mrs(3.0, 5).a_n, delta=1e-8)

    def test_scaling_in_c(self):
        """Test a_n(c) = c^(-1/2) a_n(1) for n_exp = 2"""
        base = M.mrs_numeric(FieldSpec(c=1.0, n=2.0), 1).a_n
        scaled = M.mrs_numeric(FieldSpec(c=2.0, n=2.0), 1).a_n
        self.assertAlmostEqual(scaled, base / math.sqrt(2.0), delta=1e-9)

    def test_monotone_in_degree(self):
        """Test a_n strictly increases in n"""
        values = [M.mrs_numeric(FieldSpec(c=1.0, n=3.0), n).a_n for n in range(1, 21)]
        self.assertTrue(all(b > a for a, b in zip(values, values[1:])))


class TestEndpointLocalization(unittest.TestCase):
    """Test cases for the endpoint-localization equation"""

    def test_quadratic_potential(self):
        """Test Phi = t^2 gives pi/4"""
        result = M.endpoint_localization(M.power_potential(1.0, 2.0))
        self.assertAlmostEqual(result.a_n, math.pi / 4, delta=1e-10)
        self.assertLess(result.residual, 1e-10)

    def test_quartic_potential(self):
        """Test Phi = t^4 gives (3 pi / 16)^(1/3)"""
        result = M.endpoint_localization(FieldSpec(c=1.0, n=4.0))
        self.assertAlmostEqual(result.a_n, (3 * math.pi / 16) ** (1.0 / 3.0), delta=1e-10)

    def test_linear_potential_is_degenerate(self):
        """Test Phi = t makes the equation independent of a"""
        with self.assertRaises(SolverError) as ctx:
            M.endpoint_localization(M.power_potential(1.0, 1.0))
        self.assertIn("degenerate", str(ctx.exception))

    def test_non_monotone(self):
        """Test a decreasing left-hand side is diagnosed"""
        with self.assertRaises(SolverError) as ctx:
            M.endpoint_localization(lambda t: np.exp(-t))
        self.assertIn("monotone", ctx.exception.message)

    def test_effective_interval(self):
        """Test [0, a / sqrt(n)] with a = pi/4"""
        lo, hi = M.effective_interval(4)
        self.assertEqual(lo, 0.0)
        self.assertAlmostEqual(hi, math.pi / 8, delta=1e-10)


class TestRestrictedRange(unittest.TestCase):
    """Test cases for restricted-range checks"""

    def setUp(self):
        """Set up test fixtures"""
        self.freud = WeightSpec.parse("freud:2")

    def test_quartic(self):
        """Test x^4 exp(-x^2) peaks at |x| = sqrt(2) inside [-2, 2]"""
        report = M.restricted_range_check([0, 0, 0, 0, 1], self.freud, 2.0)
        self.assertTrue(report.holds)
        self.assertAlmostEqual(abs(report.argmax_inside), math.sqrt(2.0), delta=2e-3)
        self.assertLess(report.tail_ratio, 1e-30)

    def test_constant(self):
        """Test a constant polynomial peaks at 0"""
        a = 1.5
        report = M.restricted_range_check([1.0], self.freud, a)
        self.assertTrue(report.holds)
        self.assertLessEqual(abs(report.argmax_inside), 2 * a / 4095)

    def test_random_polynomials(self):
        """Test 100 random polynomials of degree <= n with a = sqrt(n)"""
        rng = np.random.default_rng(0)
        for n in (2, 4, 8):
            a = M.freud_mrs(2.0, n).a_n
            for _ in range(100):
                degree = int(rng.integers(0, n + 1))
                coeffs = rng.standard_normal(degree + 1)
                report = M.restricted_range_check(coeffs, self.freud, a)
                self.assertTrue(report.holds, msg=f"n={n}, coeffs={coeffs.tolist()}")

    def test_invalid_endpoint(self):
        """Test a <= 0 is rejected"""
        with self.assertRaises(DomainError):
            M.restricted_range_check([1.0], self.freud, 0.0)


if __name__ == '__main__':
    unittest.main()
