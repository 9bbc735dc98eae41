import unittest
import sys
import os
import io
import json
import tempfile
from contextlib import redirect_stdout

import numpy as np
import pandas as pd

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.main import run_command
from src.schemas.fit import FitConfig
from src.solvers.fitting import approximant, train
from src.storage.files import read_fit_result, write_json

SMALL_FIT = {
    "interval": [-1.0, 2.0],
    "samples": 30,
    "widths": [2, 2],
    "gamma": 1.0,
    "restarts": 2,
    "step": 0.01,
    "max_iters": 30,
    "seed": 3,
    "target": "exp-neg",
    "weight": "gauss-right",
}


class TestCommandLine(unittest.TestCase):
    """Test cases for the command-line front end"""

    def setUp(self):
        """Set up test fixtures"""
        self.output_dir = tempfile.mkdtemp()

    def run_cli(self, *argv):
        """Run a command, returning (exit status, parsed stdout JSON)"""
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            status = run_command(["--output-dir", self.output_dir, *argv])
        return status, json.loads(buffer.getvalue().strip().splitlines()[-1])

    def test_mrs_closed_form(self):
        """Test mrs --field freud:2 --degree 4 prints a_n = 2"""
        status, payload = self.run_cli("mrs", "--field", "freud:2", "--degree", "4")
        self.assertEqual(status, 0)
        self.assertAlmostEqual(payload["a_n"], 2.0, places=12)
        self.assertEqual(payload["method"], "closed_form")
        self.assertIsNone(payload["residual"])

    def test_mrs_numeric(self):
        """Test a numeric MRS solve through the CLI"""
        status, payload = self.run_cli("mrs", "--field", "field:1:2", "--degree", "9")
        self.assertEqual(status, 0)
        self.assertAlmostEqual(payload["a_n"], 3.0, delta=1e-8)
        self.assertEqual(payload["method"], "numeric")

    def test_endpoint(self):
        """Test endpoint --phi power:2 and the degenerate linear potential"""
        status, payload = self.run_cli("endpoint", "--phi", "power:2")
        self.assertEqual(status, 0)
        self.assertAlmostEqual(payload["a_n"], np.pi / 4, delta=1e-10)

        status, payload = self.run_cli("endpoint", "--phi", "power:1")
        self.assertEqual(status, 7)
        self.assertEqual(payload["error"], "solver")
        self.assertIn("diagnosis", payload)

    def test_usage_errors(self):
        """Test unknown subcommands and missing arguments exit with 2"""
        status, payload = self.run_cli("frobnicate")
        self.assertEqual(status, 2)
        self.assertEqual(payload["error"], "usage")
        status, _ = self.run_cli("mrs", "--field", "freud:2")
        self.assertEqual(status, 2)

    def test_error_codes(self):
        """Test configuration, input-file and domain errors map to distinct codes"""
        bad = dict(SMALL_FIT, interval=[1.0, 0.0])
        status, payload = self.run_cli("fit", "--config", json.dumps(bad))
        self.assertEqual((status, payload["error"]), (3, "configuration"))

        status, payload = self.run_cli("fit", "--config", os.path.join(self.output_dir, "missing.json"))
        self.assertEqual((status, payload["error"]), (4, "input_file"))

        status, payload = self.run_cli("mrs", "--field", "freud:2", "--degree", "-1")
        self.assertEqual((status, payload["error"]), (5, "domain"))

        status, payload = self.run_cli("fit", "--config", json.dumps(dict(SMALL_FIT, widths=[2, 0])))
        self.assertEqual((status, payload["error"]), (3, "configuration"))

    def test_fit_outputs(self):
        """Test fit writes fit_result.json and pointwise.csv with the fixed header"""
        path = os.path.join(self.output_dir, "small.json")
        with open(path, "w") as handle:
            json.dump(SMALL_FIT, handle)
        status, payload = self.run_cli("fit", "--config", path)
        self.assertEqual(status, 0)
        self.assertEqual(payload["n_deep"], 4)
        with open(os.path.join(self.output_dir, "pointwise.csv")) as handle:
            self.assertEqual(handle.readline().strip(), "x,f,q,abs_err")
        result = read_fit_result(os.path.join(self.output_dir, "fit_result.json"))
        self.assertEqual(result.sup_error, payload["sup_error"])

    def test_compare_outputs(self):
        """Test compare writes the combined CSV and a summary at matched DOF"""
        status, payload = self.run_cli("compare", "--config", json.dumps(SMALL_FIT))
        self.assertEqual(status, 0)
        with open(os.path.join(self.output_dir, "compare.csv")) as handle:
            self.assertEqual(handle.readline().strip(), "x,f,q_weighted,q_unweighted,q_cheb,q_taylor")
        with open(os.path.join(self.output_dir, "compare_summary.json")) as handle:
            summary = json.load(handle)
        self.assertEqual(summary["dof"]["weighted"], 4)
        self.assertEqual(summary["dof"]["chebyshev"], 4)
        self.assertEqual(summary["dof"]["taylor"], 4)
        self.assertEqual(set(summary["sup_error"]), {"weighted", "unweighted", "chebyshev", "taylor"})
        self.assertEqual(summary["sup_error_samples"], [30, 120])
        for name in ("weighted", "unweighted"):
            fit = read_fit_result(os.path.join(self.output_dir, f"fit_{name}.json"))
            self.assertEqual(summary["sup_error"][name], fit.sup_error)


    def test_eval(self):
        """Test eval on a target and on a saved fit"""
        status, payload = self.run_cli("eval", "--target", "exp-neg", "--points", "0,1")
        self.assertEqual(status, 0)
        self.assertEqual(payload["points"], 2)

        status, _ = self.run_cli("eval", "--weight", "gauss-right", "--grid=-1:1:4")
        self.assertEqual(status, 0)

    def test_golden(self):
        """Test golden-airy writes the table"""
        path = os.path.join(self.output_dir, "golden.csv")
        status, payload = self.run_cli("golden-airy", "--path", path, "--step", "10", "--dps", "25")
        self.assertEqual(status, 0)
        self.assertEqual(payload["rows"], 5)
        self.assertTrue(os.path.exists(path))

    def test_fit_then_eval(self):
        """Test a saved fit can be evaluated through eval --fit"""
        status, _ = self.run_cli("fit", "--config", json.dumps(SMALL_FIT))
        self.assertEqual(status, 0)
        fit_path = os.path.join(self.output_dir, "fit_result.json")
        status, payload = self.run_cli("eval", "--fit", fit_path, "--points=-0.5,0,1.5")
        self.assertEqual(status, 0)
        self.assertEqual(payload["command"], "eval")
        self.assertEqual(payload["points"], 3)
        with open(os.path.join(self.output_dir, "eval.csv")) as handle:
            self.assertEqual(handle.readline().strip(), "x,value")

    def test_field_opt_outputs(self):
        """Test field-opt writes the landscape with the baseline cell and the comparison curves"""
        config = {
            "template": dict(SMALL_FIT, restarts=1, max_iters=20),
            "c_range": [0.5, 2.0],
            "n_range": [1.5, 3.0],
            "coarse_c": 2,
            "coarse_n": 2,
            "refinement_rounds": 0,
            "search_restarts": 1,
            "search_max_iters": 10,
        }
        status, payload = self.run_cli("field-opt", "--config", json.dumps(config))
        self.assertEqual(status, 0)
        self.assertEqual(payload["command"], "field-opt")
        self.assertIsNotNone(payload["baseline_sup_error"])

        landscape = pd.read_csv(os.path.join(self.output_dir, "field_landscape.csv"))
        self.assertEqual(list(landscape.columns), ["c", "n", "loss", "sup_error", "round"])
        baseline = landscape[(landscape["c"] == 1.0) & (landscape["n"] == 2.0)]
        self.assertEqual(len(baseline), 1)
        self.assertTrue((landscape["round"] == 0).all())

        with open(os.path.join(self.output_dir, "field_compare.csv")) as handle:
            self.assertEqual(handle.readline().strip(), "x,f,q_optimized,q_baseline")
        self.assertTrue(os.path.exists(os.path.join(self.output_dir, "field_opt_result.json")))


class TestFitResultRoundTrip(unittest.TestCase):
    """Test cases for FitResult persistence"""

    def test_bit_identical_evaluation(self):
        """Test a re-read FitResult evaluates bit-identically"""
        result = train(FitConfig(**SMALL_FIT))
        path = os.path.join(tempfile.mkdtemp(), "fit.json")
        write_json(result, path)
        restored = read_fit_result(path)
        self.assertEqual(restored.theta_star, result.theta_star)
        x = np.linspace(-1.0, 2.0, 101)
        np.testing.assert_array_equal(approximant(restored)(x), approximant(result)(x))


if __name__ == '__main__':
    unittest.main()
