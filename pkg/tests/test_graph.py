import unittest
import sys
import os
import math

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import ConfigurationError, EvaluationError
from src.models import graph as G
from src.schemas.graph import GraphConfig


def _config(widths, gamma=0.0, weight="const"):
    return GraphConfig(widths=widths, gamma=gamma, weight=weight)


def _central_difference(fn, theta, h=1e-6):
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        up, down = theta.copy(), theta.copy()
        up[i] += h
        down[i] -= h
        grad[i] = (fn(up) - fn(down)) / (2 * h)
    return grad


class TestGraphConstruction(unittest.TestCase):
    """Test cases for layered graph construction and parameter counts"""

    def test_node_count(self):
        """Test node count 1 + sum(w + 1) + 1"""
        for widths in ([2], [3, 2], [2, 2, 2], [1, 4]):
            graph = G.build_layered_graph(_config(widths))
            self.assertEqual(len(graph.nodes), 1 + sum(w + 1 for w in widths) + 1)
            self.assertEqual(graph.nodes[0].kind, G.NodeKind.INPUT)
            self.assertEqual(graph.output.kind, G.NodeKind.WEIGHT)

    def test_topological_order(self):
        """Test every node only reads earlier nodes"""
        graph = G.build_layered_graph(_config([3, 4, 2]))
        for node in graph.nodes:
            self.assertTrue(all(i < node.index for i in node.inputs))

    def test_counts(self):
        """Test n_deep, composite degree and classic DOF"""
        self.assertEqual(G.composite_degree(_config([3, 3])), 4)
        self.assertEqual(G.n_deep(_config([2, 2, 2])), 6)
        self.assertEqual(G.composite_degree(_config([2, 2, 2])), 1)
        self.assertEqual(G.composite_degree(_config([1, 3])), 0)
        self.assertEqual(G.classic_dof([2, 2]), 4)
        self.assertEqual(G.classic_dof([3]), 4)

    def test_invalid_widths(self):
        """Test empty or zero widths are rejected"""
        with self.assertRaises(ConfigurationError):
            G.build_layered_graph(_config([]))
        with self.assertRaises(ConfigurationError):
            G.build_layered_graph(_config([2, 0]))
        with self.assertRaises(ConfigurationError):
            G.classic_dof([2, 0])

    def test_theta_length_checked(self):
        """Test a parameter vector of the wrong length is rejected"""
        graph = G.build_layered_graph(_config([3, 2]))
        with self.assertRaises(ConfigurationError):
            G.forward(graph, [1.0, 2.0], 0.5)


class TestForward(unittest.TestCase):
    """Test cases for forward evaluation"""

    def test_identity(self):
        """Test widths=[2], theta=(0,1) evaluates to x"""
        graph = G.build_layered_graph(_config([2]))
        for x in (-3.0, 0.0, 0.7, 12.5):
            self.assertEqual(G.forward(graph, [0.0, 1.0], x), x)

    def test_gaussian_weight(self):
        """Test the one-sided Gaussian weight at x = 1"""
        graph = G.build_layered_graph(_config([2], gamma=1.0, weight="gauss-right"))
        self.assertAlmostEqual(G.forward(graph, [0.0, 1.0], 1.0), math.exp(-1.0), places=15)
        self.assertEqual(G.forward(graph, [0.0, 1.0], -2.0), -2.0)

    def test_two_layers(self):
        """Test widths=[3,2], theta=(0,0,1,0,1) at x=2 gives 4"""
        graph = G.build_layered_graph(_config([3, 2]))
        self.assertEqual(G.forward(graph, [0, 0, 1, 0, 1], 2.0), 4.0)

    def test_vectorized_matches_scalar(self):
        """Test array evaluation agrees with pointwise evaluation"""
        rng = np.random.default_rng(7)
        graph = G.build_layered_graph(_config([3, 3], gamma=1.0, weight="gauss-right"))
        theta = rng.standard_normal(graph.size)
        x = np.linspace(-2, 3, 11)
        values = G.forward(graph, theta, x)
        for xi, vi in zip(x, values):
            self.assertAlmostEqual(G.forward(graph, theta, xi), vi, places=13)

    def test_overflow_reports_layer(self):
        """Test overflowing powers raise an evaluation error naming the layer"""
        graph = G.build_layered_graph(_config([3] * 8))
        theta = [0.0, 0.0, 10.0] * 8
        with self.assertRaises(EvaluationError) as ctx:
            G.forward(graph, theta, 10.0)
        self.assertEqual(ctx.exception.layer, 8)

    def test_expand_composition(self):
        """Test the monomial expansion reproduces the graph and has the composite degree"""
        rng = np.random.default_rng(11)
        config = _config([3, 3])
        graph = G.build_layered_graph(config)
        theta = rng.standard_normal(graph.size)
        poly = G.expand_composition(config, theta)
        self.assertEqual(poly.degree(), G.composite_degree(config))
        x = np.linspace(-1.5, 1.5, 9)
        np.testing.assert_allclose(poly(x), G.forward(graph, theta, x), rtol=1e-12, atol=1e-12)

    def test_single_layer_is_ordinary_polynomial(self):
        """Test an unweighted single layer of width d+1 is the polynomial with coefficients theta"""
        rng = np.random.default_rng(19)
        for degree in (1, 4, 7):
            graph = G.build_layered_graph(_config([degree + 1]))
            theta = rng.standard_normal(graph.size)
            x = rng.uniform(-1.5, 1.5, size=25)
            expected = np.polynomial.polynomial.polyval(x, theta)
            bound = 64 * np.finfo(float).eps * np.polynomial.polynomial.polyval(np.abs(x), np.abs(theta))
            self.assertTrue(np.all(np.abs(G.forward(graph, theta, x) - expected) <= bound))



class TestGradient(unittest.TestCase):
    """Test cases for reverse-mode gradients"""

    def test_linear_model(self):
        """Test the affine model gradient (1, x)"""
        graph = G.build_layered_graph(_config([2]))
        np.testing.assert_array_equal(G.gradient(graph, [0.0, 1.0], 3.0), [1.0, 3.0])

    def test_annihilated_layer(self):
        """Test first-layer coefficients get zero gradient when the outer linear coefficient is 0"""
        graph = G.build_layered_graph(_config([3, 2]))
        grad = G.gradient(graph, [0.4, -1.2, 0.8, 2.0, 0.0], 1.3)
        np.testing.assert_array_equal(grad[:3], np.zeros(3))

    def test_array_shape(self):
        """Test per-sample gradients have shape (n_deep, N)"""
        graph = G.build_layered_graph(_config([3, 2], gamma=1.0, weight="gauss-right"))
        grad = G.gradient(graph, np.ones(5), np.linspace(-1, 1, 7))
        self.assertEqual(grad.shape, (5, 7))

    def test_reduced_matches_per_sample_sum(self):
        """Test the reduced seeded gradient equals the sum of per-sample seeded gradients"""
        rng = np.random.default_rng(31)
        graph = G.build_layered_graph(_config([3, 3], gamma=1.0, weight="gauss-right"))
        theta = rng.standard_normal(graph.size)
        x = np.linspace(-1.0, 2.0, 17)
        seed = rng.standard_normal(x.size)
        reduced = G.backward(graph, theta, x, seed=seed, reduce=True)
        per_sample = G.backward(graph, theta, x, seed=seed, reduce=False)
        self.assertEqual(reduced.shape, (graph.size,))
        np.testing.assert_allclose(reduced, per_sample.sum(axis=1), rtol=1e-13, atol=1e-13)


    def test_finite_differences(self):
        """Test gradients against central differences on 100 random instances"""
        rng = np.random.default_rng(2024)
        for _ in range(100):
            layers = int(rng.integers(1, 4))
            widths = [int(w) for w in rng.integers(2, 4, size=layers)]
            gamma = float(rng.choice([0.0, 1.0]))
            weight = str(rng.choice(["gauss-right", "recip-right", "freud:2", "const"]))
            graph = G.build_layered_graph(_config(widths, gamma=gamma, weight=weight))
            theta = 0.5 * rng.standard_normal(graph.size)
            x = float(rng.uniform(-1.0, 1.0))

            grad = G.gradient(graph, theta, x)
            fd = _central_difference(lambda t: G.forward(graph, t, x), theta)
            scale = max(1.0, float(np.linalg.norm(grad)))
            self.assertLess(float(np.linalg.norm(grad - fd)) / scale, 1e-6)


if __name__ == '__main__':
    unittest.main()
