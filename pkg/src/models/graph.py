"""
Scalar computational graph for deep weighted polynomials

Q(x) = w(x)^gamma * h_L(x),  h_l = sum_i a_i^(l) (h_{l-1})^i,  h_0 = x.

Forward and reverse passes are vectorized: x may be a float or an array of sample
points, in which case every node holds one value per sample.
"""

from dataclasses import dataclass
from enum import Enum
from math import prod
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial

from src.core.config import settings
from src.core.errors import ConfigurationError, EvaluationError
from src.models import weights
from src.schemas.graph import GraphConfig

ArrayLike = Union[float, np.ndarray]


class NodeKind(str, Enum):
    INPUT = "input"
    POWER = "power"
    LINEAR = "linear"
    WEIGHT = "weight"


@dataclass(frozen=True)
class Node:
    """One DAG node; inputs are indices of earlier nodes"""
    index: int
    kind: NodeKind
    layer: int
    inputs: Tuple[int, ...] = ()
    exponent: int = 0
    param_offset: int = 0  # first coefficient of the layer, LINEAR nodes only
    width: int = 0


@dataclass(frozen=True)
class Graph:
    config: GraphConfig
    nodes: Tuple[Node, ...]

    @property
    def output(self) -> Node:
        return self.nodes[-1]

    @property
    def size(self) -> int:
        return n_deep(self.config)


def _check_widths(widths: Sequence[int]) -> None:
    if not widths:
        raise ConfigurationError("Graph needs at least one layer")
    for layer, width in enumerate(widths, start=1):
        if width < 1:
            raise ConfigurationError(f"Layer {layer} has width {width}; widths must be >= 1", layer=layer)


def n_deep(config: GraphConfig) -> int:
    """Total trainable coefficients sum_l w_l"""
    _check_widths(config.widths)
    return sum(config.widths)


def classic_dof(degrees: Sequence[int]) -> int:
    """Free parameters d_1 + ... + d_L - L + 2 of a composition with the given degrees"""
    if not degrees:
        raise ConfigurationError("classic_dof needs at least one degree")
    if any(d < 1 for d in degrees):
        raise ConfigurationError(f"Every degree must be >= 1, got {list(degrees)}")
    return sum(degrees) - len(degrees) + 2


def composite_degree(config: GraphConfig) -> int:
    """prod_l (w_l - 1); a width-1 (constant) layer collapses the product to 0"""
    _check_widths(config.widths)
    return prod(w - 1 for w in config.widths)


def build_layered_graph(config: GraphConfig) -> Graph:
    """Input node, then per layer w_l power nodes and one linear node, then the weight node."""
    _check_widths(config.widths)
    nodes: List[Node] = [Node(index=0, kind=NodeKind.INPUT, layer=0)]
    previous = 0
    offset = 0
    for layer, width in enumerate(config.widths, start=1):
        powers = []
        for i in range(width):
            if i == 0:
                inputs: Tuple[int, ...] = ()
            elif i == 1:
                inputs = (previous,)
            else:
                # (h)^i = (h)^(i-1) * h
                inputs = (powers[-1], previous)
            node = Node(index=len(nodes), kind=NodeKind.POWER, layer=layer, inputs=inputs, exponent=i)
            nodes.append(node)
            powers.append(node.index)
        linear = Node(
            index=len(nodes),
            kind=NodeKind.LINEAR,
            layer=layer,
            inputs=tuple(powers),
            param_offset=offset,
            width=width,
        )
        nodes.append(linear)
        previous = linear.index
        offset += width
    nodes.append(Node(index=len(nodes), kind=NodeKind.WEIGHT, layer=len(config.widths) + 1, inputs=(previous,)))
    return Graph(config=config, nodes=tuple(nodes))


def _check_theta(graph: Graph, theta: Sequence[float]) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (graph.size,):
        raise ConfigurationError(f"theta has shape {theta.shape}, expected ({graph.size},)")
    if not np.all(np.isfinite(theta)):
        raise ConfigurationError("theta contains non-finite entries")
    return theta


def _guard(value: np.ndarray, layer: int) -> np.ndarray:
    if not np.all(np.abs(value) <= settings.overflow_threshold):
        raise EvaluationError(f"Non-finite or overflowing value in layer {layer}", layer=layer)
    return value


@dataclass(frozen=True)
class Tape:
    """Node values of one forward sweep, kept for the reverse sweep"""
    x: np.ndarray
    values: Tuple[np.ndarray, ...]
    wpow: np.ndarray

    @property
    def output(self) -> np.ndarray:
        return self.values[-1]


def weight_powers(graph: Graph, x: ArrayLike) -> np.ndarray:
    """w(x)^gamma at the sample points; depends on x only, so callers may hoist it out of theta loops"""
    config = graph.config
    return np.asarray(weights.evaluate_pow(config.weight, config.gamma, np.asarray(x, dtype=float)), dtype=float)


def record(graph: Graph, theta: Sequence[float], x: ArrayLike, wpow: Optional[np.ndarray] = None) -> Tape:
    """Forward sweep keeping every node value; wpow, when given, replaces the weight evaluation"""
    theta = _check_theta(graph, theta)
    x = np.asarray(x, dtype=float)
    if wpow is None:
        wpow = weight_powers(graph, x)
    values: List[np.ndarray] = [None] * len(graph.nodes)
    values[0] = x
    with np.errstate(over="ignore", invalid="ignore"):
        for node in graph.nodes[1:]:
            if node.kind is NodeKind.POWER:
                if node.exponent == 0:
                    values[node.index] = np.ones_like(x)
                elif node.exponent == 1:
                    values[node.index] = values[node.inputs[0]]
                else:
                    left, right = node.inputs
                    values[node.index] = _guard(values[left] * values[right], node.layer)
            elif node.kind is NodeKind.LINEAR:
                coeffs = theta[node.param_offset:node.param_offset + node.width]
                acc = np.zeros_like(x)
                for a, idx in zip(coeffs, node.inputs):
                    acc = acc + a * values[idx]
                values[node.index] = _guard(acc, node.layer)
            else:
                values[node.index] = _guard(wpow * values[node.inputs[0]], node.layer)
    return Tape(x=x, values=tuple(values), wpow=wpow)


def forward(graph: Graph, theta: Sequence[float], x: ArrayLike) -> ArrayLike:
    """Q(x; theta). Raises EvaluationError carrying the layer of the first overflow."""
    arr = np.asarray(x, dtype=float)
    out = record(graph, theta, arr).output
    return float(out) if arr.ndim == 0 else out


def reverse(graph: Graph, theta: Sequence[float], tape: Tape, seed: ArrayLike = 1.0, reduce: bool = True) -> np.ndarray:
    """Reverse sweep over a recorded tape; see backward"""
    theta = _check_theta(graph, theta)
    values = tape.values
    shape = tape.x.shape

    seed = np.broadcast_to(np.asarray(seed, dtype=float), shape)
    adjoints: List[np.ndarray] = [None] * len(graph.nodes)
    grad = np.zeros(graph.size) if reduce else np.zeros((graph.size,) + shape)

    def accumulate(index: int, contribution: np.ndarray) -> None:
        adjoints[index] = contribution if adjoints[index] is None else adjoints[index] + contribution

    output = graph.output
    accumulate(output.inputs[0], seed * tape.wpow)
    for node in reversed(graph.nodes[1:-1]):
        adj = adjoints[node.index]
        if adj is None:
            continue
        if node.kind is NodeKind.LINEAR:
            for i, idx in enumerate(node.inputs):
                contribution = adj * values[idx]
                grad[node.param_offset + i] = np.sum(contribution) if reduce else contribution
                accumulate(idx, adj * theta[node.param_offset + i])
        elif node.kind is NodeKind.POWER:
            if node.exponent == 1:
                accumulate(node.inputs[0], adj)
            elif node.exponent >= 2:
                left, right = node.inputs
                accumulate(left, adj * values[right])
                accumulate(right, adj * values[left])

    return grad


def backward(graph: Graph, theta: Sequence[float], x: ArrayLike, seed: ArrayLike = 1.0, reduce: bool = True) -> np.ndarray:
    """Reverse-mode accumulation of seed * dQ/dtheta.

    With reduce=True the per-sample contributions are summed, giving sum_i seed_i dQ(x_i)/dtheta;
    otherwise the result has shape (n_deep,) + x.shape.
    """
    return reverse(graph, theta, record(graph, theta, x), seed=seed, reduce=reduce)



def gradient(graph: Graph, theta: Sequence[float], x: ArrayLike) -> np.ndarray:
    """dQ(x; theta)/dtheta; shape (n_deep,) for scalar x, (n_deep, len(x)) for arrays"""
    arr = np.asarray(x, dtype=float)
    return backward(graph, theta, arr, seed=1.0, reduce=arr.ndim == 0)


def expand_composition(config: GraphConfig, theta: Sequence[float]) -> Polynomial:
    """Exact monomial expansion of h_L (the weight is not included)"""
    _check_widths(config.widths)
    theta = np.asarray(theta, dtype=float)
    inner = Polynomial([0.0, 1.0])
    offset = 0
    for width in config.widths:
        layer = Polynomial(theta[offset:offset + width])
        inner = layer(inner)
        offset += width
    return inner
