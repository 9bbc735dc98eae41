"""
Weighted least-squares training of deep weighted polynomials with random restarts
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
import structlog

from src.core.config import settings
from src.core.errors import EvaluationError, TrainingError
from src.models import graph as G
from src.models.targets import evaluate_target
from src.schemas.fit import FitConfig, FitResult, GridSpec, RestartLog
from src.schemas.targets import TargetSpec

logger = structlog.get_logger(__name__)

TargetLike = Union[TargetSpec, np.ndarray, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class SampleGrid:
    points: np.ndarray
    dx: float


def sample_grid(interval: Tuple[float, float], samples: int) -> SampleGrid:
    """Midpoints x_i = a + (i - 1/2) dx, dx = (b - a)/N"""
    a, b = interval
    dx = (b - a) / samples
    points = a + (np.arange(1, samples + 1) - 0.5) * dx
    return SampleGrid(points=points, dx=dx)


def _target_values(target: TargetLike, points: np.ndarray) -> np.ndarray:
    if isinstance(target, TargetSpec):
        return np.asarray(evaluate_target(target, points), dtype=float)
    if callable(target):
        return np.asarray(target(points), dtype=float)
    return np.asarray(target, dtype=float)


def _sweep(graph: G.Graph, theta, grid: SampleGrid, f: np.ndarray,
           wpow: Optional[np.ndarray] = None) -> Tuple[float, Optional[G.Tape]]:
    """Loss and the forward tape it came from; (inf, None) when the sweep overflows"""
    try:
        tape = G.record(graph, theta, grid.points, wpow)
    except EvaluationError:
        return float("inf"), None
    with np.errstate(over="ignore"):
        value = float(np.sum((tape.output - f) ** 2) * grid.dx)
    if not np.isfinite(value):
        return float("inf"), None
    return value, tape


def loss(graph: G.Graph, theta, grid: SampleGrid, target: TargetLike, wpow: Optional[np.ndarray] = None) -> float:
    """sum_i (Q(x_i) - f(x_i))^2 dx; +inf when any sample overflows"""
    value, _ = _sweep(graph, theta, grid, _target_values(target, grid.points), wpow)
    return value


def loss_gradient(graph: G.Graph, theta, grid: SampleGrid, target: TargetLike,
                  tape: Optional[G.Tape] = None) -> np.ndarray:
    """sum_i 2 (Q(x_i) - f(x_i)) dQ(x_i)/dtheta dx from one forward and one reverse sweep.

    A tape already recorded at theta on the grid skips the forward sweep. Raises
    EvaluationError when the forward pass overflows; the trainer treats that as an
    infinite loss.
    """
    f = _target_values(target, grid.points)
    if tape is None:
        tape = G.record(graph, theta, grid.points)
    seed = 2.0 * (tape.output - f) * grid.dx
    return G.reverse(graph, theta, tape, seed=seed, reduce=True)


def _initial_theta(graph: G.Graph, grid: SampleGrid, f: np.ndarray, wpow: np.ndarray,
                   rng: np.random.Generator) -> Tuple[Optional[np.ndarray], float, Optional[G.Tape], int]:
    """theta ~ N(0, I), redrawn while the initial graph overflows"""
    for redraws in range(settings.max_init_redraws + 1):
        theta = rng.standard_normal(graph.size)
        value, tape = _sweep(graph, theta, grid, f, wpow)
        if tape is not None:
            return theta, value, tape, redraws
    return None, float("inf"), None, settings.max_init_redraws


def _descend(graph: G.Graph, theta: np.ndarray, current: float, tape: G.Tape, grid: SampleGrid,
             f: np.ndarray, wpow: np.ndarray, config: FitConfig, restart: int) -> Tuple[np.ndarray, float, int, str]:
    """Gradient descent with step halving on increase; returns (theta, loss, iterations, status).

    The tape of the accepted line-search candidate feeds the next gradient, so each iteration
    costs one reverse sweep plus one forward sweep per trial step.
    """
    status = "max_iters"
    iterations = 0
    for iterations in range(1, config.max_iters + 1):
        grad = loss_gradient(graph, theta, grid, f, tape=tape)
        if not np.all(np.isfinite(grad)):
            status = "stalled"
            break

        step = config.step
        accepted = False
        for _ in range(settings.max_step_halvings + 1):
            candidate = theta - step * grad
            value, candidate_tape = _sweep(graph, candidate, grid, f, wpow)
            if value <= current:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            status = "stalled"
            break

        change = abs(current - value) / max(current, 1e-300)
        theta, current, tape = candidate, value, candidate_tape
        if change < config.rel_tol:
            status = "converged"
            break
    logger.debug("Restart finished descent", restart=restart, iterations=iterations, loss=current, status=status)
    return theta, current, iterations, status


def error_grids(config: FitConfig) -> List[np.ndarray]:
    """Points the sup error is taken over: the training grid and a denser validation grid"""
    return [
        sample_grid(config.interval, samples).points
        for samples in (config.samples, settings.validation_factor * config.samples)
    ]


def sup_error(graph: G.Graph, theta, config: FitConfig) -> float:
    """Max |Q - f| over error_grids(config)"""
    worst = 0.0
    for points in error_grids(config):
        f = _target_values(config.target, points)
        try:
            q = G.forward(graph, theta, points)
        except EvaluationError:
            return float("inf")
        worst = max(worst, float(np.max(np.abs(q - f))))
    return worst



def train(config: FitConfig) -> FitResult:
    """Run R restarts from Gaussian initializations; restart r is seeded with seed + r."""
    graph_config = config.graph_config
    graph = G.build_layered_graph(graph_config)
    grid = sample_grid(config.interval, config.samples)
    f = _target_values(config.target, grid.points)
    wpow = G.weight_powers(graph, grid.points)

    logger.info(
        "Starting training",
        target=config.target.label(),
        weight=config.weight.label(),
        widths=list(config.widths),
        gamma=config.gamma,
        restarts=config.restarts,
        step=config.step,
        max_iters=config.max_iters,
    )

    best_theta = None
    best_loss = float("inf")
    logs = []
    trace = []
    for restart in range(config.restarts):
        seed = config.seed + restart
        rng = np.random.default_rng(seed)
        theta, current, tape, redraws = _initial_theta(graph, grid, f, wpow, rng)
        if theta is None:
            logger.warning("Restart diverged at initialization", restart=restart, redraws=redraws)
            logs.append(RestartLog(restart=restart, seed=seed, redraws=redraws, status="diverged"))
            trace.append(best_loss if np.isfinite(best_loss) else None)
            continue

        theta, current, iterations, status = _descend(graph, theta, current, tape, grid, f, wpow, config, restart)
        logs.append(RestartLog(
            restart=restart,
            seed=seed,
            final_loss=current,
            iterations=iterations,
            redraws=redraws,
            status=status,
        ))
        # strict improvement keeps the lowest restart index on ties
        if current < best_loss:
            best_theta, best_loss = theta.copy(), current
        trace.append(best_loss)
        logger.info("Restart complete", restart=restart, loss=current, best=best_loss, iterations=iterations, status=status)

    if best_theta is None:
        raise TrainingError(
            "All restarts diverged",
            restarts=[log.model_dump() for log in logs],
        )

    degrees = [w - 1 for w in config.widths]
    result = FitResult(
        theta_star=best_theta.tolist(),
        loss_star=best_loss,
        restarts_log=logs,
        iterations_used=[log.iterations for log in logs],
        best_loss_trace=trace,
        sup_error=sup_error(graph, best_theta, config),
        grid=GridSpec(interval=config.interval, samples=config.samples),
        config=config,
        n_deep=G.n_deep(graph_config),
        classic_dof=G.classic_dof(degrees) if min(degrees) >= 1 else None,
        composite_degree=G.composite_degree(graph_config),
    )
    logger.info("Training complete", loss=result.loss_star, sup_error=result.sup_error, n_deep=result.n_deep)
    return result


def approximant(result: FitResult) -> Callable[[np.ndarray], np.ndarray]:
    """Q(.; theta*) as a vectorized callable"""
    graph = G.build_layered_graph(result.config.graph_config)
    theta = np.asarray(result.theta_star)
    return lambda x: G.forward(graph, theta, x)
