"""
Search over the one-sided external field exp(-c x^n) minimizing the trained L2 error
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from src.core.errors import DomainError, TrainingError
from src.models.weights import check_field_admissibility
from src.schemas.fieldopt import FieldEvaluation, FieldSearchConfig, FieldSearchResult
from src.schemas.fit import FitConfig, FitResult
from src.schemas.weights import FieldSpec, WeightSpec
from src.solvers.fitting import train

logger = structlog.get_logger(__name__)

BASELINE = (1.0, 2.0)


def _axis(lo: float, hi: float, count: int, anchor: float) -> np.ndarray:
    """Evenly spaced points on [lo, hi], plus the baseline coordinate when it lies inside"""
    points = np.linspace(lo, hi, count) if count > 1 else np.array([lo])
    if lo <= anchor <= hi:
        points = np.append(points, anchor)
    return np.unique(points)


def _spacing(lo: float, hi: float, count: int) -> float:
    return (hi - lo) / (count - 1) if count > 1 else 0.0


def field_weight(c: float, n: float) -> WeightSpec:
    """One-sided field weight exp(-c x^n) for x >= 0"""
    if n <= 1 or c <= 0:
        raise DomainError(f"Field family needs c > 0 and n > 1, got c={c}, n={n}")
    return WeightSpec(kind="one_sided_field", field=FieldSpec(c=c, n=n))


def _field_config(template: FitConfig, c: float, n: float, restarts: int, max_iters: int) -> FitConfig:
    weight = field_weight(c, n)
    return template.model_copy(update={"weight": weight, "restarts": restarts, "max_iters": max_iters})


class _Objective:
    """Cached search-budget training objective over (c, n)"""

    def __init__(self, config: FieldSearchConfig):
        self.config = config
        self.cache: Dict[Tuple[float, float], Optional[FitResult]] = {}
        self.log: List[FieldEvaluation] = []

    def __call__(self, c: float, n: float, round_index: int) -> float:
        key = (float(c), float(n))
        if key in self.cache:
            fit = self.cache[key]
            return fit.loss_star if fit is not None else float("inf")

        field = FieldSpec(c=key[0], n=key[1])
        admissible = check_field_admissibility(field).admissible
        fit = None
        if admissible:
            template = self.config.template
            inner = _field_config(
                template, key[0], key[1],
                restarts=self.config.search_restarts,
                max_iters=min(template.max_iters, self.config.search_max_iters),
            )
            try:
                fit = train(inner)
            except TrainingError as e:
                logger.warning("Inner training failed", c=key[0], n=key[1], error=e.message)
        self.cache[key] = fit
        self.log.append(FieldEvaluation(
            c=key[0],
            n=key[1],
            loss=fit.loss_star if fit is not None else None,
            sup_error=fit.sup_error if fit is not None else None,
            round=round_index,
            admissible=admissible,
        ))
        logger.info("Evaluated field", c=key[0], n=key[1], round=round_index,
                    loss=fit.loss_star if fit is not None else None)
        return fit.loss_star if fit is not None else float("inf")


def optimize_field(config: FieldSearchConfig) -> FieldSearchResult:
    """Coarse (c, n) grid, then rounds of local 3x3 refinement with halved spacing.

    The incumbent and the baseline (1, 2) are retrained with the template's full budget.
    """
    (c_lo, c_hi), (n_lo, n_hi) = config.c_range, config.n_range
    objective = _Objective(config)

    best: Optional[Tuple[float, float]] = None
    best_loss = float("inf")

    def consider(c: float, n: float, round_index: int) -> None:
        nonlocal best, best_loss
        value = objective(c, n, round_index)
        # strict improvement keeps the earliest point on ties
        if value < best_loss:
            best, best_loss = (float(c), float(n)), value

    logger.info("Starting field search", c_range=list(config.c_range), n_range=list(config.n_range),
                rounds=config.refinement_rounds)
    for c in _axis(c_lo, c_hi, config.coarse_c, BASELINE[0]):
        for n in _axis(n_lo, n_hi, config.coarse_n, BASELINE[1]):
            consider(c, n, 0)
    if best is None:
        raise TrainingError("Every inner fit of the field search failed",
                            restarts=[e.model_dump() for e in objective.log])
    round_best = [best_loss]

    step_c = _spacing(c_lo, c_hi, config.coarse_c)
    step_n = _spacing(n_lo, n_hi, config.coarse_n)
    for round_index in range(1, config.refinement_rounds + 1):
        step_c, step_n = 0.5 * step_c, 0.5 * step_n
        center = best
        for dc in (-step_c, 0.0, step_c):
            for dn in (-step_n, 0.0, step_n):
                c = min(max(center[0] + dc, c_lo), c_hi)
                n = min(max(center[1] + dn, n_lo), n_hi)
                consider(c, n, round_index)
        round_best.append(best_loss)
        logger.info("Refinement round complete", round=round_index, best_c=best[0], best_n=best[1], loss=best_loss)

    baseline_in_range = c_lo <= BASELINE[0] <= c_hi and n_lo <= BASELINE[1] <= n_hi
    baseline_loss = None
    if baseline_in_range:
        baseline_loss = objective(*BASELINE, 0)
        if not np.isfinite(baseline_loss):
            baseline_loss = None

    template = config.template
    best_fit = train(_field_config(template, best[0], best[1], template.restarts, template.max_iters))
    baseline_fit = None
    if baseline_in_range:
        if best == BASELINE:
            baseline_fit = best_fit
        else:
            try:
                baseline_fit = train(_field_config(template, *BASELINE, template.restarts, template.max_iters))
            except TrainingError as e:
                logger.warning("Baseline retraining failed", error=e.message)

    result = FieldSearchResult(
        best_c=best[0],
        best_n=best[1],
        best_loss=best_loss,
        baseline_loss=baseline_loss,
        round_best=round_best,
        best_fit=best_fit,
        baseline_fit=baseline_fit,
        grid_log=objective.log,
    )
    logger.info("Field search complete", best_c=result.best_c, best_n=result.best_n,
                best_loss=result.best_loss, baseline_loss=result.baseline_loss,
                evaluations=len(result.grid_log))
    return result
