"""
fit and compare subcommands
"""

import argparse
from typing import Any, Dict

import numpy as np
import structlog

from src.cli.common import finite_or_none, frame_from_columns, load_config, output_path, summary, validate_config
from src.core.errors import DomainError, UnsupportedError
from src.models import baselines as B
from src.models.targets import evaluate_target
from src.reporting.metrics import error_report
from src.schemas.fit import FitConfig
from src.solvers.fitting import approximant, error_grids, sample_grid, train
from src.storage.files import load_config_document, write_csv, write_json

logger = structlog.get_logger(__name__)

FIT_COLUMNS = ["x", "f", "q", "abs_err"]
COMPARE_COLUMNS = ["x", "f", "q_weighted", "q_unweighted", "q_cheb", "q_taylor"]


def run_fit(args: argparse.Namespace, output_dir: str) -> Dict[str, Any]:
    """Train, then write fit_result.json and pointwise.csv"""
    config = load_config(FitConfig, args.config)
    result = train(config)

    report = error_report(approximant(result), config.target, config.interval, config.samples)
    frame = frame_from_columns({
        column: [getattr(row, column) for row in report.pointwise] for column in FIT_COLUMNS
    })
    outputs = [
        write_json(result, output_path(output_dir, "fit_result.json")),
        write_csv(frame, output_path(output_dir, "pointwise.csv")),
    ]
    return summary(
        "fit",
        outputs,
        loss_star=result.loss_star,
        sup_error=result.sup_error,
        l2_error=report.l2_error,
        n_deep=result.n_deep,
        widths=list(config.widths),
        step=config.step,
        max_iters=config.max_iters,
    )


def _taylor_center(config: FitConfig, requested) -> float:
    if requested is not None:
        return float(requested)
    a, b = config.interval
    return 0.0 if a <= 0.0 <= b else 0.5 * (a + b)


def run_compare(args: argparse.Namespace, output_dir: str) -> Dict[str, Any]:
    """Weighted deep, unweighted deep, Chebyshev and Taylor at matched degrees of freedom"""
    document = dict(load_config_document(args.config))
    requested_center = document.pop("taylor_center", None)
    config = validate_config(FitConfig, document)

    weighted = train(config)
    unweighted = train(config.model_copy(update={"gamma": 0.0}))
    dof = weighted.n_deep
    degree = dof - 1

    grid = sample_grid(config.interval, config.samples)
    x = grid.points
    f = np.asarray(evaluate_target(config.target, x))
    q_weighted = approximant(weighted)(x)
    q_unweighted = approximant(unweighted)(x)

    cheb = B.chebyshev_fit(config.target, config.interval, degree)
    q_cheb = B.chebyshev_eval(cheb, x)

    center = _taylor_center(config, requested_center)
    try:
        taylor = B.taylor_model(config.target, center, degree)
        q_taylor = B.taylor_eval(taylor, x)
    except (UnsupportedError, DomainError) as e:
        logger.warning("Taylor baseline unavailable", target=config.target.label(), error=e.message)
        taylor = None
        q_taylor = np.full_like(x, np.nan)

    columns = dict(zip(COMPARE_COLUMNS, (x, f, q_weighted, q_unweighted, q_cheb, q_taylor)))
    frame = frame_from_columns(columns)

    def sup(model):
        with np.errstate(invalid="ignore", over="ignore"):
            errors = [np.max(np.abs(model(points) - evaluate_target(config.target, points)))
                      for points in error_grids(config)]
            return finite_or_none(np.max(errors))

    compare_summary = {
        "target": config.target.label(),
        "weight": config.weight.label(),
        "interval": list(config.interval),
        "samples": config.samples,
        "widths": list(config.widths),
        "gamma": config.gamma,
        "step": config.step,
        "max_iters": config.max_iters,
        "seed": config.seed,
        "sup_error": {
            "weighted": finite_or_none(weighted.sup_error),
            "unweighted": finite_or_none(unweighted.sup_error),
            "chebyshev": sup(lambda p: B.chebyshev_eval(cheb, p)),
            "taylor": sup(lambda p: B.taylor_eval(taylor, p)) if taylor is not None else None,
        },
        "sup_error_samples": [len(points) for points in error_grids(config)],
        "dof": {
            "weighted": dof,
            "unweighted": unweighted.n_deep,
            "chebyshev": cheb.dof,
            "taylor": taylor.dof if taylor is not None else None,
            "classic_dof": weighted.classic_dof,
            "composite_degree": weighted.composite_degree,
        },
        "taylor_center": center,
        "loss_star": {"weighted": weighted.loss_star, "unweighted": unweighted.loss_star},
    }
    outputs = [
        write_csv(frame, output_path(output_dir, "compare.csv")),
        write_json(compare_summary, output_path(output_dir, "compare_summary.json")),
        write_json(weighted, output_path(output_dir, "fit_weighted.json")),
        write_json(unweighted, output_path(output_dir, "fit_unweighted.json")),
    ]
    return summary("compare", outputs, sup_error=compare_summary["sup_error"], dof=dof)


def register(subparsers: argparse._SubParsersAction) -> None:
    fit = subparsers.add_parser("fit", help="Train a weighted deep polynomial")
    fit.add_argument("--config", required=True, help="FitConfig JSON: a file path or an inline document")
    fit.set_defaults(handler=run_fit)

    compare = subparsers.add_parser("compare", help="Weighted vs unweighted deep, Chebyshev and Taylor at matched DOF")
    compare.add_argument("--config", required=True, help="FitConfig JSON (optional extra key taylor_center)")
    compare.set_defaults(handler=run_compare)
