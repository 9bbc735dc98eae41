"""
field-opt subcommand
"""

import argparse
from typing import Any, Dict

import numpy as np

from src.cli.common import frame_from_columns, load_config, output_path, summary
from src.models.targets import evaluate_target
from src.schemas.fieldopt import FieldSearchConfig
from src.solvers.fieldopt import optimize_field
from src.solvers.fitting import approximant, sample_grid
from src.storage.files import write_csv, write_json


def run_field_opt(args: argparse.Namespace, output_dir: str) -> Dict[str, Any]:
    """Search (c, n); write the result, the landscape and optimized-vs-baseline curves"""
    config = load_config(FieldSearchConfig, args.config)
    result = optimize_field(config)

    landscape = frame_from_columns({
        "c": [e.c for e in result.grid_log],
        "n": [e.n for e in result.grid_log],
        "loss": [np.nan if e.loss is None else e.loss for e in result.grid_log],
        "sup_error": [np.nan if e.sup_error is None else e.sup_error for e in result.grid_log],
        "round": [e.round for e in result.grid_log],
    })

    template = config.template
    grid = sample_grid(template.interval, template.samples)
    x = grid.points
    curves = {
        "x": x,
        "f": evaluate_target(template.target, x),
        "q_optimized": approximant(result.best_fit)(x),
    }
    if result.baseline_fit is not None:
        curves["q_baseline"] = approximant(result.baseline_fit)(x)

    outputs = [
        write_json(result, output_path(output_dir, "field_opt_result.json")),
        write_csv(landscape, output_path(output_dir, "field_landscape.csv")),
        write_csv(frame_from_columns(curves), output_path(output_dir, "field_compare.csv")),
    ]
    return summary(
        "field-opt",
        outputs,
        best_c=result.best_c,
        best_n=result.best_n,
        baseline_loss=result.baseline_loss,
        best_loss=result.best_loss,
        best_sup_error=result.best_fit.sup_error,
        baseline_sup_error=result.baseline_fit.sup_error if result.baseline_fit is not None else None,
    )


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("field-opt", help="Optimize the one-sided field exp(-c x^n)")
    parser.add_argument("--config", required=True, help="FieldSearchConfig JSON: a file path or an inline document")
    parser.set_defaults(handler=run_field_opt)
