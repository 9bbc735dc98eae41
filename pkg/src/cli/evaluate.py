"""
eval and golden-airy subcommands
"""

import argparse
from typing import Any, Dict

import numpy as np

from src.cli.common import frame_from_columns, output_path, summary
from src.core.config import settings
from src.core.errors import ConfigurationError
from src.models import weights as W
from src.models.targets import evaluate_target
from src.reporting.golden import generate_airy_golden
from src.schemas.targets import TargetSpec
from src.schemas.weights import WeightSpec
from src.solvers.fitting import approximant, sample_grid
from src.storage.files import read_fit_result, write_csv


def parse_points(args: argparse.Namespace) -> np.ndarray:
    """--points 'x1,x2,...' or --grid 'a:b:N' (midpoints)"""
    try:
        if args.points:
            return np.array([float(p) for p in args.points.split(",")])
        a, b, n = args.grid.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as e:
        raise ConfigurationError(f"Cannot parse evaluation points: {e}")
    if not (a < b and n >= 2):
        raise ConfigurationError(f"Grid needs a < b and N >= 2, got {args.grid}")
    return sample_grid((a, b), n).points


def run_eval(args: argparse.Namespace, output_dir: str) -> Dict[str, Any]:
    x = parse_points(args)
    if args.target:
        source = args.target
        values = evaluate_target(TargetSpec.parse(args.target), x)
    elif args.weight:
        source = args.weight
        values = W.evaluate_pow(WeightSpec.parse(args.weight), args.gamma, x)
    else:
        source = args.fit
        values = approximant(read_fit_result(args.fit))(x)
    frame = frame_from_columns({"x": x, "value": values})
    path = write_csv(frame, output_path(output_dir, "eval.csv"))
    return summary("eval", [path], source=source, points=int(x.size))


def run_golden(args: argparse.Namespace, output_dir: str) -> Dict[str, Any]:
    path = args.path or output_path(output_dir, settings.golden_filename)
    frame = generate_airy_golden(path, step=args.step, dps=args.dps)
    return summary("golden-airy", [path], rows=len(frame))


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("eval", help="Evaluate a target, a weight power or a saved fit")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--target", help="Target name, e.g. exp-neg, airy-bi-neg, root:3")
    source.add_argument("--weight", help="Weight name, e.g. gauss-right, freud:2")
    source.add_argument("--fit", help="Path to a fit_result.json")
    parser.add_argument("--gamma", type=float, default=1.0, help="Weight exponent for --weight")
    points = parser.add_mutually_exclusive_group(required=True)
    points.add_argument("--points", help="Comma-separated evaluation points")
    points.add_argument("--grid", help="Midpoint grid a:b:N")
    parser.set_defaults(handler=run_eval)

    golden = subparsers.add_parser("golden-airy", help="Regenerate the Bi(x) golden table with mpmath")
    golden.add_argument("--path", help="Destination CSV (default: output dir)")
    golden.add_argument("--step", type=float, default=None, help="Grid step over [-30, 10]")
    golden.add_argument("--dps", type=int, default=None, help="mpmath working precision in digits")
    golden.set_defaults(handler=run_golden)
