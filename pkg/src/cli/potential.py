"""
mrs and endpoint subcommands
"""

import argparse
from typing import Any, Dict

from src.cli.common import output_path, summary
from src.core.errors import ConfigurationError
from src.schemas.weights import WeightSpec
from src.solvers import mrs as M
from src.storage.files import write_json


def run_mrs(args: argparse.Namespace, output_dir: str) -> Dict[str, Any]:
    """MRS number for freud:<lam> (closed form unless --numeric) or field:<c>:<n>"""
    weight = WeightSpec.parse(args.field)
    if weight.kind == "freud" and not args.numeric:
        result = M.freud_mrs(weight.lam, args.degree)
    elif weight.kind in ("freud", "general_field"):
        result = M.mrs_numeric(weight, args.degree)
    else:
        raise ConfigurationError(f"MRS numbers need a symmetric field (freud or field), got {args.field}")
    path = write_json(result, output_path(output_dir, "mrs_result.json"))
    return summary("mrs", [path], **result.model_dump())


def parse_potential(spec: str):
    """'power:<n>' or 'power:<c>:<n>' for Phi(t) = c t^n"""
    parts = spec.strip().split(":")
    try:
        if parts[0] == "power" and len(parts) == 2:
            return M.power_potential(1.0, float(parts[1]))
        if parts[0] == "power" and len(parts) == 3:
            return M.power_potential(float(parts[1]), float(parts[2]))
    except ValueError as e:
        raise ConfigurationError(f"Invalid potential '{spec}': {e}")
    raise ConfigurationError(f"Unknown potential '{spec}'")


def run_endpoint(args: argparse.Namespace, output_dir: str) -> Dict[str, Any]:
    result = M.endpoint_localization(parse_potential(args.phi))
    path = write_json(result, output_path(output_dir, "endpoint_result.json"))
    return summary("endpoint", [path], **result.model_dump())


def register(subparsers: argparse._SubParsersAction) -> None:
    mrs = subparsers.add_parser("mrs", help="Mhaskar-Rakhmanov-Saff number a_n")
    mrs.add_argument("--field", required=True, help="freud:<lambda> or field:<c>:<n>")
    mrs.add_argument("--degree", required=True, type=float, help="Polynomial degree n > 0")
    mrs.add_argument("--numeric", action="store_true", help="Solve freud weights numerically too")
    mrs.set_defaults(handler=run_mrs)

    endpoint = subparsers.add_parser("endpoint", help="Endpoint localization for Phi(t) = c t^n")
    endpoint.add_argument("--phi", required=True, help="power:<n> or power:<c>:<n>")
    endpoint.set_defaults(handler=run_endpoint)
