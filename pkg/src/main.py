"""
Weighted Deep Polynomial Toolkit - command line
Main entry point: python -m src.main <subcommand> ...
"""

import argparse
import json
import sys
from typing import List, Optional

import structlog

from src.cli import evaluate, fieldopt, fit, potential
from src.core.errors import EXIT_CODES, DeepPolyError, UsageError
from src.core.logging import configure_logging
from src.storage.files import resolve_output_dir

logger = structlog.get_logger(__name__)

EPILOG = "exit codes:\n  0 success\n  1 internal error\n" + "\n".join(
    f"  {code} {name}" for name, code in sorted(EXIT_CODES.items(), key=lambda item: item[1])
)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message: str):
        raise UsageError(message, prog=self.prog)


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        prog="deeppoly",
        description="Weighted deep polynomial approximation: training, baselines and potential theory",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--output-dir", default=None, help="Output directory (env DEEPPOLY_OUTPUT_DIR)")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--console-logs", action="store_true", help="Human-readable logs instead of JSON")

    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=CliParser)
    subparsers.required = True
    for module in (fit, potential, fieldopt, evaluate):
        module.register(subparsers)
    return parser


def _emit(payload) -> None:
    print(json.dumps(payload, default=str))


def run_command(argv: Optional[List[str]] = None) -> int:
    """Parse, dispatch and report; returns the process exit status"""
    try:
        args = build_parser().parse_args(argv)
    except DeepPolyError as e:
        _emit(e.to_dict())
        return e.exit_code

    configure_logging(args.log_level, json_output=False if args.console_logs else None)
    logger.info("Starting command", command=args.command)
    try:
        output_dir = resolve_output_dir(args.output_dir)
        result = args.handler(args, output_dir)
    except DeepPolyError as e:
        logger.error("Command failed", command=args.command, error=e.code, message=e.message)
        _emit(e.to_dict())
        return e.exit_code
    except Exception as e:
        logger.exception("Unexpected error", command=args.command)
        _emit({"error": "internal", "message": str(e)})
        return 1
    logger.info("Command complete", command=args.command)
    _emit(result)
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
