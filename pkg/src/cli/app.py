"""paramono command-line application.

Reads an operator specification (JSON, file or stdin), runs one subcommand
and prints its result on stdout. Diagnostics go to stderr through loguru.

Exit codes: 0 success, 1 unexpected failure, 2 malformed input,
3 schema or dimension violation, 4 disagreement between decision methods.
"""

import argparse
import sys

from loguru import logger
from pydantic import ValidationError

from src.cli.commands import COMMANDS
from src.config import settings
from src.exceptions import ParamonoError, SpecSchemaError


def configure_logging(level: str) -> None:
    """Single stderr sink; stdout carries results only."""
    logger.remove()
    logger.add(
        sys.stderr,
        level=level.upper(),
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}",
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help=f"Numerical tolerance (default {settings.tol:g})")
    common.add_argument(
        "--format",
        choices=["json", "table"],
        default=None,
        help=f"Output format (default {settings.output_format})",
    )
    common.add_argument("--log-level", default=None, help=f"stderr log level (default {settings.log_level})")

    parser = argparse.ArgumentParser(
        prog="paramono",
        description="Monotone linear relations: paramonotonicity, rectangularity, Fitzpatrick functions",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers, common)
    return parser


def run(argv: list[str] | None = None) -> int:
    """Run the CLI and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse usage errors are malformed input.
        return 0 if e.code == 0 else 2

    configure_logging(args.log_level or settings.log_level)
    if args.tol is not None and not args.tol > 0:
        logger.error(f"--tol must be positive, got {args.tol}")
        return 3

    try:
        response = args.handler(args)
    except ParamonoError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except ValidationError as e:
        logger.error(f"Invalid operator data: {e}")
        return SpecSchemaError.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        return 1

    output_format = args.format or settings.output_format
    print(response.to_json() if output_format == "json" else response.to_table())
    return 0


def main() -> None:
    """Console-script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
