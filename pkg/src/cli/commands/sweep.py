"""``paramono sweep``: classify a gallery family over a parameter range."""

import argparse
import asyncio

from loguru import logger

from src.cli.commands.classify import classify_spec
from src.cli.schemas.responses import SweepItem, SweepResponse
from src.cli.schemas.spec import OperatorSpec
from src.config import settings
from src.exceptions import InvalidParameterError


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "sweep", parents=[parent], help="Classify gallery operators for params start..stop"
    )
    parser.add_argument("--name", required=True, help="Gallery constructor name")
    parser.add_argument("--start", type=int, required=True, help="First parameter")
    parser.add_argument("--stop", type=int, required=True, help="Last parameter (inclusive)")
    parser.set_defaults(handler=run)


async def sweep(name: str, params: list[int], tol: float | None) -> SweepResponse:
    """Classify concurrently, at most ``settings.sweep_concurrency`` at a time; results keep param order."""
    semaphore = asyncio.Semaphore(settings.sweep_concurrency)

    async def classify_one(param: int) -> SweepItem:
        spec = OperatorSpec(kind="gallery", gallery_name=name, param=param)
        async with semaphore:
            logger.debug(f"Sweep {name}({param}) started")
            report = await asyncio.to_thread(classify_spec, spec, tol or settings.tol)
        return SweepItem(param=param, report=report)

    results = await asyncio.gather(*(classify_one(p) for p in params))
    logger.info(f"Sweep {name} finished ({len(results)} operators)")
    return SweepResponse(gallery_name=name, results=list(results))


def run(args: argparse.Namespace) -> SweepResponse:
    if args.stop < args.start:
        raise InvalidParameterError(f"--stop ({args.stop}) is below --start ({args.start})")
    params = list(range(args.start, args.stop + 1))
    return asyncio.run(sweep(args.name, params, args.tol))
