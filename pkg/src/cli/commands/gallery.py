"""``paramono gallery``: list the named operators."""

import argparse

from src.cli.schemas.responses import GalleryResponse
from src.services.gallery import gallery_service


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "gallery", parents=[parent], help="List gallery constructors and their parameters"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> GalleryResponse:
    return GalleryResponse(operators=gallery_service.gallery_catalog())
