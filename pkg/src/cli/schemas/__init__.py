"""Request and response schemas of the paramono CLI."""

from .responses import (
    ClassifyResponse,
    FitzResponse,
    GalleryResponse,
    ModulusResponse,
    SweepItem,
    SweepResponse,
)
from .spec import OperatorSpec, parse_spec

__all__ = [
    "OperatorSpec",
    "parse_spec",
    "ClassifyResponse",
    "FitzResponse",
    "ModulusResponse",
    "GalleryResponse",
    "SweepItem",
    "SweepResponse",
]
