"""Shared pydantic models for the paramono domain.

These models are used by the services and the CLI schemas.
"""

from .classify import ClassificationReport
from .fitzpatrick import GraphForm
from .gallery import BallConstrainedOperator, GalleryEntry, SetValue
from .nonexpansive import NonexpansivenessClass
from .numkernel import FitzValue, Subspace
from .relation import AffineImage, FeatureSubspaces, LinearRelation

__all__ = [
    "Subspace",
    "FitzValue",
    "LinearRelation",
    "AffineImage",
    "FeatureSubspaces",
    "GraphForm",
    "ClassificationReport",
    "NonexpansivenessClass",
    "BallConstrainedOperator",
    "SetValue",
    "GalleryEntry",
]
