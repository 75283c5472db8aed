"""Services module for paramono.

This module exports the singleton service instances used throughout the
package for subspace arithmetic, linear relations, Fitzpatrick functions,
classification, nonexpansive maps, the operator gallery and random sampling.
"""

from .classify import classify_service
from .fitzpatrick import fitzpatrick_service
from .gallery import gallery_service
from .nonexpansive import nonexpansive_service
from .numkernel import numkernel_service
from .relation import relation_service
from .sampling import sampling_service

__all__ = [
    "numkernel_service",
    "relation_service",
    "fitzpatrick_service",
    "classify_service",
    "nonexpansive_service",
    "gallery_service",
    "sampling_service",
]
