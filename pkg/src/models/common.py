"""Shared pydantic field types for numpy-backed models."""

from typing import Annotated

import numpy as np
from pydantic import BeforeValidator, PlainSerializer


def _as_float_array(value: object) -> np.ndarray:
    array = np.array(value, dtype=float)
    array.flags.writeable = False
    return array


FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(_as_float_array),
    PlainSerializer(lambda a: a.tolist(), return_type=list),
]
"""Read-only float64 array; serialized as nested lists."""
