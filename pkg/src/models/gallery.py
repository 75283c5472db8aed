"""Pydantic models for the operator gallery."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models.common import FloatArray


class BallConstrainedOperator(BaseModel):
    """x -> Ax + N_B(x) with A a 2x2 skew matrix and B the closed unit ball."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A: FloatArray = Field(..., description="2x2 skew matrix")
    skew_tol: float = Field(default=1e-9, gt=0)

    @field_validator("A")
    @classmethod
    def check_shape(cls, v: np.ndarray) -> np.ndarray:
        if v.shape != (2, 2):
            raise ValueError(f"A must be 2x2, got shape {v.shape}")
        return v

    @model_validator(mode="after")
    def check_skew(self) -> "BallConstrainedOperator":
        if np.max(np.abs(self.A + self.A.T)) > self.skew_tol:
            raise ValueError("A must be skew (A + A^T = 0); closed form needs it")
        return self


class SetValue(BaseModel):
    """Value of a set-valued map at a point in R^2."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: Literal["empty", "point", "ray"]
    base: FloatArray | None = None
    direction: FloatArray | None = Field(None, description="Unit direction of a ray")

    @model_validator(mode="after")
    def check_fields(self) -> "SetValue":
        if self.kind == "empty" and (self.base is not None or self.direction is not None):
            raise ValueError("empty set carries no data")
        if self.kind == "point" and (self.base is None or self.direction is not None):
            raise ValueError("a point needs a base only")
        if self.kind == "ray":
            if self.base is None or self.direction is None:
                raise ValueError("a ray needs base and direction")
            if abs(np.linalg.norm(self.direction) - 1.0) > 1e-12:
                raise ValueError("ray direction must have unit norm")
        return self

    def contains(self, y: np.ndarray, tol: float = 1e-9) -> bool:
        """Membership of y in the set."""
        y = np.asarray(y, dtype=float)
        if self.kind == "empty":
            return False
        offset = y - self.base
        if self.kind == "point":
            return bool(np.linalg.norm(offset) <= tol)
        lam = float(offset @ self.direction)
        return lam >= -tol and bool(np.linalg.norm(offset - lam * self.direction) <= tol)


class GalleryEntry(BaseModel):
    """A named gallery constructor and what the theory says about it."""

    name: str
    description: str
    param_name: str | None = None
    param_min: int | None = None
    default_param: int | None = None
    expected: dict[str, bool] = Field(
        default_factory=dict,
        description="Expected classification flags; used by acceptance checks only",
    )
