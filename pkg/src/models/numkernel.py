"""Pydantic models for the linear-algebra kernel."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.common import FloatArray


class Subspace(BaseModel):
    """Linear subspace of R^d represented by an orthonormal basis.

    The basis is stored columnwise with shape ``(ambient_dim, dim)``; the zero
    subspace keeps its ambient dimension so zero subspaces of different spaces
    stay distinguishable.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ambient_dim: int = Field(..., ge=1, description="Dimension d of the ambient space")
    basis: FloatArray = Field(..., description="Orthonormal basis, one vector per column")
    tol: float = Field(..., gt=0, description="Tolerance used when the basis was computed")

    @model_validator(mode="after")
    def check_basis(self) -> "Subspace":
        """Validate basis shape and orthonormality."""
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise ValueError(
                f"basis must have shape ({self.ambient_dim}, k), got {self.basis.shape}"
            )
        if self.basis.shape[1] > self.ambient_dim:
            raise ValueError("dim must not exceed ambient_dim")
        gram = self.basis.T @ self.basis
        if gram.size and np.max(np.abs(gram - np.eye(gram.shape[0]))) > 10 * self.tol:
            raise ValueError("basis vectors are not orthonormal")
        return self

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def __repr__(self) -> str:
        return f"<Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})>"


class FitzValue(BaseModel):
    """Extended real value in ]-inf, +inf]: Finite(v) or PlusInfinity."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["finite", "inf"]
    value: float | None = Field(None, description="The value when finite")
    near_singular: bool = Field(
        default=False,
        description="The finiteness decision was taken close to its threshold",
    )

    @model_validator(mode="after")
    def check_value(self) -> "FitzValue":
        if self.kind == "finite" and self.value is None:
            raise ValueError("finite values need a value")
        if self.kind == "inf" and self.value is not None:
            raise ValueError("PlusInfinity carries no value")
        return self

    @classmethod
    def finite(cls, value: float, near_singular: bool = False) -> "FitzValue":
        return cls(kind="finite", value=float(value), near_singular=near_singular)

    @classmethod
    def infinity(cls, near_singular: bool = False) -> "FitzValue":
        return cls(kind="inf", near_singular=near_singular)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def to_json(self) -> float | str:
        """JSON encoding: a number, or the string ``"inf"``."""
        return self.value if self.is_finite else "inf"

    def __str__(self) -> str:
        return f"{self.value!r}" if self.is_finite else "+inf"
