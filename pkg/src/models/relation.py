"""Pydantic models for linear relations on R^n."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.common import FloatArray
from src.models.numkernel import Subspace


class LinearRelation(BaseModel):
    """Set-valued map A: R^n => R^n whose graph is a linear subspace.

    Graph coordinates are ordered (x_1..x_n, x*_1..x*_n).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(..., ge=1, description="The relation operates R^n => R^n")
    graph: Subspace = Field(..., description="gra A as a subspace of R^{2n}")
    matrix: FloatArray | None = Field(
        default=None,
        description="Exact n x n matrix when the relation was built from one",
    )

    @model_validator(mode="after")
    def check_graph(self) -> "LinearRelation":
        if self.graph.ambient_dim != 2 * self.n:
            raise ValueError(
                f"graph ambient dimension {self.graph.ambient_dim} != 2n = {2 * self.n}"
            )
        if self.matrix is not None and self.matrix.shape != (self.n, self.n):
            raise ValueError(f"matrix of shape {self.matrix.shape} for n={self.n}")
        return self

    @property
    def dim(self) -> int:
        return self.graph.dim

    @property
    def primal_block(self) -> np.ndarray:
        """x-coordinates of the graph basis, shape (n, dim)."""
        return self.graph.basis[: self.n]

    @property
    def dual_block(self) -> np.ndarray:
        """x*-coordinates of the graph basis, shape (n, dim)."""
        return self.graph.basis[self.n :]

    def __repr__(self) -> str:
        return f"<LinearRelation(n={self.n}, dim_graph={self.dim})>"


class AffineImage(BaseModel):
    """Image set Ax of a linear relation: Empty, or point + direction_space."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    point: FloatArray | None = Field(None, description="A particular element of Ax")
    direction_space: Subspace | None = Field(None, description="A0, when nonempty")

    @model_validator(mode="after")
    def check_consistency(self) -> "AffineImage":
        if (self.point is None) != (self.direction_space is None):
            raise ValueError("point and direction_space are given together or not at all")
        return self

    @classmethod
    def empty(cls) -> "AffineImage":
        return cls()

    @property
    def is_empty(self) -> bool:
        return self.point is None


class FeatureSubspaces(BaseModel):
    """Structural subspaces of a linear relation."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dom: Subspace = Field(..., description="dom A, projection of the graph on the x-block")
    ran: Subspace = Field(..., description="ran A, projection of the graph on the x*-block")
    ker: Subspace = Field(..., description="ker A = {x : (x, 0) in gra A}")
    a0: Subspace = Field(..., description="A0 = {x* : (0, x*) in gra A}")
