"""Pydantic models for nonexpansive maps."""

from pydantic import BaseModel, Field, model_validator


class NonexpansivenessClass(BaseModel):
    """Operator norm of a linear map T and its (firm) nonexpansiveness."""

    operator_norm: float = Field(..., ge=0, description="Spectral norm of T")
    reflected_norm: float = Field(..., ge=0, description="Spectral norm of 2T - Id")
    nonexpansive: bool
    firmly_nonexpansive: bool

    @model_validator(mode="after")
    def check_implication(self) -> "NonexpansivenessClass":
        if self.firmly_nonexpansive and not self.nonexpansive:
            raise ValueError("firmly nonexpansive maps are nonexpansive")
        return self
