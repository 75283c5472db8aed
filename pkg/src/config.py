"""Configuration settings for paramono."""

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Main settings container with flat structure for .env reading."""

    # Numerical tolerances
    tol: float = Field(
        default=1e-9,
        description="Rank, PSD and residual tolerance used by every predicate",
    )
    angle_tol: float = Field(
        default=1e-6,
        description="Largest principal angle accepted when two computed subspaces are compared",
    )
    near_singular_factor: float = Field(
        default=10.0,
        description="Evaluations within this factor of a threshold are flagged near-singular",
    )
    boundary_tol: float = Field(
        default=1e-9,
        description="Half-width of the boundary band of the unit ball",
    )

    # Application Settings
    log_level: str = Field(default="WARNING", description="Logging level")
    output_format: Literal["json", "table"] = Field(
        default="json",
        description="Default CLI output format",
    )
    random_seed: int = Field(
        default=20240101,
        description="Seed for random operator generation in scripts and sweeps",
    )
    sweep_concurrency: int = Field(
        default=4,
        ge=1,
        description="Maximum number of concurrent classifications in a sweep",
    )

    @field_validator("tol", "angle_tol", "boundary_tol", "near_singular_factor")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Validate that a tolerance is strictly positive."""
        if not v > 0:
            raise ValueError("Tolerances must be strictly positive")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level name."""
        level = v.upper()
        if level not in {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level

    model_config = SettingsConfigDict(
        env_prefix="PARAMONO_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


def resolve_tol(tol: float | None) -> float:
    """Return ``tol`` or the configured default when it is None."""
    return settings.tol if tol is None else tol
