"""Pydantic models for classification reports."""

from pydantic import BaseModel, Field, model_validator


class ClassificationReport(BaseModel):
    """Flags, cocoercivity modulus and counterexamples for one operator.

    Flags downstream of ``monotone`` are None when the operator is not
    monotone. ``cocoercivity_modulus`` is None when the operator is not a
    monotone matrix, ``float("inf")`` for the zero matrix.
    """

    n: int = Field(..., ge=1)
    tol: float = Field(..., gt=0)
    monotone: bool
    maximal: bool | None = None
    strictly_monotone: bool | None = None
    paramonotone: bool | None = None
    rectangular: bool | None = None
    cocoercivity_modulus: float | None = Field(None, ge=0)
    witnesses: dict[str, list[list[float]]] = Field(
        default_factory=dict,
        description="Counterexample vectors keyed by the property reported false",
    )
    near_singular: bool = Field(
        default=False,
        description="Some finiteness decision was taken close to its threshold",
    )

    @model_validator(mode="after")
    def check_implications(self) -> "ClassificationReport":
        if self.strictly_monotone and self.paramonotone is False:
            raise ValueError("strictly monotone operators are paramonotone")
        return self

    def flags(self) -> dict[str, bool | None]:
        return {
            "monotone": self.monotone,
            "maximal": self.maximal,
            "strictly_monotone": self.strictly_monotone,
            "paramonotone": self.paramonotone,
            "rectangular": self.rectangular,
        }
