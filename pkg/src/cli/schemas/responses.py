"""Response schemas for the paramono CLI.

JSON output is the stable contract: fixed key order, shortest round-trip
float representation, and the string "inf" for +infinity.
"""

import json
import math

from pydantic import BaseModel, Field

from src.models.classify import ClassificationReport
from src.models.gallery import GalleryEntry
from src.models.numkernel import FitzValue


def encode_extended(value: float | None) -> float | str | None:
    """Extended reals in JSON: numbers, "inf", or null."""
    if value is None:
        return None
    return "inf" if math.isinf(value) else float(value)


def dumps(payload: dict) -> str:
    """Deterministic compact JSON."""
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=True, allow_nan=False)


class ClassifyResponse(BaseModel):
    """JSON body of ``paramono classify``."""

    n: int
    tol: float
    monotone: bool
    maximal: bool | None = None
    strictly_monotone: bool | None = None
    paramonotone: bool | None = None
    rectangular: bool | None = None
    cocoercivity_modulus: float | str | None = Field(
        None, description="A number, \"inf\", or null when undefined"
    )
    witnesses: dict[str, list[list[float]]] = Field(default_factory=dict)
    gallery_expected: dict[str, bool] | None = Field(
        None, description="Expected flags, only for gallery operators"
    )
    operator: dict = Field(..., description="The parsed specification, echoed")

    @classmethod
    def from_report(
        cls,
        report: ClassificationReport,
        operator: dict,
        gallery_expected: dict[str, bool] | None = None,
    ) -> "ClassifyResponse":
        return cls(
            **report.flags(),
            n=report.n,
            tol=report.tol,
            cocoercivity_modulus=encode_extended(report.cocoercivity_modulus),
            witnesses=report.witnesses,
            gallery_expected=gallery_expected,
            operator=operator,
        )

    def to_json(self) -> str:
        payload = self.model_dump()
        if payload["gallery_expected"] is None:
            del payload["gallery_expected"]
        return dumps(payload)

    def to_table(self) -> str:
        lines = [f"n: {self.n}", f"tol: {self.tol:g}"]
        for key in ("monotone", "maximal", "strictly_monotone", "paramonotone", "rectangular"):
            value = getattr(self, key)
            lines.append(f"{key}: {'-' if value is None else ('yes' if value else 'no')}")
        modulus = self.cocoercivity_modulus
        lines.append(f"cocoercivity_modulus: {'-' if modulus is None else modulus}")
        for key, vectors in self.witnesses.items():
            rendered = "  ".join("(" + ", ".join(f"{v:.6g}" for v in vec) + ")" for vec in vectors)
            lines.append(f"witness[{key}]: {rendered}")
        if self.gallery_expected is not None:
            expected = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in self.gallery_expected.items())
            lines.append(f"gallery_expected: {expected}")
        return "\n".join(lines)


class FitzResponse(BaseModel):
    """JSON body of ``paramono fitz``."""

    value: float | str

    @classmethod
    def from_value(cls, value: FitzValue) -> "FitzResponse":
        return cls(value=value.to_json())

    def to_json(self) -> str:
        return dumps(self.model_dump())

    def to_table(self) -> str:
        return f"F(x, x*) = {'+inf' if self.value == 'inf' else self.value}"


class ModulusResponse(BaseModel):
    """JSON body of ``paramono modulus``."""

    cocoercivity_modulus: float | str

    def to_json(self) -> str:
        return dumps(self.model_dump())

    def to_table(self) -> str:
        return f"cocoercivity_modulus: {self.cocoercivity_modulus}"


class GalleryResponse(BaseModel):
    """JSON body of ``paramono gallery``."""

    operators: list[GalleryEntry]

    def to_json(self) -> str:
        return dumps(self.model_dump())

    def to_table(self) -> str:
        lines = []
        for entry in self.operators:
            param = (
                f"{entry.param_name} >= {entry.param_min} (default {entry.default_param})"
                if entry.param_name
                else "no parameter"
            )
            lines.append(f"{entry.name:<28} {param:<28} {entry.description}")
        return "\n".join(lines)


class SweepItem(BaseModel):
    param: int
    report: ClassifyResponse


class SweepResponse(BaseModel):
    """JSON body of ``paramono sweep``: one classification per parameter, in order."""

    gallery_name: str
    results: list[SweepItem]

    def to_json(self) -> str:
        results = []
        for item in self.results:
            body = json.loads(item.report.to_json())
            results.append({"param": item.param, **body})
        return dumps({"gallery_name": self.gallery_name, "results": results})

    def to_table(self) -> str:
        header = f"{'param':>6}  monotone maximal strict paramono rectangular  modulus"
        lines = [f"sweep {self.gallery_name}", header]
        for item in self.results:
            r = item.report
            flags = [r.monotone, r.maximal, r.strictly_monotone, r.paramonotone, r.rectangular]
            cells = " ".join(f"{'-' if f is None else ('yes' if f else 'no'):>8}" for f in flags)
            lines.append(f"{item.param:>6} {cells}  {r.cocoercivity_modulus}")
        return "\n".join(lines)
