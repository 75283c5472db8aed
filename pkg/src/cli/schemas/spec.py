"""Operator specification schema for the paramono CLI.

An operator is given as JSON: a square matrix, a spanning set of its graph,
or a gallery constructor.
"""

import json
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.exceptions import SpecDecodeError, SpecSchemaError

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]

_REQUIRED = {
    "matrix": {"entries"},
    "relation": {"graph_basis"},
    "gallery": {"gallery_name"},
}
_OPTIONAL = {
    "matrix": set(),
    "relation": set(),
    "gallery": {"param"},
}
_KIND_FIELDS = {"entries", "graph_basis", "gallery_name", "param"}


class OperatorSpec(BaseModel):
    """Validated operator specification.

    Exactly the fields required by ``kind`` are present; ``tolerance`` is
    allowed for every kind.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["matrix", "relation", "gallery"] = Field(..., description="Operator encoding")
    entries: list[list[FiniteFloat]] | None = Field(
        None, description="Row-major square matrix (kind=matrix)"
    )
    graph_basis: list[list[FiniteFloat]] | None = Field(
        None, description="2n-vectors (x, x*) spanning the graph (kind=relation)", min_length=1
    )
    gallery_name: str | None = Field(None, description="Gallery constructor (kind=gallery)")
    param: int | None = Field(None, description="Size parameter of the gallery constructor")
    tolerance: float | None = Field(None, gt=0, allow_inf_nan=False, description="Numerical tolerance")

    @model_validator(mode="after")
    def check_kind_fields(self) -> "OperatorSpec":
        present = {name for name in _KIND_FIELDS if getattr(self, name) is not None}
        missing = _REQUIRED[self.kind] - present
        if missing:
            raise ValueError(f"kind '{self.kind}' requires field '{sorted(missing)[0]}'")
        extra = present - _REQUIRED[self.kind] - _OPTIONAL[self.kind]
        if extra:
            raise ValueError(f"field '{sorted(extra)[0]}' is not allowed for kind '{self.kind}'")
        return self

    @model_validator(mode="after")
    def check_shapes(self) -> "OperatorSpec":
        if self.entries is not None:
            n = len(self.entries)
            if n == 0 or any(len(row) != n for row in self.entries):
                raise ValueError("field 'entries' must be a non-empty square matrix")
        if self.graph_basis is not None:
            lengths = {len(v) for v in self.graph_basis}
            if len(lengths) != 1:
                raise ValueError("field 'graph_basis' vectors must share one length")
            length = lengths.pop()
            if length == 0 or length % 2:
                raise ValueError(f"field 'graph_basis' vectors must have even length, got {length}")
        return self

    @property
    def n(self) -> int | None:
        """Dimension of the underlying space, when known without building the operator."""
        if self.entries is not None:
            return len(self.entries)
        if self.graph_basis is not None:
            return len(self.graph_basis[0]) // 2
        return None

    def to_json_obj(self) -> dict:
        """The specification as it would be written by hand (unset fields omitted)."""
        return self.model_dump(exclude_none=True)


def _field_of(error: ValidationError) -> str:
    first = error.errors()[0]
    loc = [str(part) for part in first.get("loc", ())]
    if loc:
        return loc[0]
    message = first.get("msg", "")
    if "field '" in message:
        return message.split("field '", 1)[1].split("'", 1)[0]
    return "spec"


def parse_spec(text: bytes | str) -> OperatorSpec:
    """Decode and validate an operator specification.

    Raises:
        SpecDecodeError: input is not UTF-8 JSON
        SpecSchemaError: JSON does not match the schema; ``field`` names the culprit
    """
    try:
        raw = text.decode("utf-8") if isinstance(text, bytes) else text
        obj = json.loads(raw)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise SpecDecodeError(f"Malformed input: {e}") from e

    if not isinstance(obj, dict):
        raise SpecSchemaError("Specification must be a JSON object", field="spec")
    try:
        return OperatorSpec.model_validate(obj)
    except ValidationError as e:
        field = _field_of(e)
        message = e.errors()[0].get("msg", str(e))
        raise SpecSchemaError(f"Invalid field '{field}': {message}", field=field) from e
