"""Turn an OperatorSpec into an operator the services understand."""

import sys
from pathlib import Path

import numpy as np
from loguru import logger

from src.cli.schemas.spec import OperatorSpec, parse_spec
from src.config import settings
from src.exceptions import SpecDecodeError, SpecSchemaError
from src.models.gallery import BallConstrainedOperator
from src.models.relation import LinearRelation
from src.services.gallery import gallery_service
from src.services.relation import relation_service

Operator = LinearRelation | BallConstrainedOperator


def read_spec(source: str | None) -> OperatorSpec:
    """Parse a specification from a file path, or from stdin for None / "-"."""
    if source is None or source == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            data = Path(source).read_bytes()
        except OSError as e:
            raise SpecDecodeError(f"Cannot read {source}: {e}") from e
    return parse_spec(data)


def effective_tol(spec: OperatorSpec | None, flag: float | None) -> float:
    """--tol wins over the spec's tolerance, which wins over the configured default."""
    if flag is not None:
        return flag
    if spec is not None and spec.tolerance is not None:
        return spec.tolerance
    return settings.tol


def build_operator(spec: OperatorSpec, tol: float) -> Operator:
    """Matrix and relation specs become linear relations; gallery specs go through the gallery."""
    match spec.kind:
        case "matrix":
            return relation_service.from_matrix(np.array(spec.entries, dtype=float), tol)
        case "relation":
            return relation_service.from_graph_basis(spec.graph_basis, tol=tol)
        case "gallery":
            built = gallery_service.build(spec.gallery_name, spec.param)
            if isinstance(built, BallConstrainedOperator):
                return built
            return relation_service.from_matrix(built, tol)
    raise SpecSchemaError(f"Unknown kind '{spec.kind}'", field="kind")


def parse_vector(text: str, name: str) -> np.ndarray:
    """Comma-separated floats."""
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise SpecSchemaError(f"--{name} must be comma-separated numbers: {e}", field=name) from e
    if not values or not np.all(np.isfinite(values)):
        raise SpecSchemaError(f"--{name} must hold finite numbers", field=name)
    logger.debug(f"--{name} = {values}")
    return np.array(values)
