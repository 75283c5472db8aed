"""Common test fixtures."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from src.models.relation import LinearRelation
from src.services.gallery import gallery_service
from src.services.relation import relation_service
from src.services.sampling import sampling_service


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator; every test gets the same stream."""
    return np.random.default_rng(20240101)


@pytest.fixture
def rotation() -> np.ndarray:
    return gallery_service.rotation()


@pytest.fixture
def rotation_relation(rotation) -> LinearRelation:
    return relation_service.from_matrix(rotation)


@pytest.fixture
def identity2() -> LinearRelation:
    return relation_service.identity(2)


@pytest.fixture
def ball_operator():
    return gallery_service.ball_operator()


@pytest.fixture
def random_maximal_monotone(rng):
    """Factory of random maximally monotone relations on R^n, n in 1..6."""

    def make(n: int | None = None) -> LinearRelation:
        size = int(rng.integers(1, 7)) if n is None else n
        return sampling_service.random_maximal_monotone(size, rng)

    return make
