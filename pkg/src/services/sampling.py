"""Random operators for property checks, sweeps and the example scripts."""

import numpy as np
from loguru import logger

from src.config import resolve_tol, settings
from src.models.relation import LinearRelation
from src.services.numkernel import numkernel_service
from src.services.relation import relation_service


class SamplingService:
    """Seeded generators of monotone, paramonotone and nonexpansive operators."""

    def __init__(self):
        """Initialize sampling service."""
        self.kernel = numkernel_service
        self.relations = relation_service
        logger.info(f"Sampling service initialized (default seed {settings.random_seed})")

    def rng(self, seed: int | None = None) -> np.random.Generator:
        return np.random.default_rng(settings.random_seed if seed is None else seed)

    def random_orthogonal(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Haar-distributed orthogonal matrix."""
        Q, R = np.linalg.qr(rng.standard_normal((n, n)))
        return Q * np.sign(np.diag(R))

    def random_psd(self, n: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
        """R R^T with R of shape (n, rank); a random rank in 0..n by default."""
        rank = int(rng.integers(0, n + 1)) if rank is None else rank
        R = rng.standard_normal((n, rank))
        return R @ R.T

    def random_skew(self, n: int, rng: np.random.Generator) -> np.ndarray:
        K = rng.standard_normal((n, n))
        return K - K.T

    def random_monotone_matrix(
        self,
        n: int,
        rng: np.random.Generator,
        min_eigenvalue: float = 0.0,
        skew_scale: float = 1.0,
        max_norm: float | None = None,
    ) -> np.ndarray:
        """S + K with S PSD (S >= min_eigenvalue Id), K skew of scale ``skew_scale``.

        With ``max_norm`` the result is rescaled to that spectral norm when larger.
        """
        S = self.random_psd(n, rng) + min_eigenvalue * np.eye(n)
        M = S + skew_scale * self.random_skew(n, rng)
        if max_norm is not None:
            norm = self.kernel.spectral_norm(M)
            if norm > max_norm:
                M = M * (max_norm / norm)
        return M

    def random_paramonotone_matrix(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """S + P K P with S PSD and P the projector onto ran S.

        The skew part then vanishes on ker S, so ker M_+ = ker M.
        """
        S = self.random_psd(n, rng)
        P = self.kernel.project_matrix(self.kernel.range_of(S))
        return S + P @ self.random_skew(n, rng) @ P

    def random_nonexpansive(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Random matrix scaled to spectral norm u, u uniform in [0, 1]."""
        T = rng.standard_normal((n, n))
        norm = self.kernel.spectral_norm(T)
        if norm == 0.0:
            return T
        return T / norm * rng.uniform(0.0, 1.0)

    def random_maximal_monotone(
        self, n: int, rng: np.random.Generator, tol: float | None = None
    ) -> LinearRelation:
        """Random maximally monotone linear relation on R^n.

        M = S + K with the skew part K, with equal probability, generic,
        compressed onto ran S, or zero, so paramonotone and non-paramonotone
        cases both occur. With probability 1/2 the domain is restricted to a
        random subspace D and the graph becomes {(d, Md + w) : d in D, w in D^perp}.
        """
        tol = resolve_tol(tol)
        S = self.random_psd(n, rng)
        choice = int(rng.integers(0, 3))
        if choice == 0:
            K = self.random_skew(n, rng)
        elif choice == 1:
            P = self.kernel.project_matrix(self.kernel.range_of(S))
            K = P @ self.random_skew(n, rng) @ P
        else:
            K = np.zeros((n, n))
        M = S + K

        if rng.uniform() >= 0.5:
            return self.relations.from_matrix(M, tol)

        k = int(rng.integers(0, n))
        D = self.random_orthogonal(n, rng)[:, :k]
        W = self.kernel.complement(self.kernel.range_of(D, tol)).basis
        columns = np.hstack([np.vstack([D, M @ D]), np.vstack([np.zeros_like(W), W])])
        relation = self.relations.from_graph_basis(columns.T, n, tol)
        logger.debug(f"Random relation with dim dom = {k} and skew choice {choice}")
        return relation


sampling_service = SamplingService()
