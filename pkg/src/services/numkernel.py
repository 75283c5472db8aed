"""Tolerance-aware dense linear algebra for paramono.

Every subspace-valued quantity (domains, ranges, kernels, graphs, their
complements) goes through this module so that rank decisions are taken in one
place, with one threshold rule: a singular value s counts as nonzero iff
``s > tol * max(s_max, 1)``.
"""

from collections.abc import Sequence

import numpy as np
import scipy.linalg
from loguru import logger

from src.config import resolve_tol, settings
from src.exceptions import DimensionMismatchError, NotMonotoneError, VacuousSubspaceError
from src.models.numkernel import FitzValue, Subspace


class NumKernelService:
    """Rank, subspace and constrained-quadratic primitives."""

    def __init__(self):
        """Initialize numkernel service."""
        logger.info(f"Numkernel service initialized (tol={settings.tol:g})")

    # ------------------------------------------------------------------
    # Subspaces
    # ------------------------------------------------------------------

    def zero(self, ambient_dim: int, tol: float | None = None) -> Subspace:
        """The zero subspace of R^ambient_dim."""
        return Subspace(
            ambient_dim=ambient_dim,
            basis=np.zeros((ambient_dim, 0)),
            tol=resolve_tol(tol),
        )

    def full(self, ambient_dim: int, tol: float | None = None) -> Subspace:
        """R^ambient_dim with its standard basis."""
        return Subspace(ambient_dim=ambient_dim, basis=np.eye(ambient_dim), tol=resolve_tol(tol))

    def range_of(self, M: np.ndarray, tol: float | None = None) -> Subspace:
        """Column space of a d x m matrix."""
        tol = resolve_tol(tol)
        M = np.asarray(M, dtype=float)
        if M.ndim != 2:
            raise DimensionMismatchError(f"expected a matrix, got shape {M.shape}")
        d = M.shape[0]
        if M.shape[1] == 0 or not M.any():
            return self.zero(d, tol)
        U, s, _ = np.linalg.svd(M, full_matrices=False)
        rank = int(np.sum(s > tol * max(s[0], 1.0)))
        return Subspace(ambient_dim=d, basis=U[:, :rank], tol=tol)

    def column_space(
        self,
        vectors: Sequence[Sequence[float]] | np.ndarray,
        tol: float | None = None,
        ambient_dim: int | None = None,
    ) -> Subspace:
        """Orthonormal basis of the span of ``vectors``.

        Args:
            vectors: Vectors of a common dimension d
            tol: Relative rank threshold
            ambient_dim: Required when ``vectors`` is empty

        Returns:
            The spanned subspace of R^d
        """
        rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
        if not rows:
            if ambient_dim is None:
                raise DimensionMismatchError("ambient_dim is required for an empty vector list")
            return self.zero(ambient_dim, tol)

        lengths = {row.size for row in rows}
        if len(lengths) != 1:
            raise DimensionMismatchError(f"vectors have different dimensions: {sorted(lengths)}")
        d = lengths.pop()
        if d < 1:
            raise DimensionMismatchError("vectors must have dimension >= 1")
        if ambient_dim is not None and ambient_dim != d:
            raise DimensionMismatchError(f"vectors live in R^{d}, expected R^{ambient_dim}")
        return self.range_of(np.column_stack(rows), tol)

    def complement(self, S: Subspace) -> Subspace:
        """Orthogonal complement of S in its ambient space."""
        if S.dim == 0:
            return self.full(S.ambient_dim, S.tol)
        if S.dim == S.ambient_dim:
            return self.zero(S.ambient_dim, S.tol)
        U, _, _ = np.linalg.svd(S.basis, full_matrices=True)
        return Subspace(ambient_dim=S.ambient_dim, basis=U[:, S.dim :], tol=S.tol)

    def kernel(self, M: np.ndarray, tol: float | None = None) -> Subspace:
        """Null space of an m x d matrix, as the complement of its row space."""
        M = np.asarray(M, dtype=float)
        if M.ndim != 2 or M.shape[1] < 1:
            raise DimensionMismatchError(f"expected a matrix with columns, got shape {M.shape}")
        if M.shape[0] == 0:
            return self.full(M.shape[1], tol)
        return self.complement(self.range_of(M.T, tol))

    def null_coefficients(self, M: np.ndarray, tol: float | None = None) -> np.ndarray:
        """Orthonormal null-space basis of M as a raw array, shape (cols, k).

        Unlike :meth:`kernel`, this accepts matrices with zero columns, which
        arise as coefficient spaces of zero-dimensional graphs.
        """
        M = np.asarray(M, dtype=float)
        if M.shape[1] == 0:
            return np.zeros((0, 0))
        return self.kernel(M, tol).basis

    def span_sum(self, S: Subspace, T: Subspace) -> Subspace:
        """Sum S + T."""
        self._check_ambient(S, T)
        return self.range_of(np.hstack([S.basis, T.basis]), S.tol)

    def intersect(self, S: Subspace, T: Subspace) -> Subspace:
        """Intersection of two subspaces, via complements of complements."""
        self._check_ambient(S, T)
        return self.complement(self.span_sum(self.complement(S), self.complement(T)))

    def project(self, S: Subspace, v: np.ndarray) -> np.ndarray:
        """Orthogonal projection of v onto S."""
        v = np.asarray(v, dtype=float)
        if v.shape != (S.ambient_dim,):
            raise DimensionMismatchError(f"vector of shape {v.shape} for a subspace of R^{S.ambient_dim}")
        return S.basis @ (S.basis.T @ v)

    def project_matrix(self, S: Subspace) -> np.ndarray:
        """Orthogonal projector onto S."""
        return S.basis @ S.basis.T

    def contains(self, S: Subspace, v: np.ndarray, tol: float | None = None) -> bool:
        """Whether v lies in S, by the residual of its projection."""
        tol = S.tol if tol is None else tol
        v = np.asarray(v, dtype=float)
        residual = np.linalg.norm(v - self.project(S, v))
        return bool(residual <= tol * max(np.linalg.norm(v), 1.0))

    def subspace_equal(self, S: Subspace, T: Subspace, tol: float | None = None) -> bool:
        """True iff dims agree and the largest principal angle is below tol."""
        self._check_ambient(S, T)
        tol = resolve_tol(tol)
        if S.dim != T.dim:
            return False
        if S.dim == 0:
            return True
        largest = float(np.max(scipy.linalg.subspace_angles(S.basis, T.basis)))
        logger.debug(f"Largest principal angle {largest:.3e} (dim {S.dim}, tol {tol:g})")
        return largest < tol

    def _check_ambient(self, S: Subspace, T: Subspace) -> None:
        if S.ambient_dim != T.ambient_dim:
            raise DimensionMismatchError(
                f"subspaces of R^{S.ambient_dim} and R^{T.ambient_dim} cannot be compared"
            )

    # ------------------------------------------------------------------
    # Quadratic forms
    # ------------------------------------------------------------------

    def _symmetric(self, Q: np.ndarray, tol: float) -> np.ndarray:
        Q = np.asarray(Q, dtype=float)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got shape {Q.shape}")
        scale = max(np.linalg.norm(Q, 2) if Q.size else 0.0, 1.0)
        if Q.size and np.max(np.abs(Q - Q.T)) > tol * scale:
            raise ValueError("quadratic form matrix is not symmetric")
        return 0.5 * (Q + Q.T)

    def restricted_min_eigenvalue(self, Q: np.ndarray, S: Subspace) -> float:
        """Minimum eigenvalue of B^T Q B, B the orthonormal basis of S.

        Raises:
            VacuousSubspaceError: S is the zero subspace
        """
        Q = self._symmetric(Q, S.tol)
        if Q.shape[0] != S.ambient_dim:
            raise DimensionMismatchError(
                f"{Q.shape[0]}x{Q.shape[0]} form restricted to a subspace of R^{S.ambient_dim}"
            )
        if S.dim == 0:
            raise VacuousSubspaceError("restriction to the zero subspace is vacuous")
        B = S.basis
        return float(np.linalg.eigvalsh(B.T @ Q @ B)[0])

    def check_psd(self, Q: np.ndarray, tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Eigen-decompose a symmetric matrix and require it to be PSD.

        Returns:
            Eigenvalues (ascending) and eigenvectors

        Raises:
            NotMonotoneError: min eigenvalue below ``-tol * max(||Q||, 1)``
        """
        tol = resolve_tol(tol)
        Q = self._symmetric(Q, tol)
        w, V = np.linalg.eigh(Q)
        scale = max(float(np.max(np.abs(w))) if w.size else 0.0, 1.0)
        if w.size and w[0] < -tol * scale:
            raise NotMonotoneError(
                f"quadratic form is not PSD (min eigenvalue {w[0]:.3e})",
                min_eigenvalue=float(w[0]),
            )
        return w, V

    def sup_linear_minus_quadratic(
        self, Q: np.ndarray, b: np.ndarray, tol: float | None = None
    ) -> FitzValue:
        """sup_c <b, c> - <c, Qc> for PSD Q: (1/4) b^T Q^+ b, or +inf if b is not in ran Q."""
        value, _ = self.sup_with_maximizer(Q, b, tol)
        return value

    def sup_with_maximizer(
        self, Q: np.ndarray, b: np.ndarray, tol: float | None = None
    ) -> tuple[FitzValue, np.ndarray | None]:
        """Like :meth:`sup_linear_minus_quadratic`, also returning c = Q^+ b / 2."""
        tol = resolve_tol(tol)
        b = np.asarray(b, dtype=float).ravel()
        if b.size == 0:
            return FitzValue.finite(0.0), np.zeros(0)
        Q = np.asarray(Q, dtype=float)
        if Q.shape != (b.size, b.size):
            raise DimensionMismatchError(f"form of shape {Q.shape} with a vector of length {b.size}")

        w, V = self.check_psd(Q, tol)
        threshold = tol * max(float(np.max(np.abs(w))), 1.0)
        keep = w > threshold
        coeff = V.T @ b
        residual = float(np.linalg.norm(coeff[~keep]))
        bound = tol * max(float(np.linalg.norm(b)), 1.0)

        factor = settings.near_singular_factor
        near_singular = bool(
            bound / factor < residual <= bound * factor
            or np.any((w > threshold / factor) & (w <= threshold * factor))
        )
        if near_singular:
            logger.warning(
                f"Near-singular sup evaluation (residual {residual:.3e}, bound {bound:.3e})"
            )

        if residual > bound:
            logger.debug(f"Linear term outside ran Q (residual {residual:.3e}); sup is +inf")
            return FitzValue.infinity(near_singular), None

        scaled = coeff[keep] / w[keep]
        value = 0.25 * float(coeff[keep] @ scaled)
        maximizer = 0.5 * (V[:, keep] @ scaled)
        return FitzValue.finite(max(value, 0.0), near_singular), maximizer

    def quadratic_nonnegative(
        self, alpha: float, beta: float, gamma: float, tol: float | None = None
    ) -> bool:
        """Whether t -> alpha t^2 + beta t + gamma (alpha, gamma >= 0) is nonnegative on R."""
        tol = resolve_tol(tol)
        if alpha < -tol or gamma < -tol:
            raise ValueError("alpha and gamma must be nonnegative")
        scale = max(beta * beta, 4.0 * alpha * gamma, 1.0)
        return beta * beta <= 4.0 * alpha * gamma + tol * scale

    def min_generalized_eigenvalue(self, S: np.ndarray, T: np.ndarray) -> float:
        """Smallest eigenvalue of the symmetric-definite pencil (S, T)."""
        S = np.asarray(S, dtype=float)
        T = np.asarray(T, dtype=float)
        if S.shape != T.shape or S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise DimensionMismatchError(f"pencil shapes {S.shape} and {T.shape} differ")
        if S.size == 0:
            raise VacuousSubspaceError("empty pencil")
        eigenvalues = scipy.linalg.eigh(
            0.5 * (S + S.T), 0.5 * (T + T.T), eigvals_only=True
        )
        return float(eigenvalues[0])

    def spectral_norm(self, M: np.ndarray) -> float:
        """Largest singular value."""
        M = np.asarray(M, dtype=float)
        return float(np.linalg.norm(M, 2)) if M.size else 0.0


numkernel_service = NumKernelService()
