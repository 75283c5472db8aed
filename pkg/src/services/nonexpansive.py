"""Linear nonexpansive maps, resolvents and displacement mappings."""

import numpy as np
from loguru import logger

from src.config import resolve_tol
from src.exceptions import DimensionMismatchError, InvalidParameterError, NotNonexpansiveError
from src.models.nonexpansive import NonexpansivenessClass
from src.models.relation import LinearRelation
from src.services.numkernel import numkernel_service
from src.services.relation import relation_service


class NonexpansiveService:
    """Spectral-norm tests for linear T and the resolvent calculus of linear relations."""

    def __init__(self):
        """Initialize nonexpansive service."""
        self.kernel = numkernel_service
        self.relations = relation_service
        logger.info("Nonexpansive service initialized")

    def _square(self, T: np.ndarray) -> np.ndarray:
        T = np.asarray(T, dtype=float)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] < 1:
            raise DimensionMismatchError(f"expected a non-empty square matrix, got shape {T.shape}")
        return T

    def is_firmly_nonexpansive_direct(self, T: np.ndarray, tol: float | None = None) -> bool:
        """||Tx||^2 <= <x, Tx> for all x, i.e. T_+ - T^T T is PSD.

        The threshold tol/2 + tol^2/4 makes this test equivalent to
        ||2T - Id|| <= 1 + tol.
        """
        tol = resolve_tol(tol)
        T = self._square(T)
        gap = 0.5 * (T + T.T) - T.T @ T
        smallest = float(np.linalg.eigvalsh(0.5 * (gap + gap.T))[0])
        return smallest >= -(0.5 * tol + 0.25 * tol * tol)

    def nonexpansiveness_class(self, T: np.ndarray, tol: float | None = None) -> NonexpansivenessClass:
        """Operator norm of T, and whether T and 2T - Id are nonexpansive."""
        tol = resolve_tol(tol)
        T = self._square(T)
        norm = self.kernel.spectral_norm(T)
        reflected = self.kernel.spectral_norm(2.0 * T - np.eye(T.shape[0]))
        nonexpansive = norm <= 1.0 + tol
        firmly = reflected <= 1.0 + tol

        direct = self.is_firmly_nonexpansive_direct(T, tol)
        if direct != firmly:
            logger.warning(
                f"Firm nonexpansiveness tests disagree at the boundary (||2T - I|| = {reflected:.12g})"
            )
        logger.debug(f"||T|| = {norm:.6g}, ||2T - I|| = {reflected:.6g}")
        return NonexpansivenessClass(
            operator_norm=norm,
            reflected_norm=reflected,
            nonexpansive=nonexpansive,
            firmly_nonexpansive=firmly and nonexpansive,
        )

    def resolvent(self, A: LinearRelation, tol: float | None = None) -> LinearRelation:
        """J_A = (Id + A)^{-1}."""
        tol = resolve_tol(tol)
        shifted = self.relations.combine(1.0, self.relations.identity(A.n, tol), 1.0, A, tol)
        return self.relations.inverse(shifted)

    def resolvent_matrix(self, A: LinearRelation, tol: float | None = None) -> np.ndarray:
        """Matrix of J_A; defined for maximally monotone A.

        Raises:
            OutOfDomainError: J_A is not single-valued with full domain
        """
        return self.relations.to_matrix(self.resolvent(A, tol))

    def reflected_resolvent(self, A: LinearRelation, tol: float | None = None) -> np.ndarray:
        """R_A = 2 J_A - Id."""
        return 2.0 * self.resolvent_matrix(A, tol) - np.eye(A.n)

    def displacement(self, T: np.ndarray, tol: float | None = None) -> np.ndarray:
        """Id - T for nonexpansive T.

        Raises:
            NotNonexpansiveError: ||T|| > 1 + tol
        """
        tol = resolve_tol(tol)
        T = self._square(T)
        norm = self.kernel.spectral_norm(T)
        if norm > 1.0 + tol:
            logger.error(f"Displacement requested for T with ||T|| = {norm:.6g}")
            raise NotNonexpansiveError(f"T is not nonexpansive (||T|| = {norm:.6g})")
        return np.eye(T.shape[0]) - T

    def cyclic_shift(self, m: int, d: int = 1) -> np.ndarray:
        """Right shift (x_1, ..., x_m) -> (x_m, x_1, ..., x_{m-1}) on (R^d)^m."""
        if m < 1 or d < 1:
            raise InvalidParameterError(f"cyclic shift needs m >= 1 and d >= 1, got m={m}, d={d}")
        P = np.zeros((m, m))
        for i in range(m):
            P[(i + 1) % m, i] = 1.0
        return np.kron(P, np.eye(d))


nonexpansive_service = NonexpansiveService()
