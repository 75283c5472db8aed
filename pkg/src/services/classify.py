"""Paramonotonicity, rectangularity, strict monotonicity and cocoercivity.

Each property of a maximally monotone linear relation is decided by two
independent methods; in finite dimensions the methods are logically
equivalent, so a disagreement is reported as an error instead of being
resolved by vote.
"""

import numpy as np
from loguru import logger

from src.config import resolve_tol, settings
from src.exceptions import DimensionMismatchError, MethodDisagreementError, NotMonotoneError
from src.models.classify import ClassificationReport
from src.models.numkernel import Subspace
from src.models.relation import LinearRelation
from src.services.fitzpatrick import fitzpatrick_service
from src.services.numkernel import numkernel_service
from src.services.relation import relation_service


def _pair(z: np.ndarray, n: int) -> list[list[float]]:
    return [z[:n].tolist(), z[n:].tolist()]


def _rescaled(z: np.ndarray | None, n: int, factor: float) -> np.ndarray | None:
    """Graph point of the unit-scaled relation mapped back to the original one."""
    if z is None or factor == 1.0:
        return z
    z = np.concatenate([z[:n], factor * z[n:]])
    return relation_service.normalize_pair(z, n)


class ClassifyService:
    """Decision procedures realizing the rectangularity/paramonotonicity equivalences."""

    def __init__(self):
        """Initialize classify service."""
        self.kernel = numkernel_service
        self.relations = relation_service
        self.fitz = fitzpatrick_service
        logger.info("Classify service initialized")

    def _require_monotone(self, A: LinearRelation, tol: float) -> None:
        if not self.relations.is_monotone(A, tol):
            raise NotMonotoneError("property is only decided for monotone relations")

    # ------------------------------------------------------------------
    # Paramonotonicity
    # ------------------------------------------------------------------

    def zero_pairing_subspace(self, A: LinearRelation, tol: float | None = None) -> Subspace:
        """Graph points (a, a*) with <a, a*> = 0: the image of the null space of Q."""
        tol = resolve_tol(tol)
        if A.dim == 0:
            return self.kernel.zero(2 * A.n, tol)
        w, V = self.kernel.check_psd(self.relations.pairing_gram(A), tol)
        null = V[:, np.abs(w) <= tol * max(float(np.max(np.abs(w))), 1.0)]
        return self.kernel.range_of(A.graph.basis @ null, tol)

    def _paramonotone_witness(self, A: LinearRelation, tol: float) -> np.ndarray | None:
        a0 = self.relations.feature_subspaces(A, tol).a0
        for z in self.relations.echelon_vectors(self.zero_pairing_subspace(A, tol), A.n):
            if not self.kernel.contains(a0, z[A.n :], tol):
                return self.relations.normalize_pair(z, A.n, tol)
        return None

    def _kernels_agree(self, A: LinearRelation, tol: float) -> bool:
        """ker A_+ = ker A."""
        symmetric = self.relations.symmetric_part(A, tol)
        return self.kernel.subspace_equal(
            self.relations.feature_subspaces(symmetric, tol).ker,
            self.relations.feature_subspaces(A, tol).ker,
            settings.angle_tol,
        )

    def _ranges_agree(self, A: LinearRelation, tol: float) -> bool:
        """ran A_+ = ran A."""
        symmetric = self.relations.symmetric_part(A, tol)
        return self.kernel.subspace_equal(
            self.relations.feature_subspaces(symmetric, tol).ran,
            self.relations.feature_subspaces(A, tol).ran,
            settings.angle_tol,
        )

    def is_paramonotone(
        self, A: LinearRelation, tol: float | None = None
    ) -> tuple[bool, np.ndarray | None]:
        """Paramonotonicity of a monotone linear relation, with a witness when it fails.

        Method 1 tests a* in A0 on the zero-pairing part of the graph; for
        maximal relations method 2 compares ker A_+ with ker A.

        Returns:
            (decision, witness) where the witness is a graph point (a, a*)
            with <a, a*> = 0 and a* not in A0, scaled to ||a|| = 1
        """
        tol = resolve_tol(tol)
        A, factor = self.relations.unit_scaled(A)
        self._require_monotone(A, tol)
        witness = self._paramonotone_witness(A, tol)
        decision = witness is None
        if self.relations.is_maximally_monotone(A, tol):
            by_kernels = self._kernels_agree(A, tol)
            if by_kernels != decision:
                logger.error(f"Paramonotonicity methods disagree for {A!r}")
                raise MethodDisagreementError("paramonotone", decision, by_kernels, tol)
        return decision, _rescaled(witness, A.n, factor)

    def is_paramonotone_inverse(self, A: LinearRelation, tol: float | None = None) -> bool:
        """Paramonotonicity of A^{-1}; agrees with that of A."""
        decision, _ = self.is_paramonotone(self.relations.inverse(A), tol)
        return decision

    # ------------------------------------------------------------------
    # Rectangularity
    # ------------------------------------------------------------------

    def is_rectangular(
        self, A: LinearRelation, tol: float | None = None
    ) -> tuple[bool, np.ndarray | None]:
        """Rectangularity via dom A x {0} in dom F_A, cross-checked by ran A_+ = ran A.

        Returns:
            (decision, witness) where the witness is a unit d in dom A with
            F_A(d, 0) = +inf
        """
        decision, witness, _ = self._rectangularity(A, resolve_tol(tol))
        return decision, witness

    def _rectangularity(
        self, A: LinearRelation, tol: float
    ) -> tuple[bool, np.ndarray | None, bool]:
        A, _ = self.relations.unit_scaled(A)
        self._require_monotone(A, tol)
        witness, near_singular = self.fitz.rectangularity_scan(A, tol)
        decision = witness is None
        if self.relations.is_maximally_monotone(A, tol):
            by_ranges = self._ranges_agree(A, tol)
            if by_ranges != decision:
                logger.error(f"Rectangularity methods disagree for {A!r}")
                raise MethodDisagreementError("rectangular", decision, by_ranges, tol)
        return decision, witness, near_singular

    # ------------------------------------------------------------------
    # Strict monotonicity
    # ------------------------------------------------------------------

    def strict_monotonicity_witness(
        self, A: LinearRelation, tol: float | None = None
    ) -> np.ndarray | None:
        """A graph point with zero pairing and nonzero primal part, or None."""
        tol = resolve_tol(tol)
        A, factor = self.relations.unit_scaled(A)
        for z in self.relations.echelon_vectors(self.zero_pairing_subspace(A, tol), A.n):
            if np.linalg.norm(z[: A.n]) > tol:
                return _rescaled(self.relations.normalize_pair(z, A.n, tol), A.n, factor)
        return None

    def is_strictly_monotone(self, A: LinearRelation, tol: float | None = None) -> bool:
        """Every zero-pairing graph point has a = 0."""
        tol = resolve_tol(tol)
        A, _ = self.relations.unit_scaled(A)
        self._require_monotone(A, tol)
        zero_pairing = self.zero_pairing_subspace(A, tol)
        primal = self.kernel.range_of(zero_pairing.basis[: A.n], tol)
        return primal.dim == 0

    def is_inverse_strictly_monotone(self, A: LinearRelation, tol: float | None = None) -> bool:
        """Strict monotonicity of A^{-1}: zero pairing forces a* = 0."""
        return self.is_strictly_monotone(self.relations.inverse(A), tol)

    # ------------------------------------------------------------------
    # Matrices: cocoercivity
    # ------------------------------------------------------------------

    def _square(self, M: np.ndarray) -> np.ndarray:
        M = np.asarray(M, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
            raise DimensionMismatchError(f"expected a non-empty square matrix, got shape {M.shape}")
        return M

    def cocoercivity_modulus(self, M: np.ndarray, tol: float | None = None) -> float:
        """Largest beta with <x, Mx> >= beta ||Mx||^2 for all x.

        Returns:
            +inf for M = 0, 0.0 when M is not cocoercive, else the minimum
            eigenvalue of the pencil (M_+, M^T M) on the row space of M.
            Rank, PSD and zero decisions are taken on M / ||M||, so the
            answer scales exactly as 1 / ||M||.

        Raises:
            NotMonotoneError: M_+ is not PSD
        """
        tol = resolve_tol(tol)
        M = self._square(M)
        norm = self.kernel.spectral_norm(M)
        if norm <= tol:
            self.kernel.check_psd(0.5 * (M + M.T), tol)
            return float("inf")

        U = M / norm
        symmetric = 0.5 * (U + U.T)
        try:
            self.kernel.check_psd(symmetric, tol)
        except NotMonotoneError as e:
            smallest = e.min_eigenvalue * norm
            raise NotMonotoneError(
                f"M_+ is not PSD (min eigenvalue {smallest:.3e})", min_eigenvalue=smallest
            ) from e

        rows = self.kernel.range_of(U.T, tol).basis
        beta = self.kernel.min_generalized_eigenvalue(
            rows.T @ symmetric @ rows, rows.T @ (U.T @ U) @ rows
        )
        logger.debug(f"Pencil minimum {beta:.6e} on a row space of dim {rows.shape[1]} (norm {norm:.3e})")
        return 0.0 if beta <= tol else beta / norm

    def gamma_nonexpansive_check(self, M: np.ndarray, gamma: float, tol: float | None = None) -> bool:
        """||gamma M - Id|| <= 1."""
        tol = resolve_tol(tol)
        if gamma < 0:
            raise ValueError("gamma must be nonnegative")
        M = self._square(M)
        norm = self.kernel.spectral_norm(gamma * M - np.eye(M.shape[0]))
        return norm <= 1.0 + tol

    def inverse_strong_monotonicity_check(
        self, M: np.ndarray, beta: float, tol: float | None = None
    ) -> bool:
        """M^{-1} - beta Id is monotone, built with relation arithmetic."""
        tol = resolve_tol(tol)
        if beta < 0:
            raise ValueError("beta must be nonnegative")
        M = self._square(M)
        inverse = self.relations.inverse(self.relations.from_matrix(M, tol))
        shifted = self.relations.combine(1.0, inverse, -beta, self.relations.identity(M.shape[0], tol), tol)
        return self.relations.is_monotone(shifted, tol)

    # ------------------------------------------------------------------
    # Reports
    # ------------------------------------------------------------------

    def classification_report(
        self, A: LinearRelation, tol: float | None = None
    ) -> ClassificationReport:
        """All flags, the modulus when A is a matrix, and a witness per false flag."""
        tol = resolve_tol(tol)
        n = A.n
        logger.info(f"Classifying {A!r} at tol={tol:g}")
        unit, factor = self.relations.unit_scaled(A)

        if not self.relations.is_monotone(unit, tol):
            z = _rescaled(self.relations.monotonicity_witness(unit), n, factor)
            return ClassificationReport(
                n=n, tol=tol, monotone=False, witnesses={"monotone": _pair(z, n)}
            )

        witnesses: dict[str, list[list[float]]] = {}

        maximal = self.relations.is_maximally_monotone(unit, tol)
        if not maximal:
            z = self.relations.maximality_witness(unit)
            if z is not None:
                witnesses["maximal"] = _pair(z, n)

        strict = self.is_strictly_monotone(unit, tol)
        if not strict:
            z = _rescaled(self.strict_monotonicity_witness(unit, tol), n, factor)
            if z is not None:
                witnesses["strictly_monotone"] = _pair(z, n)

        paramonotone, z = self.is_paramonotone(unit, tol)
        if z is not None:
            witnesses["paramonotone"] = _pair(_rescaled(z, n, factor), n)

        rectangular, d, near_singular = self._rectangularity(unit, tol)
        if d is not None:
            witnesses["rectangular"] = [d.tolist()]

        if maximal and rectangular and not paramonotone:
            raise MethodDisagreementError("rectangular => paramonotone", rectangular, paramonotone, tol)

        modulus = None
        features = self.relations.feature_subspaces(A, tol)
        if features.a0.dim == 0 and features.dom.dim == n:
            modulus = self.cocoercivity_modulus(self.relations.to_matrix(A), tol)

        report = ClassificationReport(
            n=n,
            tol=tol,
            monotone=True,
            maximal=maximal,
            strictly_monotone=strict,
            paramonotone=paramonotone,
            rectangular=rectangular,
            cocoercivity_modulus=modulus,
            witnesses=witnesses,
            near_singular=near_singular,
        )
        logger.info(f"Classification: {report.flags()} (beta={modulus})")
        return report

    def classify_matrix(self, M: np.ndarray, tol: float | None = None) -> ClassificationReport:
        return self.classification_report(self.relations.from_matrix(M, tol), tol)


classify_service = ClassifyService()
