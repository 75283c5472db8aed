"""Fitzpatrick functions of monotone linear relations.

For a graph basis G = (Gx; Gy) with coefficients c, a graph point is
(a, a*) = (Gx c, Gy c), and

    F_A(x, x*) = sup_c  <b, c> - c^T Q c,   b = Gy^T x + Gx^T x*,

with Q the pairing Gram of the graph. The supremum is (1/4) b^T Q^+ b when b
lies in ran Q and +inf otherwise.
"""

import numpy as np
from loguru import logger

from src.config import resolve_tol
from src.exceptions import DimensionMismatchError, NotMonotoneError
from src.models.fitzpatrick import GraphForm
from src.models.numkernel import FitzValue
from src.models.relation import LinearRelation
from src.services.numkernel import numkernel_service
from src.services.relation import relation_service


class FitzpatrickService:
    """Exact evaluation of F_A and the domain tests behind rectangularity."""

    def __init__(self):
        """Initialize Fitzpatrick service."""
        self.kernel = numkernel_service
        self.relations = relation_service
        logger.info("Fitzpatrick service initialized")

    def graph_form(self, A: LinearRelation) -> GraphForm:
        """The pairing of A in orthonormal graph coordinates."""
        return GraphForm(relation=A, G=A.graph.basis, Q=self.relations.pairing_gram(A))

    def _linear_term(self, A: LinearRelation, x: np.ndarray, xstar: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        xstar = np.asarray(xstar, dtype=float).ravel()
        if x.shape != (A.n,) or xstar.shape != (A.n,):
            raise DimensionMismatchError(
                f"points of lengths {x.size} and {xstar.size} for a relation on R^{A.n}"
            )
        return A.dual_block.T @ x + A.primal_block.T @ xstar

    def fitzpatrick_value(
        self,
        A: LinearRelation,
        x: np.ndarray,
        xstar: np.ndarray,
        tol: float | None = None,
    ) -> FitzValue:
        """F_A(x, x*) = sup over gra A of <x, a*> + <a, x*> - <a, a*>.

        Raises:
            NotMonotoneError: the pairing is not PSD on gra A
        """
        value, _ = self._evaluate(A, x, xstar, tol)
        return value

    def fitzpatrick_maximizer(
        self,
        A: LinearRelation,
        x: np.ndarray,
        xstar: np.ndarray,
        tol: float | None = None,
    ) -> np.ndarray | None:
        """A graph point (a, a*) attaining F_A(x, x*), or None when the value is +inf."""
        _, c = self._evaluate(A, x, xstar, tol)
        if c is None:
            return None
        return A.graph.basis @ c

    def _evaluate(
        self,
        A: LinearRelation,
        x: np.ndarray,
        xstar: np.ndarray,
        tol: float | None,
    ) -> tuple[FitzValue, np.ndarray | None]:
        tol = A.graph.tol if tol is None else tol
        b = self._linear_term(A, x, xstar)
        form = self.graph_form(A)
        try:
            return self.kernel.sup_with_maximizer(form.Q, b, tol)
        except NotMonotoneError as e:
            logger.error(f"Fitzpatrick function requested for a non-monotone relation: {e}")
            raise NotMonotoneError(
                f"F_A is defined here only for monotone relations ({e})",
                min_eigenvalue=e.min_eigenvalue,
            ) from e

    def in_dom_fitz(
        self,
        A: LinearRelation,
        x: np.ndarray,
        xstar: np.ndarray,
        tol: float | None = None,
    ) -> bool:
        """(x, x*) in dom F_A."""
        return self.fitzpatrick_value(A, x, xstar, tol).is_finite

    def rectangularity_witness(
        self, A: LinearRelation, tol: float | None = None
    ) -> np.ndarray | None:
        """A unit vector d in dom A with F_A(d, 0) = +inf, or None.

        Directions are scanned in the canonical order of projected standard
        basis vectors; they span dom A, and finiteness of F_A(., 0) on a
        spanning set forces it on the whole span (F_A is convex and
        2-homogeneous on linear graphs).
        """
        witness, _ = self.rectangularity_scan(A, tol)
        return witness

    def rectangularity_scan(
        self, A: LinearRelation, tol: float | None = None
    ) -> tuple[np.ndarray | None, bool]:
        """Witness of :meth:`rectangularity_witness` and whether any decision was near-singular."""
        dom = self.relations.feature_subspaces(A, tol).dom
        zero = np.zeros(A.n)
        near_singular = False
        for d in self.relations.canonical_vectors(dom):
            value = self.fitzpatrick_value(A, d, zero, tol)
            near_singular = near_singular or value.near_singular
            if not value.is_finite:
                return d / np.linalg.norm(d), near_singular
        return None, near_singular

    def rectangular_via_fitz(self, A: LinearRelation, tol: float | None = None) -> bool:
        """dom A x {0} contained in dom F_A."""
        witness = self.rectangularity_witness(A, tol)
        logger.debug(f"Fitzpatrick rectangularity test: {'fails' if witness is not None else 'holds'}")
        return witness is None

    def quadratic_conjugate(
        self, M: np.ndarray, y: np.ndarray, tol: float | None = None
    ) -> FitzValue:
        """q*(y) for q(x) = <x, Mx>/2, i.e. sup_x <x, y> - x^T M_+ x / 2."""
        M = np.asarray(M, dtype=float)
        symmetric = 0.5 * (M + M.T)
        return self.kernel.sup_linear_minus_quadratic(0.5 * symmetric, y, resolve_tol(tol))

    def cocoercive_fitz_bound(self, x: np.ndarray, beta: float) -> float:
        """||x||^2 / (4 beta): upper bound of F_A(x, 0) for beta-cocoercive A."""
        if beta <= 0:
            return float("inf")
        return float(np.dot(x, x)) / (4.0 * beta)


fitzpatrick_service = FitzpatrickService()
