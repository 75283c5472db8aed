"""Graph calculus for linear relations A: R^n => R^n.

A relation is stored as its graph, an orthonormal basis of a subspace of
R^{2n} with coordinates (x, x*). Adjoint and inverse are orthogonal
coordinate maps of the graph; sums and scalings go through the
domain-aligned product.
"""

from collections.abc import Iterator, Sequence

import numpy as np
from loguru import logger

from src.config import resolve_tol, settings
from src.exceptions import DimensionMismatchError, NotMonotoneError, OutOfDomainError
from src.models.numkernel import Subspace
from src.models.relation import AffineImage, FeatureSubspaces, LinearRelation
from src.services.numkernel import numkernel_service


class RelationService:
    """Construction, arithmetic and monotonicity tests for linear relations."""

    def __init__(self):
        """Initialize relation service."""
        self.kernel = numkernel_service
        logger.info("Relation service initialized")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def _from_columns(self, n: int, columns: np.ndarray, tol: float) -> LinearRelation:
        return LinearRelation(n=n, graph=self.kernel.range_of(columns, tol))

    def from_matrix(self, M: np.ndarray, tol: float | None = None) -> LinearRelation:
        """Graph {(x, Mx)} of a square matrix."""
        tol = resolve_tol(tol)
        M = np.asarray(M, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
            raise DimensionMismatchError(f"expected a non-empty square matrix, got shape {M.shape}")
        n = M.shape[0]
        graph = self.kernel.range_of(np.vstack([np.eye(n), M]), tol)
        return LinearRelation(n=n, graph=graph, matrix=M)

    def from_graph_basis(
        self,
        vectors: Sequence[Sequence[float]] | np.ndarray,
        n: int | None = None,
        tol: float | None = None,
    ) -> LinearRelation:
        """Relation whose graph is spanned by the given 2n-vectors."""
        rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
        lengths = {row.size for row in rows}
        if len(lengths) > 1:
            raise DimensionMismatchError(f"graph vectors have different lengths: {sorted(lengths)}")
        if rows:
            length = lengths.pop()
            if length % 2:
                raise DimensionMismatchError(f"graph vectors must have even length, got {length}")
            if n is not None and length != 2 * n:
                raise DimensionMismatchError(f"graph vectors of length {length} for n={n}")
            n = length // 2
        elif n is None:
            raise DimensionMismatchError("n is required for an empty graph basis")
        graph = self.kernel.column_space(rows, tol, ambient_dim=2 * n)
        return LinearRelation(n=n, graph=graph)

    def identity(self, n: int, tol: float | None = None) -> LinearRelation:
        return self.from_matrix(np.eye(n), tol)

    def zero_graph(self, n: int, tol: float | None = None) -> LinearRelation:
        """The relation with graph {(0, 0)}."""
        return LinearRelation(n=n, graph=self.kernel.zero(2 * n, tol))

    def normal_cone_of_origin(self, n: int, tol: float | None = None) -> LinearRelation:
        """The relation with graph {0} x R^n."""
        columns = np.vstack([np.zeros((n, n)), np.eye(n)])
        return self._from_columns(n, columns, resolve_tol(tol))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def adjoint(self, A: LinearRelation) -> LinearRelation:
        """A* with gra A* = {(y, y*) : (y*, -y) in (gra A)^perp}."""
        if A.matrix is not None:
            return self.from_matrix(A.matrix.T, A.graph.tol)
        C = self.kernel.complement(A.graph).basis
        n = A.n
        swapped = np.vstack([-C[n:], C[:n]])
        return LinearRelation(
            n=n, graph=Subspace(ambient_dim=2 * n, basis=swapped, tol=A.graph.tol)
        )

    def inverse(self, A: LinearRelation) -> LinearRelation:
        """A^{-1}, the graph with the two blocks swapped."""
        G = A.graph.basis
        swapped = np.vstack([G[A.n :], G[: A.n]])
        return LinearRelation(
            n=A.n, graph=Subspace(ambient_dim=2 * A.n, basis=swapped, tol=A.graph.tol)
        )

    def combine(
        self,
        alpha: float,
        A: LinearRelation,
        beta: float,
        B: LinearRelation,
        tol: float | None = None,
    ) -> LinearRelation:
        """alpha A + beta B = {(x, alpha a* + beta b*) : (x, a*) in gra A, (x, b*) in gra B}."""
        if A.n != B.n:
            raise DimensionMismatchError(f"cannot combine relations on R^{A.n} and R^{B.n}")
        tol = resolve_tol(tol)
        if A.matrix is not None and B.matrix is not None:
            return self.from_matrix(alpha * A.matrix + beta * B.matrix, tol)
        n = A.n
        P, Q = A.graph.basis, B.graph.basis
        k_a = P.shape[1]
        if k_a + Q.shape[1] == 0:
            return self.zero_graph(n, tol)

        # Coefficient pairs (s, t) with matching x-components.
        N = self.kernel.null_coefficients(np.hstack([P[:n], -Q[:n]]), tol)
        s, t = N[:k_a], N[k_a:]
        primal = P[:n] @ s
        dual = alpha * (P[n:] @ s) + beta * (Q[n:] @ t)
        result = self._from_columns(n, np.vstack([primal, dual]), tol)
        logger.debug(
            f"combine({alpha:g}, dim {A.dim}, {beta:g}, dim {B.dim}) -> dim {result.dim}"
        )
        return result

    def add(self, A: LinearRelation, B: LinearRelation, tol: float | None = None) -> LinearRelation:
        return self.combine(1.0, A, 1.0, B, tol)

    def scale(self, t: float, A: LinearRelation, tol: float | None = None) -> LinearRelation:
        return self.combine(t, A, 0.0, A, tol)

    def symmetric_part(self, A: LinearRelation, tol: float | None = None) -> LinearRelation:
        """A_+ = A/2 + A*/2."""
        return self.combine(0.5, A, 0.5, self.adjoint(A), tol)

    def skew_part(self, A: LinearRelation, tol: float | None = None) -> LinearRelation:
        """A_o = A/2 - A*/2."""
        return self.combine(0.5, A, -0.5, self.adjoint(A), tol)

    # ------------------------------------------------------------------
    # Structure and evaluation
    # ------------------------------------------------------------------

    def feature_subspaces(self, A: LinearRelation, tol: float | None = None) -> FeatureSubspaces:
        """dom A, ran A, ker A and A0."""
        tol = A.graph.tol if tol is None else tol
        if A.matrix is not None:
            return FeatureSubspaces(
                dom=self.kernel.full(A.n, tol),
                ran=self.kernel.range_of(A.matrix, tol),
                ker=self.kernel.kernel(A.matrix, tol),
                a0=self.kernel.zero(A.n, tol),
            )
        Gx, Gy = A.primal_block, A.dual_block
        return FeatureSubspaces(
            dom=self.kernel.range_of(Gx, tol),
            ran=self.kernel.range_of(Gy, tol),
            ker=self.kernel.range_of(Gx @ self.kernel.null_coefficients(Gy, tol), tol),
            a0=self.kernel.range_of(Gy @ self.kernel.null_coefficients(Gx, tol), tol),
        )

    def _vector(self, A: LinearRelation, v: np.ndarray, name: str = "x") -> np.ndarray:
        v = np.asarray(v, dtype=float).ravel()
        if v.shape != (A.n,):
            raise DimensionMismatchError(f"{name} has length {v.size}, expected {A.n}")
        return v

    def evaluate(self, A: LinearRelation, x: np.ndarray, tol: float | None = None) -> AffineImage:
        """Ax as x* + A0 with x* the least-norm element, or Empty if x is not in dom A."""
        tol = A.graph.tol if tol is None else tol
        x = self._vector(A, x)
        features = self.feature_subspaces(A, tol)
        if not self.kernel.contains(features.dom, x, tol):
            return AffineImage.empty()
        if A.dim == 0:
            return AffineImage(point=np.zeros(A.n), direction_space=features.a0)
        if A.matrix is not None:
            return AffineImage(point=A.matrix @ x, direction_space=features.a0)

        c, *_ = np.linalg.lstsq(A.primal_block, x, rcond=tol)
        point = A.dual_block @ c
        point = point - self.kernel.project(features.a0, point)
        return AffineImage(point=point, direction_space=features.a0)

    def graph_contains(
        self, A: LinearRelation, x: np.ndarray, xstar: np.ndarray, tol: float | None = None
    ) -> bool:
        z = np.concatenate([self._vector(A, x), self._vector(A, xstar, "xstar")])
        return self.kernel.contains(A.graph, z, tol)

    def relation_equal(
        self, A: LinearRelation, B: LinearRelation, angle_tol: float | None = None
    ) -> bool:
        if A.n != B.n:
            return False
        return self.kernel.subspace_equal(A.graph, B.graph, angle_tol or settings.angle_tol)

    def unit_scaled(self, A: LinearRelation) -> tuple[LinearRelation, float]:
        """A matrix relation rescaled to unit spectral norm, with the factor removed.

        Monotonicity, strictness, paramonotonicity and rectangularity are all
        invariant under positive scaling; graph relations are returned as is.
        """
        if A.matrix is None:
            return A, 1.0
        norm = self.kernel.spectral_norm(A.matrix)
        if norm == 0.0:
            return A, 1.0
        return self.from_matrix(A.matrix / norm, A.graph.tol), norm

    def is_single_valued(self, A: LinearRelation) -> bool:
        return self.feature_subspaces(A).a0.dim == 0

    def to_matrix(self, A: LinearRelation) -> np.ndarray:
        """The matrix of a single-valued relation with full domain."""
        if A.matrix is not None:
            return np.array(A.matrix)
        features = self.feature_subspaces(A)
        if features.a0.dim != 0 or features.dom.dim != A.n:
            raise OutOfDomainError(
                f"relation is not a matrix (dim dom = {features.dom.dim}, dim A0 = {features.a0.dim})"
            )
        # Gx is n x n and invertible here.
        return np.linalg.solve(A.primal_block.T, A.dual_block.T).T

    # ------------------------------------------------------------------
    # Monotonicity
    # ------------------------------------------------------------------

    def pairing_matrix(self, n: int) -> np.ndarray:
        """Symmetric matrix P of the pairing: z^T P z = <x, x*> for z = (x, x*)."""
        eye = np.eye(n)
        zero = np.zeros((n, n))
        return 0.5 * np.block([[zero, eye], [eye, zero]])

    def pairing(self, z: np.ndarray, n: int) -> float:
        z = np.asarray(z, dtype=float)
        return float(z[:n] @ z[n:])

    def pairing_gram(self, A: LinearRelation) -> np.ndarray:
        """Q = G^T P G, the pairing in orthonormal graph coordinates."""
        Gx, Gy = A.primal_block, A.dual_block
        cross = Gx.T @ Gy
        return 0.5 * (cross + cross.T)

    def is_monotone(self, A: LinearRelation, tol: float | None = None) -> bool:
        """<x, x*> >= 0 on gra A, tested on the restricted pairing form."""
        tol = A.graph.tol if tol is None else tol
        if A.dim == 0:
            return True
        smallest = self.kernel.restricted_min_eigenvalue(self.pairing_matrix(A.n), A.graph)
        logger.debug(f"Minimum pairing eigenvalue on graph: {smallest:.3e}")
        return smallest >= -tol

    def is_maximally_monotone(self, A: LinearRelation, tol: float | None = None) -> bool:
        """Monotone with dim gra A = n."""
        return self.is_monotone(A, tol) and A.dim == A.n

    def monotonically_related(
        self, A: LinearRelation, x: np.ndarray, xstar: np.ndarray, tol: float | None = None
    ) -> bool:
        """Whether <x - a, x* - a*> >= 0 for every (a, a*) in gra A.

        For a linear graph this reads sup_a (<x, a*> + <a, x*> - <a, a*>) <= <x, x*>.
        """
        tol = A.graph.tol if tol is None else tol
        x = self._vector(A, x)
        xstar = self._vector(A, xstar, "xstar")
        b = A.dual_block.T @ x + A.primal_block.T @ xstar
        value = self.kernel.sup_linear_minus_quadratic(self.pairing_gram(A), b, tol)
        if not value.is_finite:
            return False
        scale = 1.0 + np.linalg.norm(x) * np.linalg.norm(xstar)
        return value.value <= float(x @ xstar) + tol * scale

    # ------------------------------------------------------------------
    # Witnesses
    # ------------------------------------------------------------------

    def normalize_pair(self, z: np.ndarray, n: int, tol: float | None = None) -> np.ndarray:
        """Scale a graph vector so its primal part has unit norm (or the whole vector, if that part vanishes)."""
        tol = resolve_tol(tol)
        z = np.asarray(z, dtype=float)
        primal = np.linalg.norm(z[:n])
        if primal > tol:
            return z / primal
        return z / np.linalg.norm(z)

    def canonical_vectors(self, S: Subspace) -> Iterator[np.ndarray]:
        """Normalized projections of e_1, e_2, ... onto S, skipping vanishing ones; they span S."""
        for i in range(S.ambient_dim):
            p = S.basis @ S.basis[i]
            norm = np.linalg.norm(p)
            if norm > S.tol:
                yield p / norm

    def echelon_vectors(self, S: Subspace, leading: int) -> Iterator[np.ndarray]:
        """Unit vectors of S in echelon order over its first ``leading`` coordinates.

        Level k is S intersected with {z_j = 0 for k <= j < leading}; each level
        contributes its part orthogonal to the level before, so the first vector
        with a property checked against a subspace is the one with the earliest
        possible last nonzero leading coordinate. Signs make the first nonzero
        coordinate positive.
        """
        B = S.basis
        previous = self.kernel.zero(S.ambient_dim, S.tol)
        for k in range(leading + 1):
            level = S
            if k < leading:
                coefficients = self.kernel.null_coefficients(B[k:leading], S.tol)
                level = Subspace(ambient_dim=S.ambient_dim, basis=B @ coefficients, tol=S.tol)
            fresh = self.kernel.intersect(level, self.kernel.complement(previous))
            for z in fresh.basis.T:
                first = np.flatnonzero(np.abs(z) > S.tol)
                yield z if first.size == 0 or z[first[0]] > 0 else -z
            previous = level

    def monotonicity_witness(self, A: LinearRelation) -> np.ndarray | None:
        """A graph point with negative pairing, or None if A is monotone."""
        if self.is_monotone(A):
            return None
        B = A.graph.basis
        w, V = np.linalg.eigh(B.T @ self.pairing_matrix(A.n) @ B)
        return self.normalize_pair(B @ V[:, 0], A.n)

    def maximality_witness(self, A: LinearRelation) -> np.ndarray | None:
        """For monotone non-maximal A, a point outside gra A monotonically related to it.

        Candidates z lie in gra(-A*), where the cross term with every graph
        point vanishes, so z is monotonically related iff <z_x, z_y> >= 0.
        """
        tol = A.graph.tol
        if not self.is_monotone(A):
            raise NotMonotoneError("maximality witnesses need a monotone relation")
        if A.dim >= A.n:
            return None

        n = A.n
        star = self.adjoint(A).graph.basis
        negated = Subspace(ambient_dim=2 * n, basis=np.vstack([star[:n], -star[n:]]), tol=tol)
        inside = self.kernel.intersect(negated, A.graph)
        outside = self.kernel.intersect(negated, self.kernel.complement(inside))
        if outside.dim == 0:
            logger.warning("No extension direction found outside the graph")
            return None

        P = self.pairing_matrix(n)
        B = outside.basis
        w, V = np.linalg.eigh(B.T @ P @ B)
        z = B @ V[:, -1]
        p_z = float(w[-1])
        if p_z < -tol and inside.dim > 0:
            C = inside.basis
            wi, Vi = np.linalg.eigh(C.T @ P @ C)
            if wi[-1] > tol:
                z = z + 1.1 * np.sqrt(-p_z / wi[-1]) * (C @ Vi[:, -1])
                p_z = self.pairing(z, n)
        if p_z < -tol:
            logger.warning(f"Best extension candidate has negative pairing {p_z:.3e}")
            return None
        return self.normalize_pair(z, n)


relation_service = RelationService()
