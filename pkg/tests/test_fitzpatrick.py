"""Tests for Fitzpatrick functions of linear relations."""

import numpy as np
import pytest
import scipy.optimize

from src.exceptions import DimensionMismatchError, NotMonotoneError
from src.services.fitzpatrick import fitzpatrick_service as fitz
from src.services.relation import relation_service as relations
from src.services.sampling import sampling_service as sampling


def objective(A, x, xstar, C: np.ndarray) -> np.ndarray:
    """<x, a*> + <a, x*> - <a, a*> at the graph points G c, c the columns of C."""
    points = A.graph.basis @ C
    a, astar = points[: A.n], points[A.n :]
    return x @ astar + xstar @ a - np.einsum("ij,ij->j", a, astar)


def sampled_sup(A, x, xstar, rng, samples: int = 100_000) -> tuple[float, np.ndarray]:
    """Best of random graph points with magnitudes spread over 1e-2..1e2, and its coefficients."""
    directions = rng.standard_normal((A.dim, samples))
    directions /= np.linalg.norm(directions, axis=0)
    C = directions * 10.0 ** rng.uniform(-2.0, 2.0, samples)
    values = objective(A, x, xstar, C)
    best = int(np.argmax(values))
    return float(values[best]), C[:, best]


def polished_sup(A, x, xstar, start: np.ndarray) -> float:
    """Local ascent from the best sample; the objective is concave on gra A."""
    result = scipy.optimize.minimize(
        lambda c: -objective(A, x, xstar, c[:, None])[0], start, method="BFGS", options={"gtol": 1e-12}
    )
    return float(-result.fun)


@pytest.mark.unit
class TestExamples:
    def test_identity_on_graph(self, identity2):
        value = fitz.fitzpatrick_value(identity2, np.array([1.0, 0.0]), np.array([1.0, 0.0]))
        assert value.value == pytest.approx(1.0)

    def test_rotation_off_graph_is_infinite(self, rotation_relation):
        assert not fitz.fitzpatrick_value(rotation_relation, np.array([1.0, 0.0]), np.zeros(2)).is_finite

    def test_rotation_on_graph(self, rotation_relation):
        value = fitz.fitzpatrick_value(rotation_relation, np.array([1.0, 0.0]), np.array([0.0, -1.0]))
        assert value.value == pytest.approx(0.0, abs=1e-12)

    def test_zero_matrix(self):
        Z = relations.from_matrix(np.zeros((2, 2)))
        assert fitz.fitzpatrick_value(Z, np.array([3.0, 4.0]), np.zeros(2)).value == pytest.approx(0.0)
        assert not fitz.in_dom_fitz(Z, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        assert fitz.in_dom_fitz(Z, np.array([1.0, 0.0]), np.zeros(2))

    def test_identity_closed_form(self, rng):
        I = relations.identity(3)
        for _ in range(100):
            x, xstar = rng.standard_normal(3), rng.standard_normal(3)
            value = fitz.fitzpatrick_value(I, x, xstar)
            assert value.value == pytest.approx(0.25 * np.sum((x + xstar) ** 2), rel=1e-9, abs=1e-12)

    def test_dimension_mismatch(self, identity2):
        with pytest.raises(DimensionMismatchError):
            fitz.fitzpatrick_value(identity2, np.ones(3), np.ones(2))

    def test_non_monotone_rejected(self):
        A = relations.from_matrix(np.diag([1.0, -1.0]))
        with pytest.raises(NotMonotoneError):
            fitz.fitzpatrick_value(A, np.ones(2), np.ones(2))


@pytest.mark.unit
class TestRectangularity:
    def test_examples(self, identity2, rotation_relation):
        assert fitz.rectangular_via_fitz(identity2)
        assert not fitz.rectangular_via_fitz(rotation_relation)
        assert fitz.rectangular_via_fitz(relations.from_matrix(np.diag([1.0, 0.0])))

    def test_rotation_witness(self, rotation_relation):
        d = fitz.rectangularity_witness(rotation_relation)
        np.testing.assert_allclose(d, [1.0, 0.0], atol=1e-12)
        assert not fitz.in_dom_fitz(rotation_relation, d, np.zeros(2))

    def test_symmetric_psd_quadratic_bound(self):
        # For symmetric PSD A, F_A(d, 0) = <d, A d> / 4.
        A = np.diag([2.0, 0.5])
        d = np.array([1.0, 1.0])
        value = fitz.fitzpatrick_value(relations.from_matrix(A), d, np.zeros(2))
        assert value.value == pytest.approx(0.25 * d @ A @ d)

    def test_cocoercive_bound(self, rng):
        A = np.array([[2.0, 1.0], [-1.0, 2.0]])
        beta = 0.4  # <x, Ax> = 2||x||^2 >= 0.4 * 5 ||x||^2
        for _ in range(20):
            x = rng.standard_normal(2)
            value = fitz.fitzpatrick_value(relations.from_matrix(A), x, np.zeros(2))
            assert value.value <= fitz.cocoercive_fitz_bound(x, beta) + 1e-9


@pytest.mark.unit
class TestProperties:
    def test_on_graph_equality_and_minorant(self, random_maximal_monotone, rng):
        for _ in range(30):
            A = random_maximal_monotone()
            n = A.n
            c = rng.standard_normal(A.dim)
            z = A.graph.basis @ c
            a, astar = z[:n], z[n:]
            scale = 1.0 + np.linalg.norm(z) ** 2
            assert fitz.fitzpatrick_value(A, a, astar).value == pytest.approx(a @ astar, abs=1e-8 * scale)

            x, xstar = rng.standard_normal(n), rng.standard_normal(n)
            value = fitz.fitzpatrick_value(A, x, xstar)
            if value.is_finite:
                assert value.value >= x @ xstar - 1e-8 * (1.0 + np.linalg.norm(x) * np.linalg.norm(xstar))

    def test_adjoint_identity(self, random_maximal_monotone, rng):
        # F_{A*}(x, z*) = F_A(0, x* + z*) for (x, x*) in gra A.
        for _ in range(30):
            A = random_maximal_monotone()
            n = A.n
            z = A.graph.basis @ rng.standard_normal(A.dim)
            x, xstar = z[:n], z[n:]
            zstar = rng.standard_normal(n)
            left = fitz.fitzpatrick_value(relations.adjoint(A), x, zstar)
            right = fitz.fitzpatrick_value(A, np.zeros(n), xstar + zstar)
            assert left.is_finite == right.is_finite
            if left.is_finite:
                scale = 1.0 + np.linalg.norm(z) ** 2 + np.linalg.norm(zstar) ** 2
                assert left.value == pytest.approx(right.value, abs=1e-8 * scale)

    def test_maximizer_attains_value(self, random_maximal_monotone, rng):
        for _ in range(20):
            A = random_maximal_monotone(3)
            n = A.n
            z = A.graph.basis @ rng.standard_normal(A.dim)
            x, xstar = z[:n], 0.5 * z[n:]
            value = fitz.fitzpatrick_value(A, x, xstar)
            point = fitz.fitzpatrick_maximizer(A, x, xstar)
            if not value.is_finite:
                assert point is None
                continue
            a, astar = point[:n], point[n:]
            attained = x @ astar + a @ xstar - a @ astar
            assert attained == pytest.approx(value.value, abs=1e-8 * (1.0 + value.value))

    def test_sampling_oracle(self, random_maximal_monotone, rng):
        checked = 0
        for _ in range(30):
            A = random_maximal_monotone(int(rng.integers(1, 4)))
            n = A.n
            x, xstar = rng.standard_normal(n), rng.standard_normal(n)
            value = fitz.fitzpatrick_value(A, x, xstar)
            if not value.is_finite:
                assert fitz.fitzpatrick_maximizer(A, x, xstar) is None
                continue
            sampled, start = sampled_sup(A, x, xstar, rng)
            tolerance = 1e-6 * (1.0 + abs(value.value))
            assert sampled <= value.value + tolerance
            assert polished_sup(A, x, xstar, start) == pytest.approx(value.value, abs=tolerance)
            checked += 1
        assert checked > 0

    def test_degree_two_homogeneity(self, random_maximal_monotone, rng):
        for _ in range(30):
            A = random_maximal_monotone()
            x, xstar = rng.standard_normal(A.n), rng.standard_normal(A.n)
            value = fitz.fitzpatrick_value(A, x, xstar)
            for t in (0.5, 3.0):
                scaled = fitz.fitzpatrick_value(A, t * x, t * xstar)
                assert scaled.is_finite == value.is_finite
                if value.is_finite:
                    assert scaled.value == pytest.approx(t * t * value.value, rel=1e-9, abs=1e-9)

    def test_conjugate_identity(self, rotation, rng):
        # F_A(x, 0) = q*(M^T x) / 2 for a matrix M, q(x) = <x, Mx> / 2.
        for _ in range(20):
            M = sampling.random_monotone_matrix(3, rng, min_eigenvalue=0.1)
            x = rng.standard_normal(3)
            value = fitz.fitzpatrick_value(relations.from_matrix(M), x, np.zeros(3))
            conjugate = fitz.quadratic_conjugate(M, M.T @ x)
            assert value.value == pytest.approx(0.5 * conjugate.value, rel=1e-9, abs=1e-9)
        x = np.array([1.0, 0.0])
        assert not fitz.fitzpatrick_value(relations.from_matrix(rotation), x, np.zeros(2)).is_finite
        assert not fitz.quadratic_conjugate(rotation, rotation.T @ x).is_finite

    def test_quadratic_conjugate(self):
        M = np.array([[2.0, 1.0], [-1.0, 2.0]])
        y = np.array([1.0, -2.0])
        value = fitz.quadratic_conjugate(M, y)
        assert value.value == pytest.approx(0.5 * y @ np.linalg.solve(np.diag([2.0, 2.0]), y))
