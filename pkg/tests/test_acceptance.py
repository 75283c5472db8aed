"""End-to-end acceptance checks over random corpora and the named examples."""

import json

import numpy as np
import pytest

from src.cli.app import run
from src.config import settings
from src.services.classify import classify_service as classify
from src.services.fitzpatrick import fitzpatrick_service as fitz
from src.services.gallery import gallery_service as gallery
from src.services.nonexpansive import nonexpansive_service as nonexpansive
from src.services.numkernel import numkernel_service as kernel
from src.services.relation import relation_service as relations
from src.services.sampling import sampling_service as sampling

pytestmark = pytest.mark.slow


def symmetric_features(A):
    return relations.feature_subspaces(relations.symmetric_part(A)), relations.feature_subspaces(A)


@pytest.fixture(scope="module")
def corpus():
    """1000 random maximally monotone relations on R^n, n <= 6."""
    rng = np.random.default_rng(7)
    return [sampling.random_maximal_monotone(int(rng.integers(1, 7)), rng) for _ in range(1000)]


def test_rotation_and_ball():
    report = classify.classify_matrix(gallery.rotation(), tol=1e-8)
    assert report.monotone and report.maximal
    assert not report.paramonotone and not report.rectangular
    assert report.cocoercivity_modulus == 0.0

    ball = gallery.ball_operator()
    rng = np.random.default_rng(1)
    for _ in range(100):
        x = rng.standard_normal(2)
        x *= rng.uniform() / np.linalg.norm(x)
        assert gallery.ball_fitzpatrick(ball, x, rng.standard_normal(2) * 10).is_finite
    ball_report = gallery.classify_ball(ball, tol=1e-8)
    assert ball_report.rectangular and not ball_report.paramonotone
    (a, astar), (b, bstar) = gallery.ball_paramonotone_witness(ball)
    np.testing.assert_allclose(a, [0.5, 0.0])
    assert (a - b) @ (astar - bstar) == pytest.approx(0.0, abs=1e-15)


def test_equivalences_on_random_relations(corpus):
    for A in corpus:
        sym, own = symmetric_features(A)
        adjoint = relations.adjoint(A)
        flags = [
            classify.is_rectangular(A)[0],
            kernel.subspace_equal(sym.ran, own.ran, settings.angle_tol),
            kernel.subspace_equal(sym.ker, own.ker, settings.angle_tol),
            classify.is_paramonotone(A)[0],
            classify.is_paramonotone(adjoint)[0],
            classify.is_rectangular(adjoint)[0],
        ]
        assert len(set(flags)) == 1, f"{A!r}: {flags}"


def test_rectangular_implies_paramonotone(corpus):
    for A in corpus[:300]:
        if classify.is_rectangular(A)[0]:
            assert classify.is_paramonotone(A)[0]


def test_cocoercivity_equivalences():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 200:
        n = int(rng.integers(1, 6))
        M = sampling.random_monotone_matrix(
            n, rng, min_eigenvalue=rng.uniform(0.2, 1.0), skew_scale=rng.uniform(0.0, 1.0), max_norm=4.0
        )
        beta = classify.cocoercivity_modulus(M)
        if not beta > 1e-6:
            continue
        checked += 1
        bumped = beta * (1 + 1e-6) + 1e-6
        assert classify.gamma_nonexpansive_check(M, 2 * beta, tol=1e-8)
        assert not classify.gamma_nonexpansive_check(M, 2 * bumped)
        assert classify.inverse_strong_monotonicity_check(M, beta)
        assert not classify.inverse_strong_monotonicity_check(M, bumped, tol=1e-12)

        X = rng.standard_normal((n, 10_000))
        MX = M @ X
        scale = 1.0 + np.sum(MX**2, axis=0)
        assert np.all(np.einsum("ij,ij->j", X, MX) >= beta * np.sum(MX**2, axis=0) - 1e-8 * scale)


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_volterra(n):
    V = gallery.volterra(n)
    rng = np.random.default_rng(n)
    X = rng.standard_normal((n, 1000))
    forms = np.einsum("ij,ij->j", X, V @ X)
    np.testing.assert_allclose(forms, 0.5 / n * np.sum(X, axis=0) ** 2, atol=1e-12)

    decision, witness = classify.is_paramonotone(relations.from_matrix(V))
    assert not decision
    assert np.sum(witness[:n]) == pytest.approx(0.0, abs=1e-10)
    expected = np.zeros(n)
    expected[:2] = [1.0, -1.0]
    np.testing.assert_allclose(witness[:n], expected / np.sqrt(2.0), atol=1e-9)
    assert classify.classify_matrix(V.T).flags() == classify.classify_matrix(V).flags()


def test_shift_sum_moduli():
    moduli = [classify.cocoercivity_modulus(gallery.shift_sum(m)) for m in range(1, 65)]
    assert moduli[0] == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert all(later <= earlier for earlier, later in zip(moduli, moduli[1:]))
    assert moduli[-1] < moduli[0] / 10
    for m in range(1, 65):
        A = relations.from_matrix(gallery.shift_sum(m))
        assert classify.is_strictly_monotone(A)
        assert classify.is_paramonotone(A)[0]


def test_displacement_mappings():
    rng = np.random.default_rng(3)
    for _ in range(200):
        T = sampling.random_nonexpansive(int(rng.integers(1, 6)), rng)
        D = nonexpansive.displacement(T)
        report = classify.classify_matrix(D)
        assert report.maximal and report.rectangular and report.paramonotone
        assert report.cocoercivity_modulus >= 0.5 - 1e-8
        assert classify.is_inverse_strictly_monotone(relations.from_matrix(D))
        if np.linalg.svd(D, compute_uv=False)[-1] > 1e-3:
            assert classify.inverse_strong_monotonicity_check(D, 0.5)

    for _ in range(20):
        U = sampling.random_orthogonal(int(rng.integers(2, 6)), rng)
        if np.allclose(U, np.eye(U.shape[0])):
            continue
        assert classify.cocoercivity_modulus(nonexpansive.displacement(U)) == pytest.approx(0.5, abs=1e-9)

    for m in range(1, 9):
        for d in range(1, 5):
            D = nonexpansive.displacement(nonexpansive.cyclic_shift(m, d))
            report = classify.classify_matrix(D)
            assert report.maximal and report.rectangular and report.paramonotone
            assert report.cocoercivity_modulus >= 0.5 - 1e-9
            assert classify.is_inverse_strictly_monotone(relations.from_matrix(D))


def test_fitzpatrick_suite(corpus):
    rng = np.random.default_rng(5)
    identity = relations.identity(4)
    for _ in range(100):
        x, xstar = rng.standard_normal(4), rng.standard_normal(4)
        expected = 0.25 * np.sum((x + xstar) ** 2)
        assert fitz.fitzpatrick_value(identity, x, xstar).value == pytest.approx(expected, rel=1e-9, abs=1e-12)

    for A in corpus[:200]:
        n = A.n
        z = A.graph.basis @ rng.standard_normal(A.dim)
        a, astar = z[:n], z[n:]
        scale = 1.0 + np.linalg.norm(z) ** 2
        assert fitz.fitzpatrick_value(A, a, astar).value == pytest.approx(a @ astar, abs=1e-8 * scale)

        zstar = rng.standard_normal(n)
        left = fitz.fitzpatrick_value(relations.adjoint(A), a, zstar)
        right = fitz.fitzpatrick_value(A, np.zeros(n), astar + zstar)
        assert left.is_finite == right.is_finite
        if left.is_finite:
            bound = 1e-8 * (scale + np.linalg.norm(zstar) ** 2)
            assert left.value == pytest.approx(right.value, abs=bound)


def test_sum_of_paramonotone_matrices():
    rng = np.random.default_rng(9)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        M = sampling.random_paramonotone_matrix(n, rng) + sampling.random_paramonotone_matrix(n, rng)
        assert classify.is_paramonotone(relations.from_matrix(M))[0]


def test_cli_contract(tmp_path, capsys):
    examples = {
        "rotation.json": ({"kind": "matrix", "entries": [[0, 1], [-1, 0]]}, 0.0),
        "identity.json": ({"kind": "matrix", "entries": [[1, 0], [0, 1]]}, 1.0),
        "shift.json": ({"kind": "gallery", "gallery_name": "shift_sum", "param": 1}, 1.0 / 3.0),
    }
    for name, (payload, modulus) in examples.items():
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        outputs = []
        for _ in range(2):
            assert run(["classify", str(path)]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["cocoercivity_modulus"] == pytest.approx(modulus, abs=1e-12)

    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["classify", str(bad)]) == 2
    bad.write_text('{"kind":"matrix","entries":[[1,2]]}')
    assert run(["classify", str(bad)]) == 3
