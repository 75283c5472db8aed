"""Named operators with known classification.

Matrices: the rotation, the trapezoidal Volterra discretization, the finite
truncations of the diagonal-plus-rotation-blocks operator and cyclic-shift
displacements. The one set-valued example is x -> Ax + N_B(x) with A skew and
B the closed unit ball of R^2, evaluated in closed form.
"""

import asyncio

import numpy as np
from loguru import logger

from src.config import resolve_tol, settings
from src.exceptions import InvalidParameterError, MethodDisagreementError, OutOfDomainError
from src.models.classify import ClassificationReport
from src.models.gallery import BallConstrainedOperator, GalleryEntry, SetValue
from src.models.numkernel import FitzValue
from src.services.nonexpansive import nonexpansive_service

_CATALOG: tuple[GalleryEntry, ...] = (
    GalleryEntry(
        name="rotation",
        description="Rotation by -90 degrees, [[0, 1], [-1, 0]]",
        expected={
            "monotone": True,
            "maximal": True,
            "strictly_monotone": False,
            "paramonotone": False,
            "rectangular": False,
        },
    ),
    GalleryEntry(
        name="rotation_ball",
        description="Rotation plus the normal cone of the closed unit ball of R^2",
        expected={
            "monotone": True,
            "maximal": True,
            "strictly_monotone": False,
            "paramonotone": False,
            "rectangular": True,
        },
    ),
    GalleryEntry(
        name="volterra",
        description="Trapezoidal Volterra integration matrix h(L - I/2), h = 1/n",
        param_name="n",
        param_min=2,
        default_param=8,
        expected={
            "monotone": True,
            "maximal": True,
            "strictly_monotone": False,
            "paramonotone": False,
            "rectangular": False,
        },
    ),
    GalleryEntry(
        name="shift_sum",
        description="diag(1, 1/2, ..., 1/(2m)) plus m skew 2x2 blocks [[0, -1], [1, 0]]",
        param_name="m",
        param_min=1,
        default_param=1,
        expected={
            "monotone": True,
            "maximal": True,
            "strictly_monotone": True,
            "paramonotone": True,
            "rectangular": True,
        },
    ),
    GalleryEntry(
        name="cyclic_shift_displacement",
        description="Id - R for the cyclic right shift R on R^m",
        param_name="m",
        param_min=1,
        default_param=3,
        expected={
            "monotone": True,
            "maximal": True,
            "strictly_monotone": False,
            "paramonotone": True,
            "rectangular": True,
        },
    ),
)


class GalleryService:
    """Constructors and exact evaluators for the named operators."""

    def __init__(self):
        """Initialize gallery service."""
        self.nonexpansive = nonexpansive_service
        logger.info(f"Gallery service initialized ({len(_CATALOG)} operators)")

    # ------------------------------------------------------------------
    # Catalog
    # ------------------------------------------------------------------

    def gallery_catalog(self) -> list[GalleryEntry]:
        return list(_CATALOG)

    def entry(self, name: str) -> GalleryEntry:
        for item in _CATALOG:
            if item.name == name:
                return item
        known = ", ".join(item.name for item in _CATALOG)
        raise InvalidParameterError(f"Unknown gallery operator '{name}' (known: {known})")

    def build(self, name: str, param: int | None = None) -> np.ndarray | BallConstrainedOperator:
        """Instantiate a gallery operator; ``param`` defaults to the entry's default."""
        item = self.entry(name)
        if item.param_name is None:
            if param is not None:
                logger.warning(f"Gallery operator '{name}' takes no parameter; ignoring {param}")
        else:
            param = item.default_param if param is None else param
            if param < item.param_min:
                raise InvalidParameterError(
                    f"'{name}' needs {item.param_name} >= {item.param_min}, got {param}"
                )

        logger.debug(f"Building gallery operator {name}({param})")
        match name:
            case "rotation":
                return self.rotation()
            case "rotation_ball":
                return self.ball_operator()
            case "volterra":
                return self.volterra(param)
            case "shift_sum":
                return self.shift_sum(param)
            case "cyclic_shift_displacement":
                return self.nonexpansive.displacement(self.nonexpansive.cyclic_shift(param, 1))
        raise InvalidParameterError(f"Unknown gallery operator '{name}'")

    # ------------------------------------------------------------------
    # Matrices
    # ------------------------------------------------------------------

    def rotation(self) -> np.ndarray:
        return np.array([[0.0, 1.0], [-1.0, 0.0]])

    def volterra(self, n: int) -> np.ndarray:
        """V_n = h (L - I/2), L lower triangular ones, h = 1/n.

        The symmetric part is exactly (h/2) J with J the all-ones matrix.
        """
        if n < 2:
            raise InvalidParameterError(f"volterra needs n >= 2, got {n}")
        h = 1.0 / n
        return h * (np.tril(np.ones((n, n))) - 0.5 * np.eye(n))

    def shift_sum(self, m: int) -> np.ndarray:
        """C_m = D_m + B_m on R^{2m}."""
        if m < 1:
            raise InvalidParameterError(f"shift_sum needs m >= 1, got {m}")
        D = np.diag(1.0 / np.arange(1, 2 * m + 1))
        block = np.array([[0.0, -1.0], [1.0, 0.0]])
        B = np.kron(np.eye(m), block)
        return D + B

    # ------------------------------------------------------------------
    # Ball-constrained operator
    # ------------------------------------------------------------------

    def ball_operator(self, A: np.ndarray | None = None) -> BallConstrainedOperator:
        """x -> Ax + N_B(x), the rotation by default.

        Raises:
            OutOfDomainError: A is not 2x2 skew
        """
        A = self.rotation() if A is None else np.asarray(A, dtype=float)
        try:
            return BallConstrainedOperator(A=A, skew_tol=settings.tol)
        except ValueError as e:
            raise OutOfDomainError(f"ball operator needs a 2x2 skew matrix: {e}") from e

    def _point(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        if x.shape != (2,):
            raise OutOfDomainError(f"ball operator acts on R^2, got a vector of length {x.size}")
        return x

    def ball_evaluate(
        self, op: BallConstrainedOperator, x: np.ndarray, tol: float | None = None
    ) -> SetValue:
        """Empty outside B, the point Ax inside, the ray Ax + R_+ x on the boundary band."""
        tol = settings.boundary_tol if tol is None else tol
        x = self._point(x)
        radius = float(np.linalg.norm(x))
        Ax = op.A @ x
        if radius > 1.0 + tol:
            return SetValue(kind="empty")
        if radius < 1.0 - tol:
            return SetValue(kind="point", base=Ax)
        return SetValue(kind="ray", base=Ax, direction=x / radius)

    def ball_fitzpatrick(
        self,
        op: BallConstrainedOperator,
        x: np.ndarray,
        ystar: np.ndarray,
        tol: float | None = None,
    ) -> FitzValue:
        """F(x, y*) = ||y* - Ax|| on the ball, +inf outside.

        With <a, Aa> = 0 the sup over graph points (a, Aa + lambda a) reads
        sup <a, y* - Ax> + lambda (<x, a> - 1), and the lambda term is
        nonpositive when ||x|| <= 1.
        """
        tol = settings.boundary_tol if tol is None else tol
        x = self._point(x)
        ystar = self._point(ystar)
        if np.linalg.norm(x) > 1.0 + tol:
            return FitzValue.infinity()
        return FitzValue.finite(float(np.linalg.norm(ystar - op.A @ x)))

    def ball_least_norm_element(
        self, op: BallConstrainedOperator, x: np.ndarray, tol: float | None = None
    ) -> np.ndarray:
        """Least-norm element of Ax + N_B(x); it is Ax since <Ax, x> = 0."""
        value = self.ball_evaluate(op, x, tol)
        if value.kind == "empty":
            raise OutOfDomainError("x lies outside the unit ball")
        return np.array(value.base)

    def ball_coercivity_bound(
        self,
        op: BallConstrainedOperator,
        x: np.ndarray,
        ystar: np.ndarray,
        tol: float | None = None,
    ) -> float:
        """||x*|| (||x|| + 1) + ||y*||, x* the least-norm element of the value at x."""
        x = self._point(x)
        xstar = self.ball_least_norm_element(op, x, tol)
        return float(
            np.linalg.norm(xstar) * (np.linalg.norm(x) + 1.0) + np.linalg.norm(self._point(ystar))
        )

    def ball_paramonotone_witness(
        self, op: BallConstrainedOperator
    ) -> tuple[tuple[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]:
        """Two graph points with vanishing monotonicity gap and a* not in B0 = {0}.

        The linear witness (e_1, A e_1) is pulled into the interior by 1/2.
        """
        a = np.array([1.0, 0.0])
        astar = op.A @ a
        if np.linalg.norm(astar) <= settings.tol:
            raise OutOfDomainError("x -> N_B(x) is paramonotone; no witness exists")
        delta = 0.5
        origin = (np.zeros(2), np.zeros(2))
        return (delta * a, delta * astar), origin

    def _grid_chunk(
        self,
        op: BallConstrainedOperator,
        x: np.ndarray,
        ystar: np.ndarray,
        radii: np.ndarray,
        angles: np.ndarray,
        lambdas: np.ndarray,
    ) -> float:
        """Max of <x, a*> + <a, y*> - <a, a*> over one block of radii."""
        directions = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        points = (radii[:, None, None] * directions[None, :, :]).reshape(-1, 2)
        images = points @ op.A.T
        values = images @ x + points @ ystar - np.einsum("ij,ij->i", points, images)
        best = float(np.max(values))

        on_ring = np.isclose(radii, 1.0)
        if on_ring.any():
            # Boundary points also carry a* = Aa + lambda a.
            ring = directions
            base = ring @ op.A.T @ x + ring @ ystar - np.einsum("ij,ij->i", ring, ring @ op.A.T)
            slope = ring @ x - 1.0
            best = max(best, float(np.max(base[:, None] + slope[:, None] * lambdas[None, :])))
        return best

    async def ball_fitzpatrick_grid_async(
        self,
        op: BallConstrainedOperator,
        x: np.ndarray,
        ystar: np.ndarray,
        n_radii: int = 200,
        n_angles: int = 720,
        lambda_max: float = 50.0,
        n_lambdas: int = 101,
        n_chunks: int = 8,
    ) -> float:
        """Brute-force Fitzpatrick value on a polar grid of the graph, chunked by radius."""
        x = self._point(x)
        ystar = self._point(ystar)
        radii = np.linspace(0.0, 1.0, n_radii)
        angles = np.linspace(0.0, 2.0 * np.pi, n_angles, endpoint=False)
        lambdas = np.linspace(0.0, lambda_max, n_lambdas)
        chunks = [c for c in np.array_split(radii, n_chunks) if c.size]

        semaphore = asyncio.Semaphore(settings.sweep_concurrency)

        async def run(chunk: np.ndarray) -> float:
            async with semaphore:
                return await asyncio.to_thread(
                    self._grid_chunk, op, x, ystar, chunk, angles, lambdas
                )

        results = await asyncio.gather(*(run(chunk) for chunk in chunks))
        return max(results)

    def ball_fitzpatrick_grid(
        self,
        op: BallConstrainedOperator,
        x: np.ndarray,
        ystar: np.ndarray,
        **grid,
    ) -> float:
        """Synchronous wrapper of :meth:`ball_fitzpatrick_grid_async`."""
        return asyncio.run(self.ball_fitzpatrick_grid_async(op, x, ystar, **grid))

    def ball_graph_sample(
        self,
        op: BallConstrainedOperator,
        count: int,
        rng: np.random.Generator,
        lambda_max: float = 10.0,
        boundary_share: float = 0.25,
        tol: float | None = None,
    ) -> tuple[np.ndarray, np.ndarray]:
        """Random graph points (a, a*), each a* read off :meth:`ball_evaluate`.

        Interior points are uniform in the ball; boundary points pick a
        uniform multiplier in [0, lambda_max] along the normal ray.
        """
        directions = rng.standard_normal((count, 2))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        on_boundary = rng.uniform(size=count) < boundary_share
        radii = np.where(on_boundary, 1.0, np.sqrt(rng.uniform(size=count)))
        lambdas = rng.uniform(0.0, lambda_max, size=count)

        points = radii[:, None] * directions
        images = np.empty_like(points)
        for i, (a, lam) in enumerate(zip(points, lambdas)):
            value = self.ball_evaluate(op, a, tol)
            images[i] = value.base if value.kind == "point" else value.base + lam * value.direction
        return points, images

    def classify_ball(
        self,
        op: BallConstrainedOperator,
        tol: float | None = None,
        n_pairs: int = 10_000,
        n_checks: int = 12,
        grid: dict | None = None,
        seed: int | None = None,
    ) -> ClassificationReport:
        """Report for x -> Ax + N_B(x).

        Monotonicity, strictness and paramonotonicity are decided on
        ``n_pairs`` random pairs of graph points. Rectangularity takes the
        closed-form Fitzpatrick value at random (x, y*) in dom x ran, each
        cross-checked against the brute-force grid. Maximality is structural:
        a continuous monotone map plus the subdifferential of the ball's
        indicator.

        Raises:
            MethodDisagreementError: grid and closed form disagree
        """
        tol = resolve_tol(tol)
        rng = np.random.default_rng(settings.random_seed if seed is None else seed)
        points, images = self.ball_graph_sample(op, 2 * n_pairs, rng, tol=settings.boundary_tol)
        a, b = points[:n_pairs], points[n_pairs:]
        astar, bstar = images[:n_pairs], images[n_pairs:]

        def pair(i: int) -> list[list[float]]:
            return [a[i].tolist(), astar[i].tolist(), b[i].tolist(), bstar[i].tolist()]

        primal_gap = np.linalg.norm(a - b, axis=1)
        scales = 1.0 + primal_gap * np.linalg.norm(astar - bstar, axis=1)
        gaps = np.einsum("ij,ij->i", a - b, astar - bstar) / scales
        worst = int(np.argmin(gaps))
        if gaps[worst] < -tol:
            logger.warning(f"Ball operator gap {gaps[worst]:.3e} on sampled pair {worst}")
            return ClassificationReport(n=2, tol=tol, monotone=False, witnesses={"monotone": pair(worst)})

        witnesses: dict[str, list[list[float]]] = {}
        flat = np.flatnonzero((np.abs(gaps) <= tol) & (primal_gap > tol))
        strict = flat.size == 0
        if not strict:
            witnesses["strictly_monotone"] = pair(int(flat[0]))

        paramonotone = True
        for i in flat:
            crossed = self.ball_evaluate(op, a[i]).contains(bstar[i], tol * scales[i]) and self.ball_evaluate(
                op, b[i]
            ).contains(astar[i], tol * scales[i])
            if not crossed:
                paramonotone = False
                witnesses["paramonotone"] = pair(int(i))
                break

        rectangular = True
        grid = grid or {}
        for k in range(n_checks):
            x = points[k] * (1.0 - 1e-3 if k % 2 else 1.0)
            ystar = images[-1 - k]
            value = self.ball_fitzpatrick(op, x, ystar, tol)
            if not value.is_finite:
                rectangular = False
                witnesses["rectangular"] = [x.tolist(), ystar.tolist()]
                break
            approx = self.ball_fitzpatrick_grid(op, x, ystar, **grid)
            scale = 1.0 + float(np.linalg.norm(ystar - op.A @ x))
            if approx > value.value + tol * scale or approx < value.value - 1e-3 * scale:
                logger.error(f"Grid value {approx:.6e} vs closed form {value.value:.6e} at sample {k}")
                raise MethodDisagreementError("ball Fitzpatrick value", True, False, tol)

        logger.info(
            f"Ball operator over {n_pairs} pairs: strict={strict}, paramonotone={paramonotone}, "
            f"rectangular={rectangular}"
        )
        return ClassificationReport(
            n=2,
            tol=tol,
            monotone=True,
            maximal=True,
            strictly_monotone=strict,
            paramonotone=paramonotone,
            rectangular=rectangular,
            cocoercivity_modulus=None,
            witnesses=witnesses,
        )


gallery_service = GalleryService()
