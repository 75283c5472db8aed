"""Script to reproduce the worked examples of the gallery.

Runs every named example (rotation, ball-constrained rotation, Volterra,
shift sums, displacement mappings) and logs whether the computed values
match the known ones.
"""

import asyncio
import sys
from collections.abc import Callable
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
from loguru import logger

from src.config import settings
from src.services.classify import classify_service
from src.services.fitzpatrick import fitzpatrick_service
from src.services.gallery import gallery_service
from src.services.nonexpansive import nonexpansive_service
from src.services.relation import relation_service
from src.services.sampling import sampling_service


class ExampleRunner:
    """Collects named checks and runs them concurrently."""

    def __init__(self, concurrency: int):
        self.concurrency = concurrency
        self.checks: list[tuple[str, Callable[[], bool]]] = []

    def add(self, name: str, check: Callable[[], bool]) -> None:
        self.checks.append((name, check))

    async def _run_one(self, semaphore: asyncio.Semaphore, name: str, check: Callable[[], bool]) -> bool:
        async with semaphore:
            try:
                ok = await asyncio.to_thread(check)
            except Exception as e:
                logger.error(f"{name}: raised {type(e).__name__}: {e}")
                return False
        if ok:
            logger.success(f"{name}")
        else:
            logger.error(f"{name}: mismatch")
        return ok

    async def run(self) -> int:
        semaphore = asyncio.Semaphore(self.concurrency)
        results = await asyncio.gather(
            *(self._run_one(semaphore, name, check) for name, check in self.checks)
        )
        passed = sum(results)
        logger.info(f"{passed}/{len(results)} examples reproduced")
        return len(results) - passed


def _flags(report) -> tuple:
    return (
        report.monotone,
        report.maximal,
        report.strictly_monotone,
        report.paramonotone,
        report.rectangular,
    )


def build_runner() -> ExampleRunner:
    runner = ExampleRunner(settings.sweep_concurrency)
    rotation = gallery_service.rotation()
    ball = gallery_service.ball_operator()

    def rotation_report() -> bool:
        report = classify_service.classify_matrix(rotation)
        witness = report.witnesses["paramonotone"]
        return _flags(report) == (True, True, False, False, False) and report.cocoercivity_modulus == 0.0 and np.allclose(
            witness, [[1.0, 0.0], [0.0, -1.0]]
        )

    def ball_report() -> bool:
        report = gallery_service.classify_ball(ball)
        (a, astar), _ = gallery_service.ball_paramonotone_witness(ball)
        return (
            report.rectangular
            and not report.paramonotone
            and np.allclose(a, [0.5, 0.0])
            and np.allclose(astar, [0.0, -0.5])
        )

    def ball_fitzpatrick() -> bool:
        x, ystar = np.array([1.0, 0.0]), np.zeros(2)
        closed = gallery_service.ball_fitzpatrick(ball, x, ystar)
        grid = gallery_service.ball_fitzpatrick_grid(ball, x, ystar)
        return closed.value == 1.0 and abs(grid - 1.0) < 1e-4

    def volterra() -> bool:
        ok = True
        for n in (4, 8, 16, 32):
            report = classify_service.classify_matrix(gallery_service.volterra(n))
            ok &= _flags(report) == (True, True, False, False, False)
        V = gallery_service.volterra(4)
        x = np.array([1.0, -1.0, 0.0, 0.0])
        return ok and abs(x @ V @ x) < 1e-15 and np.allclose(V @ x, [0.125, 0.125, 0.0, 0.0])

    def shift_sum() -> bool:
        moduli = [classify_service.cocoercivity_modulus(gallery_service.shift_sum(m)) for m in range(1, 65)]
        nonincreasing = all(b <= a + 1e-12 for a, b in zip(moduli, moduli[1:]))
        return abs(moduli[0] - 1.0 / 3.0) < 1e-9 and nonincreasing and moduli[-1] < moduli[0] / 10

    def displacement() -> bool:
        rng = sampling_service.rng()
        ok = True
        for _ in range(20):
            A = nonexpansive_service.displacement(sampling_service.random_nonexpansive(4, rng))
            report = classify_service.classify_matrix(A)
            ok &= bool(report.rectangular and report.paramonotone)
            ok &= report.cocoercivity_modulus >= 0.5 - 1e-8
        R = nonexpansive_service.cyclic_shift(3, 2)
        beta = classify_service.cocoercivity_modulus(nonexpansive_service.displacement(R))
        return ok and abs(beta - 0.5) < 1e-9

    def fitzpatrick_identity() -> bool:
        identity = relation_service.identity(3)
        rng = sampling_service.rng()
        x, xstar = rng.standard_normal(3), rng.standard_normal(3)
        value = fitzpatrick_service.fitzpatrick_value(identity, x, xstar)
        return abs(value.value - 0.25 * float(np.sum((x + xstar) ** 2))) < 1e-8

    def resolvent() -> bool:
        J = nonexpansive_service.resolvent_matrix(relation_service.from_matrix(rotation))
        return np.allclose(J, 0.5 * np.array([[1.0, -1.0], [1.0, 1.0]]))

    runner.add("rotation: monotone, maximal, neither paramonotone nor rectangular", rotation_report)
    runner.add("rotation_ball: rectangular, not paramonotone", ball_report)
    runner.add("rotation_ball: closed-form Fitzpatrick value matches the grid", ball_fitzpatrick)
    runner.add("volterra: neither paramonotone nor rectangular", volterra)
    runner.add("shift_sum: moduli decrease from 1/3", shift_sum)
    runner.add("displacement mappings: rectangular, paramonotone, 1/2-cocoercive", displacement)
    runner.add("identity: F(x, x*) = ||x + x*||^2 / 4", fitzpatrick_identity)
    runner.add("rotation: resolvent matrix", resolvent)
    return runner


async def main() -> int:
    """Main entry point."""
    logger.info("=" * 80)
    logger.info("paramono - worked examples")
    logger.info("=" * 80)

    failures = await build_runner().run()

    logger.info("=" * 80)
    return failures


if __name__ == "__main__":
    sys.exit(1 if asyncio.run(main()) else 0)
