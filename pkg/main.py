"""paramono - Main entry point.

Numerical toolkit for monotone linear relations on R^n:
- exact Fitzpatrick functions from graph bases
- paramonotonicity and rectangularity with cross-checked decision methods
- cocoercivity moduli, resolvents and displacement mappings
- a gallery of operators with known classification
"""

from loguru import logger

from src.cli.app import run
from src.config import settings


def main() -> None:
    """Run the paramono command-line application."""
    logger.info("=" * 80)
    logger.info("paramono starting...")
    logger.info("=" * 80)
    logger.info(f"Tolerance: {settings.tol:g}")
    logger.info(f"Angle tolerance: {settings.angle_tol:g}")
    logger.info(f"Log Level: {settings.log_level}")
    logger.info(f"Output Format: {settings.output_format}")
    logger.info("=" * 80)

    raise SystemExit(run())


if __name__ == "__main__":
    main()
