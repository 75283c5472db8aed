"""``paramono classify``: flags, modulus and witnesses of one operator."""

import argparse

from loguru import logger

from src.cli.loader import build_operator, effective_tol, read_spec
from src.cli.schemas.responses import ClassifyResponse
from src.cli.schemas.spec import OperatorSpec
from src.models.gallery import BallConstrainedOperator
from src.services.classify import classify_service
from src.services.gallery import gallery_service


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "classify",
        parents=[parent],
        help="Classify an operator (monotone, maximal, strict, paramonotone, rectangular)",
    )
    parser.add_argument("input", nargs="?", help="Specification file (stdin when omitted or '-')")
    parser.set_defaults(handler=run)


def classify_spec(spec: OperatorSpec, tol: float) -> ClassifyResponse:
    """Classification response of a parsed specification."""
    operator = build_operator(spec, tol)
    if isinstance(operator, BallConstrainedOperator):
        report = gallery_service.classify_ball(operator, tol)
    else:
        report = classify_service.classification_report(operator, tol)

    expected = None
    if spec.kind == "gallery":
        expected = gallery_service.entry(spec.gallery_name).expected
        mismatched = {k for k, v in expected.items() if report.flags().get(k) != v}
        if mismatched:
            logger.warning(f"Gallery operator {spec.gallery_name} deviates on {sorted(mismatched)}")
    return ClassifyResponse.from_report(report, spec.to_json_obj(), expected)


def run(args: argparse.Namespace) -> ClassifyResponse:
    spec = read_spec(args.input)
    return classify_spec(spec, effective_tol(spec, args.tol))
