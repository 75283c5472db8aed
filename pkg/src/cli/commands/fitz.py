"""``paramono fitz``: the Fitzpatrick function at one point."""

import argparse

from src.cli.loader import build_operator, effective_tol, parse_vector, read_spec
from src.cli.schemas.responses import FitzResponse
from src.models.gallery import BallConstrainedOperator
from src.services.fitzpatrick import fitzpatrick_service
from src.services.gallery import gallery_service


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "fitz", parents=[parent], help="Evaluate the Fitzpatrick function F_A(x, x*)"
    )
    parser.add_argument("input", nargs="?", help="Specification file (stdin when omitted or '-')")
    parser.add_argument("--x", required=True, help="Comma-separated x, e.g. --x=1,0 (write --x=-1,0 when the first entry is negative)")
    parser.add_argument("--xstar", required=True, help="Comma-separated x*, e.g. --xstar=0,-1 (the = form is required for a leading minus)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> FitzResponse:
    spec = read_spec(args.input)
    tol = effective_tol(spec, args.tol)
    x = parse_vector(args.x, "x")
    xstar = parse_vector(args.xstar, "xstar")
    operator = build_operator(spec, tol)
    if isinstance(operator, BallConstrainedOperator):
        value = gallery_service.ball_fitzpatrick(operator, x, xstar, tol)
    else:
        value = fitzpatrick_service.fitzpatrick_value(operator, x, xstar, tol)
    return FitzResponse.from_value(value)
