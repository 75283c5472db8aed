"""``paramono modulus``: cocoercivity modulus of a monotone matrix."""

import argparse

from src.cli.loader import build_operator, effective_tol, read_spec
from src.cli.schemas.responses import ModulusResponse, encode_extended
from src.exceptions import OutOfDomainError
from src.models.gallery import BallConstrainedOperator
from src.services.classify import classify_service
from src.services.relation import relation_service


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "modulus", parents=[parent], help="Largest beta with <x, Mx> >= beta ||Mx||^2"
    )
    parser.add_argument("input", nargs="?", help="Specification file (stdin when omitted or '-')")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> ModulusResponse:
    spec = read_spec(args.input)
    tol = effective_tol(spec, args.tol)
    operator = build_operator(spec, tol)
    if isinstance(operator, BallConstrainedOperator):
        raise OutOfDomainError("the modulus is defined for linear single-valued operators only")
    beta = classify_service.cocoercivity_modulus(relation_service.to_matrix(operator), tol)
    return ModulusResponse(cocoercivity_modulus=encode_extended(beta))
