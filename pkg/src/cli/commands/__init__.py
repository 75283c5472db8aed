"""Subcommands of the paramono CLI; each module exposes ``register`` and ``run``."""

from . import classify, fitz, gallery, modulus, sweep

COMMANDS = (classify, fitz, modulus, gallery, sweep)

__all__ = ["COMMANDS"]
