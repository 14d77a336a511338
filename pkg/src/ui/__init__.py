"""Command-line interface for pcfprod."""

from .cli import build_parser, run

__all__ = [
    'build_parser',
    'run'
]
