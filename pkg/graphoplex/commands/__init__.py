"""
Subcommands of the graphoplex command line.
"""
from graphoplex.commands import basis, boundary, homology, verify


def register_commands(subparsers, parents, runner) -> None:
    basis.register(subparsers, parents)
    boundary.register(subparsers, parents)
    homology.register(subparsers, parents)
    verify.register(subparsers, parents, runner)
