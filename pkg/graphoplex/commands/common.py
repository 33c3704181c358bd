"""
Shared flags and output handling for the subcommands.
"""
import argparse
import csv
import json
import sys

from typing import Any, Iterable, Sequence

from pydantic import BaseModel

from graphoplex.exceptions import UsageError
from graphoplex.graphs.enumeration import ComplexFilter
from graphoplex.models.run import BOUNDARY_FLAGS, FORMATS, STARS, RunConfig
from graphoplex.species import SpeciesId, parse_species
from graphoplex.utils import to_json_text, write_csv_artifact, write_json_artifact


def add_species_arguments(parser: argparse.ArgumentParser, default: str = "cc") -> None:
    parser.add_argument("--species", default=default,
                        help="cc, aa, kk, group:NAME, or group with --group-table")
    parser.add_argument("--group-table", dest="group_table", default=None,
                        help="JSON group table file for species 'group'")
    parser.add_argument("--star", choices=STARS, default="table",
                        help="Star involution for --group-table")


def add_window_arguments(parser: argparse.ArgumentParser, k_max: int = 4, r_min: int = 0, r_max: int = 2) -> None:
    parser.add_argument("--kmin", dest="k_min", type=int, default=1, help="Smallest vertex count")
    parser.add_argument("--kmax", dest="k_max", type=int, default=k_max, help="Largest vertex count")
    parser.add_argument("--rmin", dest="r_min", type=int, default=r_min, help="Smallest rank r = 1 - chi")
    parser.add_argument("--rmax", dest="r_max", type=int, default=r_max, help="Largest rank r = 1 - chi")
    parser.add_argument("--emax", dest="e_max", type=int, default=None, help="Largest edge count")


def add_complex_argument(parser: argparse.ArgumentParser, default: str = "full") -> None:
    parser.add_argument("--complex", choices=[f.value for f in ComplexFilter], default=default,
                        help="Subcomplex to work in")


def add_boundary_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--boundary", choices=list(BOUNDARY_FLAGS), default="dE", help="Boundary operator")
    parser.add_argument("--n", default=None, help="n for dN: a nonnegative integer or 'sym'")


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="both", help="Artifact format")
    parser.add_argument("--output", default=None,
                        help="Artifact path without extension; prints JSON to stdout when omitted")


def resolve_species(run: RunConfig) -> SpeciesId:
    return parse_species(run.species, run.group_table, run.star)


def resolve_filter(run: RunConfig) -> ComplexFilter:
    try:
        return ComplexFilter(run.complex)
    except ValueError:
        raise UsageError(f"--complex: unknown complex {run.complex!r}")


def emit(run: RunConfig, document: BaseModel, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write the document as JSON and its table as CSV, or print when no --output is given"""
    rows = list(rows)
    if run.output is None:
        if run.format == "csv":
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        else:
            sys.stdout.write(to_json_text(document))
        return
    if run.format in ("json", "both"):
        write_json_artifact(document, f"{run.output}.json", kind=run.command)
    if run.format in ("csv", "both"):
        write_csv_artifact(header, rows, f"{run.output}.csv", kind=run.command)


def witness_text(witness: dict) -> str:
    return json.dumps(witness, sort_keys=True)
