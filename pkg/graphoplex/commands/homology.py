"""
homology and group-homology: Betti tables of a filtered complex.
"""
import logging

from graphoplex.config import LimitsConfig
from graphoplex.exceptions import UsageError
from graphoplex.linalg import betti_table, euler_characteristics
from graphoplex.models.run import RunConfig
from graphoplex.models.tables import BettiTable
from graphoplex.species import SpeciesTag
from graphoplex.utils import csv_rows_from_models

from .common import add_boundary_arguments, add_complex_argument, add_output_arguments, add_species_arguments, \
    add_window_arguments, emit, resolve_filter, resolve_species

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("k", "r", "dim", "rank_out", "rank_in", "betti", "exact")


def _table(run: RunConfig, limits: LimitsConfig, require_group: bool = False) -> BettiTable:
    species = resolve_species(run)
    if require_group and species.tag != SpeciesTag.GROUP:
        raise UsageError(f"--species: group-homology needs a group species, got {species}")
    window = run.window()
    r_values = list(range(window.r_min, window.r_max + 1))
    table = betti_table(species, resolve_filter(run), r_values, window.k_max, kind=run.boundary_kind(),
                        n=run.parsed_n(), k_min=max(window.k_min, 1), limits=limits)
    for r in r_values:
        dims, bettis = euler_characteristics(table, r)
        logger.info(f"r={r}: alternating sums dim={dims} betti={bettis}")
    return table


def _emit_table(run: RunConfig, table: BettiTable) -> int:
    emit(run, table, CSV_COLUMNS, csv_rows_from_models(table.rows, CSV_COLUMNS))
    return 0


def run_homology(run: RunConfig, limits: LimitsConfig) -> int:
    return _emit_table(run, _table(run, limits))


def run_group_homology(run: RunConfig, limits: LimitsConfig) -> int:
    table = _table(run, limits, require_group=True)
    logger.info(f"Nonzero homology of {table.species} in degrees {table.nonzero_degrees()}")
    return _emit_table(run, table)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("homology", parents=parents, help="Betti table of a filtered complex")
    add_species_arguments(parser)
    add_complex_argument(parser)
    add_window_arguments(parser)
    add_boundary_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(handler=run_homology)

    group = subparsers.add_parser("group-homology", parents=parents,
                                  help="Betti table of a group species (connected polygons by default)")
    add_species_arguments(group, default="group:trivial")
    add_complex_argument(group, default="connected")
    add_window_arguments(group, k_max=12, r_min=1, r_max=1)
    add_boundary_arguments(group)
    add_output_arguments(group)
    group.set_defaults(handler=run_group_homology)
