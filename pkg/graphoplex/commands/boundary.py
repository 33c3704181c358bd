"""
boundary: export boundary matrices between adjacent degrees.
"""
import logging

from typing import Optional, Union

from graphoplex.complexes import boundary_matrix
from graphoplex.config import LimitsConfig
from graphoplex.graphs.enumeration import enumerate_basis
from graphoplex.models.run import RunConfig
from graphoplex.models.tables import MatrixDocument, MatrixEntry, MatrixListing

from .common import add_boundary_arguments, add_complex_argument, add_output_arguments, add_species_arguments, \
    add_window_arguments, emit, resolve_filter, resolve_species

logger = logging.getLogger(__name__)

CSV_HEADER = ("k", "r", "row", "col", "value")


def _n_label(kind: str, n: Union[int, str, None]) -> Optional[str]:
    if kind != "N":
        return None
    return "sym" if n is None else str(n)


def run_boundary(run: RunConfig, limits: LimitsConfig) -> int:
    species = resolve_species(run)
    complex_filter = resolve_filter(run)
    kind, n = run.boundary_kind(), run.parsed_n()
    window = run.window()
    listing = MatrixListing(species=species.key, filter=complex_filter.value, kind=kind, n=_n_label(kind, n))
    rows = []
    for r in range(window.r_min, window.r_max + 1):
        for k in range(max(window.k_min, 1), window.k_max + 1):
            if window.e_max is not None and k + r - 1 > window.e_max:
                continue
            source = enumerate_basis(species, k, r, complex_filter, limits=limits)
            target = enumerate_basis(species, k - 1, r, complex_filter, limits=limits)
            matrix = boundary_matrix(source, target, kind, complex_filter, n, limits=limits)
            entries = [MatrixEntry(row=i, col=j, value=value) for i, j, value in matrix.triplets()]
            listing.matrices.append(MatrixDocument(
                species=species.key, filter=complex_filter.value, kind=kind, n=_n_label(kind, n), k=k, r=r,
                rows=[encoding.hex() for encoding in matrix.rows],
                cols=[encoding.hex() for encoding in matrix.cols],
                entries=entries,
            ))
            rows.extend((k, r, e.row, e.col, e.value) for e in entries)
            logger.debug(f"k={k} r={r}: {len(entries)} nonzero entries")
    emit(run, listing, CSV_HEADER, rows)
    return 0


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("boundary", parents=parents, help="Export boundary matrices")
    add_species_arguments(parser)
    add_complex_argument(parser)
    add_window_arguments(parser)
    add_boundary_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(handler=run_boundary)
