"""
enumerate: list the basis classes of a window.
"""
import logging

from graphoplex.config import LimitsConfig
from graphoplex.graphs.enumeration import enumerate_basis
from graphoplex.models.common import BasisDocument, BasisListing, ClassEntry
from graphoplex.models.run import RunConfig

from .common import add_complex_argument, add_output_arguments, add_species_arguments, add_window_arguments, emit, \
    resolve_filter, resolve_species

logger = logging.getLogger(__name__)

CSV_HEADER = ("k", "r", "encoding", "vertices", "edges", "automorphisms")


def run_enumerate(run: RunConfig, limits: LimitsConfig) -> int:
    species = resolve_species(run)
    complex_filter = resolve_filter(run)
    window = run.window()
    listing = BasisListing(species=species.key, filter=complex_filter.value, window=window)
    rows = []
    for r in range(window.r_min, window.r_max + 1):
        for k in range(window.k_min, window.k_max + 1):
            if window.e_max is not None and k + r - 1 > window.e_max:
                continue
            basis = enumerate_basis(species, k, r, complex_filter, limits=limits)
            entries = [ClassEntry(encoding=c.encoding.hex(), vertices=c.graph.num_vertices,
                                  edges=c.graph.num_edges, automorphisms=c.automorphisms) for c in basis]
            listing.bases.append(BasisDocument(species=species.key, filter=complex_filter.value,
                                               k=k, r=r, classes=entries))
            rows.extend((k, r, e.encoding, e.vertices, e.edges, e.automorphisms) for e in entries)
            logger.info(f"k={k} r={r}: {len(basis)} classes")
    emit(run, listing, CSV_HEADER, rows)
    return 0


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("enumerate", parents=parents, help="List basis classes of a (k, r) window")
    add_species_arguments(parser)
    add_complex_argument(parser)
    add_window_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(handler=run_enumerate)
