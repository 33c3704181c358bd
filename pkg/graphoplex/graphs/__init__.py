from graphoplex.graphs.model import (
    DecoratedGraph,
    Orientation,
    disjoint_union_graph,
    empty_graph,
    flip_edge,
    graph_from_document,
    graph_from_vertex_pairs,
    graph_to_document,
    orient,
    permute_vertices,
    polygon,
    standard_orientation,
)
from graphoplex.graphs.canonical import (
    ZERO,
    SignedClass,
    automorphism_order,
    canonical_class,
    has_reversing_automorphism,
    permutation_sign,
)
from graphoplex.graphs.enumeration import ComplexFilter, enumerate_basis, in_filter

__all__ = [
    "DecoratedGraph", "Orientation", "disjoint_union_graph", "empty_graph", "flip_edge",
    "graph_from_document", "graph_from_vertex_pairs", "graph_to_document", "orient",
    "permute_vertices", "polygon", "standard_orientation",
    "ZERO", "SignedClass", "automorphism_order", "canonical_class", "has_reversing_automorphism",
    "permutation_sign", "ComplexFilter", "enumerate_basis", "in_filter",
]
