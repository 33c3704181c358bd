"""
Decorated oriented graphs on darts
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from ..exceptions import MalformedGraph, SpeciesMismatch
from ..models.graphs import GraphDocument, OrientationDocument, VertexDocument
from ..species import (
    SpeciesId,
    SpeciesTag,
    VertexStructure,
    is_fake,
    make_structure,
    payload_document,
    relabel,
    structure_from_document,
)


@dataclass(frozen=True)
class Orientation:
    """Vertex order plus one (tail, head) pair per edge"""
    vertex_order: Tuple[int, ...]
    directions: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class DecoratedGraph:
    """Graph whose vertex i carries structures[i]; edges are (tail, head) dart pairs.

    The position of a vertex in `structures` together with the stored edge
    directions is the graph's working orientation.
    """
    species: SpeciesId
    structures: Tuple[VertexStructure, ...]
    edges: Tuple[Tuple[int, int], ...]

    @cached_property
    def vertex_of(self) -> Dict[int, int]:
        return {d: i for i, v in enumerate(self.structures) for d in v.darts}

    @cached_property
    def partner(self) -> Dict[int, int]:
        partner = {}
        for t, h in self.edges:
            partner[t] = h
            partner[h] = t
        return partner

    @property
    def num_vertices(self) -> int:
        return len(self.structures)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def darts(self) -> List[int]:
        return sorted(self.vertex_of)

    @property
    def rank(self) -> int:
        """r = 1 - Euler characteristic"""
        return 1 - self.num_vertices + self.num_edges

    def is_loop(self, edge: Tuple[int, int]) -> bool:
        return self.vertex_of[edge[0]] == self.vertex_of[edge[1]]

    def edge_of(self, dart: int) -> Tuple[int, int]:
        other = self.partner[dart]
        for edge in self.edges:
            if edge == (dart, other) or edge == (other, dart):
                return edge
        raise MalformedGraph(f"dart {dart} is on no edge")

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        for t, h in self.edges:
            graph.add_edge(self.vertex_of[t], self.vertex_of[h])
        return graph

    def components(self) -> List[List[int]]:
        return sorted(sorted(c) for c in nx.connected_components(self.to_networkx()))

    def is_connected(self) -> bool:
        return self.num_vertices > 0 and nx.is_connected(self.to_networkx())

    def has_fake_vertex(self) -> bool:
        return any(is_fake(v) for v in self.structures)

    def all_fake(self) -> bool:
        return all(is_fake(v) for v in self.structures)

    def all_bivalent(self) -> bool:
        return all(v.valence == 2 for v in self.structures)

    def max_valence(self) -> int:
        return max((v.valence for v in self.structures), default=0)

    def validate(self) -> "DecoratedGraph":
        seen: Dict[int, int] = {}
        for i, v in enumerate(self.structures):
            if v.species != self.species:
                raise SpeciesMismatch(f"vertex {i} is a {v.species} structure in a {self.species} graph")
            if v.valence < 2:
                raise MalformedGraph(f"vertex {i} has fewer than two darts")
            for d in v.darts:
                if d in seen:
                    raise MalformedGraph(f"dart {d} belongs to vertices {seen[d]} and {i}")
                seen[d] = i
        edge_darts: List[int] = []
        for t, h in self.edges:
            if t == h:
                raise MalformedGraph(f"edge involution has a fixed point at dart {t}")
            edge_darts.extend((t, h))
        if len(edge_darts) != len(set(edge_darts)):
            raise MalformedGraph("a dart lies on two edges")
        if set(edge_darts) != set(seen):
            dangling = sorted(set(seen) ^ set(edge_darts))
            raise MalformedGraph(f"dangling darts {dangling}")
        return self


def standard_orientation(g: DecoratedGraph) -> Orientation:
    return Orientation(tuple(range(g.num_vertices)), tuple(g.edges))


def orient(g: DecoratedGraph, o: Optional[Orientation]) -> DecoratedGraph:
    """Re-present g so that vertex positions and edge tuples follow o"""
    if o is None:
        return g
    if sorted(o.vertex_order) != list(range(g.num_vertices)):
        raise MalformedGraph(f"orientation vertex order {o.vertex_order} does not cover the graph")
    wanted: Dict[FrozenSet[int], Tuple[int, int]] = {frozenset(d): tuple(d) for d in o.directions}
    known = {frozenset(edge) for edge in g.edges}
    if len(wanted) != len(o.directions) or not set(wanted) <= known:
        raise MalformedGraph("orientation directions do not match the edges")
    edges = tuple(wanted.get(frozenset(edge), edge) for edge in g.edges)
    structures = tuple(g.structures[i] for i in o.vertex_order)
    return DecoratedGraph(g.species, structures, edges)


def flip_edge(g: DecoratedGraph, edge: Tuple[int, int]) -> DecoratedGraph:
    edges = tuple((h, t) if (t, h) == edge else (t, h) for t, h in g.edges)
    return DecoratedGraph(g.species, g.structures, edges)


def permute_vertices(g: DecoratedGraph, order: Sequence[int]) -> DecoratedGraph:
    """New graph whose i-th vertex is the old vertex order[i]"""
    return DecoratedGraph(g.species, tuple(g.structures[i] for i in order), g.edges)


def relabel_darts(g: DecoratedGraph, mapping: Dict[int, int]) -> DecoratedGraph:
    structures = tuple(relabel(v, mapping) for v in g.structures)
    edges = tuple((mapping[t], mapping[h]) for t, h in g.edges)
    return DecoratedGraph(g.species, structures, edges)


def disjoint_union_graph(a: DecoratedGraph, b: DecoratedGraph) -> DecoratedGraph:
    """a's vertices first, then b's with darts shifted past a's"""
    if a.species != b.species:
        raise SpeciesMismatch(f"cannot join {a.species} and {b.species} graphs")
    shift = max(a.vertex_of, default=-1) + 1 - min(b.vertex_of, default=0)
    moved = relabel_darts(b, {d: d + shift for d in b.vertex_of})
    return DecoratedGraph(a.species, a.structures + moved.structures, a.edges + moved.edges)


def empty_graph(species: SpeciesId) -> DecoratedGraph:
    return DecoratedGraph(species, (), ())


def polygon(species: SpeciesId, k: int, labels: Optional[Sequence[int]] = None) -> DecoratedGraph:
    """k-gon: vertex i owns darts 2i (in) and 2i+1 (out); edges run 2i+1 -> 2i+2"""
    structures = []
    for i in range(k):
        darts = (2 * i, 2 * i + 1)
        if species.tag == SpeciesTag.GROUP:
            label = labels[i] if labels is not None else species.group.unit
            structures.append(make_structure(species, darts, label))
        elif species.tag == SpeciesTag.KK:
            structures.append(make_structure(species, darts, [darts]))
        else:
            structures.append(make_structure(species, darts))
    edges = tuple((2 * i + 1, (2 * i + 2) % (2 * k)) for i in range(k))
    return DecoratedGraph(species, tuple(structures), edges)


def graph_from_vertex_pairs(species: SpeciesId, pairs: Sequence[Tuple[int, int]],
                            num_vertices: Optional[int] = None,
                            payloads: Optional[Sequence[object]] = None) -> DecoratedGraph:
    """Edge i = (u, w) gets darts 2i at u and 2i+1 at w, directed u -> w.

    AA vertices take their darts in allocation order as cyclic order, KK
    vertices pair consecutive darts, GROUP vertices use payloads[i] with the
    first allocated dart as tail.
    """
    if num_vertices is None:
        num_vertices = 1 + max((max(p) for p in pairs), default=-1)
    incident: List[List[int]] = [[] for _ in range(num_vertices)]
    edges = []
    for i, (u, w) in enumerate(pairs):
        incident[u].append(2 * i)
        incident[w].append(2 * i + 1)
        edges.append((2 * i, 2 * i + 1))
    structures = []
    for v, darts in enumerate(incident):
        if species.tag == SpeciesTag.KK:
            chords = payloads[v] if payloads is not None else [tuple(darts[j:j + 2]) for j in range(0, len(darts), 2)]
            structures.append(make_structure(species, darts, chords))
        elif species.tag == SpeciesTag.GROUP:
            label = payloads[v] if payloads is not None else species.group.unit
            structures.append(make_structure(species, darts, label))
        elif species.tag == SpeciesTag.AA and payloads is not None:
            structures.append(make_structure(species, [darts[j] for j in payloads[v]]))
        else:
            structures.append(make_structure(species, darts))
    return DecoratedGraph(species, tuple(structures), tuple(edges)).validate()


def graph_to_document(g: DecoratedGraph, o: Optional[Orientation] = None) -> GraphDocument:
    o = o or standard_orientation(g)
    vertices = {
        str(i): VertexDocument(darts=list(v.darts), payload=payload_document(v))
        for i, v in enumerate(g.structures)
    }
    return GraphDocument(
        species=g.species.key,
        darts=g.darts,
        edges=[sorted(edge) for edge in g.edges],
        vertices=vertices,
        orientation=OrientationDocument(
            vertex_order=[str(i) for i in o.vertex_order],
            directions=[list(d) for d in o.directions],
        ),
    )


def graph_from_document(doc: GraphDocument, species: SpeciesId) -> Tuple[DecoratedGraph, Orientation]:
    if doc.species != species.key and not (species.tag == SpeciesTag.GROUP and doc.species.startswith("group")):
        raise SpeciesMismatch(f"document species {doc.species} does not match {species.key}")
    ids = sorted(doc.vertices, key=lambda name: (len(name), name))
    index = {name: i for i, name in enumerate(ids)}
    structures = tuple(
        structure_from_document(species, doc.vertices[name].darts, doc.vertices[name].payload)
        for name in ids
    )
    edges = tuple(tuple(edge) for edge in doc.edges)
    g = DecoratedGraph(species, structures, edges).validate()
    if sorted(g.darts) != sorted(doc.darts):
        raise MalformedGraph("dart list does not match vertices")
    if doc.orientation is None:
        return g, standard_orientation(g)
    try:
        order = tuple(index[name] for name in doc.orientation.vertex_order)
    except KeyError as e:
        raise MalformedGraph(f"orientation names unknown vertex {e}")
    directions = tuple(tuple(d) for d in doc.orientation.directions) or g.edges
    return g, Orientation(order, directions)
