"""
Canonical labeling with orientation signs.

Individualize-and-refine over darts: colours start from the local role of
each dart, are refined by partner, payload neighbour and vertex-mate
colours, and every non-discrete partition branches on its first
non-singleton cell. Each discrete leaf is a dart labeling; the smallest
leaf encoding is the canonical form and the leaves attaining it are in
bijection with the automorphisms.
"""

import json
import logging

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from ..config import GraphConfig, get_graph_config
from ..exceptions import ResourceLimit
from ..species import dart_neighbor, dart_role, relabel
from .model import DecoratedGraph, Orientation, orient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignedClass:
    """Isomorphism class with a sign relative to its reference orientation.

    `encoding` is None for the Zero class. `graph` is the canonical
    representative carrying the reference orientation.
    """
    encoding: Optional[bytes]
    sign: int
    graph: Optional[DecoratedGraph] = field(default=None, compare=False, repr=False)
    automorphisms: Optional[int] = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.encoding is None

    def __neg__(self) -> "SignedClass":
        if self.is_zero:
            return self
        return SignedClass(self.encoding, -self.sign, self.graph, self.automorphisms)


ZERO = SignedClass(None, 0)


def permutation_sign(images: Sequence[int]) -> int:
    if len(images) < 2:
        return 1
    return Permutation(list(images)).signature()


class _ZeroFound(Exception):
    pass


@dataclass
class _SearchResult:
    encoding: Tuple
    sign: int
    labels: List[int]
    leaves_at_min: int
    zero: bool


class CanonicalSearch:
    """One canonical labeling run over the darts of an oriented graph"""

    def __init__(self, g: DecoratedGraph, config: Optional[GraphConfig] = None):
        if config is None:
            config = get_graph_config()
        self.config = config
        self.graph = g
        darts = g.darts
        self.darts = darts
        pos = {d: i for i, d in enumerate(darts)}
        self.pos = pos
        self.vertex = [g.vertex_of[d] for d in darts]
        self.partner = [pos[g.partner[d]] for d in darts]
        neighbors = []
        roles = []
        for d in darts:
            v = g.structures[g.vertex_of[d]]
            nb = dart_neighbor(v, d)
            neighbors.append(pos[nb] if nb is not None else -1)
            roles.append(dart_role(v, d))
        self.neighbor = neighbors
        self.role = roles
        self.mates = [
            [pos[x] for x in g.structures[g.vertex_of[d]].darts if x != d] for d in darts
        ]
        self.edges = [(pos[t], pos[h]) for t, h in g.edges]
        self.leaves = 0

    def _rank(self, keys: List) -> List[int]:
        order = {key: i for i, key in enumerate(sorted(set(keys)))}
        return [order[key] for key in keys]

    def initial_colours(self) -> List[int]:
        return self._rank([(self.role[i], len(self.mates[i])) for i in range(len(self.darts))])

    def refine(self, colours: List[int]) -> List[int]:
        cells = len(set(colours))
        while True:
            keys = [
                (
                    colours[i],
                    colours[self.partner[i]],
                    colours[self.neighbor[i]] if self.neighbor[i] >= 0 else -1,
                    tuple(sorted(colours[m] for m in self.mates[i])),
                )
                for i in range(len(colours))
            ]
            colours = self._rank(keys)
            new_cells = len(set(colours))
            if new_cells == cells:
                return colours
            cells = new_cells

    def leaf(self, labels: List[int]) -> Tuple[Tuple, int]:
        """Encoding and orientation sign of the labeling"""
        num_vertices = self.graph.num_vertices
        first_label = [len(labels)] * num_vertices
        for i, label in enumerate(labels):
            v = self.vertex[i]
            if label < first_label[v]:
                first_label[v] = label
        vertex_rank = sorted(range(num_vertices), key=lambda v: first_label[v])
        canonical_vertex = [0] * num_vertices
        for rank, v in enumerate(vertex_rank):
            canonical_vertex[v] = rank

        by_label = [0] * len(labels)
        for i, label in enumerate(labels):
            by_label[label] = i
        encoding = tuple(
            (
                canonical_vertex[self.vertex[i]],
                labels[self.partner[i]],
                labels[self.neighbor[i]] if self.neighbor[i] >= 0 else -1,
            ) + tuple(self.role[i])
            for i in by_label
        )

        sign = permutation_sign(canonical_vertex)
        for t, h in self.edges:
            vt, vh = canonical_vertex[self.vertex[t]], canonical_vertex[self.vertex[h]]
            if vt != vh:
                if vt > vh:
                    sign = -sign
            elif self.config.loop_sign and labels[t] > labels[h]:
                sign = -sign
        return encoding, sign

    def run(self, stop_on_zero: bool) -> _SearchResult:
        seen: Dict[Tuple, int] = {}
        best: Dict[str, object] = {"encoding": None, "sign": 0, "labels": None, "count": 0}
        zero = False

        def visit(colours: List[int]):
            nonlocal zero
            colours = self.refine(colours)
            n = len(colours)
            sizes: Dict[int, int] = {}
            for c in colours:
                sizes[c] = sizes.get(c, 0) + 1
            target = min((c for c, size in sizes.items() if size > 1), default=None)
            if target is None:
                self.leaves += 1
                if self.leaves > self.config.max_leaves:
                    raise ResourceLimit(f"canonical search exceeded {self.config.max_leaves} leaves")
                encoding, sign = self.leaf(colours)
                previous = seen.get(encoding)
                if previous is None:
                    seen[encoding] = sign
                elif previous != sign:
                    zero = True
                    if stop_on_zero:
                        raise _ZeroFound()
                if best["encoding"] is None or encoding < best["encoding"]:
                    best.update(encoding=encoding, sign=sign, labels=colours, count=1)
                elif encoding == best["encoding"]:
                    best["count"] += 1
                return
            for i in range(n):
                if colours[i] != target:
                    continue
                visit([2 * c + (1 if c == target and j != i else 0) for j, c in enumerate(colours)])

        try:
            visit(self.initial_colours())
        except _ZeroFound:
            return _SearchResult((), 0, [], 0, True)
        return _SearchResult(best["encoding"], best["sign"], best["labels"], best["count"], zero)

    def representative(self, labels: List[int]) -> DecoratedGraph:
        """Graph on darts 0..n-1 in canonical vertex order with reference directions"""
        g = self.graph
        mapping = {self.darts[i]: labels[i] for i in range(len(labels))}
        first = {}
        for v, s in enumerate(g.structures):
            first[v] = min(mapping[d] for d in s.darts)
        order = sorted(range(g.num_vertices), key=lambda v: first[v])
        rank = {v: r for r, v in enumerate(order)}
        structures = tuple(relabel(g.structures[v], mapping) for v in order)
        edges = []
        for t, h in g.edges:
            a, b = mapping[t], mapping[h]
            va, vb = rank[g.vertex_of[t]], rank[g.vertex_of[h]]
            if (va, a) > (vb, b):
                a, b = b, a
            edges.append((a, b))
        return DecoratedGraph(g.species, structures, tuple(sorted(edges)))


def encode(species_key: str, num_vertices: int, num_edges: int, encoding: Tuple) -> bytes:
    return json.dumps([species_key, num_vertices, num_edges, [list(x) for x in encoding]],
                      separators=(",", ":")).encode("ascii")


def _empty_class(g: DecoratedGraph) -> SignedClass:
    return SignedClass(encode(g.species.key, 0, 0, ()), 1, g, 1)


def canonical_class(g: DecoratedGraph, o: Optional[Orientation] = None,
                    config: Optional[GraphConfig] = None) -> SignedClass:
    """Canonical class of g under orientation o (default: its stored orientation).

    The search stops at the first orientation-reversing automorphism; for
    nonzero classes every leaf is visited, so `automorphisms` is exact.
    """
    if config is None:
        config = get_graph_config()
    g = orient(g, o).validate()
    if g.num_vertices == 0:
        return _empty_class(g)
    search = CanonicalSearch(g, config)
    result = search.run(stop_on_zero=True)
    if result.zero:
        return ZERO
    return SignedClass(
        encode(g.species.key, g.num_vertices, g.num_edges, result.encoding),
        result.sign,
        search.representative(result.labels),
        result.leaves_at_min,
    )


def automorphism_order(g: DecoratedGraph, config: Optional[GraphConfig] = None) -> int:
    g.validate()
    if g.num_vertices == 0:
        return 1
    return CanonicalSearch(g, config).run(stop_on_zero=False).leaves_at_min


def has_reversing_automorphism(g: DecoratedGraph, config: Optional[GraphConfig] = None) -> bool:
    g.validate()
    if g.num_vertices == 0:
        return False
    return CanonicalSearch(g, config).run(stop_on_zero=True).zero
