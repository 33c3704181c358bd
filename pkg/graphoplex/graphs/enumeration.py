"""
Isomorphism-class bases of the graph complexes
"""

import itertools
import logging
import multiprocessing as mp

from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_edge_match, categorical_node_match
from sympy.utilities.iterables import partitions

from ..config import GraphConfig, LimitsConfig, get_graph_config, get_limits_config
from ..exceptions import ResourceLimit, UnsupportedFilter
from ..species import SpeciesId, SpeciesTag, is_fake, list_structures
from .canonical import SignedClass, canonical_class
from .model import DecoratedGraph, disjoint_union_graph, polygon

logger = logging.getLogger(__name__)


class ComplexFilter(str, Enum):
    FULL = "full"
    CONNECTED = "connected"
    QGRAPH = "qgraph"
    BIVALENT = "bivalent"
    FAKE_ALL = "fake"
    POLY = "poly"
    T_ALL = "tall"


CONNECTED_FILTERS = {ComplexFilter.CONNECTED, ComplexFilter.QGRAPH, ComplexFilter.BIVALENT, ComplexFilter.POLY}
BIVALENT_FILTERS = {ComplexFilter.BIVALENT, ComplexFilter.FAKE_ALL, ComplexFilter.POLY, ComplexFilter.T_ALL}
FAKE_FILTERS = {ComplexFilter.FAKE_ALL, ComplexFilter.POLY}


def in_filter(g: DecoratedGraph, complex_filter: ComplexFilter) -> bool:
    if complex_filter == ComplexFilter.FULL:
        return True
    if complex_filter in CONNECTED_FILTERS and not g.is_connected():
        return False
    if complex_filter in BIVALENT_FILTERS and not g.all_bivalent():
        return False
    if complex_filter in FAKE_FILTERS and not g.all_fake():
        return False
    if complex_filter == ComplexFilter.QGRAPH:
        return not g.has_fake_vertex() and g.max_valence() > 2
    return True


def degree_sequences(species: SpeciesId, k: int, e: int) -> Iterator[Tuple[int, ...]]:
    """Non-increasing valence sequences of k vertices with 2e darts"""
    total = 2 * e
    step = 2 if species.tag == SpeciesTag.KK else 1

    def extend(prefix: List[int], remaining: int, slots: int):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        upper = remaining - 2 * (slots - 1)
        if prefix:
            upper = min(upper, prefix[-1])
        for d in range(upper, 1, -1):
            if step == 2 and d % 2:
                continue
            yield from extend(prefix + [d], remaining - d, slots - 1)

    yield from extend([], total, k)


def labeled_multigraphs(degrees: Sequence[int]) -> Iterator[Dict[Tuple[int, int], int]]:
    """Edge multiplicities (i <= j, loops at i == i) realizing the degrees"""
    k = len(degrees)

    def fill(i: int, remaining: List[int], adjacency: Dict[Tuple[int, int], int]):
        if i == k:
            yield dict(adjacency)
            return
        for loops in range(remaining[i] // 2, -1, -1):
            left = remaining[i] - 2 * loops
            for spread in _spreads(left, [remaining[j] for j in range(i + 1, k)]):
                chosen = dict(adjacency)
                if loops:
                    chosen[(i, i)] = loops
                rest = list(remaining)
                rest[i] = 0
                for offset, m in enumerate(spread):
                    if m:
                        chosen[(i, i + 1 + offset)] = m
                        rest[i + 1 + offset] -= m
                yield from fill(i + 1, rest, chosen)

    yield from fill(0, list(degrees), {})


def _spreads(amount: int, capacities: List[int]) -> Iterator[Tuple[int, ...]]:
    if not capacities:
        if amount == 0:
            yield ()
        return
    if amount > sum(capacities):
        return
    for first in range(min(amount, capacities[0]), -1, -1):
        for rest in _spreads(amount - first, capacities[1:]):
            yield (first,) + rest


def _as_networkx(k: int, adjacency: Dict[Tuple[int, int], int]) -> nx.Graph:
    graph = nx.Graph()
    for v in range(k):
        graph.add_node(v, loops=adjacency.get((v, v), 0))
    for (i, j), m in adjacency.items():
        if i != j:
            graph.add_edge(i, j, m=m)
    return graph


def unlabeled_multigraphs(degrees: Sequence[int], connected: bool) -> List[Dict[Tuple[int, int], int]]:
    """One representative per isomorphism class of loopy multigraphs"""
    k = len(degrees)
    node_match = categorical_node_match("loops", 0)
    edge_match = categorical_edge_match("m", 1)
    buckets: Dict[str, List[nx.Graph]] = {}
    found = []
    for adjacency in labeled_multigraphs(degrees):
        graph = _as_networkx(k, adjacency)
        if connected and not nx.is_connected(graph):
            continue
        for v in graph.nodes:
            graph.nodes[v]["label"] = f"{graph.degree(v)}:{graph.nodes[v]['loops']}"
        for u, w in graph.edges:
            graph.edges[u, w]["label"] = str(graph.edges[u, w]["m"])
        key = nx.weisfeiler_lehman_graph_hash(graph, node_attr="label", edge_attr="label")
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other, node_match=node_match, edge_match=edge_match) for other in bucket):
            continue
        bucket.append(graph)
        found.append(adjacency)
    return found


def _dart_layout(k: int, adjacency: Dict[Tuple[int, int], int]) -> Tuple[List[List[int]], List[Tuple[int, int]]]:
    incident: List[List[int]] = [[] for _ in range(k)]
    edges = []
    dart = 0
    for (i, j) in sorted(adjacency):
        for _ in range(adjacency[(i, j)]):
            incident[i].append(dart)
            incident[j].append(dart + 1)
            edges.append((dart, dart + 1))
            dart += 2
    return incident, edges


def _classes_for_multigraph(args) -> List[SignedClass]:
    species, k, adjacency, complex_filter, config = args
    incident, edges = _dart_layout(k, adjacency)
    choices = []
    for darts in incident:
        options = list_structures(species, darts)
        if complex_filter in FAKE_FILTERS:
            options = [v for v in options if is_fake(v)]
        elif complex_filter == ComplexFilter.QGRAPH:
            options = [v for v in options if not is_fake(v)]
        if not options:
            return []
        choices.append(options)
    found: Dict[bytes, SignedClass] = {}
    for structures in itertools.product(*choices):
        g = DecoratedGraph(species, tuple(structures), tuple(edges))
        if not in_filter(g, complex_filter):
            continue
        cls = canonical_class(g, config=config)
        if cls.is_zero or cls.encoding in found:
            continue
        found[cls.encoding] = SignedClass(cls.encoding, 1, cls.graph, cls.automorphisms)
    return list(found.values())


def necklaces(m: int, alphabet: int) -> Iterator[Tuple[int, ...]]:
    """Least rotations of the length-m words over range(alphabet), each once"""
    word = [0] * (m + 1)

    def extend(t: int, p: int):
        if t > m:
            if m % p == 0:
                yield tuple(word[1:])
            return
        word[t] = word[t - p]
        yield from extend(t + 1, p)
        for letter in range(word[t - p] + 1, alphabet):
            word[t] = letter
            yield from extend(t + 1, t)

    if m > 0 and alphabet > 0:
        yield from extend(1, 1)


def _least_rotation(word: Sequence[int]) -> Tuple[int, ...]:
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word)))


def decorated_cycles(species: SpeciesId, m: int) -> List[Optional[Tuple[int, ...]]]:
    """Bivalent m-cycles up to isomorphism.

    GROUP cycles are label words read along the cycle, one per class under
    rotation and starred reversal; other species have a single cycle (None).
    """
    if species.tag != SpeciesTag.GROUP:
        return [None]
    group = species.group
    found = []
    for word in necklaces(m, group.order):
        mirrored = _least_rotation([group.conj(g) for g in reversed(word)])
        if word <= mirrored:
            found.append(word)
    return found


def _nonzero_cycles(species: SpeciesId, m: int, complex_filter: ComplexFilter,
                    config: GraphConfig) -> List[DecoratedGraph]:
    # a zero cycle makes every union containing it zero
    cycles = []
    for word in decorated_cycles(species, m):
        g = polygon(species, m, labels=word)
        if complex_filter in FAKE_FILTERS and not g.all_fake():
            continue
        if not canonical_class(g, config=config).is_zero:
            cycles.append(g)
    return cycles


def cycle_unions(species: SpeciesId, k: int, complex_filter: ComplexFilter,
                 config: GraphConfig) -> Iterator[Tuple[DecoratedGraph, ...]]:
    """Multisets of nonzero decorated cycles with k vertices in total"""
    if complex_filter in CONNECTED_FILTERS:
        yield from ((g,) for g in _nonzero_cycles(species, k, complex_filter, config))
        return
    cycles = {m: _nonzero_cycles(species, m, complex_filter, config) for m in range(1, k + 1)}
    for parts in partitions(k):
        choices = [list(itertools.combinations_with_replacement(cycles[m], count))
                   for m, count in sorted(parts.items())]
        for picked in itertools.product(*choices):
            yield tuple(g for group in picked for g in group)


def _class_for_cycle_union(args) -> List[SignedClass]:
    species, components, complex_filter, config = args
    g = components[0]
    for other in components[1:]:
        g = disjoint_union_graph(g, other)
    if not in_filter(g, complex_filter):
        return []
    cls = canonical_class(g, config=config)
    if cls.is_zero:
        return []
    return [SignedClass(cls.encoding, 1, cls.graph, cls.automorphisms)]


def _bivalent_shards(species: SpeciesId, k: int, e: int, complex_filter: ComplexFilter,
                     config: GraphConfig) -> List[Tuple]:
    if e != k or complex_filter == ComplexFilter.QGRAPH:
        return []
    return [(species, components, complex_filter, config)
            for components in cycle_unions(species, k, complex_filter, config)]


_BASIS_CACHE: Dict[Tuple, List[SignedClass]] = {}


def enumerate_basis(species: SpeciesId, k: int, r: int, complex_filter: ComplexFilter = ComplexFilter.FULL,
                    config: Optional[GraphConfig] = None, limits: Optional[LimitsConfig] = None) -> List[SignedClass]:
    """Nonzero classes with k vertices and e = k + r - 1 edges, sorted by encoding"""
    if config is None:
        config = get_graph_config()
    if limits is None:
        limits = get_limits_config()
    complex_filter = ComplexFilter(complex_filter)
    e = k + r - 1
    if k <= 0 or r < 0 or e < 0:
        return []
    if k > limits.max_vertices or e > limits.max_edges:
        raise ResourceLimit(f"window k={k}, e={e} exceeds limits k<={limits.max_vertices}, e<={limits.max_edges}")

    cache_key = (species, k, r, complex_filter, config.loop_sign)
    if cache_key in _BASIS_CACHE:
        return list(_BASIS_CACHE[cache_key])

    if species.tag == SpeciesTag.GROUP or complex_filter in BIVALENT_FILTERS:
        # every vertex is bivalent: graphs are unions of cycles
        shards = _bivalent_shards(species, k, e, complex_filter, config)
        worker = _class_for_cycle_union
    else:
        connected = complex_filter in CONNECTED_FILTERS
        shards = [(species, k, adjacency, complex_filter, config)
                  for degrees in degree_sequences(species, k, e)
                  for adjacency in unlabeled_multigraphs(degrees, connected)]
        worker = _classes_for_multigraph

    if limits.jobs > 1 and len(shards) > 1:
        with mp.Pool(processes=limits.jobs) as pool:
            results = pool.map(worker, shards)
    else:
        results = [worker(shard) for shard in shards]

    merged: Dict[bytes, SignedClass] = {}
    for classes in results:
        for cls in classes:
            merged.setdefault(cls.encoding, cls)
            if len(merged) > limits.max_cells:
                raise ResourceLimit(
                    f"basis for {species} k={k} r={r} {complex_filter.value} exceeds {limits.max_cells} cells"
                )
    basis = [merged[key] for key in sorted(merged)]
    logger.info(f"Enumerated {len(basis)} classes for {species} k={k} r={r} filter={complex_filter.value} "
                f"from {len(shards)} shards")
    _BASIS_CACHE[cache_key] = basis
    return list(basis)


def clear_basis_cache() -> None:
    _BASIS_CACHE.clear()


def check_filter_support(kind: str, complex_filter: ComplexFilter) -> None:
    """Quasi-edge contraction can disconnect a graph; connected filters only carry dE"""
    if kind != "E" and ComplexFilter(complex_filter) in CONNECTED_FILTERS:
        raise UnsupportedFilter(f"boundary {kind} does not preserve the {ComplexFilter(complex_filter).value} complex")
