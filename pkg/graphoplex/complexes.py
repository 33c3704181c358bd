"""
Chain vectors, boundary operators and boundary matrices.

dE contracts non-loop edges, dH contracts quasi-edges (pairs of darts on
different vertices that are not an edge), dN(n) = 2n*dE + dH and the
coboundary dE* expands ideal edges.
"""

import itertools
import logging
import math
import multiprocessing as mp

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import Poly

from .config import GraphConfig, LimitsConfig, get_graph_config, get_limits_config
from .exceptions import BasisMismatch, IsActualEdge, LoopContraction, MalformedGraph, QuasiLoop
from .graphs.canonical import SignedClass, canonical_class, permutation_sign
from .graphs.enumeration import ComplexFilter, check_filter_support
from .graphs.model import DecoratedGraph, Orientation, orient
from .polynomials import evaluate_at_n, poly_text, rat_poly
from .species import ideal_expansions, is_fake, mate

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class BoundaryKind(str, Enum):
    E = "E"
    H = "H"
    N = "N"


class ChainVector:
    """Sparse rational combination of nonzero classes keyed by encoding.

    Each stored encoding keeps its canonical representative graph so that
    operators can act on the term without re-enumerating.
    """

    def __init__(self, terms: Optional[Dict[bytes, Scalar]] = None,
                 graphs: Optional[Dict[bytes, DecoratedGraph]] = None):
        self.terms: Dict[bytes, Fraction] = {}
        self.graphs: Dict[bytes, DecoratedGraph] = {}
        graphs = graphs or {}
        for encoding, coeff in (terms or {}).items():
            if coeff:
                if graphs.get(encoding) is None:
                    raise MalformedGraph(f"chain term {encoding!r} has no representative graph")
                self.terms[encoding] = Fraction(coeff)
                self.graphs[encoding] = graphs[encoding]

    @classmethod
    def from_class(cls, c: SignedClass, coeff: Scalar = 1) -> "ChainVector":
        chain = cls()
        chain.add_class(c, coeff)
        return chain

    @classmethod
    def from_graph(cls, g: DecoratedGraph, o: Optional[Orientation] = None, coeff: Scalar = 1,
                   config: Optional[GraphConfig] = None) -> "ChainVector":
        return cls.from_class(canonical_class(g, o, config), coeff)

    def add_class(self, c: SignedClass, coeff: Scalar = 1) -> None:
        if c.is_zero or not coeff:
            return
        self.add_term(c.encoding, coeff * c.sign, c.graph)

    def add_term(self, encoding: bytes, coeff: Scalar, graph: Optional[DecoratedGraph] = None) -> None:
        if not coeff:
            return
        if graph is None and encoding not in self.graphs:
            raise MalformedGraph(f"chain term {encoding!r} has no representative graph")
        value = self.terms.get(encoding, Fraction(0)) + coeff
        if value:
            self.terms[encoding] = value
            if graph is not None:
                self.graphs.setdefault(encoding, graph)
        else:
            self.terms.pop(encoding, None)

    def items(self) -> Iterator[Tuple[bytes, Fraction, DecoratedGraph]]:
        for encoding in sorted(self.terms):
            yield encoding, self.terms[encoding], self.graphs.get(encoding)

    def coefficient(self, encoding: bytes) -> Fraction:
        return self.terms.get(encoding, Fraction(0))

    def encodings(self) -> List[bytes]:
        return sorted(self.terms)

    def copy(self) -> "ChainVector":
        chain = ChainVector()
        chain.terms = dict(self.terms)
        chain.graphs = dict(self.graphs)
        return chain

    def scale(self, factor: Scalar) -> "ChainVector":
        chain = ChainVector()
        if factor:
            chain.terms = {key: value * factor for key, value in self.terms.items()}
            chain.graphs = dict(self.graphs)
        return chain

    def __add__(self, other: "ChainVector") -> "ChainVector":
        chain = self.copy()
        for encoding, coeff, graph in other.items():
            chain.add_term(encoding, coeff, graph)
        return chain

    def __sub__(self, other: "ChainVector") -> "ChainVector":
        return self + other.scale(-1)

    def __neg__(self) -> "ChainVector":
        return self.scale(-1)

    def __rmul__(self, factor: Scalar) -> "ChainVector":
        return self.scale(factor)

    def __mul__(self, factor: Scalar) -> "ChainVector":
        return self.scale(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainVector):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"ChainVector({len(self.terms)} terms)"


def chain_sum(chains: Iterable[ChainVector]) -> ChainVector:
    total = ChainVector()
    for chain in chains:
        for encoding, coeff, graph in chain.items():
            total.add_term(encoding, coeff, graph)
    return total


@dataclass(frozen=True)
class QuasiEdge:
    dart_1: int
    dart_2: int

    def __post_init__(self):
        if self.dart_1 == self.dart_2:
            raise MalformedGraph(f"quasi-edge needs two distinct darts, got {self.dart_1} twice")

    def is_quasi_loop(self, g: DecoratedGraph) -> bool:
        return g.vertex_of[self.dart_1] == g.vertex_of[self.dart_2]

    def is_edge(self, g: DecoratedGraph) -> bool:
        return g.partner.get(self.dart_1) == self.dart_2


def _stored_edge(g: DecoratedGraph, e: Sequence[int]) -> Tuple[int, int]:
    wanted = set(e)
    for edge in g.edges:
        if set(edge) == wanted:
            return edge
    raise MalformedGraph(f"{tuple(e)} is not an edge")


def _flip_sign(g: DecoratedGraph, edge: Tuple[int, int], config: GraphConfig) -> int:
    if g.is_loop(edge) and not config.loop_sign:
        return 1
    return -1


def _contracted(g: DecoratedGraph, tail: int, head: int) -> Tuple[DecoratedGraph, int]:
    """Tail vertex to position 0, head vertex to position 1, then merge them"""
    i, j = g.vertex_of[tail], g.vertex_of[head]
    order = [i, j] + [v for v in range(g.num_vertices) if v not in (i, j)]
    merged = mate(g.structures[i], tail, g.structures[j], head)
    structures = (merged,) + tuple(g.structures[v] for v in order[2:])
    edges = tuple(edge for edge in g.edges if edge != (tail, head))
    return DecoratedGraph(g.species, structures, edges), permutation_sign(order)


def contract_edge(g: DecoratedGraph, o: Optional[Orientation], e: Sequence[int],
                  config: Optional[GraphConfig] = None) -> SignedClass:
    """Class of g/e: endpoints relabeled 1 (tail) and 2 (head), then merged into vertex 1"""
    if config is None:
        config = get_graph_config()
    g = orient(g, o)
    tail, head = _stored_edge(g, e)
    if g.is_loop((tail, head)):
        raise LoopContraction(f"edge {(tail, head)} is a loop")
    contracted, sign = _contracted(g, tail, head)
    cls = canonical_class(contracted, config=config)
    return cls if sign > 0 else -cls


def contract_edge_in_place(g: DecoratedGraph, o: Optional[Orientation], e: Sequence[int],
                           config: Optional[GraphConfig] = None) -> SignedClass:
    """Same class as contract_edge via the positional rule.

    Endpoints at 1-based positions i < j merge into position i, later
    vertices shift down, and the sign is (-1)^j when e points i -> j and
    (-1)^(j+1) when it points j -> i.
    """
    if config is None:
        config = get_graph_config()
    g = orient(g, o)
    tail, head = _stored_edge(g, e)
    if g.is_loop((tail, head)):
        raise LoopContraction(f"edge {(tail, head)} is a loop")
    vt, vh = g.vertex_of[tail], g.vertex_of[head]
    low, high = min(vt, vh), max(vt, vh)
    merged = mate(g.structures[vt], tail, g.structures[vh], head)
    structures = list(g.structures)
    structures[low] = merged
    del structures[high]
    edges = tuple(edge for edge in g.edges if edge != (tail, head))
    j = high + 1
    sign = (-1) ** j if vt == low else (-1) ** (j + 1)
    cls = canonical_class(DecoratedGraph(g.species, tuple(structures), edges), config=config)
    return cls if sign > 0 else -cls


def _rewired(g: DecoratedGraph, q: QuasiEdge, config: GraphConfig) -> Tuple[DecoratedGraph, int]:
    a, b = q.dart_1, q.dart_2
    if q.is_quasi_loop(g):
        raise QuasiLoop(f"darts {a} and {b} share a vertex")
    if q.is_edge(g):
        raise IsActualEdge(f"darts {a} and {b} already form an edge")
    sign = 1
    e1, e2 = g.edge_of(a), g.edge_of(b)
    if e1[0] != a:
        sign *= _flip_sign(g, e1, config)
    if e2[1] != b:
        sign *= _flip_sign(g, e2, config)
    a_far, b_far = g.partner[a], g.partner[b]
    edges = tuple(edge for edge in g.edges if edge not in (e1, e2)) + ((b_far, a_far), (a, b))
    rewired = DecoratedGraph(g.species, g.structures, edges)
    contracted, order_sign = _contracted(rewired, a, b)
    return contracted, sign * order_sign


def contract_quasi_edge(g: DecoratedGraph, o: Optional[Orientation], q: QuasiEdge,
                        config: Optional[GraphConfig] = None) -> SignedClass:
    """Class of g/q.

    The darts' vertices become 1 and 2, the edge through dart_1 is directed
    out of vertex 1 and the edge through dart_2 into vertex 2. Both edges are
    cut, their far darts rejoined as a new edge (far end of dart_2 ->
    far end of dart_1), and q is contracted as an edge 1 -> 2.
    """
    if config is None:
        config = get_graph_config()
    g = orient(g, o)
    contracted, sign = _rewired(g, q, config)
    cls = canonical_class(contracted, config=config)
    return cls if sign > 0 else -cls


def quasi_edges(g: DecoratedGraph) -> Iterator[QuasiEdge]:
    """Contractible quasi-edges: darts on different vertices, not an edge"""
    for a, b in itertools.combinations(g.darts, 2):
        if g.vertex_of[a] != g.vertex_of[b] and g.partner[a] != b:
            yield QuasiEdge(a, b)


def _edge_terms(g: DecoratedGraph, complex_filter: ComplexFilter, config: GraphConfig) -> ChainVector:
    image = ChainVector()
    for tail, head in g.edges:
        if g.is_loop((tail, head)):
            continue
        contracted, sign = _contracted(g, tail, head)
        if complex_filter == ComplexFilter.QGRAPH and is_fake(contracted.structures[0]):
            continue
        image.add_class(canonical_class(contracted, config=config), sign)
    return image


def _quasi_edge_terms(g: DecoratedGraph, config: GraphConfig) -> ChainVector:
    image = ChainVector()
    for q in quasi_edges(g):
        contracted, sign = _rewired(g, q, config)
        image.add_class(canonical_class(contracted, config=config), sign)
    return image


def boundary_E(chain: ChainVector, complex_filter: ComplexFilter = ComplexFilter.FULL,
               config: Optional[GraphConfig] = None) -> ChainVector:
    if config is None:
        config = get_graph_config()
    complex_filter = ComplexFilter(complex_filter)
    return chain_sum(_edge_terms(graph, complex_filter, config).scale(coeff) for _, coeff, graph in chain.items())


def boundary_H(chain: ChainVector, complex_filter: ComplexFilter = ComplexFilter.FULL,
               config: Optional[GraphConfig] = None) -> ChainVector:
    if config is None:
        config = get_graph_config()
    check_filter_support(BoundaryKind.H.value, complex_filter)
    return chain_sum(_quasi_edge_terms(graph, config).scale(coeff) for _, coeff, graph in chain.items())


def boundary(chain: ChainVector, kind: Union[BoundaryKind, str] = BoundaryKind.E,
             complex_filter: ComplexFilter = ComplexFilter.FULL, n: Optional[int] = None,
             config: Optional[GraphConfig] = None) -> ChainVector:
    """dE, dH or dN(n) = 2n*dE + dH applied to a chain"""
    kind = BoundaryKind(kind)
    complex_filter = ComplexFilter(complex_filter)
    check_filter_support(kind.value, complex_filter)
    if kind == BoundaryKind.E:
        return boundary_E(chain, complex_filter, config)
    if kind == BoundaryKind.H:
        return boundary_H(chain, complex_filter, config)
    if n is None or n < 0:
        raise ValueError("boundary N needs a nonnegative integer n")
    return boundary_E(chain, complex_filter, config).scale(2 * n) + boundary_H(chain, complex_filter, config)


def coboundary_E(chain: ChainVector, config: Optional[GraphConfig] = None) -> ChainVector:
    """Sum over ideal edges: expanded vertex moved first, children at 1 and 2, new edge 1 -> 2"""
    if config is None:
        config = get_graph_config()
    image = ChainVector()
    for _, coeff, g in chain.items():
        top = max(g.darts, default=-1)
        new_darts = (top + 1, top + 2)
        for i, v in enumerate(g.structures):
            others = tuple(g.structures[w] for w in range(g.num_vertices) if w != i)
            sign = -1 if i % 2 else 1
            for split in ideal_expansions(v, new_darts):
                expanded = DecoratedGraph(g.species, (split.payload_a, split.payload_b) + others,
                                          g.edges + (new_darts,))
                image.add_class(canonical_class(expanded, config=config), coeff * sign * split.multiplicity)
    return image


def basis_chain(c: SignedClass) -> ChainVector:
    return ChainVector.from_class(SignedClass(c.encoding, 1, c.graph, c.automorphisms))


@dataclass
class SparseMatrix:
    """Matrix of an operator: columns index the source basis, rows the target basis.

    Numeric entries are stored as integers; column j holds the true entries
    times column_scale[j] (the lcm of their denominators, absent when 1).
    Symbolic entries are stored as given.
    """
    rows: List[bytes]
    cols: List[bytes]
    entries: Dict[Tuple[int, int], Any] = field(default_factory=dict)
    column_scale: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for i, j in self.entries:
            if not (0 <= i < len(self.rows) and 0 <= j < len(self.cols)):
                raise ValueError(f"entry ({i}, {j}) outside a {len(self.rows)}x{len(self.cols)} matrix")
        if not self.is_symbolic:
            self._scale_columns()

    def _scale_columns(self) -> None:
        values = {key: Fraction(value) / self.column_scale.get(key[1], 1) for key, value in self.entries.items()}
        values = {key: value for key, value in values.items() if value}
        scales: Dict[int, int] = {}
        for (_, j), value in values.items():
            scales[j] = math.lcm(scales.get(j, 1), value.denominator)
        self.entries = {(i, j): int(value * scales[j]) for (i, j), value in values.items()}
        self.column_scale = {j: scale for j, scale in scales.items() if scale != 1}

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(value, Poly) for value in self.entries.values())

    def get(self, i: int, j: int) -> Any:
        value = self.entries.get((i, j), 0)
        if isinstance(value, Poly):
            return value
        return Fraction(value, self.column_scale.get(j, 1))

    def column(self, j: int) -> Dict[int, Any]:
        return {i: self.get(i, j) for (i, jj) in self.entries if jj == j}

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(list(self.cols), list(self.rows), {(j, i): self.get(i, j) for i, j in self.entries})

    def to_dense(self) -> List[List[Any]]:
        dense = [[0] * len(self.cols) for _ in self.rows]
        for i, j in self.entries:
            dense[i][j] = self.get(i, j)
        return dense

    def evaluate(self, n: int) -> "SparseMatrix":
        """Numeric matrix at s = 2n"""
        entries = {}
        for (i, j), value in self.entries.items():
            number = evaluate_at_n(value, n) if isinstance(value, Poly) else self.get(i, j)
            if number:
                entries[(i, j)] = number
        return SparseMatrix(list(self.rows), list(self.cols), entries)

    def triplets(self) -> List[Tuple[int, int, str]]:
        return [
            (i, j, poly_text(value) if isinstance(value, Poly) else str(value))
            for (i, j), value in sorted((key, self.get(*key)) for key in self.entries)
        ]


def _column_images(args) -> Tuple[ChainVector, ChainVector]:
    graph, kind, complex_filter, config = args
    edge_part = _edge_terms(graph, complex_filter, config) if kind != BoundaryKind.H else ChainVector()
    quasi_part = _quasi_edge_terms(graph, config) if kind != BoundaryKind.E else ChainVector()
    return edge_part, quasi_part


def boundary_matrix(basis_k: Sequence[SignedClass], basis_km1: Sequence[SignedClass],
                    kind: Union[BoundaryKind, str] = BoundaryKind.E,
                    complex_filter: ComplexFilter = ComplexFilter.FULL,
                    n: Union[int, str, None] = None,
                    config: Optional[GraphConfig] = None,
                    limits: Optional[LimitsConfig] = None) -> SparseMatrix:
    """Matrix of the boundary from degree k to k - 1.

    For kind N a numeric n gives rational entries 2n*dE + dH; n of None or
    "sym" gives sympy polynomials s*dE + dH in s = 2n.
    """
    if config is None:
        config = get_graph_config()
    if limits is None:
        limits = get_limits_config()
    kind = BoundaryKind(kind)
    complex_filter = ComplexFilter(complex_filter)
    check_filter_support(kind.value, complex_filter)
    symbolic = kind == BoundaryKind.N and (n is None or n == "sym")

    rows = [c.encoding for c in basis_km1]
    cols = [c.encoding for c in basis_k]
    row_index = {encoding: i for i, encoding in enumerate(rows)}
    shards = [(c.graph, kind, complex_filter, config) for c in basis_k]
    if limits.jobs > 1 and len(shards) > 1:
        with mp.Pool(processes=limits.jobs) as pool:
            images = pool.map(_column_images, shards)
    else:
        images = [_column_images(shard) for shard in shards]

    entries: Dict[Tuple[int, int], Any] = {}
    for j, (edge_part, quasi_part) in enumerate(images):
        column: Dict[int, Dict[int, Fraction]] = {}
        for degree, part in ((1, edge_part), (0, quasi_part)):
            for encoding, coeff, _ in part.items():
                if encoding not in row_index:
                    raise BasisMismatch(f"boundary of column {j} leaves the target basis")
                column.setdefault(row_index[encoding], {})[degree] = coeff
        for i, by_degree in column.items():
            if symbolic:
                value = rat_poly(by_degree)
                if not value.is_zero:
                    entries[(i, j)] = value
                continue
            factor = 2 * int(n) if kind == BoundaryKind.N else 1
            value = by_degree.get(1, Fraction(0)) * factor + by_degree.get(0, Fraction(0))
            if value:
                entries[(i, j)] = value
    logger.info("Computed %dx%d matrix", len(rows), len(cols))
    return SparseMatrix(rows, cols, entries)


def chain_to_vector(chain: ChainVector, basis: Sequence[SignedClass]) -> List[Fraction]:
    index = {c.encoding: i for i, c in enumerate(basis)}
    vector = [Fraction(0)] * len(basis)
    for encoding, coeff, _ in chain.items():
        if encoding not in index:
            raise BasisMismatch("chain term outside the basis")
        vector[index[encoding]] = coeff
    return vector