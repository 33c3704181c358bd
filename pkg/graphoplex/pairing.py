"""
Matching pairing, deformation map and the disjoint-union product.

A matching of two graphs with the same vertex decorations is a vertex
bijection plus structure-preserving dart bijections. Overlaying the two
edge sets on the matched darts gives alternating cycles; the pairing is
M(n)(G1, G2) = sum over matchings of sign(m) * s^c(m) with s = 2n.
"""

import itertools
import logging
import multiprocessing as mp

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import QQ, ZZ, Poly
from sympy.polys.matrices import DomainMatrix

from .complexes import ChainVector, basis_chain, boundary_E, boundary_H, coboundary_E
from .config import GraphConfig, LimitsConfig, get_graph_config, get_limits_config
from .exceptions import BasisIncomplete, SpeciesMismatch
from .graphs.canonical import SignedClass, canonical_class, permutation_sign
from .graphs.enumeration import ComplexFilter, enumerate_basis
from .graphs.model import DecoratedGraph, disjoint_union_graph, empty_graph
from .models.common import Window
from .models.reports import VerificationReport
from .polynomials import S, coefficient, int_poly, poly_text, rat_poly, to_fraction, zero_poly
from .species import SpeciesId, structure_isomorphisms

logger = logging.getLogger(__name__)

GraphLike = Union[SignedClass, DecoratedGraph]


@dataclass(frozen=True)
class Matching:
    vertex_bijection: Tuple[int, ...]
    dart_map: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class MatchingTerm:
    matching: Matching
    sign: int
    components: int
    cycle_lengths: Tuple[int, ...]


def _graph(x: GraphLike) -> DecoratedGraph:
    return x.graph if isinstance(x, SignedClass) else x


def overlay_cycles(g1: DecoratedGraph, g2: DecoratedGraph, vertex_bijection: Sequence[int],
                   dart_map: Dict[int, int], config: Optional[GraphConfig] = None) -> Tuple[int, List[int]]:
    """Sign and alternating cycle lengths of a matching.

    Each cycle is walked along a g1 edge then a g2 edge, repeatedly; a g1
    edge walked against its direction and a g2 edge walked along its
    direction each contribute -1.
    """
    if config is None:
        config = get_graph_config()
    sign = permutation_sign(vertex_bijection)

    first: Dict[int, Tuple[int, bool, bool]] = {}
    for t, h in g1.edges:
        signed = config.loop_sign or not g1.is_loop((t, h))
        tt, hh = dart_map[t], dart_map[h]
        first[tt] = (hh, True, signed)
        first[hh] = (tt, False, signed)
    second: Dict[int, Tuple[int, bool, bool]] = {}
    for t, h in g2.edges:
        signed = config.loop_sign or not g2.is_loop((t, h))
        second[t] = (h, True, signed)
        second[h] = (t, False, signed)

    lengths = []
    seen = set()
    for start in sorted(first):
        if start in seen:
            continue
        current = start
        length = 0
        while True:
            seen.add(current)
            middle, along, signed = first[current]
            if signed and not along:
                sign = -sign
            seen.add(middle)
            current, along, signed = second[middle]
            if signed and along:
                sign = -sign
            length += 1
            if current == start:
                break
        lengths.append(length)
    return sign, sorted(lengths)


def _compatible(g1: DecoratedGraph, g2: DecoratedGraph) -> bool:
    if g1.species != g2.species:
        raise SpeciesMismatch(f"cannot pair {g1.species} with {g2.species} graphs")
    return (g1.num_vertices == g2.num_vertices and g1.num_edges == g2.num_edges
            and sorted(v.valence for v in g1.structures) == sorted(v.valence for v in g2.structures))


def iter_matchings(g1: DecoratedGraph, g2: DecoratedGraph) -> Iterator[Tuple[Tuple[int, ...], Dict[int, int]]]:
    """Vertex bijections with structure-preserving dart bijections"""
    k = g1.num_vertices

    def extend(i: int, used: List[bool], images: List[int], dart_map: Dict[int, int]):
        if i == k:
            yield tuple(images), dict(dart_map)
            return
        v = g1.structures[i]
        for j in range(k):
            if used[j] or g2.structures[j].valence != v.valence:
                continue
            for mapping in structure_isomorphisms(v, g2.structures[j]):
                used[j] = True
                images.append(j)
                dart_map.update(mapping)
                yield from extend(i + 1, used, images, dart_map)
                for d in mapping:
                    del dart_map[d]
                images.pop()
                used[j] = False

    yield from extend(0, [False] * k, [], {})


def matchings(x: GraphLike, y: GraphLike, config: Optional[GraphConfig] = None) -> List[MatchingTerm]:
    """All matchings of two graphs with sign and number of alternating cycles"""
    g1, g2 = _graph(x), _graph(y)
    if not _compatible(g1, g2):
        return []
    terms = []
    for vertex_bijection, dart_map in iter_matchings(g1, g2):
        sign, lengths = overlay_cycles(g1, g2, vertex_bijection, dart_map, config)
        terms.append(MatchingTerm(Matching(vertex_bijection, tuple(sorted(dart_map.items()))),
                                  sign, len(lengths), tuple(lengths)))
    return terms


_PAIRING_CACHE: Dict[Tuple[bytes, bytes, bool], Poly] = {}


def pairing_M(x: SignedClass, y: SignedClass, config: Optional[GraphConfig] = None) -> Poly:
    """M(n)(x, y) as an integer polynomial in s = 2n, signs of x and y included"""
    if config is None:
        config = get_graph_config()
    if x.is_zero or y.is_zero:
        return int_poly({})
    key = (x.encoding, y.encoding, config.loop_sign)
    value = _PAIRING_CACHE.get(key)
    if value is None:
        counts: Dict[int, int] = {}
        for term in matchings(x.graph, y.graph, config):
            counts[term.components] = counts.get(term.components, 0) + term.sign
        value = int_poly(counts)
        _PAIRING_CACHE[key] = value
    if x.sign * y.sign < 0:
        return -value
    return value


def clear_pairing_cache() -> None:
    _PAIRING_CACHE.clear()


def _term_class(encoding: bytes, graph: DecoratedGraph) -> SignedClass:
    return SignedClass(encoding, 1, graph)


def pairing_chains(a: ChainVector, b: ChainVector, config: Optional[GraphConfig] = None) -> Poly:
    """Bilinear extension of M(n) to chains, rational polynomial in s"""
    total = zero_poly()
    for enc_a, coeff_a, graph_a in a.items():
        for enc_b, coeff_b, graph_b in b.items():
            value = pairing_M(_term_class(enc_a, graph_a), _term_class(enc_b, graph_b), config)
            if not value.is_zero:
                total = total + value.set_domain(QQ) * rat_poly({0: coeff_a * coeff_b})
    return total


def _pairing_row(args) -> List[Poly]:
    row_class, basis, config = args
    return [pairing_M(row_class, c, config) for c in basis]


def pairing_block(basis: Sequence[SignedClass], config: Optional[GraphConfig] = None,
                  limits: Optional[LimitsConfig] = None) -> List[List[Poly]]:
    """Matrix of M(n) on one basis"""
    if config is None:
        config = get_graph_config()
    if limits is None:
        limits = get_limits_config()
    shards = [(c, list(basis), config) for c in basis]
    if limits.jobs > 1 and len(shards) > 1:
        with mp.Pool(processes=limits.jobs) as pool:
            return pool.map(_pairing_row, shards)
    return [_pairing_row(shard) for shard in shards]


def pairing_determinant(basis: Sequence[SignedClass], config: Optional[GraphConfig] = None) -> Poly:
    """Determinant of the pairing block over ZZ[s]"""
    if not basis:
        return int_poly({0: 1})
    ring = ZZ[S]
    block = pairing_block(basis, config)
    rows = [[ring.from_sympy(entry.as_expr()) for entry in row] for row in block]
    det = DomainMatrix(rows, (len(basis), len(basis)), ring).det()
    return Poly(ring.to_sympy(det), S, domain="ZZ")


class PolyChain:
    """Sparse map from class encodings to polynomials in s"""

    def __init__(self):
        self.terms: Dict[bytes, Poly] = {}
        self.graphs: Dict[bytes, DecoratedGraph] = {}

    def add_term(self, encoding: bytes, value: Poly, graph: Optional[DecoratedGraph] = None) -> None:
        total = self.terms.get(encoding, zero_poly()) + value.set_domain(QQ)
        if total.is_zero:
            self.terms.pop(encoding, None)
            return
        self.terms[encoding] = total
        if graph is not None:
            self.graphs.setdefault(encoding, graph)

    def items(self) -> Iterator[Tuple[bytes, Poly, DecoratedGraph]]:
        for encoding in sorted(self.terms):
            yield encoding, self.terms[encoding], self.graphs.get(encoding)

    def coefficient_chain(self, degree: int) -> ChainVector:
        chain = ChainVector()
        for encoding, value, graph in self.items():
            chain.add_term(encoding, coefficient(value, degree), graph)
        return chain

    def evaluate(self, n: int) -> ChainVector:
        chain = ChainVector()
        for encoding, value, graph in self.items():
            chain.add_term(encoding, to_fraction(value.eval(2 * n)), graph)
        return chain

    def degree(self) -> int:
        return max((value.degree() for value in self.terms.values()), default=-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyChain):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def to_text(self) -> Dict[str, str]:
        return {encoding.hex(): poly_text(value) for encoding, value, _ in self.items()}


def full_block(species: SpeciesId, k: int, e: int, config: Optional[GraphConfig] = None,
               limits: Optional[LimitsConfig] = None) -> List[SignedClass]:
    """All classes with k vertices and e edges; closed under matchings"""
    return enumerate_basis(species, k, e - k + 1, ComplexFilter.FULL, config, limits)


def deformation_D(x: SignedClass, basis: Optional[Sequence[SignedClass]] = None,
                  config: Optional[GraphConfig] = None, limits: Optional[LimitsConfig] = None) -> PolyChain:
    """D(n)x = sum over classes y of M(n)(y, x) / |Aut y| * y"""
    g = x.graph
    block = full_block(g.species, g.num_vertices, g.num_edges, config, limits)
    if basis is None:
        basis = block
    else:
        known = {c.encoding for c in basis}
        missing = [c for c in block if c.encoding not in known]
        if missing:
            raise BasisIncomplete(f"{len(missing)} classes of the ({g.num_vertices}, {g.num_edges}) block are missing")
    result = PolyChain()
    for y in basis:
        if y.graph.num_vertices != g.num_vertices or y.graph.num_edges != g.num_edges:
            continue
        value = pairing_M(y, x, config)
        if value.is_zero:
            continue
        result.add_term(y.encoding, value.set_domain(QQ) * rat_poly({0: Fraction(1, y.automorphisms)}), y.graph)
    return result


def deformation_chain(chain: ChainVector, config: Optional[GraphConfig] = None) -> PolyChain:
    result = PolyChain()
    for encoding, coeff, graph in chain.items():
        image = deformation_D(_term_class(encoding, graph), config=config)
        for enc, value, g in image.items():
            result.add_term(enc, value * rat_poly({0: coeff}), g)
    return result


def deformation_component(chain: ChainVector, i: int, config: Optional[GraphConfig] = None) -> ChainVector:
    """D_i: coefficient of s^(e - i) in D(n), term by term"""
    result = ChainVector()
    for encoding, coeff, graph in chain.items():
        image = deformation_D(_term_class(encoding, graph), config=config)
        for enc, value, g in image.items():
            result.add_term(enc, coeff * coefficient(value, graph.num_edges - i), g)
    return result


def square_rewirings(g: DecoratedGraph) -> Iterator[Tuple[DecoratedGraph, Tuple[int, int], Tuple[int, int]]]:
    """Graphs differing from g in exactly one alternating square.

    For every unordered pair of edges (x1, x2), (y1, y2) both rewirings
    {x1, y1}, {x2, y2} and {x1, y2}, {x2, y1} are produced.
    """
    for x, y in itertools.combinations(g.edges, 2):
        rest = tuple(edge for edge in g.edges if edge not in (x, y))
        for pair in (((x[0], y[0]), (x[1], y[1])), ((x[0], y[1]), (x[1], y[0]))):
            yield DecoratedGraph(g.species, g.structures, rest + pair), x, y


def _square_terms(g: DecoratedGraph, config: GraphConfig, keep=None) -> ChainVector:
    identity = tuple(range(g.num_vertices))
    darts = {d: d for d in g.darts}
    image = ChainVector()
    for rewired, x, y in square_rewirings(g):
        if keep is not None and not keep(x, y):
            continue
        sign, _ = overlay_cycles(rewired, g, identity, darts, config)
        image.add_class(canonical_class(rewired, config=config), sign)
    return image


def deformation_D1(chain: ChainVector, config: Optional[GraphConfig] = None) -> ChainVector:
    """D_1 through single-square rewirings; needs no enumerated basis"""
    if config is None:
        config = get_graph_config()
    result = ChainVector()
    for _, coeff, graph in chain.items():
        result = result + _square_terms(graph, config).scale(coeff)
    return result


def unit_chain(species: SpeciesId, config: Optional[GraphConfig] = None) -> ChainVector:
    """The empty graph"""
    return ChainVector.from_class(canonical_class(empty_graph(species), config=config))


def disjoint_union(a: ChainVector, b: ChainVector, config: Optional[GraphConfig] = None) -> ChainVector:
    """Bilinear product; a's vertices first"""
    result = ChainVector()
    for _, coeff_a, graph_a in a.items():
        for _, coeff_b, graph_b in b.items():
            union = disjoint_union_graph(graph_a, graph_b)
            result.add_class(canonical_class(union, config=config), coeff_a * coeff_b)
    return result


def _graded(op, a: ChainVector, b: ChainVector, config: GraphConfig) -> ChainVector:
    """op as a graded derivation on a (x) b, sign (-1)^|V(a)| on the second slot"""
    result = disjoint_union(op(a), b, config)
    for encoding, coeff, graph in a.items():
        term = ChainVector({encoding: coeff}, {encoding: graph})
        sign = -1 if graph.num_vertices % 2 else 1
        result = result + disjoint_union(term, op(b), config).scale(sign)
    return result


def bracket(a: ChainVector, b: ChainVector, config: Optional[GraphConfig] = None) -> ChainVector:
    """[a, b] = dH(a b) - (dH a) b - (-1)^|V(a)| a (dH b)"""
    if config is None:
        config = get_graph_config()
    dh = partial(boundary_H, config=config)
    return dh(disjoint_union(a, b, config)) - _graded(dh, a, b, config)


def mu1(a: ChainVector, b: ChainVector, config: Optional[GraphConfig] = None) -> ChainVector:
    """D1(a b) - (D1 a) b - a (D1 b)"""
    if config is None:
        config = get_graph_config()
    d1 = partial(deformation_D1, config=config)
    return (d1(disjoint_union(a, b, config))
            - disjoint_union(d1(a), b, config)
            - disjoint_union(a, d1(b), config))


def explicit_mu1(a: ChainVector, b: ChainVector, config: Optional[GraphConfig] = None) -> ChainVector:
    """Single-square rewirings of a b whose square joins an edge of a to an edge of b"""
    if config is None:
        config = get_graph_config()
    result = ChainVector()
    for _, coeff_a, graph_a in a.items():
        for _, coeff_b, graph_b in b.items():
            union = disjoint_union_graph(graph_a, graph_b)
            from_a = set(union.edges[:len(graph_a.edges)])

            def mixed(x, y, from_a=from_a):
                return (x in from_a) != (y in from_a)

            result = result + _square_terms(union, config, keep=mixed).scale(coeff_a * coeff_b)
    return result


def _report(suite: str, species: SpeciesId, window: Optional[Window]) -> VerificationReport:
    return VerificationReport(suite=suite, species=species.key, window=window)


def verify_adjoint(basis_k: Sequence[SignedClass], basis_km1: Sequence[SignedClass], species: SpeciesId,
                   config: Optional[GraphConfig] = None, window: Optional[Window] = None) -> VerificationReport:
    """M(dN x, y) = M(x, dE* y) as polynomials in s for all basis pairs"""
    if config is None:
        config = get_graph_config()
    report = _report("adjoint", species, window)
    expanded = {c.encoding: coboundary_E(basis_chain(c), config) for c in basis_km1}
    for x in basis_k:
        chain = basis_chain(x)
        contracted_e = boundary_E(chain, config=config)
        contracted_h = boundary_H(chain, config=config)
        for y in basis_km1:
            target = basis_chain(y)
            left = (pairing_chains(contracted_e, target, config) * rat_poly({1: 1})
                    + pairing_chains(contracted_h, target, config))
            right = pairing_chains(chain, expanded[y.encoding], config)
            report.checked += 1
            if left != right:
                report.fail("adjoint", "pairing is not adjoint",
                            source=x.encoding.hex(), target=y.encoding.hex(),
                            left=poly_text(left), right=poly_text(right))
    return report


def verify_homotopy(species: SpeciesId, k_max: int, r_max: int, config: Optional[GraphConfig] = None,
                    limits: Optional[LimitsConfig] = None, product_k_max: Optional[int] = None,
                    window: Optional[Window] = None) -> VerificationReport:
    """D0 = id, dH = dE D1 - D1 dE, explicit mu1 = D1 mu - mu D1, [,] = dE mu1 - mu1 dE"""
    if config is None:
        config = get_graph_config()
    report = _report("homotopy", species, window)
    bases: Dict[Tuple[int, int], List[SignedClass]] = {}
    for k in range(1, k_max + 1):
        for r in range(0, r_max + 1):
            bases[(k, r)] = enumerate_basis(species, k, r, ComplexFilter.FULL, config, limits)

    for (k, r), basis in sorted(bases.items()):
        for c in basis:
            chain = basis_chain(c)
            report.checked += 1
            if deformation_component(chain, 0, config) != chain:
                report.fail("D0", "D0 is not the identity", cls=c.encoding.hex())
            d1 = deformation_component(chain, 1, config)
            if d1 != deformation_D1(chain, config):
                report.fail("D1", "square rewirings disagree with the pairing", cls=c.encoding.hex())
            left = boundary_H(chain, config=config)
            right = (boundary_E(d1, config=config)
                     - deformation_D1(boundary_E(chain, config=config), config))
            if left != right:
                report.fail("dH", "dH != dE D1 - D1 dE", cls=c.encoding.hex())

    if product_k_max is None:
        product_k_max = k_max
    factors = [c for (k, _), basis in sorted(bases.items()) if k <= product_k_max for c in basis
               if c.graph.is_connected()]
    dE = partial(boundary_E, config=config)
    for x, y in itertools.product(factors, repeat=2):
        if x.graph.num_vertices + y.graph.num_vertices > product_k_max:
            continue
        a, b = basis_chain(x), basis_chain(y)
        report.checked += 1
        m1 = explicit_mu1(a, b, config)
        if m1 != mu1(a, b, config):
            report.fail("mu1", "explicit mu1 != D1 mu - mu D1", left=x.encoding.hex(), right=y.encoding.hex())
        graded = mu1(dE(a), b, config)
        sign = -1 if x.graph.num_vertices % 2 else 1
        graded = graded + mu1(a, dE(b), config).scale(sign)
        if bracket(a, b, config) != dE(m1) - graded:
            report.fail("bracket", "[,] != dE mu1 - mu1 dE", left=x.encoding.hex(), right=y.encoding.hex())
    return report
