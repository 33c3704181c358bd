import itertools
from fractions import Fraction

import pytest

from conftest import class_chain
from graphoplex.complexes import (
    ChainVector,
    QuasiEdge,
    basis_chain,
    boundary,
    boundary_matrix,
    chain_sum,
    chain_to_vector,
    coboundary_E,
    contract_edge,
    contract_edge_in_place,
    contract_quasi_edge,
    quasi_edges,
)
from graphoplex.exceptions import BasisMismatch, IsActualEdge, LoopContraction, MalformedGraph, QuasiLoop, UnsupportedFilter
from graphoplex.graphs import ComplexFilter, canonical_class, enumerate_basis, flip_edge, graph_from_vertex_pairs, polygon
from graphoplex.species import AA, CC, group_species


@pytest.fixture
def k4():
    return graph_from_vertex_pairs(CC, list(itertools.combinations(range(4), 2)))


def edge_sum(g):
    chain = ChainVector()
    for edge in g.edges:
        if not g.is_loop(edge):
            chain.add_class(contract_edge(g, None, edge))
    return chain


class TestChainVector:
    def test_cancellation(self, theta):
        chain = class_chain(theta)
        assert (chain - chain).is_zero
        assert not chain + chain - chain.scale(2)

    def test_flipped_graph_enters_with_opposite_sign(self, triangle):
        chain = class_chain(triangle) + class_chain(flip_edge(triangle, triangle.edges[0]))
        assert chain.is_zero

    def test_zero_class_is_dropped(self):
        assert ChainVector.from_graph(polygon(CC, 4)).is_zero

    def test_scalar_multiplication(self, theta):
        chain = class_chain(theta)
        assert 3 * chain == chain.scale(3)
        [(encoding, coeff, _)] = list((chain * Fraction(1, 2)).items())
        assert coeff == Fraction(1, 2)

    def test_chain_sum(self, theta, triangle):
        total = chain_sum([class_chain(theta), class_chain(triangle), -class_chain(theta)])
        assert total == class_chain(triangle)

    def test_terms_need_a_graph(self, theta):
        encoding = canonical_class(theta).encoding
        with pytest.raises(MalformedGraph):
            ChainVector({encoding: 1})
        with pytest.raises(MalformedGraph):
            ChainVector().add_term(encoding, 1)

    def test_terms_with_graphs_feed_the_boundary(self, theta):
        cls = canonical_class(theta)
        chain = ChainVector({cls.encoding: 2}, {cls.encoding: cls.graph})
        assert boundary(chain) == boundary(basis_chain(cls)).scale(2)


class TestContraction:
    def test_positional_rule_agrees(self, k4, theta):
        for g in (k4, theta, polygon(CC, 7), graph_from_vertex_pairs(AA, [(0, 1), (1, 2), (2, 0), (0, 1)])):
            for edge in g.edges:
                if g.is_loop(edge):
                    continue
                for flipped in (g, flip_edge(g, edge)):
                    assert contract_edge(flipped, None, edge) == contract_edge_in_place(flipped, None, edge)

    def test_contraction_direction_is_a_sign(self, k4):
        edge = k4.edges[0]
        assert contract_edge(flip_edge(k4, edge), None, edge) == -contract_edge(k4, None, edge)

    def test_loop_contraction(self):
        loop = polygon(CC, 1)
        with pytest.raises(LoopContraction):
            contract_edge(loop, None, loop.edges[0])

    def test_unknown_edge(self, theta):
        with pytest.raises(MalformedGraph):
            contract_edge(theta, None, (0, 3))


class TestQuasiEdges:
    def test_quasi_loop(self, theta):
        with pytest.raises(QuasiLoop):
            contract_quasi_edge(theta, None, QuasiEdge(0, 2))

    def test_actual_edge(self, theta):
        with pytest.raises(IsActualEdge):
            contract_quasi_edge(theta, None, QuasiEdge(0, 1))

    def test_repeated_dart(self):
        with pytest.raises(MalformedGraph):
            QuasiEdge(3, 3)

    def test_triangle_has_nine(self, triangle):
        assert len(list(quasi_edges(triangle))) == 9

    def test_boundary_h_sums_quasi_edge_contractions(self, k4):
        cls = canonical_class(k4)
        expected = ChainVector()
        for q in quasi_edges(cls.graph):
            expected.add_class(contract_quasi_edge(cls.graph, None, q))
        assert boundary(basis_chain(cls), "H") == expected


class TestBoundary:
    def test_boundary_e_sums_edge_contractions(self, k4):
        cls = canonical_class(k4)
        assert boundary(basis_chain(cls), "E") == edge_sum(cls.graph)

    def test_polygon_boundary_vanishes(self, triangle):
        assert boundary(class_chain(triangle)).is_zero
        assert boundary(class_chain(polygon(CC, 7))).is_zero

    def test_empty_chain(self):
        assert boundary(ChainVector()).is_zero
        assert coboundary_E(ChainVector()).is_zero

    @pytest.mark.parametrize("species", [CC, AA, group_species("z2")])
    def test_edge_boundary_squares_to_zero(self, species):
        for k, r in ((3, 1), (3, 2), (4, 2)):
            for cls in enumerate_basis(species, k, r):
                assert boundary(boundary(basis_chain(cls))).is_zero, cls.encoding

    @pytest.mark.parametrize("kind,n", [("H", None), ("N", 1), ("N", 3)])
    def test_cc_boundaries_square_to_zero(self, kind, n):
        for k, r in ((3, 2), (4, 2)):
            for cls in enumerate_basis(CC, k, r):
                once = boundary(basis_chain(cls), kind, n=n)
                assert boundary(once, kind, n=n).is_zero, cls.encoding

    def test_n_boundary_combines_e_and_h(self, k4):
        chain = class_chain(k4)
        expected = boundary(chain, "E").scale(4) + boundary(chain, "H")
        assert boundary(chain, "N", n=2) == expected

    def test_n_boundary_needs_n(self, theta):
        with pytest.raises(ValueError):
            boundary(class_chain(theta), "N")

    def test_connected_complex_rejects_quasi_edges(self, theta):
        with pytest.raises(UnsupportedFilter):
            boundary(class_chain(theta), "H", ComplexFilter.CONNECTED)

    def test_qgraph_drops_fake_vertices(self):
        for cls in enumerate_basis(CC, 3, 2, ComplexFilter.QGRAPH):
            image = boundary(basis_chain(cls), "E", ComplexFilter.QGRAPH)
            for _, _, g in image.items():
                assert not g.has_fake_vertex()


class TestCoboundary:
    def test_linear(self, theta):
        chain = class_chain(theta)
        assert coboundary_E(chain.scale(2)) == coboundary_E(chain).scale(2)

    def test_bivalent_polygon_expands_to_zero(self, triangle):
        assert coboundary_E(class_chain(triangle)).is_zero

    def test_raises_the_vertex_count(self, theta):
        for _, _, g in coboundary_E(class_chain(theta)).items():
            assert g.num_vertices == 3
            assert g.num_edges == 4

    @pytest.mark.parametrize("species", [CC, AA, group_species("z2"), group_species("z3-inv")])
    def test_squares_to_zero(self, species):
        for k, r in ((1, 2), (2, 1), (2, 2), (3, 1)):
            for cls in enumerate_basis(species, k, r):
                once = coboundary_E(basis_chain(cls))
                assert coboundary_E(once).is_zero, cls.encoding


class TestBoundaryMatrix:
    def test_columns_are_boundary_images(self):
        source, target = enumerate_basis(CC, 4, 2), enumerate_basis(CC, 3, 2)
        matrix = boundary_matrix(source, target)
        assert matrix.shape == (len(target), len(source))
        for j, cls in enumerate(source):
            column = chain_to_vector(boundary(basis_chain(cls)), target)
            assert [matrix.get(i, j) for i in range(len(target))] == column

    def test_symbolic_matrix_evaluates_to_numeric(self):
        source, target = enumerate_basis(CC, 4, 2), enumerate_basis(CC, 3, 2)
        symbolic = boundary_matrix(source, target, "N", n="sym")
        assert symbolic.evaluate(2).entries == boundary_matrix(source, target, "N", n=2).entries

    def test_triplets_are_sorted_text(self):
        source, target = enumerate_basis(CC, 4, 2), enumerate_basis(CC, 3, 2)
        triplets = boundary_matrix(source, target).triplets()
        assert triplets == sorted(triplets)
        assert all(isinstance(value, str) for _, _, value in triplets)

    def test_product_of_consecutive_matrices_vanishes(self):
        b4, b3, b2 = (enumerate_basis(CC, k, 2) for k in (4, 3, 2))
        outer, inner = boundary_matrix(b3, b2).to_dense(), boundary_matrix(b4, b3).to_dense()
        for i in range(len(b2)):
            for j in range(len(b4)):
                assert sum(outer[i][m] * inner[m][j] for m in range(len(b3))) == 0

    def test_target_basis_must_cover_the_image(self, theta):
        with pytest.raises(BasisMismatch):
            chain_to_vector(class_chain(theta), [])

    def test_empty_bases(self):
        assert boundary_matrix([], []).shape == (0, 0)
