import itertools

import pytest

from graphoplex.config import LimitsConfig
from graphoplex.exceptions import MalformedGraph, ResourceLimit, SpeciesMismatch
from graphoplex.graphs import (
    ComplexFilter,
    DecoratedGraph,
    Orientation,
    automorphism_order,
    canonical_class,
    disjoint_union_graph,
    enumerate_basis,
    flip_edge,
    graph_from_document,
    graph_from_vertex_pairs,
    graph_to_document,
    has_reversing_automorphism,
    in_filter,
    permutation_sign,
    permute_vertices,
    polygon,
)
from graphoplex.graphs.enumeration import clear_basis_cache, decorated_cycles, necklaces
from graphoplex.graphs.model import relabel_darts
from graphoplex.species import AA, CC, KK, group_species, list_structures, make_structure


def brute_force_encodings(species, k, r, config=None, complex_filter=ComplexFilter.FULL):
    """Nonzero classes of every decorated loopy multigraph on k labeled vertices"""
    e = k + r - 1
    pairs = [(i, j) for i in range(k) for j in range(i, k)]
    edges = tuple((2 * n, 2 * n + 1) for n in range(e))
    found = set()
    for chosen in itertools.combinations_with_replacement(pairs, e):
        incident = [[] for _ in range(k)]
        for n, (i, j) in enumerate(chosen):
            incident[i].append(2 * n)
            incident[j].append(2 * n + 1)
        for structures in itertools.product(*(list_structures(species, darts) for darts in incident)):
            cls = canonical_class(DecoratedGraph(species, structures, edges), config=config)
            if not cls.is_zero and in_filter(cls.graph, complex_filter):
                found.add(cls.encoding)
    return found


def scrambled(g, rng):
    """Random vertex order, edge directions and dart names, with the expected sign change"""
    sign = 1
    for i in range(g.num_edges):
        if rng.random() < 0.5:
            g = flip_edge(g, g.edges[i])
            sign = -sign
    order = list(range(g.num_vertices))
    rng.shuffle(order)
    g = permute_vertices(g, order)
    sign *= permutation_sign(order)
    names = list(range(100, 100 + len(g.darts)))
    rng.shuffle(names)
    return relabel_darts(g, dict(zip(sorted(g.darts), names))), sign


class TestCanonicalSign:
    def test_flipping_an_edge_negates(self, triangle):
        cls = canonical_class(triangle)
        assert canonical_class(flip_edge(triangle, triangle.edges[0])) == -cls

    def test_transposing_vertices_negates(self, triangle):
        cls = canonical_class(triangle)
        assert canonical_class(permute_vertices(triangle, [1, 0, 2])) == -cls

    def test_cyclic_vertex_order_keeps_sign(self, triangle):
        cls = canonical_class(triangle)
        assert canonical_class(permute_vertices(triangle, [1, 2, 0])) == cls

    def test_dart_names_do_not_matter(self, theta):
        shifted = relabel_darts(theta, {d: d + 100 for d in theta.darts})
        assert canonical_class(shifted) == canonical_class(theta)

    def test_explicit_orientation(self, triangle):
        reversed_order = Orientation((1, 0, 2), triangle.edges)
        assert canonical_class(triangle, reversed_order) == -canonical_class(triangle)

    def test_representative_is_canonical(self, theta):
        cls = canonical_class(theta)
        again = canonical_class(cls.graph)
        assert again.encoding == cls.encoding
        assert again.sign == 1

    def test_invariant_under_random_relabelings(self, rng, theta):
        graphs = [
            theta,
            graph_from_vertex_pairs(CC, list(itertools.combinations(range(4), 2))),
            graph_from_vertex_pairs(AA, [(0, 1), (1, 2), (2, 0), (0, 1)]),
            polygon(group_species("z3-inv"), 5, [1, 0, 2, 2, 1]),
        ]
        assert not canonical_class(theta).is_zero
        for g in graphs:
            cls = canonical_class(g)
            for _ in range(100):
                moved, sign = scrambled(g, rng)
                again = canonical_class(moved)
                assert again.encoding == cls.encoding
                if cls.is_zero:
                    assert again.is_zero
                else:
                    assert again.sign == cls.sign * sign


class TestPolygons:
    @pytest.mark.parametrize("k", range(1, 9))
    def test_nonzero_iff_three_mod_four(self, k):
        assert (not canonical_class(polygon(CC, k)).is_zero) == (k % 4 == 3)

    @pytest.mark.parametrize("k", [3, 7])
    def test_dihedral_automorphisms(self, k):
        assert automorphism_order(polygon(CC, k)) == 2 * k

    def test_loop_is_zero_only_with_signed_loops(self, unsigned_loops):
        loop = polygon(CC, 1)
        assert canonical_class(loop).is_zero
        assert not canonical_class(loop, config=unsigned_loops).is_zero

    def test_square_reverses_orientation(self):
        assert has_reversing_automorphism(polygon(CC, 4))
        assert not has_reversing_automorphism(polygon(CC, 3))

    def test_asymmetric_labels_kill_automorphisms(self):
        z3 = group_species("z3")
        assert automorphism_order(polygon(z3, 3, [0, 1, 2])) == 1


class TestAutomorphisms:
    def test_theta(self, theta):
        assert automorphism_order(theta) == 12
        assert not canonical_class(theta).is_zero

    def test_aa_theta_keeps_rotations_only(self):
        theta = graph_from_vertex_pairs(AA, [(0, 1), (0, 1), (0, 1)])
        assert automorphism_order(theta) == 6

    def test_empty_graph(self):
        empty = DecoratedGraph(CC, (), ())
        assert automorphism_order(empty) == 1
        assert not canonical_class(empty).is_zero


class TestValidation:
    def test_dangling_dart(self):
        g = DecoratedGraph(CC, (make_structure(CC, [0, 1]), make_structure(CC, [2, 3])), ((1, 2),))
        with pytest.raises(MalformedGraph):
            g.validate()

    def test_shared_dart(self):
        g = DecoratedGraph(CC, (make_structure(CC, [0, 1]), make_structure(CC, [1, 2])), ((0, 2),))
        with pytest.raises(MalformedGraph):
            g.validate()

    def test_mixed_species(self):
        g = DecoratedGraph(CC, (make_structure(AA, [0, 1]),), ((0, 1),))
        with pytest.raises(SpeciesMismatch):
            g.validate()

    def test_union_of_different_species(self, triangle):
        with pytest.raises(SpeciesMismatch):
            disjoint_union_graph(triangle, polygon(AA, 3))

    def test_union_shifts_darts(self, triangle, theta):
        union = disjoint_union_graph(triangle, theta)
        assert union.num_vertices == 5
        assert union.num_edges == 6
        assert len(union.components()) == 2
        union.validate()


class TestFilters:
    def test_triangle_is_bivalent_and_connected(self, triangle):
        assert in_filter(triangle, ComplexFilter.CONNECTED)
        assert in_filter(triangle, ComplexFilter.BIVALENT)
        assert in_filter(triangle, ComplexFilter.POLY)
        assert not in_filter(triangle, ComplexFilter.QGRAPH)

    def test_theta_is_a_qgraph(self, theta):
        assert in_filter(theta, ComplexFilter.QGRAPH)
        assert not in_filter(theta, ComplexFilter.BIVALENT)

    def test_disjoint_union_fails_connected(self, triangle, theta):
        union = disjoint_union_graph(triangle, theta)
        assert in_filter(union, ComplexFilter.FULL)
        assert not in_filter(union, ComplexFilter.CONNECTED)


class TestEnumeration:
    def test_triangle_is_the_only_three_vertex_loop_class(self, triangle):
        basis = enumerate_basis(CC, 3, 1)
        assert [cls.encoding for cls in basis] == [canonical_class(triangle).encoding]

    def test_single_vertex_classes_vanish(self):
        for r in range(1, 4):
            assert enumerate_basis(CC, 1, r) == []

    def test_theta_window(self, theta):
        basis = enumerate_basis(CC, 2, 2)
        assert [cls.encoding for cls in basis] == [canonical_class(theta).encoding]
        assert basis[0].automorphisms == 12

    @pytest.mark.parametrize("k,r", [(2, 2), (2, 3), (3, 2), (4, 1), (4, 2)])
    def test_matches_brute_force(self, k, r):
        basis = enumerate_basis(CC, k, r)
        assert {cls.encoding for cls in basis} == brute_force_encodings(CC, k, r)
        assert len(basis) == len({cls.encoding for cls in basis})

    @pytest.mark.parametrize("k,r", [(1, 2), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)])
    def test_aa_matches_brute_force(self, k, r):
        basis = enumerate_basis(AA, k, r)
        assert {cls.encoding for cls in basis} == brute_force_encodings(AA, k, r)

    @pytest.mark.parametrize("name,k", [("z2", 1), ("z2", 2), ("z2", 3), ("z2", 4), ("z3-inv", 3), ("s3-inv", 2)])
    def test_group_matches_brute_force(self, name, k):
        species = group_species(name)
        basis = enumerate_basis(species, k, 1)
        assert {cls.encoding for cls in basis} == brute_force_encodings(species, k, 1)
        assert len(basis) == len({cls.encoding for cls in basis})

    def test_group_graphs_have_one_loop_per_vertex(self, z2):
        assert enumerate_basis(z2, 3, 2) == []
        assert enumerate_basis(z2, 3, 0) == []

    def test_trivial_group_polygons_up_to_thirteen(self, trivial_group):
        nonzero = [k for k in range(1, 14) if enumerate_basis(trivial_group, k, 1, ComplexFilter.CONNECTED)]
        assert nonzero == [3, 7, 11]

    def test_trivial_group_unions_need_distinct_odd_cycles(self, trivial_group):
        # a repeated triangle swaps three vertex pairs and so reverses the orientation
        assert enumerate_basis(trivial_group, 6, 1) == []
        [union] = enumerate_basis(trivial_group, 10, 1)
        assert sorted(len(c) for c in union.graph.components()) == [3, 7]

    @pytest.mark.parametrize("m,count", [(1, 2), (2, 3), (3, 4), (4, 6), (5, 8), (6, 14)])
    def test_binary_necklaces(self, m, count):
        assert len(list(necklaces(m, 2))) == count

    @pytest.mark.parametrize("m,count", [(1, 2), (2, 3), (3, 4), (4, 6), (5, 8), (6, 13)])
    def test_z2_cycles_are_bracelets(self, z2, m, count):
        assert len(decorated_cycles(z2, m)) == count

    def test_starred_reversal_pairs_cycles(self):
        z3 = group_species("z3-inv")
        # (g1, g1) read backwards is (g2, g2), so the two words are one cycle
        words = decorated_cycles(z3, 2)
        assert (1, 1) in words and (2, 2) not in words

    @pytest.mark.parametrize("species,k,r", [(CC, 3, 2), (CC, 4, 2), (CC, 2, 3), (AA, 3, 2)])
    def test_qgraph_is_connected_without_fake_vertices(self, species, k, r):
        qgraph = {cls.encoding for cls in enumerate_basis(species, k, r, ComplexFilter.QGRAPH)}
        connected = enumerate_basis(species, k, r, ComplexFilter.CONNECTED)
        assert qgraph == {cls.encoding for cls in connected if not cls.graph.has_fake_vertex()}

    def test_group_qgraph_is_empty(self, z2):
        assert enumerate_basis(z2, 3, 1, ComplexFilter.QGRAPH) == []

    @pytest.mark.parametrize("k", [3, 4, 5])
    @pytest.mark.parametrize("complex_filter", [ComplexFilter.T_ALL, ComplexFilter.BIVALENT])
    def test_cycle_unions_match_brute_force(self, k, complex_filter):
        found = {cls.encoding for cls in enumerate_basis(CC, k, 1, complex_filter)}
        assert found == brute_force_encodings(CC, k, 1, complex_filter=complex_filter)

    def test_parallel_cycle_unions_agree(self, z2):
        serial = enumerate_basis(z2, 6, 1)
        clear_basis_cache()
        parallel = enumerate_basis(z2, 6, 1, limits=LimitsConfig(jobs=2))
        assert [cls.encoding for cls in parallel] == [cls.encoding for cls in serial]

    def test_unsigned_loops_enlarge_the_basis(self, unsigned_loops):
        signed = enumerate_basis(CC, 1, 1)
        unsigned = enumerate_basis(CC, 1, 1, config=unsigned_loops)
        assert signed == []
        assert len(unsigned) == 1

    def test_connected_is_a_subset(self):
        full = {cls.encoding for cls in enumerate_basis(CC, 4, 2)}
        connected = {cls.encoding for cls in enumerate_basis(CC, 4, 2, ComplexFilter.CONNECTED)}
        assert connected <= full

    def test_sorted_by_encoding(self):
        basis = enumerate_basis(CC, 4, 2)
        assert [cls.encoding for cls in basis] == sorted(cls.encoding for cls in basis)

    def test_parallel_run_agrees(self):
        serial = enumerate_basis(CC, 4, 2, limits=LimitsConfig(jobs=1))
        clear_basis_cache()
        parallel = enumerate_basis(CC, 4, 2, limits=LimitsConfig(jobs=2))
        assert [c.encoding for c in serial] == [c.encoding for c in parallel]

    def test_cell_limit(self):
        with pytest.raises(ResourceLimit):
            enumerate_basis(CC, 4, 3, limits=LimitsConfig(max_cells=1))

    def test_vertex_limit(self):
        with pytest.raises(ResourceLimit):
            enumerate_basis(CC, 15, 1)

    def test_empty_window(self):
        assert enumerate_basis(CC, 0, 1) == []
        assert enumerate_basis(CC, 2, -2) == []


class TestDocuments:
    def test_round_trip_keeps_the_class(self, theta):
        flipped = flip_edge(theta, theta.edges[1])
        doc = graph_to_document(flipped)
        g, o = graph_from_document(doc, CC)
        assert canonical_class(g, o) == canonical_class(flipped)

    def test_wrong_species(self, theta):
        with pytest.raises(SpeciesMismatch):
            graph_from_document(graph_to_document(theta), AA)

    def test_unknown_vertex_in_orientation(self, triangle):
        doc = graph_to_document(triangle)
        doc.orientation.vertex_order = ["0", "1", "9"]
        with pytest.raises(MalformedGraph):
            graph_from_document(doc, CC)

    def test_group_labels_survive(self):
        z3 = group_species("z3")
        g = polygon(z3, 3, [1, 1, 1])
        h, o = graph_from_document(graph_to_document(g), z3)
        assert canonical_class(h, o) == canonical_class(g)
