from fractions import Fraction

import pytest

from graphoplex.complexes import SparseMatrix, boundary_matrix
from graphoplex.config import LimitsConfig
from graphoplex.exceptions import UnsupportedFilter
from graphoplex.graphs import ComplexFilter, enumerate_basis
from graphoplex.linalg import (
    betti_table,
    direct_sum_rows,
    euler_characteristics,
    hopf_dims,
    homology_dims,
    kernel,
    rank,
)
from graphoplex.models.tables import BettiRow, BettiTable
from graphoplex.polynomials import rat_poly
from graphoplex.species import CC


def naive_rank(dense):
    rows = [[Fraction(x) for x in row] for row in dense]
    found = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(found, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[found], rows[pivot] = rows[pivot], rows[found]
        for i in range(len(rows)):
            if i != found and rows[i][c]:
                factor = rows[i][c] / rows[found][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[found])]
        found += 1
    return found


def random_matrix(rng, rows, cols, density=0.4):
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
    entries = {key: value for key, value in entries.items() if value}
    return SparseMatrix([b"r%d" % i for i in range(rows)], [b"c%d" % j for j in range(cols)], entries)


def table(rows):
    return BettiTable(species="cc", filter="full", kind="E", rows=rows)


class TestRank:
    def test_matches_naive_elimination(self, rng):
        for _ in range(25):
            m = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
            assert rank(m) == naive_rank(m.to_dense())

    def test_dependent_rows(self):
        m = SparseMatrix([b"a", b"b"], [b"x", b"y"],
                         {(0, 0): Fraction(1, 2), (0, 1): Fraction(1, 3), (1, 0): 3, (1, 1): 2})
        assert rank(m) == 1

    def test_columns_are_stored_as_scaled_integers(self):
        m = SparseMatrix([b"a", b"b"], [b"x", b"y"],
                         {(0, 0): Fraction(1, 2), (1, 0): Fraction(1, 3), (0, 1): 4, (1, 1): Fraction(-6, 2)})
        assert m.entries == {(0, 0): 3, (1, 0): 2, (0, 1): 4, (1, 1): -3}
        assert m.column_scale == {0: 6}
        assert m.get(1, 0) == Fraction(1, 3)
        assert m.to_dense() == [[Fraction(1, 2), 4], [Fraction(1, 3), -3]]

    def test_kernel_undoes_column_scaling(self):
        m = SparseMatrix([b"a"], [b"x", b"y"], {(0, 0): Fraction(1, 2), (0, 1): 1})
        [v] = kernel(m)
        assert v[0] / v[1] == -2

    def test_transpose_keeps_rank(self, rng):
        for _ in range(10):
            m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
            assert rank(m.transpose()) == rank(m)

    def test_zero_matrix(self):
        assert rank(SparseMatrix([b"a"], [b"x"])) == 0
        assert rank(SparseMatrix([], [])) == 0

    def test_symbolic_rank_bounds_evaluations(self):
        source, target = enumerate_basis(CC, 4, 2), enumerate_basis(CC, 3, 2)
        symbolic = boundary_matrix(source, target, "N", n="sym")
        generic = rank(symbolic)
        for n in range(0, 4):
            assert rank(symbolic.evaluate(n)) <= generic

    def test_symbolic_entries(self):
        m = SparseMatrix([b"a"], [b"x", b"y"], {(0, 0): rat_poly({1: 1}), (0, 1): rat_poly({0: 1})})
        assert rank(m) == 1

    def test_out_of_range_entry(self):
        with pytest.raises(ValueError):
            SparseMatrix([b"a"], [b"x"], {(1, 0): 1})


class TestKernel:
    def test_vectors_are_annihilated(self, rng):
        for _ in range(10):
            m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
            null = kernel(m)
            assert len(null) == m.shape[1] - rank(m)
            dense = m.to_dense()
            for v in null:
                assert all(sum(Fraction(row[j]) * v[j] for j in range(len(v))) == 0 for row in dense)

    def test_zero_matrix_kernel_is_everything(self):
        assert kernel(SparseMatrix([b"a"], [b"x", b"y"])) == [[1, 0], [0, 1]]

    def test_symbolic_needs_evaluation(self):
        m = SparseMatrix([b"a"], [b"x"], {(0, 0): rat_poly({1: 1})})
        with pytest.raises(ValueError):
            kernel(m)


class TestBettiTable:
    def test_trivial_group_polygons(self, trivial_group):
        result = betti_table(trivial_group, ComplexFilter.CONNECTED, 1, 12)
        assert result.nonzero_degrees() == [3, 7, 11]
        assert all(result.betti(k) == 1 for k in (3, 7, 11))
        assert result.is_exact()

    def test_z2_with_identity_star(self, z2):
        result = betti_table(z2, ComplexFilter.CONNECTED, 1, 7)
        assert result.nonzero_degrees() == [3, 7]
        assert result.betti(3) == 2
        assert result.betti(7) == 2

    def test_euler_characteristics_agree(self, trivial_group):
        result = betti_table(trivial_group, ComplexFilter.CONNECTED, 1, 12)
        dims, bettis = euler_characteristics(result, 1)
        assert dims == bettis == -3

    def test_cc_euler_characteristics_differ_by_the_top_rank(self):
        result = betti_table(CC, ComplexFilter.FULL, [1, 2], 4)
        for r in (1, 2):
            dims, bettis = euler_characteristics(result, r)
            top = next(row for row in result.rows if row.r == r and row.k == 4)
            assert dims == bettis + top.rank_in

    def test_betti_numbers_are_nonnegative(self):
        result = betti_table(CC, ComplexFilter.FULL, [2, 3], 4)
        assert all(row.betti >= 0 for row in result.rows)
        assert all(row.dim == row.rank_out + row.rank_in + row.betti for row in result.rows)

    def test_window_edge_is_flagged(self, trivial_group):
        result = betti_table(trivial_group, ComplexFilter.CONNECTED, 1, 3,
                             limits=LimitsConfig(max_vertices=3))
        rows = {row.k: row for row in result.rows}
        assert not rows[3].exact
        assert rows[2].exact
        assert rows[3].betti == 1

    def test_numeric_n_boundary(self):
        result = betti_table(CC, ComplexFilter.FULL, 2, 3, kind="N", n=1)
        assert result.kind == "N"
        assert result.n == "1"

    def test_connected_complex_rejects_dh(self, trivial_group):
        with pytest.raises(UnsupportedFilter):
            betti_table(trivial_group, ComplexFilter.CONNECTED, 1, 4, kind="H")


class TestHopfDims:
    def test_odd_generator_is_exterior(self):
        assert hopf_dims({(3, 0): 1}, 10, 2) == {(3, 0): 1}

    def test_two_odd_generators(self):
        assert hopf_dims({(3, 0): 2}, 10, 2) == {(3, 0): 2, (6, 0): 1}

    def test_even_generator_is_polynomial(self):
        assert hopf_dims({(2, 1): 1}, 6, 3) == {(2, 1): 1, (4, 2): 1, (6, 3): 1}

    def test_truncation(self):
        assert hopf_dims({(2, 1): 1}, 6, 1) == {(2, 1): 1}
        assert hopf_dims({(11, 0): 1}, 10, 1) == {}

    def test_mixed(self):
        dims = hopf_dims({(3, 0): 1, (2, 1): 1}, 7, 2)
        assert dims == {(2, 1): 1, (3, 0): 1, (4, 2): 1, (5, 1): 1, (7, 2): 1}

    def test_homology_dims_shift_rank(self):
        rows = [BettiRow(k=3, r=1, dim=1, rank_out=0, rank_in=0, betti=1),
                BettiRow(k=4, r=1, dim=1, rank_out=1, rank_in=0, betti=0)]
        assert homology_dims(table(rows)) == {(3, 0): 1}


class TestDirectSum:
    def test_only_rows_exact_everywhere(self):
        connected = table([BettiRow(k=3, r=1, dim=1, rank_out=0, rank_in=0, betti=1),
                           BettiRow(k=4, r=1, dim=0, rank_out=0, rank_in=0, betti=0, exact=False)])
        qgraph = table([BettiRow(k=3, r=1, dim=0, rank_out=0, rank_in=0, betti=0),
                        BettiRow(k=4, r=1, dim=0, rank_out=0, rank_in=0, betti=0)])
        bivalent = table([BettiRow(k=3, r=1, dim=1, rank_out=0, rank_in=0, betti=1),
                          BettiRow(k=4, r=1, dim=0, rank_out=0, rank_in=0, betti=0)])
        assert direct_sum_rows(connected, qgraph, bivalent) == [(3, 1, 1, 0, 1)]

    def test_bad_row_is_rejected(self):
        with pytest.raises(ValueError):
            BettiRow(k=3, r=1, dim=-1, rank_out=0, rank_in=0, betti=0)
