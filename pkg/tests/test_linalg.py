import random
from fractions import Fraction

from services.linalg import (
    RankAccumulator, SparseMatrix, SparseVec, SpanSolver, commutator, nullspace, primitive,
    rank_insert, rank_of, scale_add, to_sparse,
)


def dense_rank(rows):
    """Plain Gaussian elimination on a copy of the rows."""
    matrix = [[Fraction(x) for x in row] for row in rows]
    rank, columns = 0, len(matrix[0]) if matrix else 0
    for col in range(columns):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col]:
                factor = matrix[r][col] / matrix[rank][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[rank])]
        rank += 1
    return rank


def random_rows(rng, n_rows, n_cols):
    rows = []
    for _ in range(n_rows):
        rows.append([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.5 else 0
                     for _ in range(n_cols)])
    # dependent rows keep the rank below the row count
    if n_rows >= 2:
        a, b = rng.sample(range(n_rows), 2)
        c = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
        rows.append([x + c * y for x, y in zip(rows[a], rows[b])])
    return rows


class TestSparseVec:
    def test_zero_entries_are_dropped(self):
        v = SparseVec({0: 1, 1: 0, 2: Fraction(0)})
        assert list(v.keys_sorted()) == [0]
        assert len(v) == 1

    def test_scale_add(self):
        u = to_sparse([1, 2, 0])
        v = to_sparse([0, 1, 5])
        assert scale_add(u, 0, v) == u
        assert scale_add(SparseVec(), 1, v) == v
        assert scale_add(SparseVec.unit(1), -1, SparseVec.unit(1)).is_zero()
        assert scale_add(u, Fraction(1, 2), v) == SparseVec({0: 1, 1: Fraction(5, 2), 2: Fraction(5, 2)})

    def test_iteration_is_sorted(self):
        v = SparseVec({(1, 2): 3, (0, 5): 1, (1, 0): 2})
        assert list(v) == [(0, 5), (1, 0), (1, 2)]

    def test_fractions_stay_reduced(self):
        v = SparseVec({0: Fraction(2, 4)}) * 3
        assert v[0] == Fraction(3, 2)
        assert v[0].denominator == 2


class TestRankAccumulator:
    def test_zero_vector(self):
        acc, increased = rank_insert(RankAccumulator(), SparseVec())
        assert not increased
        assert acc.rank == 0

    def test_duplicate_row(self):
        acc = RankAccumulator()
        assert acc.insert(SparseVec.unit(0))
        assert not acc.insert(SparseVec.unit(0))

    def test_three_by_three(self):
        acc = RankAccumulator()
        ranks = []
        for v in (to_sparse([1, 0, 0]), to_sparse([0, 1, 0]), to_sparse([1, 1, 0])):
            acc.insert(v)
            ranks.append(acc.rank)
        assert ranks == [1, 2, 2]

    def test_pivot_rows_are_reduced(self):
        acc = RankAccumulator()
        for row in ([2, 4, 1], [1, 1, 1], [0, 3, 3]):
            acc.insert(to_sparse(row))
        pivots = acc.pivots
        for key, row in pivots.items():
            assert row[key] == 1
            for other in pivots:
                if other != key:
                    assert row.get(other) == 0

    def test_matches_dense_elimination(self):
        rng = random.Random(20240101)
        for _ in range(50):
            n_rows, n_cols = rng.randint(1, 9), rng.randint(1, 9)
            rows = random_rows(rng, n_rows, n_cols)
            assert rank_of(to_sparse(r) for r in rows) == dense_rank(rows)

    def test_rank_is_order_independent(self):
        rng = random.Random(7)
        for _ in range(20):
            rows = random_rows(rng, 6, 5)
            shuffled = rows[:]
            rng.shuffle(shuffled)
            assert rank_of(to_sparse(r) for r in rows) == rank_of(to_sparse(r) for r in shuffled)

    def test_copy_is_independent(self):
        acc = RankAccumulator()
        acc.insert(SparseVec.unit(0))
        clone = acc.copy()
        clone.insert(SparseVec.unit(1))
        assert acc.rank == 1
        assert clone.rank == 2


class TestNullspaceAndSolver:
    def test_nullspace_of_plane(self):
        basis = nullspace([to_sparse([1, 1, 1])], range(3))
        assert len(basis) == 2
        for v in basis:
            assert v.dot(to_sparse([1, 1, 1])) == 0

    def test_nullspace_without_rows_is_everything(self):
        assert len(nullspace([], range(4))) == 4

    def test_span_solver(self):
        solver = SpanSolver([to_sparse([1, 1, 0]), to_sparse([0, 1, 1])])
        assert solver.coordinates(to_sparse([1, 3, 2])) == [1, 2]
        assert solver.coordinates(to_sparse([1, 0, 0])) is None

    def test_primitive(self):
        assert primitive([Fraction(1, 2), Fraction(3, 4), 0]) == (2, 3, 0)
        assert primitive([4, -6]) == (2, -3)
        assert primitive([0, 0]) == (0, 0)


class TestSparseMatrix:
    def test_apply_and_compose(self):
        a = SparseMatrix.from_entries([(1, 0, 1)])  # e_0 -> e_1
        b = SparseMatrix.from_entries([(2, 1, 1)])  # e_1 -> e_2
        assert a.apply(SparseVec.unit(0)) == SparseVec.unit(1)
        assert (b @ a).apply(SparseVec.unit(0)) == SparseVec.unit(2)
        assert (a @ b).is_zero()

    def test_commutator_of_sl2(self):
        e = SparseMatrix.from_entries([(0, 1, 1)])
        f = SparseMatrix.from_entries([(1, 0, 1)])
        h = SparseMatrix.from_entries([(0, 0, 1), (1, 1, -1)])
        assert commutator(e, f) == h
        assert commutator(h, e) == e.scale(2)

    def test_rows_and_reindex(self):
        m = SparseMatrix.from_entries([("x", "y", 2), ("y", "y", 3)])
        assert m.rows() == {"x": SparseVec({"y": 2}), "y": SparseVec({"y": 3})}
        renamed = m.reindex({"x": 0, "y": 1})
        assert renamed.entries() == [(0, 1, 2), (1, 1, 3)]
