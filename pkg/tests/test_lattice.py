import random
from collections import Counter

import pytest

from exceptions import DecompositionError, NotInConeError
from services import lattice
from services.cone import member, parse_inequality
from services.lattice import (
    SWEEP_COLUMNS, Decomposer, PointEnumerator, count_points, decompose, enumerate_points,
    sample_points, sum_signatures, verify_dimension_sweep,
)
from services.root_system import DomWeight, dominant_weights, weyl_dim
from services.signatures import Signature, essential_signatures
from services.tables import fundamental_table


def sig(k, **exponents):
    p = [0] * 12
    for name, value in exponents.items():
        p[int(name[1:]) - 1] = value
    return Signature(DomWeight(k), tuple(p))


class TestEnumeration:
    def test_trivial_weight(self):
        assert enumerate_points(DomWeight.zero()) == [Signature.zero(DomWeight.zero())]
        assert count_points(DomWeight.zero()) == 1

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_fundamental_points_are_the_tables(self, i):
        points = enumerate_points(DomWeight.fundamental(i))
        assert points == fundamental_table(i)
        assert count_points(DomWeight.fundamental(i)) == len(points)

    def test_count_matches_enumeration(self):
        for hw in dominant_weights(2):
            assert count_points(hw) == len(enumerate_points(hw))

    def test_count_of_rho(self):
        rho = DomWeight((1, 1, 1, 1))
        assert count_points(rho) == weyl_dim(rho) == 4096

    def test_count_is_monotone(self):
        for hw in dominant_weights(2):
            for i in range(1, 5):
                if hw.k[i - 1] > 0:
                    assert count_points(hw) >= count_points(hw - DomWeight.fundamental(i))

    def test_points_are_members(self):
        for sigma in enumerate_points(DomWeight((1, 0, 1, 0))):
            assert member(sigma)

    def test_points_of_small_weights_are_essential(self):
        for k in [(2, 0, 0, 0), (1, 0, 1, 0), (0, 0, 1, 1), (1, 1, 0, 0)]:
            hw = DomWeight(k)
            assert enumerate_points(hw) == essential_signatures(hw)

    def test_small_system(self):
        facets = [parse_inequality(text) for text in (
            "p1+p2+p3+p4+p5+p6+p7+p8+p9+p10+p11+p12 <= k1",
        )]
        enumerator = PointEnumerator(facets)
        # compositions of at most k1 into 12 parts
        assert enumerator.count(DomWeight((1, 0, 0, 0))) == 13
        assert enumerator.count(DomWeight((2, 0, 0, 0))) == 91
        assert len(list(enumerator.iter_points(DomWeight((2, 0, 0, 0))))) == 91

    def test_unbounded_variable_is_rejected(self):
        with pytest.raises(ValueError):
            PointEnumerator([parse_inequality("p1 <= k1")])

    def test_sample(self):
        rng = random.Random(1)
        hw = DomWeight((0, 1, 0, 0))
        sample = sample_points(hw, 5, rng)
        assert len(sample) == 5
        assert len(set(sample)) == 5
        assert all(member(s) for s in sample)
        assert len(sample_points(hw, 100, rng)) == 28


class TestDecomposition:
    def test_zero(self):
        assert decompose(Signature.zero(DomWeight.zero())) == []

    def test_fundamental_generator(self):
        sigma = sig((0, 1, 0, 0), p1=1, p11=1)
        assert decompose(sigma) == [sigma]

    def test_sum_of_generators(self):
        sigma = sig((1, 1, 0, 0), p1=1, p11=1, p12=1)
        parts = decompose(sigma)
        assert sum_signatures(parts) == sigma
        assert sorted(part.hw.k for part in parts) == [(0, 1, 0, 0), (1, 0, 0, 0)]

    def test_sum_signatures(self):
        assert sum_signatures([]) == Signature.zero(DomWeight.zero())
        total = sum_signatures([sig((1, 0, 0, 0), p12=1), sig((0, 1, 0, 0), p1=1, p11=1)])
        assert total == sig((1, 1, 0, 0), p1=1, p11=1, p12=1)
        assert sum_signatures([total]).hw.k == (1, 1, 0, 0)

    def test_parts_come_from_the_tables(self):
        tables = {s for i in range(1, 5) for s in fundamental_table(i)}
        rng = random.Random(8)
        for k in [(1, 1, 1, 1), (2, 1, 0, 0), (0, 1, 1, 1)]:
            hw = DomWeight(k)
            for sigma in sample_points(hw, 15, rng):
                parts = decompose(sigma)
                assert sum_signatures(parts) == sigma
                assert all(part in tables for part in parts)

    def test_non_member(self):
        with pytest.raises(NotInConeError) as excinfo:
            decompose(sig((1, 0, 0, 0), p12=2))
        assert 1 in excinfo.value.details["violated"]

    def test_missing_generator(self, monkeypatch):
        decomposer = Decomposer()
        monkeypatch.setitem(decomposer.tables, 1, [Signature.zero(DomWeight.fundamental(1))])
        with pytest.raises(DecompositionError) as excinfo:
            decomposer.decompose(sig((1, 0, 0, 0), p12=1))
        assert excinfo.value.exit_code == 4


class TestSweep:
    def test_max_total_zero(self):
        report = verify_dimension_sweep(0, point_budget=10)
        assert len(report.rows) == 1
        assert report.rows[0].count == report.rows[0].weyl == 1
        assert report.all_equal

    def test_fundamental_weights(self):
        report = verify_dimension_sweep(1, point_budget=10 ** 6)
        assert [row.count for row in report.rows] == [weyl_dim(DomWeight(row.k)) for row in report.rows]
        assert report.totals() == {"rows": 5, "computed": 5, "skipped": 0, "equal": 5, "unequal": 0}

    def test_budget_skips_rows(self):
        report = verify_dimension_sweep(1, point_budget=10)
        skipped = [row for row in report.rows if not row.computed]
        assert [row.k for row in skipped] == [(0, 1, 0, 0)]
        assert skipped[0].skipped_reason == "weyl_dim 28 exceeds point budget 10"
        assert report.all_equal

    def test_known_rows_are_reused(self):
        known = {(0, 0, 0, 0): (1, 0.5), (1, 0, 0, 0): (7, 0.5)}
        seen = []
        report = verify_dimension_sweep(1, point_budget=100, known=known, on_row=seen.append)
        assert len(seen) == 3
        assert [row.k for row in report.mismatches] == [(1, 0, 0, 0)]
        assert not report.all_equal

    def test_frame(self):
        frame = verify_dimension_sweep(1, point_budget=10).to_frame()
        assert list(frame.columns) == SWEEP_COLUMNS
        assert len(frame) == 5

    def test_negative_total(self):
        with pytest.raises(ValueError):
            verify_dimension_sweep(-1, point_budget=10)

    def test_count_worker(self):
        k, count, elapsed = lattice._count_row((0, 0, 1, 0))
        assert (k, count) == ((0, 0, 1, 0), 8)
        assert elapsed >= 0

    @pytest.mark.slow
    def test_counts_equal_dimensions_up_to_total_three(self):
        report = verify_dimension_sweep(3, point_budget=10 ** 6, jobs=2)
        assert report.all_equal
        assert report.computed == 35

    @pytest.mark.slow
    def test_every_point_decomposes_up_to_total_three(self):
        decomposer = Decomposer()
        for hw in dominant_weights(3):
            for sigma in enumerate_points(hw):
                parts = decomposer.decompose(sigma)
                assert sum_signatures(parts) == sigma
                assert all(sum(part.hw.k) == 1 for part in parts)

    @pytest.mark.slow
    def test_thousand_sampled_decompositions(self):
        rng = random.Random(2024)
        weights = dominant_weights(6)
        draws = Counter(rng.choice(weights).k for _ in range(1000))
        decomposer = Decomposer()
        checked = 0
        for k, n in sorted(draws.items()):
            hw = DomWeight(k)
            if weyl_dim(hw) <= 20000:
                points = sample_points(hw, n, rng)
            else:
                # too many points to enumerate: random sums of table rows
                points = [sum_signatures([rng.choice(fundamental_table(i))
                                          for i in range(1, 5) for _ in range(k[i - 1])])
                          for _ in range(n)]
            for sigma in points:
                assert member(sigma)
                assert sum_signatures(decomposer.decompose(sigma)) == sigma
                checked += 1
        assert checked >= 900
