"""Closed forms against enumeration oracles, plus the stated examples."""

import math
from collections import Counter
from fractions import Fraction

import pytest

from ofi_audit import exhaustive
from ofi_audit.combinatorics import (
    TRIANGULAR_STD,
    b_stats,
    count_increment,
    count_sum_identity,
    count_value,
    enumerate_cms,
    marginal_benefit_distribution,
    non_triangular_witness,
    termial,
    total_combinations,
)

# the ten quadruples of size 2, spelled out
M2 = {
    (2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2),
    (1, 0, 0, 1), (1, 0, 1, 0), (1, 1, 0, 0), (0, 1, 0, 1),
    (0, 1, 1, 0), (0, 0, 1, 1),
}


class TestTermial:
    def test_examples(self):
        assert termial(0) == 0
        assert (termial(1), termial(2), termial(3)) == (1, 3, 6)
        assert termial(100) == sum(range(1, 101)) == 5050

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            termial(-1)


class TestEnumerateCms:
    def test_size_one_is_the_unit_vectors(self):
        assert set(enumerate_cms(1)) == {
            (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)
        }

    def test_size_two_matches_the_listing(self):
        assert set(enumerate_cms(2)) == M2

    def test_lexicographic_order(self):
        for n in (1, 2, 5, 9):
            items = list(enumerate_cms(n))
            assert items == sorted(items)
            assert len(items) == len(set(items))

    def test_cells_sum_to_n(self):
        assert all(sum(cm) == 7 for cm in enumerate_cms(7))

    def test_size_five_count(self):
        assert len(list(enumerate_cms(5))) == 56 == total_combinations(5)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            list(enumerate_cms(0))


class TestCountValue:
    def test_examples(self):
        assert count_value(2, 2) == 1
        assert count_value(1, 2) == 3
        assert count_value(0, 2) == 6
        assert count_value(3, 7) == 15

    def test_against_enumeration(self):
        for n in (1, 2, 3, 7, 11):
            for cell in range(4):
                observed = Counter(cm[cell] for cm in enumerate_cms(n))
                for x in range(n + 1):
                    assert observed[x] == count_value(x, n) == termial(n - x + 1)

    @pytest.mark.parametrize("x", [-1, 8])
    def test_domain(self, x):
        with pytest.raises(ValueError):
            count_value(x, 7)


class TestTotalCombinations:
    @pytest.mark.parametrize("n, expected", [(1, 4), (2, 10), (60, 39711)])
    def test_examples(self, n, expected):
        assert total_combinations(n) == expected

    def test_against_enumeration(self):
        for n in (1, 2, 3, 8, 13):
            assert total_combinations(n) == len(list(enumerate_cms(n)))


class TestCountSumIdentity:
    @pytest.mark.parametrize("n", [1, 2, 37])
    def test_holds(self, n):
        assert count_sum_identity(n)


class TestCountIncrement:
    def test_examples(self):
        assert count_increment(0, 1) == 3
        assert count_increment(4, 10) == 8
        for n in (1, 4, 9):
            assert count_increment(n, n) == 2

    def test_lemma_formula(self):
        for n in range(1, 30):
            for x in range(n + 1):
                assert count_increment(x, n) == n - x + 2

    def test_against_enumeration(self):
        for n in (3, 10):
            before = Counter(cm[0] for cm in enumerate_cms(n))
            after = Counter(cm[0] for cm in enumerate_cms(n + 1))
            for x in range(n + 1):
                assert after[x] - before[x] == count_increment(x, n)

    def test_domain(self):
        with pytest.raises(ValueError):
            count_increment(11, 10)


class TestDistribution:
    def test_size_one(self):
        dist = marginal_benefit_distribution(1)
        assert dist.counts == {Fraction(-1): 1, Fraction(0): 2, Fraction(1): 1}

    def test_matches_enumeration_histogram(self):
        for n in range(1, 15):
            assert marginal_benefit_distribution(n) == exhaustive.stream_score_histogram(n)

    @pytest.mark.parametrize("n", [1, 2, 6, 17, 50])
    def test_total_symmetry_mode(self, n):
        dist = marginal_benefit_distribution(n)
        assert dist.total() == total_combinations(n)
        zero = dist.count_for(Fraction(0))
        for score, mult in dist.counts.items():
            assert dist.counts[-score] == mult
            if score != 0:
                assert mult < zero
        assert dist.mode() == 0

    def test_scores_are_reduced_with_denominator_dividing_n(self):
        dist = marginal_benefit_distribution(12)
        for score in dist.counts:
            assert 12 % score.denominator == 0
            assert -1 <= score <= 1

    def test_csv_rows_ascending(self):
        rows = list(marginal_benefit_distribution(3).csv_rows())
        scores = [Fraction(num, den) for num, den, _ in rows]
        assert scores == sorted(scores)
        assert sum(mult for _, _, mult in rows) == total_combinations(3)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            marginal_benefit_distribution(0)


class TestBStats:
    def test_size_one(self):
        stats = b_stats(1)
        assert stats.mean == 0
        assert stats.variance == Fraction(1, 2)
        assert math.isclose(stats.std, math.sqrt(0.5), rel_tol=1e-12)

    def test_size_four_against_brute_force(self):
        scores = [Fraction(fp - fn, 4) for (tp, fn, fp, tn) in enumerate_cms(4)]
        assert len(scores) == 35
        brute_var = sum(s**2 for s in scores) / len(scores)  # mean is 0
        assert brute_var == Fraction(1, 5) == b_stats(4).variance

    def test_matches_enumeration_moments(self):
        for n in range(1, 15):
            mean, variance = exhaustive.stream_score_moments(n)
            stats = b_stats(n)
            assert mean == stats.mean == 0
            assert variance == stats.variance == Fraction(n + 4, 10 * n)

    def test_std_squares_to_variance(self):
        for n in (1, 7, 100, 10**6):
            stats = b_stats(n)
            assert math.isclose(stats.std**2, float(stats.variance), rel_tol=1e-12)

    def test_limits(self):
        assert math.isclose(b_stats(10**6).std, 1 / math.sqrt(10), abs_tol=1e-5)
        assert abs(float(b_stats(10**8).variance) - 0.1) < 1e-8

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            b_stats(0)


class TestNonTriangularWitness:
    def test_reference_constant(self):
        assert TRIANGULAR_STD == 1 / math.sqrt(6)
        for n in (1, 10, 100):
            assert non_triangular_witness(n).triangular_std == TRIANGULAR_STD

    def test_size_100(self):
        witness = non_triangular_witness(100)
        assert math.isclose(witness.actual_std, 0.3225, abs_tol=5e-4)
        assert math.isclose(witness.triangular_std, 0.4082, abs_tol=5e-4)
        assert witness.gap > 0.08

    def test_size_one(self):
        witness = non_triangular_witness(1)
        assert math.isclose(witness.actual_std, 0.7071, abs_tol=5e-4)
        assert witness.gap > 0.08

    def test_size_six_coincidence(self):
        # (n+4)/(10n) equals 1/6 exactly at n=6, so the std gap vanishes
        # there; the distribution still is not triangular at that size.
        assert b_stats(6).variance == Fraction(1, 6)
        assert non_triangular_witness(6).gap < 1e-12
        dist = marginal_benefit_distribution(6)
        brute_var = sum(s**2 * m for s, m in dist.counts.items()) / dist.total()
        assert brute_var == Fraction(1, 6)

    def test_gap_exceeds_008_away_from_the_window(self):
        for n in (1, 2, 52, 120, 200):
            assert non_triangular_witness(n).gap > 0.08
