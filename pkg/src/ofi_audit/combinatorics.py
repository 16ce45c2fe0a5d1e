"""Counting and score-distribution analysis for confusion matrices.

A confusion matrix with ``n`` observations is a quadruple
``(tp, fn, fp, tn)`` of non-negative integers with cell sum ``n``. Over the
set of all such quadruples this module provides

* enumeration (:func:`enumerate_cms`),
* closed-form counts: per-cell value counts follow triangular numbers
  (:func:`count_value`) and the total number of quadruples is
  ``(n+1)(n+2)(n+3)/6`` (:func:`total_combinations`),
* the exact multiplicity of every marginal-benefit score ``(fp - fn)/n``,
  computed in O(n^2) without enumeration
  (:func:`marginal_benefit_distribution`), and
* the distribution's exact moments: mean 0, variance ``(n+4)/(10n)``
  (:func:`b_stats`).

Every closed form is checked against full enumeration by the test suite
and by the ``verify`` CLI subcommand; :mod:`ofi_audit.exhaustive` holds the
enumeration-based reference computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import _kernels

#: Standard deviation of a symmetric triangular distribution on [-1, 1].
TRIANGULAR_STD = 1 / math.sqrt(6)


def _require_positive(n: int, what: str = "n") -> None:
    if n < 1:
        raise ValueError(f"{what} must be >= 1, got {n}")


def termial(w: int) -> int:
    """The w-th triangular number, w(w+1)/2. termial(0) is 0."""
    if w < 0:
        raise ValueError(f"w must be >= 0, got {w}")
    return w * (w + 1) // 2


def total_combinations(n: int) -> int:
    """Number of confusion-matrix quadruples with cell sum n.

    Choosing a 4-cell composition of n gives (n+1)(n+2)(n+3)/6.
    """
    _require_positive(n)
    return (n + 1) * (n + 2) * (n + 3) // 6


def enumerate_cms(n: int) -> Iterator[tuple[int, int, int, int]]:
    """Yield every quadruple (tp, fn, fp, tn) with cell sum n exactly once.

    The order is ascending lexicographic by (tp, fn, fp); tn is the
    remainder. The stream has total_combinations(n) items, which grows
    cubically, so large n are on the caller.
    """
    _require_positive(n)
    for tp in range(n + 1):
        for fn in range(n + 1 - tp):
            for fp in range(n + 1 - tp - fn):
                yield (tp, fn, fp, n - tp - fn - fp)


def count_value(x: int, n: int) -> int:
    """How many quadruples with cell sum n have a designated cell equal to x.

    Fixing one cell at x leaves a 3-cell composition of n - x, so the count
    is termial(n - x + 1) regardless of which cell is designated.
    """
    _require_positive(n)
    if not 0 <= x <= n:
        raise ValueError(f"x must be in [0, {n}], got {x}")
    return termial(n - x + 1)


def count_sum_identity(n: int) -> bool:
    """Whether the per-cell counts over all values sum to the total count.

    Always true; exposed as a checkable identity for the verify command.
    """
    _require_positive(n)
    return sum(count_value(x, n) for x in range(n + 1)) == total_combinations(n)


def count_increment(x: int, n: int) -> int:
    """Growth of count_value(x, .) when n increases by one.

    Computed as the difference of the two counts; it equals n - x + 2.
    """
    _require_positive(n)
    if not 0 <= x <= n:
        raise ValueError(f"x must be in [0, {n}], got {x}")
    return count_value(x, n + 1) - count_value(x, n)


@dataclass(frozen=True)
class ScoreDistribution:
    """Exact multiplicity of every score (fp - fn)/n over all quadruples.

    Scores are reduced Fractions whose denominator divides n. The
    multiplicities sum to total_combinations(n), the map is symmetric
    around zero, and zero is the unique mode.
    """

    n: int
    counts: dict[Fraction, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def count_for(self, score: Fraction) -> int:
        return self.counts.get(Fraction(score), 0)

    def sorted_scores(self) -> list[Fraction]:
        return sorted(self.counts)

    def mode(self) -> Fraction:
        """Score with the highest multiplicity (smallest such score on ties)."""
        return max(self.sorted_scores(), key=lambda s: (self.counts[s], -s))

    def csv_rows(self) -> Iterator[tuple[int, int, int]]:
        """Rows (score_numerator, score_denominator, multiplicity) in
        ascending score order, with scores in lowest terms."""
        for score in self.sorted_scores():
            yield score.numerator, score.denominator, self.counts[score]


def marginal_benefit_distribution(n: int) -> ScoreDistribution:
    """Distribution of the marginal-benefit score over all quadruples.

    Computed without enumerating quadruples: every pair (fp, fn) with
    fp + fn <= n leaves n - fp - fn samples for the remaining two cells
    and therefore contributes multiplicity n - fp - fn + 1 to the score
    (fp - fn)/n. Accumulating per difference is O(n^2) total work, which
    keeps n up to about 10^5 tractable.
    """
    _require_positive(n)
    raw = _kernels.pair_score_counts(n)
    counts = {
        Fraction(offset - n, n): int(mult)
        for offset, mult in enumerate(raw)
        if mult > 0
    }
    return ScoreDistribution(n=n, counts=counts)


@dataclass(frozen=True)
class BStats:
    """Exact moments of the marginal-benefit score over all quadruples.

    ``std`` is the only floating-point field; the exact rational variance
    sits next to it.
    """

    n: int
    mean: Fraction
    variance: Fraction
    std: float


def b_stats(n: int) -> BStats:
    """Mean, variance and standard deviation of the score distribution.

    The mean is exactly 0 by symmetry and the population variance is
    (n+4)/(10n). As n grows the variance tends to 1/10 and the standard
    deviation to 1/sqrt(10) = 0.3162....
    """
    _require_positive(n)
    variance = Fraction(n + 4, 10 * n)
    return BStats(n=n, mean=Fraction(0), variance=variance, std=math.sqrt(variance))


@dataclass(frozen=True)
class TriangularComparison:
    """Observed standard deviation next to the triangular reference.

    ``triangular_std`` is what a symmetric triangular distribution on
    [-1, 1] would have; a persistent gap shows the score distribution is
    not triangular even though it looks like it.
    """

    n: int
    actual_std: float
    triangular_std: float

    @property
    def gap(self) -> float:
        return abs(self.actual_std - self.triangular_std)


def non_triangular_witness(n: int) -> TriangularComparison:
    """Compare the exact std with the triangular reference 1/sqrt(6).

    The actual std is sqrt((n+4)/(10n)), which tends to 1/sqrt(10) =
    0.3162... while the triangular reference stays at 0.4082....
    Caution: the two coincide exactly at n=6 (where (n+4)/(10n) = 1/6) and
    stay within 0.08 of each other for all n in [3, 51], so the std gap
    separates the distributions only away from that window.
    """
    stats = b_stats(n)
    return TriangularComparison(
        n=n, actual_std=stats.std, triangular_std=TRIANGULAR_STD
    )
