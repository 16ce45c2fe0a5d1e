"""Identity checks between the closed forms and full enumeration.

:func:`run_identity_checks` evaluates every identity over a range of
sample sizes and reports one result per identity. Full enumeration is
O(n^3) per size, so ranges are guarded at n <= 200 (about 1.4 million
quadruples at the cap).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import exhaustive
from .combinatorics import (
    count_increment,
    count_sum_identity,
    count_value,
    marginal_benefit_distribution,
    total_combinations,
)

#: Largest n the verify command will enumerate.
ENUMERATION_MAX = 200

#: Largest n for the pure-Python tuple-stream cross-check.
STREAM_CHECK_MAX = 40

#: (identity name, description) in report order.
IDENTITIES: tuple[tuple[str, str], ...] = (
    ("cardinality", "enumerated quadruple count equals (n+1)(n+2)(n+3)/6"),
    ("cell-counts", "enumerated per-cell value counts match the triangular closed form"),
    ("count-sum", "per-cell counts summed over all values equal the total count"),
    ("count-increment", "count growth per added sample equals n - x + 2"),
    ("distribution", "pair-counting distribution matches the enumeration histogram"),
    ("distribution-total", "distribution multiplicities sum to the total count"),
    ("distribution-symmetry", "multiplicities at s and -s agree"),
    ("distribution-mode", "zero is the unique most frequent score"),
    ("moments", "enumerated mean is 0 and variance is (n+4)/(10n) exactly"),
    ("stream-equivalence", f"tuple stream agrees with the enumeration kernels (n <= {STREAM_CHECK_MAX})"),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    description: str
    passed: bool
    detail: str


def _check_single_n(n: int) -> dict[str, str | None]:
    """Run every identity at one n. Returns failure text per identity,
    None where the identity holds."""
    failures: dict[str, str | None] = {name: None for name, _ in IDENTITIES}

    expected_total = total_combinations(n)
    brute_count = exhaustive.matrix_count(n)
    if brute_count != expected_total:
        failures["cardinality"] = f"n={n}: enumerated {brute_count}, closed form {expected_total}"

    brute_cells = exhaustive.cell_value_counts(n)
    for cell in range(4):
        for x in range(n + 1):
            if brute_cells[cell, x] != count_value(x, n):
                failures["cell-counts"] = (
                    f"n={n}: cell {cell} value {x}: enumerated "
                    f"{brute_cells[cell, x]}, closed form {count_value(x, n)}"
                )
                break
        if failures["cell-counts"]:
            break

    if not count_sum_identity(n):
        failures["count-sum"] = f"n={n}: sum of counts differs from total"

    for x in range(n + 1):
        if count_increment(x, n) != n - x + 2:
            failures["count-increment"] = (
                f"n={n}, x={x}: increment {count_increment(x, n)} != {n - x + 2}"
            )
            break

    dist = marginal_benefit_distribution(n)
    hist = exhaustive.score_histogram(n)
    if dist != hist:
        failures["distribution"] = f"n={n}: pair counting and enumeration disagree"

    if dist.total() != expected_total:
        failures["distribution-total"] = (
            f"n={n}: multiplicities sum to {dist.total()}, expected {expected_total}"
        )

    for score, mult in dist.counts.items():
        if dist.counts.get(-score) != mult:
            failures["distribution-symmetry"] = (
                f"n={n}: counts[{score}]={mult} but counts[{-score}]={dist.counts.get(-score)}"
            )
            break

    zero_count = dist.count_for(Fraction(0))
    for score, mult in dist.counts.items():
        if score != 0 and mult >= zero_count:
            failures["distribution-mode"] = (
                f"n={n}: counts[{score}]={mult} >= counts[0]={zero_count}"
            )
            break

    mean, variance = exhaustive.score_moments(n)
    if mean != 0 or variance != Fraction(n + 4, 10 * n):
        failures["moments"] = (
            f"n={n}: enumerated mean {mean}, variance {variance}, "
            f"expected 0 and {Fraction(n + 4, 10 * n)}"
        )

    if n <= STREAM_CHECK_MAX:
        stream_cells = exhaustive.stream_cell_value_counts(n)
        stream_ok = (
            exhaustive.stream_count(n) == brute_count
            and exhaustive.stream_score_histogram(n) == hist
            and all(
                dict(stream_cells[cell])
                == {x: int(brute_cells[cell, x]) for x in range(n + 1) if brute_cells[cell, x]}
                for cell in range(4)
            )
            and exhaustive.stream_score_moments(n) == (mean, variance)
        )
        if not stream_ok:
            failures["stream-equivalence"] = f"n={n}: stream route disagrees with kernels"

    return failures


def run_identity_checks(
    n_min: int = 1, n_max: int = STREAM_CHECK_MAX, workers: int = 1
) -> list[CheckResult]:
    """Evaluate every identity for each n in [n_min, n_max].

    Raises ValueError for an empty or infeasible range. With workers > 1
    the per-n work is spread over a thread pool (the numba kernels release
    the GIL); results are identical either way.
    """
    if n_min < 1 or n_min > n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got [{n_min}, {n_max}]")
    if n_max > ENUMERATION_MAX:
        raise ValueError(
            f"n_max {n_max} exceeds the enumeration guard {ENUMERATION_MAX}; "
            f"full enumeration is O(n^3)"
        )

    ns = range(n_min, n_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_n = list(pool.map(_check_single_n, ns))
    else:
        per_n = [_check_single_n(n) for n in ns]

    stream_span = [n for n in ns if n <= STREAM_CHECK_MAX]
    results = []
    for name, description in IDENTITIES:
        if name == "stream-equivalence" and not stream_span:
            results.append(
                CheckResult(name, description, True, "skipped: range starts above the stream bound")
            )
            continue
        first_failure = next(
            (failures[name] for failures in per_n if failures[name]), None
        )
        if first_failure:
            results.append(CheckResult(name, description, False, first_failure))
        else:
            span = (
                f"n in [{stream_span[0]}, {stream_span[-1]}]"
                if name == "stream-equivalence"
                else f"n in [{n_min}, {n_max}]"
            )
            results.append(CheckResult(name, description, True, span))
    return results
