"""Exact bias metrics over binary confusion matrices.

Every metric here is computed with exact rational arithmetic
(:class:`fractions.Fraction`). Floating point never enters a metric value;
decimals appear only when results are formatted for display.

Conventions:

* The positive prediction is the beneficial outcome. Datasets where the
  negative label is the beneficial one should be flipped first (see
  :func:`ofi_audit.ingestion.flip_polarity`).
* Two-group metrics are directional. The first argument is the group the
  score is *for*; OFI is antisymmetric and DI values are reciprocal, so
  callers must fix the comparison direction explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from operator import index


DEFAULT_OFI_THRESHOLD = Fraction(3, 10)
FOUR_FIFTHS_LOW = Fraction(4, 5)
FOUR_FIFTHS_HIGH = Fraction(5, 4)


class EmptyGroupError(ValueError):
    """A metric was requested for a group with no observations."""


class ThresholdError(ValueError):
    """A verdict threshold is outside its valid range."""


@dataclass(frozen=True, slots=True)
class BinaryConfusion:
    """Outcome counts (tp, fn, fp, tn) for one group's binary predictions.

    ``tp`` counts label 1 / prediction 1, ``fn`` label 1 / prediction 0,
    ``fp`` label 0 / prediction 1 and ``tn`` label 0 / prediction 0. All
    four cells are non-negative integers; an all-zero matrix is a valid
    value but metric functions reject it.
    """

    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fn", "fp", "tn"):
            value = index(getattr(self, name))
            if value < 0:
                raise ValueError(f"confusion cell {name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)

    @property
    def n(self) -> int:
        """Total number of observations."""
        return self.tp + self.fn + self.fp + self.tn

    @property
    def positive_labels(self) -> int:
        return self.tp + self.fn

    @property
    def negative_labels(self) -> int:
        return self.fp + self.tn

    @property
    def positive_predictions(self) -> int:
        return self.tp + self.fp

    @property
    def negative_predictions(self) -> int:
        return self.fn + self.tn

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.tp, self.fn, self.fp, self.tn)

    def scaled(self, k: int) -> "BinaryConfusion":
        """Return a copy with every cell multiplied by ``k`` (k >= 1)."""
        if index(k) < 1:
            raise ValueError(f"scale factor must be >= 1, got {k}")
        return BinaryConfusion(self.tp * k, self.fn * k, self.fp * k, self.tn * k)


class DiKind(Enum):
    """How a disparate-impact value should be read."""

    FINITE = "finite"
    CONTEXTUAL_ONE = "contextual_one"
    UNDEFINED_ZERO_DENOMINATOR = "undefined_zero_denominator"


@dataclass(frozen=True, slots=True)
class DiScore:
    """A disparate-impact result with explicit undefined states.

    DI is a ratio of positive-prediction rates, so it is undefined when the
    second group's rate is zero. Two zero rates are conventionally read as
    "equal rates", carried here as ``CONTEXTUAL_ONE`` with value 1. A zero
    denominator against a nonzero numerator has no such convention and is
    reported as ``UNDEFINED_ZERO_DENOMINATOR`` with no value, rather than
    as an infinity or NaN.
    """

    kind: DiKind
    value: Fraction | None

    @classmethod
    def finite(cls, value: Fraction) -> "DiScore":
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"a finite DI value cannot be negative: {value}")
        return cls(DiKind.FINITE, value)

    @classmethod
    def contextual_one(cls) -> "DiScore":
        return cls(DiKind.CONTEXTUAL_ONE, Fraction(1))

    @classmethod
    def zero_denominator(cls) -> "DiScore":
        return cls(DiKind.UNDEFINED_ZERO_DENOMINATOR, None)

    @property
    def is_finite(self) -> bool:
        return self.kind is DiKind.FINITE


class BiasVerdict(Enum):
    """Categorical reading of a bias score against a threshold rule."""

    BIAS_TOWARD_FIRST = "bias_toward_first"
    BIAS_TOWARD_SECOND = "bias_toward_second"
    NO_BIAS_INDICATED = "no_bias_indicated"
    UNDEFINED = "undefined"


def _require_samples(cm: BinaryConfusion, which: str = "group") -> None:
    if cm.n == 0:
        raise EmptyGroupError(f"{which} has no observations (n=0)")


def benefit(cm: BinaryConfusion) -> Fraction:
    """Positive-prediction rate (tp + fp) / n: the share of the group that
    received the beneficial outcome."""
    _require_samples(cm)
    return Fraction(cm.positive_predictions, cm.n)


def expected_benefit(cm: BinaryConfusion) -> Fraction:
    """Positive-label rate (tp + fn) / n: the share of the group that
    should have received the beneficial outcome per the ground labels."""
    _require_samples(cm)
    return Fraction(cm.positive_labels, cm.n)


def marginal_benefit(cm: BinaryConfusion) -> Fraction:
    """Benefit minus expected benefit, which reduces to (fp - fn) / n.

    Negative values mean the group received less than its labels warrant,
    positive values a surplus, zero an exactly proportionate outcome.
    """
    _require_samples(cm)
    return Fraction(cm.fp - cm.fn, cm.n)


def ofi(cm_i: BinaryConfusion, cm_j: BinaryConfusion) -> Fraction:
    """Objective Fairness Index for group i versus group j.

    The difference of the two marginal benefits, in [-2, 2]. It is
    antisymmetric in its arguments and zero when the two groups are
    treated equally relative to their own labels.
    """
    _require_samples(cm_i, "first group")
    _require_samples(cm_j, "second group")
    return marginal_benefit(cm_i) - marginal_benefit(cm_j)


def disparate_impact(cm_i: BinaryConfusion, cm_j: BinaryConfusion) -> DiScore:
    """Disparate impact of group i versus group j.

    The ratio of the groups' positive-prediction rates. Returns a finite
    value when group j's rate is positive, the contextual value 1 when
    both rates are zero, and an explicit zero-denominator marker when only
    group j's rate is zero.
    """
    _require_samples(cm_i, "first group")
    _require_samples(cm_j, "second group")
    rate_i = Fraction(cm_i.positive_predictions, cm_i.n)
    rate_j = Fraction(cm_j.positive_predictions, cm_j.n)
    if rate_j > 0:
        return DiScore.finite(rate_i / rate_j)
    if rate_i == 0:
        return DiScore.contextual_one()
    return DiScore.zero_denominator()


def four_fifths_verdict(
    di: DiScore,
    low: Fraction = FOUR_FIFTHS_LOW,
    high: Fraction = FOUR_FIFTHS_HIGH,
) -> BiasVerdict:
    """Classify a DI score with the four-fifths screening band.

    Values above ``high`` flag bias toward the first group, values below
    ``low`` bias toward the second; the closed band [low, high] is read as
    no indication. A contextual 1 is inside the band by construction; a
    zero-denominator DI yields ``UNDEFINED``.
    """
    low = Fraction(low)
    high = Fraction(high)
    if low <= 0 or high <= 0:
        raise ThresholdError(f"DI band must be positive, got [{low}, {high}]")
    if low > high:
        raise ThresholdError(f"DI band is inverted: [{low}, {high}]")
    if di.kind is DiKind.UNDEFINED_ZERO_DENOMINATOR:
        return BiasVerdict.UNDEFINED
    if di.kind is DiKind.CONTEXTUAL_ONE:
        return BiasVerdict.NO_BIAS_INDICATED
    assert di.value is not None
    if di.value > high:
        return BiasVerdict.BIAS_TOWARD_FIRST
    if di.value < low:
        return BiasVerdict.BIAS_TOWARD_SECOND
    return BiasVerdict.NO_BIAS_INDICATED


def ofi_verdict(
    value: Fraction,
    threshold: Fraction = DEFAULT_OFI_THRESHOLD,
) -> BiasVerdict:
    """Classify an OFI value against a symmetric threshold band.

    The closed band [-threshold, threshold] is the no-bias region, so
    boundary values do not flag bias. The default threshold of 3/10 suits
    uniformly distributed confusion matrices; domains with concentrated
    outcomes should lower it.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ThresholdError(f"OFI threshold must be > 0, got {threshold}")
    value = Fraction(value)
    if value > threshold:
        return BiasVerdict.BIAS_TOWARD_FIRST
    if value < -threshold:
        return BiasVerdict.BIAS_TOWARD_SECOND
    return BiasVerdict.NO_BIAS_INDICATED
