"""Presentation helpers for exact rational values.

These are the only places where metric values become decimal text; the
rounding is done on the exact rational (half to even), never through an
intermediate float.
"""

from __future__ import annotations

from fractions import Fraction


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as ``num/den``, or just ``num`` for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_fixed(value: Fraction, places: int = 2) -> str:
    """Render a Fraction with a fixed number of decimal places.

    Rounding is exact half-to-even on the rational value, so e.g. 3/8
    formats to ``0.38`` at two places.
    """
    if places < 0:
        raise ValueError(f"places must be >= 0, got {places}")
    scaled = round(Fraction(value), places)  # Fraction.__round__ is exact
    units = scaled * 10**places
    assert units.denominator == 1
    digits = abs(units.numerator)
    sign = "-" if units.numerator < 0 else ""
    if places == 0:
        return f"{sign}{digits}"
    whole, frac = divmod(digits, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"
