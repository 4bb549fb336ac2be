"""Text form of exact rationals: ``"p/q"``, or ``"n"`` when integral."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def fmt_q(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_q(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer. Decimal points are rejected, no rounding ever."""
    s = text.strip().replace("−", "-")
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc

