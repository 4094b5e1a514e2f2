"""
Rational helpers. ``Rat`` is ``fractions.Fraction``: always reduced, positive
denominator, totally ordered.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Rat = Fraction
RatLike = Union[int, Fraction, str]


def as_rat(value: RatLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rat(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def lcm_denominator(values: Iterable[Fraction]) -> int:
    result = 1
    for value in values:
        den = Fraction(value).denominator
        result = result * den // gcd(result, den)
    return result


def frac_part(value: Fraction) -> Fraction:
    """Representative of value mod 1 in [0, 1)."""
    return value - (value.numerator // value.denominator)
