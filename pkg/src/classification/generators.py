"""
Degree-one generators (y - alpha_i) / t^(s_i) of A_alpha over K.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from src.classification.descriptors import AlphaDescriptor
from src.classification.oracles import (
    EXACT_ZERO,
    MembershipResult,
    MembershipVerdict,
    Order,
    certified_order,
)
from src.errors import ExponentDomainError, Undetermined
from src.fields.rational import RatLike
from src.fields.text import format_power, format_term, join_terms
from src.polys.laurent import LaurentPoly
from src.series.hahn import HahnSeries

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeOneElement:
    """(y - prefix) / t^exponent with a finite Hahn series prefix."""

    prefix: HahnSeries
    exponent: Fraction

    def is_integral(self) -> bool:
        return self.exponent.denominator == 1 and all(e.denominator == 1 for e in self.prefix.support())

    def to_laurent(self) -> LaurentPoly:
        """The element as a Laurent polynomial in t, y.

        Raises:
            ExponentDomainError: some exponent is not an integer.
        """
        if not self.is_integral():
            raise ExponentDomainError(f"{self} has fractional exponents")
        numerator = LaurentPoly.gen("y") - LaurentPoly({(int(e), 0): c for e, c in self.prefix.terms})
        return numerator.shift("t", -int(self.exponent))

    def evaluate(self, alpha: HahnSeries) -> HahnSeries:
        """The element at y = alpha."""
        return (alpha - self.prefix).shift(-self.exponent)

    def order_at(self, alpha: AlphaDescriptor, precision_cap: Optional[RatLike] = None) -> Order:
        """nu((alpha - prefix) / t^exponent), EXACT_ZERO when alpha equals the prefix."""
        if alpha.has_finite_support() and alpha.series(0) == self.prefix:
            return EXACT_ZERO
        order = certified_order(
            lambda p: self.evaluate(alpha.series(p + self.exponent)),
            precision_cap,
            what=str(self),
        )
        return EXACT_ZERO if order is None else order

    def __str__(self) -> str:
        parts = [(False, "y")] + [
            format_term(-c, format_power("t", e) if e else "") for e, c in self.prefix.terms
        ]
        numerator = join_terms(parts)
        if self.prefix.terms:
            numerator = f"({numerator})"
        if not self.exponent:
            return numerator
        return f"{numerator}/{format_power('t', self.exponent)}"


def element_membership(
    element: DegreeOneElement, alpha: AlphaDescriptor, precision_cap: Optional[RatLike] = None
) -> MembershipResult:
    """Membership of a degree-one element of K[y] in A_alpha."""
    try:
        order = element.order_at(alpha, precision_cap)
    except Undetermined as exc:
        return MembershipResult(MembershipVerdict.UNDETERMINED, precision=exc.precision)
    if order is EXACT_ZERO:
        return MembershipResult(MembershipVerdict.IN_CONDUCTOR, order)
    return MembershipResult(MembershipVerdict.IN if order >= 0 else MembershipVerdict.NOT_IN, order)


def _check_count(n: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one generator, got {n}")


def generators(alpha: AlphaDescriptor, n: int) -> List[DegreeOneElement]:
    """First n generators of A_alpha over K.

    A finite alpha gives (y - alpha)/t^j for j = 1..n.  Otherwise s_i is
    the i-th support exponent of alpha and alpha_i the sum of the terms
    before it.
    """
    _check_count(n)
    prefix, exact = alpha.leading_terms(n)
    if exact:
        return [DegreeOneElement(prefix, Fraction(j)) for j in range(1, n + 1)]
    return [
        DegreeOneElement(HahnSeries(prefix.terms[: i - 1]), prefix.terms[i - 1][0])
        for i in range(1, n + 1)
    ]


def crucial_generators(alpha: AlphaDescriptor, n: int) -> List[DegreeOneElement]:
    """Generators of the crucial maximal ideal besides t.

    The i-th uses the prefix including the i-th term, so its order at
    alpha is positive.
    """
    _check_count(n)
    prefix, exact = alpha.leading_terms(n)
    if exact:
        return [DegreeOneElement(prefix, Fraction(j)) for j in range(1, n + 1)]
    return [
        DegreeOneElement(HahnSeries(prefix.terms[:i]), prefix.terms[i - 1][0])
        for i in range(1, n + 1)
    ]


__all__ = [
    "DegreeOneElement",
    "element_membership",
    "generators",
    "crucial_generators",
]
