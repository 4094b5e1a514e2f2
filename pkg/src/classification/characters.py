"""
Characters of Q/Z and the orbit test for alpha descriptors.

A character chi is kept through its restriction to (1/N)Z/Z, determined by
zeta = chi(1/N).  It acts on series termwise, a_s t^s -> chi(s) a_s t^s, and
two descriptors give the same algebra exactly when one is carried to the
other by such an action.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import divisors

from src.classification.descriptors import AlphaDescriptor
from src.errors import (
    ExponentDomainError,
    InsufficientPrecision,
    PreconditionFailed,
    SingleBranch,
    Undetermined,
)
from src.fields.cyclotomic import CycloField, FieldElem, as_field_elem, root_of_unity
from src.fields.rational import RatLike, as_rat, format_rat, lcm_denominator
from src.polys.laurent import LaurentPoly, prem
from src.puiseux.newton import puiseux_expand, separation_precision
from src.series.hahn import HahnSeries, next_precision

logger = logging.getLogger(__name__)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Character:
    """chi on (1/modulus)Z/Z with chi(1/modulus) = value."""

    modulus: int
    value: FieldElem

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise PreconditionFailed(f"character modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", as_field_elem(self.value))
        if self.value ** self.modulus != 1:
            raise PreconditionFailed(f"{self.value} is not a {self.modulus}-th root of unity")

    @classmethod
    def identity(cls) -> "Character":
        return cls(1, as_field_elem(1))

    def __call__(self, s: RatLike) -> FieldElem:
        scaled = as_rat(s) * self.modulus
        if scaled.denominator != 1:
            raise ExponentDomainError(
                f"chi is only known on (1/{self.modulus})Z, not at {format_rat(as_rat(s))}"
            )
        return self.value ** (scaled.numerator % self.modulus)

    def is_identity(self) -> bool:
        return self.value == 1

    def order(self) -> int:
        """Multiplicative order of chi(1/modulus)."""
        for d in divisors(self.modulus):
            if self.value ** int(d) == 1:
                return int(d)
        return self.modulus

    def extend(self, modulus: int) -> "Character":
        """The same character on a finer lattice (1/modulus)Z/Z.

        The extension picks chi(1/modulus) = zeta_modulus^a where
        zeta_N^a = chi(1/N).
        """
        if modulus % self.modulus:
            raise PreconditionFailed(f"{modulus} is not a multiple of {self.modulus}")
        if modulus == self.modulus:
            return self
        field = CycloField.of(_lcm(modulus, self.value.field.conductor))
        base = root_of_unity(self.modulus, field)
        power = field.one()
        for a in range(self.modulus):
            if power == self.value:
                return Character(modulus, root_of_unity(modulus, field) ** a)
            power = power * base
        raise PreconditionFailed(f"{self.value} is not a power of a primitive {self.modulus}-th root")

    def compose(self, other: "Character") -> "Character":
        modulus = _lcm(self.modulus, other.modulus)
        a, b = self.extend(modulus), other.extend(modulus)
        return Character(modulus, a.value * b.value)

    def inverse(self) -> "Character":
        return Character(self.modulus, self.value.inverse())

    def to_dict(self) -> dict:
        return {"N": self.modulus, "zeta": str(self.value)}

    def __str__(self) -> str:
        return f"chi(1/{self.modulus}) = {self.value}"


def apply_character(chi: Character, a: HahnSeries) -> HahnSeries:
    """a_s t^s -> chi(s) a_s t^s."""
    return a.map_terms(lambda s, c: c * chi(s))


# -- solving chi from coefficient ratios ----------------------------------


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _extended_gcd(b, a % b)
    return g, y, x - (a // b) * y


def solve_character(constraints: Sequence[Tuple[Fraction, FieldElem]]) -> Optional[Character]:
    """The character with chi(s) = r for every (s, r), or None if there is none.

    The fractional parts generate (1/M)Z/Z; writing 1/M as an integer
    combination of them pins chi(1/M) down, and the candidate is then
    checked against every constraint.
    """
    if not constraints:
        return Character.identity()
    denom = lcm_denominator(s for s, _ in constraints)
    numerators = [(s * denom).numerator % denom for s, _ in constraints]
    g = denom
    for c in numerators:
        g = gcd(g, c)
    modulus = denom // g
    reduced = [c // g for c in numerators]
    if modulus == 1:
        if all(r == 1 for _, r in constraints):
            return Character.identity()
        return None
    # accumulate coefficients with sum x_i c_i == current mod modulus
    current = modulus
    coeffs: List[int] = [0] * len(reduced)
    for i, c in enumerate(reduced):
        if c == 0:
            continue
        new, a, b = _extended_gcd(current, c)
        coeffs = [a * x for x in coeffs]
        coeffs[i] = b
        current = new
    if current != 1:
        raise ArithmeticError("fractional parts do not generate the expected lattice")
    zeta = as_field_elem(1)
    for (_, r), x in zip(constraints, coeffs):
        if x:
            zeta = zeta * r**x
    if zeta**modulus != 1:
        return None
    if any(zeta**c != r for c, (_, r) in zip(reduced, constraints)):
        return None
    return Character(modulus, zeta)


def _match_prefixes(a: HahnSeries, b: HahnSeries, bound: Optional[Fraction]) -> Optional[Character]:
    left = [(e, c) for e, c in a.terms if bound is None or e < bound]
    right = [(e, c) for e, c in b.terms if bound is None or e < bound]
    if [e for e, _ in left] != [e for e, _ in right]:
        return None
    return solve_character([(e, cb / ca) for (e, ca), (_, cb) in zip(left, right)])


# -- the orbit test ---------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    """Outcome of comparing two descriptors.

    ``exact`` is False when only a prefix below ``compared_below`` could be
    compared (streams); the answer is then valid up to that exponent.
    """

    equivalent: bool
    character: Optional[Character]
    exact: bool
    compared_below: Optional[Fraction] = None

    def to_dict(self) -> dict:
        payload = {
            "equivalent": self.equivalent,
            "character": self.character.to_dict() if self.character else None,
            "exact": self.exact,
        }
        if self.compared_below is not None:
            payload["compared_below"] = format_rat(self.compared_below)
        return payload


def _associates(m1: LaurentPoly, m2: LaurentPoly) -> bool:
    return m1.degree("y") == m2.degree("y") and prem(m1, m2).is_zero()


def _separation_bound(m: LaurentPoly, cap: Fraction) -> Optional[Fraction]:
    """Exponent beyond which the roots of m all differ; None for a single root."""
    from src.utils.config import get_settings

    prec = min(get_settings().initial_precision, cap)
    while True:
        try:
            return separation_precision(puiseux_expand(m, prec))
        except SingleBranch:
            return None
        except InsufficientPrecision:
            if prec >= cap:
                raise Undetermined(f"roots of {m} not separated below {format_rat(cap)}", precision=prec)
            prec = next_precision(prec, cap)
            logger.debug("separating the roots of %s at precision %s", m, format_rat(prec))


def orbit_test(
    alpha: AlphaDescriptor, beta: AlphaDescriptor, precision_cap: Optional[RatLike] = None
) -> OrbitReport:
    """Search a character carrying alpha to beta.

    Finite descriptors are compared on their whole support, algebraic ones
    past the separation of their minimal polynomial's roots, streams up to
    the precision cap.
    """
    from src.utils.config import get_settings

    cap = as_rat(precision_cap) if precision_cap is not None else get_settings().precision_cap
    streams = [d for d in (alpha, beta) if d.kind == "stream"]
    if not streams:
        if alpha.has_finite_support() and beta.has_finite_support():
            chi = _match_prefixes(alpha.series(0), beta.series(0), None)
            return OrbitReport(chi is not None, chi, True)
        m = alpha.minimal_polynomial()
        if not _associates(m, beta.minimal_polynomial()):
            return OrbitReport(False, None, True)
        separation = _separation_bound(m, cap)
        bound = (separation if separation is not None else Fraction(0)) + 1
        chi = _match_prefixes(alpha.series(bound), beta.series(bound), bound)
        return OrbitReport(chi is not None, chi, True, bound)
    if len(streams) == 1 and streams[0].transcendental:
        # the other side is algebraic over k(t), and the action preserves that
        return OrbitReport(False, None, True)
    a, b = alpha.series(cap), beta.series(cap)
    bound = min(x for x in (a.known_below, b.known_below, cap) if x is not None)
    chi = _match_prefixes(a, b, bound)
    if chi is not None:
        logger.debug("orbit match of %s and %s holds only below %s", alpha, beta, format_rat(bound))
    return OrbitReport(chi is not None, chi, False, bound)


def orbit_equivalent(
    alpha: AlphaDescriptor, beta: AlphaDescriptor, precision_cap: Optional[RatLike] = None
) -> Optional[Character]:
    """A character chi with beta = chi . alpha, or None."""
    return orbit_test(alpha, beta, precision_cap).character


__all__ = [
    "Character",
    "apply_character",
    "solve_character",
    "OrbitReport",
    "orbit_test",
    "orbit_equivalent",
]
