"""
Descriptors of the classified maximal subalgebras of k[t, t^-1, y].

An ``AlphaDescriptor`` represents a series alpha with nu(alpha) >= 0 in one
of three ways: a finite sum, a root of a minimal polynomial picked out by a
prefix, or a named term stream.  A ``SubalgebraDescriptor`` combines one of
them with the case of the classification it parameterizes.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Tuple, Union

from src.errors import InvalidDescriptor, Undetermined
from src.fields.cyclotomic import CycloField, FieldElem, Scalar, root_of_unity
from src.fields.rational import RatLike, as_rat, format_rat, lcm_denominator
from src.polys.laurent import (
    Automorphism,
    LaurentPoly,
    evaluate_y,
    prem,
    primitive_part,
    squarefree_decomposition,
)
from src.puiseux.newton import branch_from_prefix
from src.series.hahn import HahnSeries, TermStream, next_precision

logger = logging.getLogger(__name__)


def _settings():
    from src.utils.config import get_settings

    return get_settings()


class AlphaDescriptor(ABC):
    """A series alpha in k[[t^Q]] with nu(alpha) >= 0."""

    kind: str = ""

    @abstractmethod
    def series(self, precision: RatLike) -> HahnSeries:
        """alpha known at least below ``precision`` (or exactly)."""

    @abstractmethod
    def is_algebraic(self) -> bool:
        """alpha lies in the algebraic closure of k(t).

        Raises:
            Undetermined: a stream not declared transcendental.
        """

    @abstractmethod
    def minimal_polynomial(self) -> LaurentPoly:
        """Primitive minimal polynomial of alpha in k[t][y]."""

    @abstractmethod
    def exact_zero(self, f: LaurentPoly) -> Optional[bool]:
        """Whether f(t, alpha) = 0; None when it cannot be decided."""

    @abstractmethod
    def translated(self, value: FieldElem) -> "AlphaDescriptor":
        """Descriptor of alpha + value."""

    def has_finite_support(self) -> bool:
        return False

    def constant_term(self) -> FieldElem:
        return self.series(Fraction(1, 2**20)).coefficient(0)

    def leading_terms(self, count: int) -> Tuple[HahnSeries, bool]:
        """A prefix with at least ``count`` terms, or all of alpha.

        Returns the prefix and whether it is the whole series.

        Raises:
            Undetermined: the precision cap is reached first.
        """
        settings = _settings()
        cap = settings.precision_cap
        prec = settings.initial_precision
        while True:
            s = self.series(prec)
            if s.is_exact():
                return s, True
            if len(s.terms) >= count:
                return s, False
            if prec >= cap:
                raise Undetermined(
                    f"fewer than {count} terms of {self} below the cap {format_rat(cap)}",
                    precision=prec,
                )
            prec = next_precision(prec, cap)

    def to_text(self, var: str = "t") -> str:
        return str(self)


def _conjugates(alpha: HahnSeries) -> Tuple[List[HahnSeries], CycloField]:
    """Distinct images of alpha under t^(1/n) -> zeta_n t^(1/n)."""
    n = lcm_denominator(alpha.support())
    base = 1
    for _, c in alpha.terms:
        base = base * c.field.conductor // gcd(base, c.field.conductor)
    conductor = base * n // gcd(base, n)
    field_ = CycloField.of(conductor)
    zeta = root_of_unity(n, field_)
    images: List[HahnSeries] = []
    for k in range(n):
        image = alpha.map_terms(lambda e, c: c * zeta ** ((k * e * n).numerator % n))
        if image not in images:
            images.append(image)
    return images, field_


def minimal_polynomial_of_series(alpha: HahnSeries) -> LaurentPoly:
    """prod (y - beta) over the distinct conjugates beta of a finite-support alpha."""
    images, _ = _conjugates(alpha)
    # coefficients of the product, constant term first
    coeffs: List[HahnSeries] = [HahnSeries.one()]
    for beta in images:
        shifted = [HahnSeries()] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] = shifted[i] - c * beta
        coeffs = shifted
    terms = {}
    for j, c in enumerate(coeffs):
        for e, v in c.terms:
            if e.denominator != 1:
                raise ArithmeticError(f"conjugate product has exponent {format_rat(e)}")
            terms[(int(e), j)] = v
    return LaurentPoly(terms, ("t", "y"))


@dataclass(frozen=True)
class FiniteAlpha(AlphaDescriptor):
    """alpha given by its finitely many terms."""

    value: HahnSeries
    kind: str = field(default="finite", init=False)

    def __post_init__(self) -> None:
        if not self.value.is_exact():
            raise InvalidDescriptor(f"finite alpha needs an exact series, got {self.value}")
        if self.value.terms and self.value.terms[0][0] < 0:
            raise InvalidDescriptor(f"alpha = {self.value} has negative valuation")

    def series(self, precision: RatLike) -> HahnSeries:
        return self.value

    def is_algebraic(self) -> bool:
        return True

    def has_finite_support(self) -> bool:
        return True

    def constant_term(self) -> FieldElem:
        return self.value.coefficient(0)

    def minimal_polynomial(self) -> LaurentPoly:
        return minimal_polynomial_of_series(self.value)

    def exact_zero(self, f: LaurentPoly) -> Optional[bool]:
        return evaluate_y(f, self.value).is_zero()

    def translated(self, value: FieldElem) -> "FiniteAlpha":
        return FiniteAlpha(self.value + value)

    def to_text(self, var: str = "t") -> str:
        return self.value.to_string(var)

    def __str__(self) -> str:
        return self.value.to_string()


@lru_cache(maxsize=256)
def _branch_expansion(minpoly: LaurentPoly, prefix: HahnSeries, precision: Fraction) -> HahnSeries:
    return branch_from_prefix(minpoly, prefix, precision).expansion


@dataclass(frozen=True)
class AlgebraicBranch(AlphaDescriptor):
    """The root of ``minpoly`` whose expansion starts with ``prefix``.

    ``minpoly`` is taken to be irreducible over k(t); it is checked to be
    squarefree and the prefix to pick out exactly one root.
    """

    minpoly: LaurentPoly
    prefix: HahnSeries
    kind: str = field(default="algebraic", init=False)

    def __post_init__(self) -> None:
        m = self.minpoly
        if m.is_zero() or m.degree("y") < 1:
            raise InvalidDescriptor(f"minimal polynomial {m} has no roots in y")
        parts = squarefree_decomposition(m)
        if len(parts) != 1 or parts[0][1] != 1:
            raise InvalidDescriptor(f"minimal polynomial {m} is not squarefree")
        object.__setattr__(self, "minpoly", primitive_part(m))
        head = self.series(_settings().initial_precision)
        if head.terms and head.terms[0][0] < 0:
            raise InvalidDescriptor(f"the root of {m} starting with {self.prefix} has negative valuation")

    def series(self, precision: RatLike) -> HahnSeries:
        return _branch_expansion(self.minpoly, self.prefix, as_rat(precision))

    def is_algebraic(self) -> bool:
        return True

    def has_finite_support(self) -> bool:
        return self.series(_settings().initial_precision).is_exact()

    def minimal_polynomial(self) -> LaurentPoly:
        return self.minpoly

    def exact_zero(self, f: LaurentPoly) -> Optional[bool]:
        if f.is_zero():
            return True
        return prem(f, self.minpoly).is_zero()

    def translated(self, value: FieldElem) -> "AlgebraicBranch":
        t = LaurentPoly.gen("t", self.minpoly.gens)
        y = LaurentPoly.gen("y", self.minpoly.gens)
        shifted = self.minpoly.substitute({"t": t, "y": y - value})
        return AlgebraicBranch(shifted, self.prefix + value)

    def to_text(self, var: str = "t") -> str:
        return f"root of {self.minpoly} starting {self.prefix.to_string(var)}"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True, eq=False)
class StreamAlpha(AlphaDescriptor):
    """alpha produced term by term from a named rule.

    ``transcendental`` is the caller's assertion that alpha is not algebraic
    over k(t); a false assertion voids the exact-zero and conductor answers.
    """

    stream: TermStream
    transcendental: bool = False
    kind: str = field(default="stream", init=False)

    def __post_init__(self) -> None:
        for e, _ in self.stream:
            if e < 0:
                raise InvalidDescriptor(f"stream {self.stream.name!r} starts at negative exponent {e}")
            break

    def series(self, precision: RatLike) -> HahnSeries:
        return HahnSeries.from_stream(self.stream.clone(), as_rat(precision))

    def is_algebraic(self) -> bool:
        if self.transcendental:
            return False
        raise Undetermined(
            f"stream {self.stream.name!r} is not declared transcendental; algebraicity is unknown"
        )

    def minimal_polynomial(self) -> LaurentPoly:
        if self.transcendental:
            raise InvalidDescriptor(f"stream {self.stream.name!r} is transcendental")
        raise Undetermined(f"no minimal polynomial is known for stream {self.stream.name!r}")

    def exact_zero(self, f: LaurentPoly) -> Optional[bool]:
        if f.is_zero():
            return True
        return False if self.transcendental else None

    def translated(self, value: FieldElem) -> "StreamAlpha":
        return StreamAlpha(self.stream.shifted_constant(value), self.transcendental)

    def __str__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.stream.params.items()))
        return f"stream {self.stream.name}({params})"


def finite_alpha(value: Union[HahnSeries, Scalar]) -> FiniteAlpha:
    if isinstance(value, HahnSeries):
        return FiniteAlpha(value)
    return FiniteAlpha(HahnSeries.constant(value))


# -- subalgebra descriptors ----------------------------------------------


class SubalgebraDescriptor(ABC):
    case: str = ""


@dataclass(frozen=True)
class PsiCase(SubalgebraDescriptor):
    """sigma^-1(Psi(alpha)): f is in A iff nu(sigma(f)(t, alpha)) >= 0."""

    alpha: AlphaDescriptor
    sigma: Automorphism = Automorphism()
    case: str = field(default="psi", init=False)

    def crucial_element(self) -> LaurentPoly:
        """sigma^-1(t), which lies in the crucial ideal."""
        return self.sigma.inverse().apply(LaurentPoly.gen("t"))


@dataclass(frozen=True)
class UnitsCase(SubalgebraDescriptor):
    """The algebra containing k[t, y^-1] attached to alpha in the variable u = y^-1.

    f is in A iff nu_u(f(alpha(u), u^-1)) >= 0.  alpha has valuation 0 and is
    not constant; its constant term lambda satisfies t - lambda in the
    crucial ideal.
    """

    alpha: AlphaDescriptor
    case: str = field(default="units", init=False)

    def __post_init__(self) -> None:
        head = self.alpha.series(_settings().initial_precision)
        if self.alpha.has_finite_support() and len(head.terms) <= 1 and (
            not head.terms or head.terms[0][0] == 0
        ):
            raise InvalidDescriptor(f"alpha = {self.alpha.to_text('u')} is constant")

    @property
    def lam(self) -> FieldElem:
        return self.alpha.constant_term()

    def crucial_element(self) -> LaurentPoly:
        return LaurentPoly.gen("t") - self.lam

    def require_unit(self) -> None:
        """A bare units-case algebra lives in k[t, t^-1, y] only when lambda != 0."""
        if not self.lam:
            raise InvalidDescriptor("the units case needs a nonzero constant term lambda")


@dataclass(frozen=True)
class PolySubring(SubalgebraDescriptor):
    """A intersected with k[t, y] for a units-case algebra A."""

    inner: UnitsCase
    case: str = field(default="poly", init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.inner, UnitsCase):
            raise InvalidDescriptor("PolySubring only wraps a units-case descriptor")

    def crucial_element(self) -> LaurentPoly:
        return self.inner.crucial_element()


def swap_roles(f: LaurentPoly) -> LaurentPoly:
    """F(u, T) = u^deg_y(f) * T^m * f(T, u^-1) written with generators (t, y) = (u, T).

    F(u, alpha(u)) vanishes exactly when f(alpha(u), u^-1) does.
    """
    u = LaurentPoly.gen("t", f.gens)
    T = LaurentPoly.gen("y", f.gens)
    image = f.substitute({"t": T, "y": u ** (-1)})
    image = image.shift("t", max(0, f.degree("y")))
    low = image.min_degree("y")
    return image.shift("y", -low) if low < 0 else image


__all__ = [
    "AlphaDescriptor",
    "FiniteAlpha",
    "AlgebraicBranch",
    "StreamAlpha",
    "finite_alpha",
    "minimal_polynomial_of_series",
    "SubalgebraDescriptor",
    "PsiCase",
    "UnitsCase",
    "PolySubring",
    "swap_roles",
]
