"""
Membership, crucial-ideal and conductor oracles for the classified algebras.

Every question reduces to the valuation omega(f) = nu(f(t, alpha)).  The
leading exponent of f(t, alpha) is certified by iterative deepening: alpha
is expanded to a precision p, f is evaluated on the truncation, and the
first term below the resulting ``known_below`` is final.  Exact zeros are
decided separately (syntactically, by pseudo-division, or by the
transcendence flag) and never from a truncation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Union

from src.classification.descriptors import (
    AlphaDescriptor,
    PolySubring,
    PsiCase,
    SubalgebraDescriptor,
    UnitsCase,
    swap_roles,
)
from src.errors import ExponentDomainError, PreconditionFailed, Undetermined, ZeroInput
from src.fields.rational import RatLike, as_rat, format_rat
from src.polys.laurent import (
    LaurentPoly,
    clear_t_denominator,
    evaluate_t,
    evaluate_y,
    primitive_part,
)
from src.series.hahn import HahnSeries, next_precision

logger = logging.getLogger(__name__)


class _ExactZeroType:
    """Marker for f(alpha) = 0, which sits above every rational order."""

    _instance: Optional["_ExactZeroType"] = None

    def __new__(cls) -> "_ExactZeroType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ExactZero"

    __str__ = __repr__


EXACT_ZERO = _ExactZeroType()
Order = Union[Fraction, _ExactZeroType]


class MembershipVerdict(str, Enum):
    IN = "In"
    NOT_IN = "NotIn"
    IN_CONDUCTOR = "InConductor"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class MembershipResult:
    """Verdict plus the order that produced it.

    ``precision`` is the exponent reached when the verdict is UNDETERMINED.
    """

    verdict: MembershipVerdict
    order: Optional[Order] = None
    precision: Optional[Fraction] = None

    @property
    def is_member(self) -> bool:
        return self.verdict in (MembershipVerdict.IN, MembershipVerdict.IN_CONDUCTOR)

    @property
    def is_decided(self) -> bool:
        return self.verdict is not MembershipVerdict.UNDETERMINED

    def __str__(self) -> str:
        return self.verdict.value


def _settings():
    from src.utils.config import get_settings

    return get_settings()


def certified_order(
    evaluate: Callable[[Fraction], HahnSeries],
    precision_cap: Optional[RatLike] = None,
    what: str = "value",
) -> Optional[Fraction]:
    """First exponent of a series computed at growing precisions.

    ``evaluate(p)`` must return the series correct below its ``known_below``.
    Returns None when some evaluation turns out to be exactly zero.

    Raises:
        Undetermined: no certified term appears below the cap.
    """
    settings = _settings()
    cap = as_rat(precision_cap) if precision_cap is not None else settings.precision_cap
    prec = min(settings.initial_precision, cap)
    while True:
        value = evaluate(prec)
        if value.terms:
            return value.terms[0][0]
        if value.is_exact():
            return None
        if prec >= cap:
            raise Undetermined(
                f"no nonzero term of {what} certified below the cap {format_rat(cap)}",
                precision=prec,
            )
        prec = next_precision(prec, cap)
        logger.debug("raising precision for %s to %s", what, format_rat(prec))


def _check_ring(f: LaurentPoly) -> None:
    if f.gens != ("t", "y"):
        raise ExponentDomainError(f"{f} is not written in the generators t, y")
    if f.min_degree("y") < 0:
        raise ExponentDomainError(f"{f} has negative powers of y")


def omega(f: LaurentPoly, alpha: AlphaDescriptor, precision_cap: Optional[RatLike] = None) -> Order:
    """nu(f(t, alpha)), or EXACT_ZERO when f(t, alpha) = 0.

    Raises:
        ZeroInput: f is zero.
        Undetermined: a stream descriptor never showed a nonzero term.
    """
    if f.is_zero():
        raise ZeroInput("omega of the zero polynomial")
    _check_ring(f)
    if alpha.exact_zero(f):
        return EXACT_ZERO
    order = certified_order(
        lambda p: evaluate_y(f, alpha.series(p)), precision_cap, what=f"{f} at alpha"
    )
    return EXACT_ZERO if order is None else order


def omega_units(f: LaurentPoly, alpha: AlphaDescriptor, precision_cap: Optional[RatLike] = None) -> Order:
    """nu_u(f(alpha(u), u^-1)) for alpha a series in u = y^-1."""
    if f.is_zero():
        raise ZeroInput("omega of the zero polynomial")
    _check_ring(f)
    if alpha.exact_zero(swap_roles(f)):
        return EXACT_ZERO
    depth = max(0, f.degree("y"))
    order = certified_order(
        lambda p: evaluate_t(f, alpha.series(p + depth), precision=p),
        precision_cap,
        what=f"{f} at t = alpha(u)",
    )
    return EXACT_ZERO if order is None else order


def order_in(f: LaurentPoly, A: SubalgebraDescriptor, precision_cap: Optional[RatLike] = None) -> Order:
    """The valuation whose sign decides membership in A."""
    if isinstance(A, PsiCase):
        return omega(A.sigma.apply(f), A.alpha, precision_cap)
    if isinstance(A, UnitsCase):
        A.require_unit()
        return omega_units(f, A.alpha, precision_cap)
    if isinstance(A, PolySubring):
        return omega_units(f, A.inner.alpha, precision_cap)
    raise PreconditionFailed(f"unknown descriptor {A!r}")


def _decide(
    f: LaurentPoly,
    A: SubalgebraDescriptor,
    accept: Callable[[Fraction], bool],
    precision_cap: Optional[RatLike],
) -> MembershipResult:
    if isinstance(A, PolySubring) and not f.is_polynomial(["t"]):
        return MembershipResult(MembershipVerdict.NOT_IN)
    if f.is_zero():
        return MembershipResult(MembershipVerdict.IN_CONDUCTOR, EXACT_ZERO)
    try:
        order = order_in(f, A, precision_cap)
    except Undetermined as exc:
        logger.debug("membership of %s undetermined: %s", f, exc)
        return MembershipResult(MembershipVerdict.UNDETERMINED, precision=exc.precision)
    if order is EXACT_ZERO:
        return MembershipResult(MembershipVerdict.IN_CONDUCTOR, order)
    verdict = MembershipVerdict.IN if accept(order) else MembershipVerdict.NOT_IN
    return MembershipResult(verdict, order)


def membership(
    f: LaurentPoly, A: SubalgebraDescriptor, precision_cap: Optional[RatLike] = None
) -> MembershipResult:
    """Decide f in A.

    IN_CONDUCTOR marks the f with f * k[t, t^-1, y] inside A; those are
    members too.
    """
    return _decide(f, A, lambda order: order >= 0, precision_cap)


def crucial_membership(
    f: LaurentPoly, A: SubalgebraDescriptor, precision_cap: Optional[RatLike] = None
) -> MembershipResult:
    """Decide f in the crucial maximal ideal of A (omega > 0)."""
    return _decide(f, A, lambda order: order > 0, precision_cap)


def theta_phi_membership(
    f: LaurentPoly, A: SubalgebraDescriptor, precision_cap: Optional[RatLike] = None
) -> MembershipResult:
    """Membership in the polynomial subring A' = A intersected with k[t, y]."""
    if not isinstance(A, PolySubring):
        raise PreconditionFailed("theta/phi membership needs a PolySubring descriptor")
    return membership(f, A, precision_cap)


def conductor(A: SubalgebraDescriptor) -> Optional[LaurentPoly]:
    """Generator of the conductor ideal, or None when it is zero.

    Raises:
        Undetermined: a stream that is not declared transcendental.
    """
    if isinstance(A, PsiCase):
        if not A.alpha.is_algebraic():
            return None
        m = A.sigma.inverse().apply(A.alpha.minimal_polynomial())
        return primitive_part(clear_t_denominator(m))
    inner = A.inner if isinstance(A, PolySubring) else A
    if not isinstance(inner, UnitsCase):
        raise PreconditionFailed(f"unknown descriptor {A!r}")
    if isinstance(A, UnitsCase):
        A.require_unit()
    if not inner.alpha.is_algebraic():
        return None
    m = inner.alpha.minimal_polynomial()
    t = LaurentPoly.gen("t")
    y = LaurentPoly.gen("y")
    # m(u, T) with u = y^-1 and T = t
    image = m.substitute({"t": y ** (-1), "y": t}).shift("y", max(0, m.degree("t")))
    return primitive_part(image)


def n_condition_check(alpha: AlphaDescriptor) -> bool:
    """alpha (in u = y^-1) is nonconstant and has a nonzero constant term."""
    try:
        prefix, _ = alpha.leading_terms(2)
    except Undetermined:
        logger.debug("n-condition: %s has a single term below the cap", alpha)
        return False
    if not prefix.coefficient(0):
        return False
    return any(e != 0 for e in prefix.support())


__all__ = [
    "EXACT_ZERO",
    "Order",
    "MembershipVerdict",
    "MembershipResult",
    "certified_order",
    "omega",
    "omega_units",
    "order_in",
    "membership",
    "crucial_membership",
    "theta_phi_membership",
    "conductor",
    "n_condition_check",
]
