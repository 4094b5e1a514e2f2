"""
Local branches of a plane curve at a smooth point and the orders of
functions along them.

Around p the closure is written in the affine chart where p's last nonzero
coordinate is 1, translated so that p is the origin.  At a smooth point one
local coordinate is a parameter tau and the other is the unique root of the
local equation with positive valuation, found by Puiseux expansion.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from src.classification.oracles import certified_order
from src.curves.plane import (
    AFFINE_GENS,
    PROJECTIVE_GENS,
    PlaneCurve,
    ProjectivePoint,
    homogenize,
    is_smooth_at,
    points_at_infinity,
)
from src.errors import InvalidDescriptor, PreconditionFailed, SingularPoint, Undetermined
from src.fields.cyclotomic import CycloField
from src.fields.rational import RatLike, format_rat
from src.polys.laurent import LaurentPoly, prem
from src.puiseux.newton import branch_from_prefix
from src.series.hahn import HahnSeries
from src.utils.linalg import nullspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BranchAtPoint:
    """The curve near p: chart coordinates as functions of the parameter.

    ``parameter`` names the chart coordinate used as tau; ``dependent`` is the
    other one, given by the Puiseux root of ``local_equation`` (generators
    ``("t", "y")`` standing for (parameter, dependent), p at the origin).
    """

    curve: PlaneCurve
    point: ProjectivePoint
    parameter: str
    dependent: str
    local_equation: LaurentPoly

    def dependent_series(self, precision: RatLike, field: Optional[CycloField] = None) -> HahnSeries:
        try:
            return branch_from_prefix(self.local_equation, None, precision, floor=0, field=field).expansion
        except InvalidDescriptor as exc:
            raise SingularPoint(f"no single smooth branch of {self.curve} at {self.point}") from exc

    def coordinates(self, precision: RatLike, field: Optional[CycloField] = None) -> Dict[str, HahnSeries]:
        """x, y, z along the branch, known below ``precision``."""
        values = dict(zip(PROJECTIVE_GENS, (HahnSeries.constant(c) for c in self.point.coordinates)))
        values[self.parameter] = values[self.parameter] + HahnSeries.monomial(1)
        values[self.dependent] = values[self.dependent] + self.dependent_series(precision, field)
        return values


def _chart_names(p: ProjectivePoint) -> List[str]:
    return [g for i, g in enumerate(PROJECTIVE_GENS) if i != p.chart]


def local_branch(c: PlaneCurve, p: ProjectivePoint) -> BranchAtPoint:
    """The branch of c through a smooth point p.

    Raises:
        PointOffCurve: p is not on the closure.
        SingularPoint: p is singular.
    """
    if not is_smooth_at(c, p):
        raise SingularPoint(f"{p} is a singular point of {c}")
    F = c.homogenization
    first, second = _chart_names(p)
    base = dict(zip(PROJECTIVE_GENS, p.coordinates))
    t = LaurentPoly.gen("t")
    y = LaurentPoly.gen("y")
    # partial derivatives in the chart decide which coordinate is the parameter
    d_first = F.diff(first).evaluate(base)
    d_second = F.diff(second).evaluate(base)
    if d_second:
        parameter, dependent = first, second
    elif d_first:
        parameter, dependent = second, first
    else:
        raise SingularPoint(f"{p} is a singular point of {c} in its chart")
    images = {
        PROJECTIVE_GENS[p.chart]: LaurentPoly.constant(1),
        parameter: t + base[parameter],
        dependent: y + base[dependent],
    }
    G = F.substitute(images, ("t", "y"))
    logger.debug("local equation of %s at %s: %s", c, p, G)
    return BranchAtPoint(c, p, parameter, dependent, G)


def evaluate_series(h: LaurentPoly, values: Dict[str, HahnSeries]) -> HahnSeries:
    """h at series values for its generators (nonnegative exponents)."""
    powers: Dict[tuple, HahnSeries] = {}
    acc = HahnSeries()
    for mono, coeff in h.terms.items():
        term = HahnSeries.constant(coeff)
        for g, e in zip(h.gens, mono):
            if e:
                key = (g, e)
                if key not in powers:
                    powers[key] = values[g] ** e
                term = term * powers[key]
        acc = acc + term
    return acc


def _vanishes_on_curve(h: LaurentPoly, c: PlaneCurve) -> bool:
    if h.is_zero():
        return True
    f = c.equation
    var = "y" if f.degree("y") >= 1 else "x"
    return prem(h.with_gens(AFFINE_GENS), f, var).is_zero()


def _z_order(branch: BranchAtPoint, precision_cap: Optional[RatLike] = None) -> Fraction:
    if branch.point.chart == 2:
        return Fraction(0)
    order = certified_order(
        lambda prec: branch.coordinates(prec)["z"], precision_cap, what=f"z along the branch at {branch.point}"
    )
    if order is None:
        raise SingularPoint(f"the line at infinity is a component of {branch.curve}")
    return order


def order_at(
    h: LaurentPoly, c: PlaneCurve, p: ProjectivePoint, precision_cap: Optional[RatLike] = None
) -> Optional[Fraction]:
    """Order of h along the branch at p; None when h vanishes on the curve."""
    if _vanishes_on_curve(h, c):
        return None
    h = h.with_gens(AFFINE_GENS)
    branch = local_branch(c, p)
    e = max(0, h.total_degree())
    H = homogenize(h, e)
    z_order = _z_order(branch, precision_cap)
    value = certified_order(
        lambda prec: evaluate_series(H, branch.coordinates(prec)),
        precision_cap,
        what=f"{h} along the branch at {p}",
    )
    if value is None:
        return None
    return value - e * z_order


def defined_at(
    h: LaurentPoly, c: PlaneCurve, p: ProjectivePoint, precision_cap: Optional[RatLike] = None
) -> bool:
    """h restricted to the curve is regular at p.

    Raises:
        SingularPoint: p is not a smooth point.
    """
    order = order_at(h, c, p, precision_cap)
    return order is None or order >= 0


def tangency_order(c: PlaneCurve, p: ProjectivePoint, precision_cap: Optional[RatLike] = None) -> int:
    """Intersection multiplicity of the branch with z = 0, minus one.

    Raises:
        PreconditionFailed: p is not on the line at infinity.
        SingularPoint: p is singular.
    """
    if not p.at_infinity():
        raise PreconditionFailed(f"{p} is not on the line at infinity")
    order = _z_order(local_branch(c, p), precision_cap)
    return int(order) - 1


@dataclass(frozen=True)
class NoncoordinateReport:
    smooth: bool
    tangent_of_order_two: bool
    several_points_at_infinity: bool

    @property
    def all_hold(self) -> bool:
        return self.smooth and self.tangent_of_order_two and self.several_points_at_infinity

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "tangency_at_least_2": self.tangent_of_order_two,
            "several_points_at_infinity": self.several_points_at_infinity,
        }


def noncoordinate_preconditions(
    c: PlaneCurve, p: ProjectivePoint, field: Optional[CycloField] = None
) -> NoncoordinateReport:
    """Whether p is a smooth point of tangency order >= 2 on a curve with
    more than one point at infinity."""
    smooth = is_smooth_at(c, p)
    tangent = smooth and p.at_infinity() and tangency_order(c, p) >= 2
    several = len(points_at_infinity(c, field)) >= 2
    return NoncoordinateReport(smooth, tangent, several)


def noncoordinate_membership(
    g: LaurentPoly, c: PlaneCurve, p: ProjectivePoint, precision_cap: Optional[RatLike] = None
) -> bool:
    """g lies in the subalgebra of k[x, y] of functions defined at p on the curve.

    Raises:
        PreconditionFailed: the curve and point do not meet the preconditions.
    """
    report = noncoordinate_preconditions(c, p)
    if not report.all_hold:
        raise PreconditionFailed(f"preconditions fail at {p}: {report.to_dict()}")
    return defined_at(g, c, p, precision_cap)


def _monomials(degree: int) -> List[LaurentPoly]:
    return [
        LaurentPoly.monomial((a, d - a), 1, AFFINE_GENS)
        for d in range(degree + 1)
        for a in range(d, -1, -1)
    ]


def filtered_members(
    c: PlaneCurve, p: ProjectivePoint, degree: int, precision_cap: Optional[RatLike] = None
) -> List[LaurentPoly]:
    """Basis of {h in k[x, y] : deg h <= degree, h defined at p}.

    With every monomial homogenized to ``degree``, h is defined at p exactly
    when the branch expansion of its homogenization has no terms below
    degree * nu(z); that is a linear condition on the coefficients.
    """
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    monomials = _monomials(degree)
    branch = local_branch(c, p)
    bound = degree * _z_order(branch, precision_cap)
    if bound <= 0:
        return monomials
    coords = branch.coordinates(bound + 1)
    series = [evaluate_series(homogenize(m, degree), coords) for m in monomials]
    for s in series:
        if s.known_below is not None and s.known_below < bound:
            raise Undetermined(
                f"branch at {p} known only below {format_rat(s.known_below)}", precision=s.known_below
            )
    exponents = sorted({e for s in series for e in s.support() if e < bound})
    rows = [[s.coefficient(e) for s in series] for e in exponents]
    basis = []
    for vec in nullspace(rows, len(monomials)):
        h = LaurentPoly.zero(AFFINE_GENS)
        for coeff, m in zip(vec, monomials):
            if coeff:
                h = h + m.scale(coeff)
        basis.append(h)
    return basis


__all__ = [
    "BranchAtPoint",
    "local_branch",
    "evaluate_series",
    "order_at",
    "defined_at",
    "tangency_order",
    "NoncoordinateReport",
    "noncoordinate_preconditions",
    "noncoordinate_membership",
    "filtered_members",
]
