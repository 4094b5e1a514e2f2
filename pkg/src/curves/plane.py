"""
Plane affine curves f(x, y) = 0, their projective closure and the points
on the line at infinity z = 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import sympy

from src.errors import IncompleteSplitting, PointOffCurve
from src.fields.cyclotomic import CycloField, FieldElem, Scalar, as_field_elem, to_sympy_rational
from src.fields.roots import find_roots
from src.polys.laurent import LaurentPoly

logger = logging.getLogger(__name__)

AFFINE_GENS = ("x", "y")
PROJECTIVE_GENS = ("x", "y", "z")


@dataclass(frozen=True)
class ProjectivePoint:
    """(a : b : c), scaled so that the last nonzero coordinate is 1."""

    coordinates: Tuple[FieldElem, FieldElem, FieldElem]

    def __post_init__(self) -> None:
        coords = tuple(as_field_elem(c) for c in self.coordinates)
        if len(coords) != 3:
            raise ValueError(f"a projective point needs three coordinates, got {len(coords)}")
        nonzero = [i for i, c in enumerate(coords) if c]
        if not nonzero:
            raise ValueError("(0 : 0 : 0) is not a projective point")
        scale = coords[nonzero[-1]].inverse()
        object.__setattr__(self, "coordinates", tuple(c * scale for c in coords))

    @classmethod
    def of(cls, a: Scalar, b: Scalar, c: Scalar) -> "ProjectivePoint":
        return cls((a, b, c))

    @property
    def chart(self) -> int:
        """Index of the coordinate set to 1 in the affine chart around the point."""
        return max(i for i, c in enumerate(self.coordinates) if c)

    def at_infinity(self) -> bool:
        return not self.coordinates[2]

    def as_map(self) -> dict:
        return dict(zip(PROJECTIVE_GENS, self.coordinates))

    def to_list(self) -> List[str]:
        return [str(c) for c in self.coordinates]

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coordinates) + ")"


def homogenize(h: LaurentPoly, degree: Optional[int] = None) -> LaurentPoly:
    """z^d h(x/z, y/z) with d = ``degree`` (default: total degree of h)."""
    h = h.with_gens(AFFINE_GENS)
    if not h.is_polynomial():
        raise ValueError(f"{h} is not a polynomial in x, y")
    d = h.total_degree() if degree is None else degree
    if h.terms and d < h.total_degree():
        raise ValueError(f"cannot homogenize {h} to degree {d}")
    return LaurentPoly({(a, b, d - a - b): c for (a, b), c in h.terms.items()}, PROJECTIVE_GENS)


@dataclass(frozen=True)
class PlaneCurve:
    """The affine curve f = 0 with f in k[x, y] nonconstant."""

    equation: LaurentPoly

    def __post_init__(self) -> None:
        f = self.equation.with_gens(AFFINE_GENS)
        if not f.is_polynomial():
            raise ValueError(f"{f} is not a polynomial in x, y")
        if f.total_degree() < 1:
            raise ValueError(f"the curve equation {f} is constant")
        object.__setattr__(self, "equation", f)

    @property
    def degree(self) -> int:
        return self.equation.total_degree()

    @property
    def homogenization(self) -> LaurentPoly:
        return homogenize(self.equation)

    def degree_form(self) -> LaurentPoly:
        """The homogeneous part of top degree."""
        d = self.degree
        return LaurentPoly({m: c for m, c in self.equation.terms.items() if sum(m) == d}, AFFINE_GENS)

    def contains(self, p: ProjectivePoint) -> bool:
        return not self.homogenization.evaluate(p.as_map())

    def require_point(self, p: ProjectivePoint) -> None:
        if not self.contains(p):
            raise PointOffCurve(f"{p} is not on the closure of {self.equation} = 0")

    def __str__(self) -> str:
        return str(self.equation)


def points_at_infinity(c: PlaneCurve, field: Optional[CycloField] = None) -> List[ProjectivePoint]:
    """Zeros of the degree form on z = 0.

    Points (a : 1 : 0) come from the roots of D(a, 1); (1 : 0 : 0) is added
    when D(1, 0) = 0.

    Raises:
        IncompleteSplitting: D(a, 1) does not split in the field.
    """
    from src.fields import default_field

    form = c.degree_form()
    d = c.degree
    # D(a, 1) as a univariate polynomial in a, constant term first
    coeffs = [as_field_elem(0)] * (d + 1)
    for (a, _), value in form.terms.items():
        coeffs[a] = value
    work = field or default_field()
    roots = find_roots(coeffs, work)
    expected = max(i for i, v in enumerate(coeffs) if v)
    found = sum(m for _, m in roots)
    if found != expected:
        raise IncompleteSplitting(
            f"the degree form of {c} has {found} of {expected} roots in {work}",
            residual=form,
            field=work,
        )
    points = [ProjectivePoint.of(r, 1, 0) for r, _ in roots]
    if not coeffs[d]:
        points.append(ProjectivePoint.of(1, 0, 0))
    logger.debug("points at infinity of %s: %s", c, ", ".join(str(p) for p in points))
    return points


def partial_derivatives(c: PlaneCurve) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    F = c.homogenization
    return F.diff("x"), F.diff("y"), F.diff("z")


def is_smooth_at(c: PlaneCurve, p: ProjectivePoint) -> bool:
    """Some partial derivative of the closure's equation is nonzero at p.

    Raises:
        PointOffCurve: p is not on the closure.
    """
    c.require_point(p)
    values = p.as_map()
    return any(d.evaluate(values) for d in partial_derivatives(c))


def is_irreducible_over_rationals(c: PlaneCurve) -> bool:
    """Whether f is irreducible in Q[x, y] (rational coefficients only)."""
    f = c.equation
    if not all(v.is_rational() for v in f.terms.values()):
        raise ValueError(f"{f} has irrational coefficients")
    x, y = sympy.symbols("x y")
    expr = sum(to_sympy_rational(v.to_rational()) * x**a * y**b for (a, b), v in f.terms.items())
    _, factors = sympy.factor_list(expr, x, y)
    return len(factors) == 1 and factors[0][1] == 1


def parse_point(values: Sequence[Scalar]) -> ProjectivePoint:
    if len(values) != 3:
        raise ValueError(f"expected three homogeneous coordinates, got {len(values)}")
    return ProjectivePoint(tuple(values))


__all__ = [
    "AFFINE_GENS",
    "PROJECTIVE_GENS",
    "ProjectivePoint",
    "PlaneCurve",
    "homogenize",
    "points_at_infinity",
    "partial_derivatives",
    "is_smooth_at",
    "is_irreducible_over_rationals",
    "parse_point",
]
