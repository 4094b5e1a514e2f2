"""
Non-extending maximal subalgebras of a finitely presented k-algebra R.

Two constructions are supported, both cut out by linear conditions:

* glueing two closed points: {f : f(x1) = f(x2)}
* deleting a tangent direction v at x: {f : D_v f(x) = 0}

Their crucial ideals add f(x1) = f(x2) = 0, respectively f(x) = 0.  The
third construction, through a maximal subfield of a residue field, is not
available.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from src.errors import (
    InvalidTangent,
    PointOffVariety,
    PreconditionFailed,
    UnsupportedConstruction,
)
from src.fields.cyclotomic import FieldElem, Scalar, as_field_elem
from src.polys.laurent import LaurentPoly
from src.utils.linalg import nullspace

logger = logging.getLogger(__name__)

Functional = Callable[[LaurentPoly], FieldElem]

SUPPORTED_CONSTRUCTIONS = ("glue", "tangent")


@dataclass(frozen=True)
class FinitelyPresentedAlgebra:
    """k[x_1, ..., x_n] (some variables inverted) modulo ``relations``."""

    variables: Tuple[str, ...]
    relations: Tuple[LaurentPoly, ...] = ()
    laurent: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "relations", tuple(g.with_gens(self.variables) for g in self.relations))
        object.__setattr__(self, "laurent", tuple(self.laurent))
        unknown = [v for v in self.laurent if v not in self.variables]
        if unknown:
            raise ValueError(f"Laurent variables {unknown} are not among {self.variables}")

    @classmethod
    def polynomial_ring(cls, variables: Sequence[str]) -> "FinitelyPresentedAlgebra":
        return cls(tuple(variables))

    def element(self, f: LaurentPoly) -> LaurentPoly:
        """f written over this algebra's variables."""
        g = f.with_gens(self.variables)
        negative = [v for v in self.variables if v not in self.laurent and g.min_degree(v) < 0]
        if negative:
            raise ValueError(f"{f} inverts {negative}, which are not units of the algebra")
        return g

    def point_map(self, point: "ClosedPoint") -> Dict[str, FieldElem]:
        if len(point.coordinates) != len(self.variables):
            raise PointOffVariety(
                f"point has {len(point.coordinates)} coordinates, the algebra {len(self.variables)} variables"
            )
        return dict(zip(self.variables, point.coordinates))

    def require_point(self, point: "ClosedPoint") -> Dict[str, FieldElem]:
        """Coordinates of a point of Spec R.

        Raises:
            PointOffVariety: a relation does not vanish or a Laurent
                variable is zero there.
        """
        values = self.point_map(point)
        for v in self.laurent:
            if not values[v]:
                raise PointOffVariety(f"{v} is inverted but vanishes at {point}")
        for g in self.relations:
            if g.evaluate(values):
                raise PointOffVariety(f"relation {g} does not vanish at {point}")
        return values

    def monomials(self, degree: int) -> List[LaurentPoly]:
        """Monomials of total degree <= ``degree``, graded, then lexicographic."""
        return [LaurentPoly.monomial(e, 1, self.variables) for e in _exponents(len(self.variables), degree)]


def _exponents(n: int, degree: int) -> Iterator[Tuple[int, ...]]:
    def of_degree(k: int, slots: int) -> Iterator[Tuple[int, ...]]:
        if slots == 1:
            yield (k,)
            return
        for first in range(k, -1, -1):
            for rest in of_degree(k - first, slots - 1):
                yield (first,) + rest

    for d in range(degree + 1):
        yield from of_degree(d, n) if n else iter([()])


@dataclass(frozen=True)
class ClosedPoint:
    coordinates: Tuple[FieldElem, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coordinates", tuple(as_field_elem(c) for c in self.coordinates))

    @classmethod
    def of(cls, *coordinates: Scalar) -> "ClosedPoint":
        return cls(tuple(coordinates))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coordinates) + ")"


@dataclass(frozen=True)
class TangentVector:
    base: ClosedPoint
    components: Tuple[FieldElem, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(as_field_elem(c) for c in self.components))

    def derivative(self, f: LaurentPoly, algebra: FinitelyPresentedAlgebra) -> FieldElem:
        """D_v f at the base point."""
        values = algebra.point_map(self.base)
        acc = as_field_elem(0)
        for var, v in zip(algebra.variables, self.components):
            if v:
                acc = acc + v * f.diff(var).evaluate(values)
        return acc

    def validate(self, algebra: FinitelyPresentedAlgebra) -> None:
        """Raises InvalidTangent unless v is a nonzero vector of T_x Spec R."""
        algebra.require_point(self.base)
        if len(self.components) != len(algebra.variables):
            raise InvalidTangent(
                f"vector has {len(self.components)} components, the algebra {len(algebra.variables)} variables"
            )
        if not any(self.components):
            raise InvalidTangent("the tangent vector is zero")
        for g in algebra.relations:
            if self.derivative(g, algebra):
                raise InvalidTangent(f"vector is not tangent: D_v({g}) != 0 at {self.base}")


def _algebra_for(f: LaurentPoly, algebra: Optional[FinitelyPresentedAlgebra]) -> FinitelyPresentedAlgebra:
    return algebra if algebra is not None else FinitelyPresentedAlgebra.polynomial_ring(f.gens)


def _check_distinct(x1: ClosedPoint, x2: ClosedPoint) -> None:
    if x1 == x2:
        raise PreconditionFailed(f"glueing needs two different points, got {x1} twice")


def glue_membership(
    f: LaurentPoly, x1: ClosedPoint, x2: ClosedPoint, algebra: Optional[FinitelyPresentedAlgebra] = None
) -> bool:
    """f(x1) = f(x2)."""
    R = _algebra_for(f, algebra)
    _check_distinct(x1, x2)
    g = R.element(f)
    return g.evaluate(R.require_point(x1)) == g.evaluate(R.require_point(x2))


def glue_crucial_membership(
    f: LaurentPoly, x1: ClosedPoint, x2: ClosedPoint, algebra: Optional[FinitelyPresentedAlgebra] = None
) -> bool:
    """f(x1) = f(x2) = 0."""
    R = _algebra_for(f, algebra)
    _check_distinct(x1, x2)
    g = R.element(f)
    return not g.evaluate(R.require_point(x1)) and not g.evaluate(R.require_point(x2))


def tangent_membership(
    f: LaurentPoly, v: TangentVector, algebra: Optional[FinitelyPresentedAlgebra] = None
) -> bool:
    """D_v f(x) = 0."""
    R = _algebra_for(f, algebra)
    v.validate(R)
    return not v.derivative(R.element(f), R)


def tangent_crucial_membership(
    f: LaurentPoly, v: TangentVector, algebra: Optional[FinitelyPresentedAlgebra] = None
) -> bool:
    """f(x) = 0 and D_v f(x) = 0."""
    R = _algebra_for(f, algebra)
    v.validate(R)
    g = R.element(f)
    return not g.evaluate(R.point_map(v.base)) and not v.derivative(g, R)


@dataclass(frozen=True)
class NonextendingOracle:
    """Membership in one construction, as a family of linear functionals.

    f belongs to the algebra (or to its crucial ideal when ``crucial``)
    exactly when every functional vanishes on f.
    """

    kind: str
    algebra: FinitelyPresentedAlgebra
    points: Tuple[ClosedPoint, ...]
    vector: Optional[TangentVector] = None
    crucial: bool = False
    functionals: Tuple[Functional, ...] = field(default=(), compare=False, repr=False)

    def __call__(self, f: LaurentPoly) -> bool:
        g = self.algebra.element(f)
        return all(not phi(g) for phi in self.functionals)


def make_nonextending_oracle(
    kind: str,
    algebra: FinitelyPresentedAlgebra,
    points: Sequence[ClosedPoint] = (),
    vector: Optional[TangentVector] = None,
    crucial: bool = False,
) -> NonextendingOracle:
    """Build the oracle for ``kind`` in ("glue", "tangent").

    Raises:
        UnsupportedConstruction: any other kind, notably "residue_field".
    """
    R = algebra
    if kind == "glue":
        if len(points) != 2:
            raise PreconditionFailed(f"glueing needs exactly two points, got {len(points)}")
        x1, x2 = points
        _check_distinct(x1, x2)
        p1, p2 = R.require_point(x1), R.require_point(x2)
        if crucial:
            functionals: Tuple[Functional, ...] = (lambda f: f.evaluate(p1), lambda f: f.evaluate(p2))
        else:
            functionals = (lambda f: f.evaluate(p1) - f.evaluate(p2),)
        return NonextendingOracle(kind, R, (x1, x2), None, crucial, functionals)
    if kind == "tangent":
        if vector is None:
            raise PreconditionFailed("deleting a tangent direction needs a vector")
        vector.validate(R)
        base = R.point_map(vector.base)
        derivative: Functional = lambda f: vector.derivative(f, R)
        if crucial:
            functionals = (lambda f: f.evaluate(base), derivative)
        else:
            functionals = (derivative,)
        return NonextendingOracle(kind, R, (vector.base,), vector, crucial, functionals)
    raise UnsupportedConstruction(
        f"construction {kind!r} is not available; supported: {', '.join(SUPPORTED_CONSTRUCTIONS)}"
    )


def filtered_basis(oracle: NonextendingOracle, degree: int) -> List[LaurentPoly]:
    """Basis of {f : deg f <= degree, f accepted by the oracle}.

    The conditions are linear, so the members form the kernel of the
    functionals evaluated on the monomial basis.
    """
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    monomials = oracle.algebra.monomials(degree)
    rows = [[phi(m) for m in monomials] for phi in oracle.functionals]
    kernel = nullspace(rows, len(monomials))
    basis = []
    for vec in kernel:
        f = LaurentPoly.zero(oracle.algebra.variables)
        for c, m in zip(vec, monomials):
            if c:
                f = f + m.scale(c)
        basis.append(f)
    logger.debug("%s filtration at degree %d: %d of %d monomials", oracle.kind, degree, len(basis), len(monomials))
    return basis


__all__ = [
    "SUPPORTED_CONSTRUCTIONS",
    "FinitelyPresentedAlgebra",
    "ClosedPoint",
    "TangentVector",
    "glue_membership",
    "glue_crucial_membership",
    "tangent_membership",
    "tangent_crucial_membership",
    "NonextendingOracle",
    "make_nonextending_oracle",
    "filtered_basis",
]
