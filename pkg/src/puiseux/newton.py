"""
Newton polygons and Newton-Puiseux expansion of the roots of P(t, y).

The polynomial is first split into squarefree factors over k(t).  Each
factor is expanded by walking Newton polygon edges: an edge of root
valuation s and an edge-polynomial root c give the term c t^s, after which
y = c t^s + y1 and the search continues for roots with nu(y1) > s.  Ramified
exponents are ordinary rational exponents of ``HahnSeries`` terms.

Coefficients are truncated against a working bound W: at a level whose roots
have valuation above ``floor`` the coefficient of y1^j is kept below
W - j*floor, which leaves the equation exact modulo t^W.  Anything read past
a truncation raises ``_NeedMorePrecision`` and the factor is re-expanded with
a larger W, so every returned term is certified.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import (
    IncompleteSplitting,
    InsufficientPrecision,
    InvalidDescriptor,
    SingleBranch,
    Undetermined,
    ZeroInput,
    ZeroOrUndetermined,
)
from src.fields.cyclotomic import CycloField, FieldElem, field_of
from src.fields.rational import RatLike, as_rat, format_rat, lcm_denominator
from src.fields.roots import find_roots
from src.polys.laurent import (
    LaurentPoly,
    clear_t_denominator,
    evaluate_y,
    squarefree_decomposition,
    y_coefficient_series,
)
from src.series.hahn import HahnSeries, valuation

logger = logging.getLogger(__name__)

Point = Tuple[int, Fraction]

MAX_RESIDUAL_ROUNDS = 8


class _NeedMorePrecision(Exception):
    """Internal signal: a truncated coefficient was needed."""


@dataclass(frozen=True)
class Edge:
    """Segment of the lower hull between y-degrees ``left[0] < right[0]``."""

    left: Point
    right: Point

    @property
    def slope(self) -> Fraction:
        """Valuation of the roots the edge accounts for."""
        return (self.left[1] - self.right[1]) / (self.right[0] - self.left[0])

    @property
    def length(self) -> int:
        return self.right[0] - self.left[0]

    def height_at(self, j: int) -> Fraction:
        return self.left[1] - (j - self.left[0]) * self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points (y-degree, t-order)."""

    vertices: Tuple[Point, ...]
    edges: Tuple[Edge, ...]
    zero_root_multiplicity: int = 0

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        return tuple(e.slope for e in self.edges)

    def roots_above(self, floor: Optional[Fraction]) -> int:
        """Number of roots (with multiplicity) of valuation > floor."""
        return self.zero_root_multiplicity + sum(
            e.length for e in self.edges if floor is None or e.slope > floor
        )


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[Point]) -> List[Point]:
    """Vertices of the lower convex hull, left to right (monotone chain)."""
    hull: List[Point] = []
    for p in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def _polygon_from_heights(heights: Dict[int, Fraction], zero_mult: int = 0) -> NewtonPolygon:
    vertices = lower_hull(list(heights.items()))
    edges = [Edge(a, b) for a, b in zip(vertices, vertices[1:])]
    edges.sort(key=lambda e: e.slope)
    return NewtonPolygon(tuple(vertices), tuple(edges), zero_mult)


def newton_polygon(P: LaurentPoly) -> NewtonPolygon:
    """Newton polygon of P as a polynomial in y over k[t].

    Raises:
        ZeroInput: P is zero.
    """
    if P.is_zero():
        raise ZeroInput("Newton polygon of the zero polynomial")
    coeffs = y_coefficient_series(P)
    heights = {j: c.terms[0][0] for j, c in enumerate(coeffs) if c.terms}
    return _polygon_from_heights(heights, min(heights))


@dataclass(frozen=True)
class PuiseuxBranch:
    """One root of P as a Puiseux series prefix.

    ``expansion`` agrees with the root on every exponent below its
    ``known_below`` (None when the root is the finite series itself).
    """

    expansion: HahnSeries
    multiplicity: int = 1
    ramification: int = 1
    field: Optional[CycloField] = dataclass_field(default=None, compare=False)

    def __str__(self) -> str:
        text = str(self.expansion)
        return text if self.multiplicity == 1 else f"{text} (multiplicity {self.multiplicity})"


@dataclass
class _RawRoot:
    terms: List[Tuple[Fraction, FieldElem]]
    known_below: Optional[Fraction]
    maybe_exact: bool = False


def _height(q: HahnSeries) -> Tuple[Optional[Fraction], bool]:
    """(nu(q), certified); exact zero gives (None, True), an empty prefix its bound."""
    if q.terms:
        return q.terms[0][0], True
    if q.is_exact():
        return None, True
    return q.known_below, False


class _Expander:
    """Expansion of one squarefree factor against a fixed working bound."""

    def __init__(self, field: CycloField, target: Fraction, work: Fraction) -> None:
        self.field = field
        self.target = target
        self.work = work
        self.roots: List[_RawRoot] = []

    def _bound(self, k: int, floor: Fraction) -> Fraction:
        return self.work - k * floor

    def _shift(self, Q: List[HahnSeries], c: FieldElem, s: Fraction) -> List[HahnSeries]:
        """Coefficients of Q(c t^s + y1), truncated for roots with nu(y1) > s."""
        d = len(Q) - 1
        out = []
        for k in range(d + 1):
            acc = HahnSeries()
            for j in range(k, d + 1):
                if Q[j].is_zero():
                    continue
                acc = acc + Q[j].shift((j - k) * s).scale(c ** (j - k) * comb(j, k))
            out.append(acc.truncate(self._bound(k, s)))
        return out

    def solve(
        self,
        Q: List[HahnSeries],
        floor: Optional[Fraction],
        count: int,
        prefix: List[Tuple[Fraction, FieldElem]],
    ) -> None:
        while count and Q[0].is_zero():
            self.roots.append(_RawRoot(list(prefix), None))
            Q = Q[1:]
            count -= 1
        if count == 0:
            return
        if count == 1 and floor is not None:
            self.single_root(Q, floor, prefix)
            return

        heights: Dict[int, Fraction] = {}
        certified: Dict[int, bool] = {}
        for j in range(count + 1):
            h, known = _height(Q[j])
            if h is None:
                continue
            heights[j] = h
            certified[j] = known
        if not certified.get(count, False):
            raise _NeedMorePrecision()

        vertices = lower_hull(list(heights.items()))
        for left, right in zip(vertices, vertices[1:]):
            edge = Edge(left, right)
            s = edge.slope
            if floor is not None and s <= floor:
                continue
            j1, j2 = left[0], right[0]
            if not certified[j2]:
                raise _NeedMorePrecision()
            if not certified[j1]:
                # only the leftmost point can be a bare bound; its roots sit above s
                if j1 == 0 and j2 == 1 and s >= self.target:
                    self.roots.append(_RawRoot(list(prefix), s, maybe_exact=True))
                    continue
                raise _NeedMorePrecision()
            edge_poly: List[FieldElem] = []
            for j in range(j1, j2 + 1):
                line = edge.height_at(j)
                if j in heights and heights[j] == line and certified[j]:
                    edge_poly.append(Q[j].terms[0][1])
                elif j in heights and heights[j] <= line:
                    raise _NeedMorePrecision()
                else:
                    edge_poly.append(self.field.zero())
            roots = find_roots(edge_poly, self.field)
            if sum(m for _, m in roots) < edge.length:
                residual = LaurentPoly({(k,): c for k, c in enumerate(edge_poly)}, gens=("Z",))
                raise IncompleteSplitting(
                    f"edge polynomial {residual} of slope {format_rat(s)} does not split over {self.field}",
                    residual=residual,
                    field=self.field,
                )
            if len(roots) > 1:
                logger.debug("cluster at slope %s splits into %d parts", format_rat(s), len(roots))
            for c, mult in roots:
                shifted = self._shift(Q, c, s)
                self.solve(shifted, s, mult, prefix + [(s, c)])

    def single_root(
        self,
        Q: List[HahnSeries],
        floor: Fraction,
        prefix: List[Tuple[Fraction, FieldElem]],
    ) -> None:
        prefix = list(prefix)
        while True:
            if Q[0].is_zero():
                self.roots.append(_RawRoot(prefix, None))
                return
            h0, known0 = _height(Q[0])
            h1, known1 = _height(Q[1])
            if h1 is None or not known1:
                raise _NeedMorePrecision()
            s = h0 - h1
            if not known0:
                if s >= self.target:
                    self.roots.append(_RawRoot(prefix, s, maybe_exact=True))
                    return
                raise _NeedMorePrecision()
            if s <= floor:
                raise ArithmeticError(f"simple root lost below {format_rat(floor)}")
            if s >= self.target:
                self.roots.append(_RawRoot(prefix, s))
                return
            c = -Q[0].terms[0][1] / Q[1].terms[0][1]
            prefix.append((s, c))
            Q = self._shift(Q, c, s)
            floor = s


def _settings():
    from src.utils.config import get_settings

    return get_settings()


def _working_field(P: LaurentPoly, field: Optional[CycloField]) -> CycloField:
    base = field or CycloField.of(_settings().field_conductor)
    return field_of(P.terms.values(), base)


def _expand_squarefree(
    factor: LaurentPoly,
    target: Fraction,
    field: CycloField,
    floor: Optional[Fraction],
) -> List[_RawRoot]:
    Q = y_coefficient_series(factor)
    degree = len(Q) - 1
    cap = _settings().precision_cap
    work = 2 * max(target, Fraction(1)) + degree + 1
    limit = 16 * max(cap, target) + degree
    while True:
        expander = _Expander(field, target, work)
        try:
            expander.solve(Q, floor, degree, [])
            break
        except _NeedMorePrecision:
            if work >= limit:
                raise Undetermined(
                    f"Puiseux expansion of {factor} needs a working bound beyond {format_rat(limit)}",
                    precision=work,
                )
            logger.debug("raising working bound for %s from %s", factor, format_rat(work))
            work = min(limit, 2 * work)
    for root in expander.roots:
        if root.maybe_exact and evaluate_y(factor, HahnSeries(root.terms)).is_zero():
            root.known_below = None
    return expander.roots


def residual_exceeds(P: LaurentPoly, expansion: HahnSeries, precision: RatLike) -> bool:
    """Whether nu(P(prefix)) > precision for the finite prefix of ``expansion``."""
    prec = as_rat(precision)
    cleared = clear_t_denominator(P)
    # P = t^shift * cleared
    shift = P.min_degree("t") - cleared.min_degree("t")
    lead = expansion.terms[0][0] if expansion.terms else Fraction(0)
    margin = max(Fraction(0), -shift) + (cleared.degree("y") + 1) * max(Fraction(0), -lead) + 1
    for _ in range(MAX_RESIDUAL_ROUNDS):
        bound = prec + margin
        head = HahnSeries([(e, c) for e, c in expansion.terms if e < bound], bound)
        residual = evaluate_y(cleared, head).shift(shift)
        if residual.known_below is None or residual.known_below > prec:
            return all(e > prec for e in residual.support())
        margin *= 2
    raise InsufficientPrecision(f"could not certify the residual of {P} above {format_rat(prec)}")


def _branch_key(branch: PuiseuxBranch) -> Tuple:
    return tuple((e, c.field.conductor, c.coords) for e, c in branch.expansion.terms)


def puiseux_expand(
    P: LaurentPoly,
    precision: RatLike,
    field: Optional[CycloField] = None,
    floor: Optional[RatLike] = None,
) -> List[PuiseuxBranch]:
    """Roots of P in y as Puiseux series known at least below ``precision``.

    Args:
        P: polynomial in y over k[t] (negative t-powers are cleared).
        precision: every branch satisfies nu(P(branch)) > precision.
        field: coefficient field for the edge roots; the settings default.
        floor: when given, only roots of valuation > floor are returned.

    Raises:
        ZeroInput: P is zero.
        IncompleteSplitting: an edge polynomial does not split over the field.
    """
    if P.is_zero():
        raise ZeroInput("cannot expand the roots of zero")
    target = as_rat(precision)
    low = as_rat(floor) if floor is not None else None
    work_field = _working_field(P, field)
    P = clear_t_denominator(P)
    branches: List[PuiseuxBranch] = []
    for factor, mult in squarefree_decomposition(P):
        goal = target
        for _ in range(MAX_RESIDUAL_ROUNDS):
            raw = _expand_squarefree(factor, goal, work_field, low)
            candidates = [
                HahnSeries(r.terms, r.known_below) for r in raw
            ]
            if all(residual_exceeds(P, c, target) for c in candidates):
                break
            logger.debug("residual check failed below %s, expanding further", format_rat(goal))
            goal = 2 * goal + 1
        else:
            raise InsufficientPrecision(f"branches of {factor} do not reach residual {format_rat(target)}")
        for series in candidates:
            n = lcm_denominator(series.support())
            used = field_of((c for _, c in series.terms), work_field)
            branches.append(PuiseuxBranch(series, mult, n, used))
    if low is None:
        total = sum(b.multiplicity for b in branches)
        if total != P.degree("y"):
            raise IncompleteSplitting(
                f"found {total} of {P.degree('y')} roots of {P}", residual=P, field=work_field
            )
    return sorted(branches, key=_branch_key)


def _agrees_with_prefix(series: HahnSeries, prefix: HahnSeries) -> bool:
    if prefix.known_below is not None:
        bound = prefix.known_below
        if series.known_below is not None and series.known_below < bound:
            return False
        return [t for t in series.terms if t[0] < bound] == list(prefix.terms)
    if not prefix.terms:
        return True
    last = prefix.terms[-1][0]
    if series.known_below is not None and series.known_below <= last:
        return False
    return [t for t in series.terms if t[0] <= last] == list(prefix.terms)


def branch_from_prefix(
    P: LaurentPoly,
    prefix: Optional[HahnSeries],
    precision: RatLike,
    floor: Optional[RatLike] = None,
    field: Optional[CycloField] = None,
) -> PuiseuxBranch:
    """The unique root of P (above ``floor``) whose expansion starts with ``prefix``.

    An exact prefix is matched on all exponents up to its last term; a
    truncated one on everything below its ``known_below``.

    Raises:
        InvalidDescriptor: no root or several roots match.
    """
    branches = puiseux_expand(P, precision, field=field, floor=floor)
    if prefix is not None:
        branches = [b for b in branches if _agrees_with_prefix(b.expansion, prefix)]
    if len(branches) != 1 or branches[0].multiplicity != 1:
        count = sum(b.multiplicity for b in branches)
        raise InvalidDescriptor(
            f"prefix {prefix if prefix is not None else '(none)'} matches {count} roots of {P}"
        )
    return branches[0]


def count_roots_above(P: LaurentPoly, floor: RatLike) -> int:
    """Roots of P with valuation > floor, counted with multiplicity."""
    return newton_polygon(P).roots_above(as_rat(floor))


def separation_precision(branches: Sequence[PuiseuxBranch]) -> Fraction:
    """Largest nu(a - b) over pairs of distinct branches.

    Raises:
        SingleBranch: fewer than two distinct branches.
        InsufficientPrecision: two branches agree on their whole known prefix.
    """
    distinct: List[HahnSeries] = []
    for b in branches:
        if b.expansion not in distinct:
            distinct.append(b.expansion)
    if len(distinct) < 2:
        raise SingleBranch("separation needs at least two distinct branches")
    best: Optional[Fraction] = None
    for i, a in enumerate(distinct):
        for b in distinct[i + 1 :]:
            diff = a - b
            try:
                v = valuation(diff)
            except ZeroOrUndetermined as exc:
                raise InsufficientPrecision(
                    f"branches {a} and {b} agree on their known prefix"
                ) from exc
            best = v if best is None else max(best, v)
    return best
