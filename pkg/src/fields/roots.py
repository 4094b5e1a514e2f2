"""
Roots of univariate polynomials inside a cyclotomic field.

Over Q the polynomial is factored with sympy and the linear factors are read
off.  Over Q(zeta_N) the squarefree part is shifted until its norm (the
resultant against Phi_N) is squarefree, the norm is factored over Q, and each
rational factor is intersected with the polynomial by a gcd over the field;
the linear gcds are the roots (Trager's method).
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, QQ, cyclotomic_poly, resultant

from src.fields import upoly as up
from src.fields.cyclotomic import (
    CycloField,
    FieldElem,
    Scalar,
    as_field_elem,
    field_of,
    from_sympy_rational,
    to_sympy_rational,
)

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")
_Z = sympy.Symbol("z")

MAX_TRAGER_SHIFTS = 64


def _rational_poly(p: up.UPoly) -> Poly:
    return Poly([to_sympy_rational(c.to_rational()) for c in reversed(p)], _X, domain=QQ)


def _rational_factors(poly: Poly) -> List[up.UPoly]:
    _, factors = poly.factor_list()
    out = []
    for factor, _mult in factors:
        coeffs = [from_sympy_rational(c) for c in reversed(factor.all_coeffs())]
        out.append(up.upoly(coeffs))
    return out


def _field_expr(c: FieldElem, field: CycloField):
    lifted = field.lift(c)
    if lifted.is_rational():
        return to_sympy_rational(lifted.coords[0])
    return sum(to_sympy_rational(v) * _Z**k for k, v in enumerate(lifted.coords) if v)


def _norm(p: up.UPoly, field: CycloField) -> Poly:
    expr = sum(_field_expr(c, field) * _X**i for i, c in enumerate(p))
    phi = cyclotomic_poly(field.conductor, _Z)
    return Poly(resultant(phi, expr, _Z), _X, domain=QQ)


def _roots_of_squarefree(p: up.UPoly, field: CycloField) -> List[FieldElem]:
    if up.degree(p) == 1:
        return [-p[0] / p[1]]
    if all(c.is_rational() for c in p) and field.degree == 1:
        return [-f[0] / f[1] for f in _rational_factors(_rational_poly(p)) if up.degree(f) == 1]

    zeta = field.zeta()
    for k in range(MAX_TRAGER_SHIFTS):
        # roots r of p become r + k*zeta of the shifted polynomial
        shifted = up.shift(p, -(zeta * k)) if k else p
        norm = _norm(shifted, field)
        if norm.degree() < 1:
            return []
        if norm.gcd(norm.diff(_X)).degree() > 0:
            logger.debug("norm not squarefree at shift %d, retrying", k)
            continue
        roots: List[FieldElem] = []
        for factor in _rational_factors(norm):
            g = up.gcd(shifted, factor)
            if up.degree(g) == 1:
                roots.append(-g[0] / g[1] - zeta * k)
        return roots
    raise RuntimeError(f"no squarefree norm found for polynomial of degree {up.degree(p)}")


def find_roots(p: Sequence[Scalar], field: Optional[CycloField] = None) -> List[Tuple[FieldElem, int]]:
    """All roots of ``p`` in ``field`` with multiplicities.

    Args:
        p: coefficients, constant term first.
        field: field to search in; defaults to the smallest field holding the
            coefficients.

    Returns:
        ``(root, multiplicity)`` pairs; the multiplicities sum to less than
        ``deg p`` when p does not split in the field.
    """
    poly = up.upoly(p)
    if not poly:
        raise ValueError("find_roots needs a nonzero polynomial")
    field = field_of(poly, field)
    roots: List[Tuple[FieldElem, int]] = []

    zero_mult = 0
    while poly and not poly[0]:
        poly = poly[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((as_field_elem(0), zero_mult))
    if up.degree(poly) < 1:
        return roots

    for r in _roots_of_squarefree(up.squarefree_part(poly), field):
        mult = 0
        linear = up.upoly([-r, 1])
        rest = poly
        while True:
            q, rem = up.divmod_(rest, linear)
            if rem:
                break
            rest = q
            mult += 1
        if mult:
            roots.append((r, mult))
    return sorted(roots, key=lambda item: _root_key(item[0]))


def _root_key(value: FieldElem) -> Tuple:
    return (value.field.conductor, tuple(value.coords))


def split_completely(p: Sequence[Scalar], field: Optional[CycloField] = None) -> bool:
    poly = up.upoly(p)
    return sum(m for _, m in find_roots(poly, field)) == up.degree(poly)
