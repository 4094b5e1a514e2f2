"""
Dense univariate polynomials over cyclotomic fields.

A polynomial is a tuple of ``FieldElem`` coefficients, constant term first,
with no trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from src.errors import ZeroDivision
from src.fields.cyclotomic import FieldElem, Scalar, as_field_elem

UPoly = Tuple[FieldElem, ...]

_ZERO = as_field_elem(0)
_ONE = as_field_elem(1)


def upoly(coeffs: Iterable[Scalar]) -> UPoly:
    out = [as_field_elem(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def degree(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return upoly((p[i] if i < len(p) else _ZERO) + (q[i] if i < len(q) else _ZERO) for i in range(n))


def neg(p: UPoly) -> UPoly:
    return tuple(-c for c in p)


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, neg(q))


def scale(p: UPoly, c: Scalar) -> UPoly:
    return upoly(a * c for a in p)


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return ()
    out: List[FieldElem] = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return upoly(out)


def divmod_(p: UPoly, q: UPoly) -> Tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivision("polynomial division by zero")
    rem = list(p)
    lead_inv = q[-1].inverse()
    quot: List[FieldElem] = [_ZERO] * max(len(p) - len(q) + 1, 0)
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1] * lead_inv
        quot[k] = c
        if c:
            for i, b in enumerate(q):
                rem[k + i] = rem[k + i] - c * b
    return upoly(quot), upoly(rem[: len(q) - 1])


def monic(p: UPoly) -> UPoly:
    if not p:
        return p
    inv = p[-1].inverse()
    return upoly(c * inv for c in p)


def gcd(p: UPoly, q: UPoly) -> UPoly:
    a, b = p, q
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(p: UPoly) -> UPoly:
    return upoly(c * i for i, c in enumerate(p) if i)


def evaluate(p: UPoly, x: Scalar) -> FieldElem:
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def shift(p: UPoly, a: Scalar) -> UPoly:
    """Coefficients of p(x + a)."""
    out: UPoly = ()
    linear = upoly([a, 1])
    for c in reversed(p):
        out = add(mul(out, linear), (c,))
    return out


def squarefree_part(p: UPoly) -> UPoly:
    g = gcd(p, derivative(p))
    if len(g) <= 1:
        return monic(p)
    return monic(divmod_(p, g)[0])


def from_roots(roots: Sequence[Scalar]) -> UPoly:
    out: UPoly = (_ONE,)
    for r in roots:
        out = mul(out, upoly([-as_field_elem(r), 1]))
    return out
