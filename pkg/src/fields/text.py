"""
Shared text rendering for polynomials and series.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Tuple

from src.fields.cyclotomic import FieldElem
from src.fields.rational import format_rat


def format_power(var: str, exponent: Fraction) -> str:
    if exponent == 1:
        return var
    if exponent.denominator == 1 and exponent > 0:
        return f"{var}^{exponent.numerator}"
    return f"{var}^({format_rat(exponent)})"


def format_term(coeff: FieldElem, monomial: str) -> Tuple[bool, str]:
    """Split a term into (negative?, body) for signed joining."""
    if coeff.is_rational():
        value = coeff.to_rational()
        negative = value < 0
        mag = abs(value)
        if not monomial:
            return negative, format_rat(mag)
        if mag == 1:
            return negative, monomial
        return negative, f"{format_rat(mag)}*{monomial}"
    if coeff.needs_parentheses():
        body = f"({coeff})"
        return False, f"{body}*{monomial}" if monomial else body
    negative = any(c < 0 for c in coeff.coords)
    text = str(-coeff if negative else coeff)
    return negative, f"{text}*{monomial}" if monomial else text


def join_terms(parts: Iterable[Tuple[bool, str]]) -> str:
    out: List[str] = []
    for negative, body in parts:
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out) if out else "0"
