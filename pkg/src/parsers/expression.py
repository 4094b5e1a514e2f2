"""
Text syntax for Laurent polynomials, scalars and finite Hahn series.

Grammar (usual precedence, ``^`` right associative, ``**`` accepted for ``^``)::

    expr   := expr ("+" | "-") expr | expr ("*" | "/") expr | expr "^" expr
            | ("+" | "-") expr | "(" expr ")" | INTEGER | NAME | "O" "(" expr ")"

Numbers are integers; ``p/q`` is an ordinary quotient.  ``z`` is the
generator zeta_N of the working field.  Division is only by monomials, so
``y^2/t`` becomes ``t^(-1)*y^2``.  Exponents must be rational constants;
fractional ones are accepted only on the series variable.

The parser is a top-down operator-precedence (Pratt) parser.  Each token
has a binding power; prefix handlers build atoms and unary operators, infix
handlers combine the left operand with what follows.  The token cursor
lives in a per-call context so one parser instance can be reused from
several threads.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from src.errors import ExponentDomainError, ParseError
from src.fields.cyclotomic import CycloField, FieldElem, as_field_elem
from src.fields.rational import format_rat
from src.polys.laurent import LaurentPoly
from src.series.hahn import HahnSeries

logger = logging.getLogger(__name__)

Value = Union[LaurentPoly, HahnSeries]

FIELD_GENERATOR = "z"
BIG_O = "O"

BINDING_POWER = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
UNARY_POWER = 25

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # number | name | op | end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens, ending with an ``end`` token.

    Raises:
        ParseError: a character that starts no token.
    """
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", position=bad)
        kind = match.lastgroup
        start = match.start(kind)
        value = match.group(kind)
        tokens.append(Token(kind, "^" if value == "**" else value, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Context:
    """Token cursor for a single parse."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.current
        if token.text != text or token.kind == "end":
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise ParseError(f"expected {text!r}, found {found}", position=token.position)
        return self.advance()


class _PolynomialDomain:
    """Values are Laurent polynomials in ``gens``; exponents must be integers."""

    def __init__(self, gens: Sequence[str]) -> None:
        self.gens = tuple(gens)

    def names(self) -> Sequence[str]:
        return self.gens

    def variable(self, name: str) -> LaurentPoly:
        return LaurentPoly.gen(name, self.gens)

    def constant(self, value: FieldElem) -> LaurentPoly:
        return LaurentPoly.constant(value, self.gens)

    def scalar_of(self, value: LaurentPoly) -> Optional[FieldElem]:
        return value.constant_value() if value.is_constant() else None

    def divide(self, a: LaurentPoly, b: LaurentPoly, token: Token) -> LaurentPoly:
        if not b.is_monomial():
            what = "zero" if b.is_zero() else f"the non-monomial {b}"
            raise ParseError(f"division by {what}", position=token.position)
        return a / b

    def power(self, base: LaurentPoly, exponent: Fraction, token: Token) -> LaurentPoly:
        if exponent.denominator != 1:
            raise ExponentDomainError(
                f"fractional exponent {format_rat(exponent)} at position {token.position}"
            )
        n = int(exponent)
        if n < 0 and not base.is_monomial():
            raise ParseError(f"negative power of the non-monomial {base}", position=token.position)
        return base**n

    def big_o(self, argument: LaurentPoly, token: Token) -> LaurentPoly:
        raise ParseError("O(...) is only allowed in series", position=token.position)


class _SeriesDomain:
    """Values are Hahn series in one variable; rational exponents allowed."""

    def __init__(self, variable: str) -> None:
        self.var = variable

    def names(self) -> Sequence[str]:
        return (self.var,)

    def variable(self, name: str) -> HahnSeries:
        return HahnSeries.monomial(1)

    def constant(self, value: FieldElem) -> HahnSeries:
        return HahnSeries.constant(value)

    def scalar_of(self, value: HahnSeries) -> Optional[FieldElem]:
        if not value.is_exact() or any(e != 0 for e in value.support()):
            return None
        return value.coefficient(0)

    @staticmethod
    def _single_term(value: HahnSeries):
        if value.is_exact() and len(value.terms) == 1:
            return value.terms[0]
        return None

    def divide(self, a: HahnSeries, b: HahnSeries, token: Token) -> HahnSeries:
        term = self._single_term(b)
        if term is None:
            what = "zero" if b.is_zero() else f"the non-monomial {b.to_string(self.var)}"
            raise ParseError(f"division by {what}", position=token.position)
        e, c = term
        return a * HahnSeries.monomial(-e, c.inverse())

    def power(self, base: HahnSeries, exponent: Fraction, token: Token) -> HahnSeries:
        if exponent.denominator == 1 and exponent >= 0:
            return base ** int(exponent)
        term = self._single_term(base)
        if term is None:
            raise ExponentDomainError(
                f"exponent {format_rat(exponent)} on a non-monomial at position {token.position}"
            )
        e, c = term
        if exponent.denominator == 1:
            return HahnSeries.monomial(e * exponent, c ** int(exponent))
        if c != 1:
            raise ExponentDomainError(
                f"fractional power of the coefficient {c} at position {token.position}"
            )
        return HahnSeries.monomial(e * exponent, 1)

    def big_o(self, argument: HahnSeries, token: Token) -> HahnSeries:
        term = self._single_term(argument)
        if term is None:
            raise ParseError("O(...) needs a monomial argument", position=token.position)
        return HahnSeries((), known_below=term[0])


class ExpressionParser:
    """Pratt parser for polynomial or series text.

    Args:
        variables: Generator names for polynomial mode.
        series_variable: When given, parse one-variable Hahn series in this
            variable instead (``variables`` is ignored).
        field: Field whose generator ``z`` denotes; defaults to the
            configured field.
    """

    def __init__(
        self,
        variables: Sequence[str] = ("t", "y"),
        series_variable: Optional[str] = None,
        field: Optional[CycloField] = None,
    ) -> None:
        if series_variable is not None:
            self.domain = _SeriesDomain(series_variable)
        else:
            self.domain = _PolynomialDomain(variables)
        if FIELD_GENERATOR in self.domain.names():
            raise ValueError(f"{FIELD_GENERATOR!r} is reserved for the field generator")
        self._field = field

    @property
    def field(self) -> CycloField:
        if self._field is None:
            from src.fields import default_field

            return default_field()
        return self._field

    def parse(self, text: str) -> Value:
        """Parse a whole expression.

        Raises:
            ParseError: malformed text (with the offending position).
            ExponentDomainError: an exponent the value domain cannot take.
        """
        ctx = _Context(text)
        if ctx.current.kind == "end":
            raise ParseError("empty expression", position=0)
        value = self._expression(ctx, 0)
        token = ctx.current
        if token.kind != "end":
            raise ParseError(f"unexpected {token.text!r}", position=token.position)
        return value

    # -- Pratt core -------------------------------------------------------

    def _expression(self, ctx: _Context, right_binding: int) -> Value:
        left = self._nud(ctx, ctx.advance())
        while True:
            token = ctx.current
            if token.kind != "op" or BINDING_POWER.get(token.text, 0) <= right_binding:
                break
            ctx.advance()
            left = self._led(ctx, token, left)
        return left

    def _nud(self, ctx: _Context, token: Token) -> Value:
        if token.kind == "number":
            return self.domain.constant(as_field_elem(int(token.text)))
        if token.kind == "name":
            return self._name(ctx, token)
        if token.text == "(":
            value = self._expression(ctx, 0)
            ctx.expect(")")
            return value
        if token.text in ("-", "+"):
            operand = self._expression(ctx, UNARY_POWER)
            return -operand if token.text == "-" else operand
        if token.kind == "end":
            raise ParseError("unexpected end of input", position=token.position)
        raise ParseError(f"unexpected {token.text!r}", position=token.position)

    def _name(self, ctx: _Context, token: Token) -> Value:
        name = token.text
        if name in self.domain.names():
            return self.domain.variable(name)
        if name == FIELD_GENERATOR:
            return self.domain.constant(self.field.zeta())
        if name == BIG_O and ctx.current.text == "(":
            ctx.advance()
            argument = self._expression(ctx, 0)
            ctx.expect(")")
            return self.domain.big_o(argument, token)
        raise ParseError(f"unknown name {name!r}", position=token.position)

    def _led(self, ctx: _Context, token: Token, left: Value) -> Value:
        op = token.text
        if op == "^":
            right = self._expression(ctx, BINDING_POWER["^"] - 1)
            return self.domain.power(left, self._exponent(right, token), token)
        right = self._expression(ctx, BINDING_POWER[op])
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        return self.domain.divide(left, right, token)

    def _exponent(self, value: Value, token: Token) -> Fraction:
        scalar = self.domain.scalar_of(value)
        if scalar is None or not scalar.is_rational():
            raise ParseError("exponents must be rational constants", position=token.position)
        return scalar.to_rational()


def parse_expression(
    text: str, gens: Sequence[str] = ("t", "y"), field: Optional[CycloField] = None
) -> LaurentPoly:
    """Laurent polynomial from text; ``gens=("x", "y")`` is curve mode."""
    result = ExpressionParser(gens, field=field).parse(text)
    logger.debug("parsed %r as %s", text, result)
    return result


def parse_series(text: str, variable: str = "t", field: Optional[CycloField] = None) -> HahnSeries:
    """Finite Hahn series (optionally ending in ``O(t^k)``) from text."""
    return ExpressionParser(series_variable=variable, field=field).parse(text)


def parse_scalar(text: str, field: Optional[CycloField] = None) -> FieldElem:
    """Field element such as ``-1/8`` or ``z^2 - 1``."""
    return ExpressionParser((), field=field).parse(text).constant_value()


def format_expression(f: LaurentPoly) -> str:
    """Canonical text of f; :func:`parse_expression` reads it back."""
    return str(f)


def format_series(s: HahnSeries, variable: str = "t") -> str:
    return s.to_string(variable)


__all__ = [
    "Token",
    "tokenize",
    "ExpressionParser",
    "parse_expression",
    "parse_series",
    "parse_scalar",
    "format_expression",
    "format_series",
]
