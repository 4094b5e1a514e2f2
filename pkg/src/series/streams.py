"""
Named term-stream rules.

Descriptor documents cannot carry code, so streams are referenced by rule
name plus parameters and rebuilt here.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, Mapping, Optional, Tuple

from src.fields.cyclotomic import FieldElem, as_field_elem
from src.fields.rational import as_rat
from src.series.hahn import TermStream

RuleFactory = Callable[[Mapping[str, Any]], TermStream]

_RULES: Dict[str, RuleFactory] = {}


def register_rule(name: str) -> Callable[[RuleFactory], RuleFactory]:
    def decorator(factory: RuleFactory) -> RuleFactory:
        _RULES[name] = factory
        return factory

    return decorator


def _scalar(value: Any) -> FieldElem:
    if isinstance(value, FieldElem):
        return value
    return as_field_elem(as_rat(value) if isinstance(value, str) else value)


def _coefficient(params: Mapping[str, Any]) -> FieldElem:
    return _scalar(params.get("coefficient", 1))


@register_rule("geometric_gap")
def geometric_gap(params: Optional[Mapping[str, Any]] = None) -> TermStream:
    """sum over i >= start of c * t^(i + 2^-i); exponent denominators are unbounded."""
    params = dict(params or {})
    start = int(params.get("start", 1))
    coeff = _coefficient(params)

    def rule() -> Iterator[Tuple[Fraction, FieldElem]]:
        for i in itertools.count(start):
            yield Fraction(i) + Fraction(1, 2**i), coeff

    return TermStream(rule, name="geometric_gap", params=params, transcendental=True)


@register_rule("integers")
def integers(params: Optional[Mapping[str, Any]] = None) -> TermStream:
    """sum over i >= start of c * t^i, a rational function of t."""
    params = dict(params or {})
    start = int(params.get("start", 1))
    if start < 0:
        raise ValueError("integers stream needs start >= 0")
    coeff = _coefficient(params)

    def rule() -> Iterator[Tuple[Fraction, FieldElem]]:
        for i in itertools.count(start):
            yield Fraction(i), coeff

    return TermStream(rule, name="integers", params=params, transcendental=False)


def available_rules() -> Tuple[str, ...]:
    return tuple(sorted(_RULES))


def make_stream(name: str, params: Optional[Mapping[str, Any]] = None) -> TermStream:
    """Instantiate a registered rule.

    A ``shift`` parameter adds a constant to the series (see
    :meth:`TermStream.shifted_constant`).

    Raises:
        ValueError: unknown rule name.
    """
    try:
        factory = _RULES[name]
    except KeyError:
        raise ValueError(f"unknown stream rule {name!r}; known rules: {', '.join(available_rules())}")
    rest = dict(params or {})
    shift = _scalar(rest.pop("shift", 0))
    stream = factory(rest)
    return stream.shifted_constant(shift) if shift else stream
