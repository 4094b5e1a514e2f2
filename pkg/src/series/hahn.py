"""
Generalized power series sum a_s t^s with rational exponents.

A ``HahnSeries`` is a finite, sorted prefix of terms plus a precision mark
``known_below``: every term with exponent below it is present.  ``None``
means +infinity, i.e. the prefix is the whole series.  A series may carry a
``TermStream`` tail from which longer prefixes can be pulled on demand; the
tail always regenerates the whole series, not just the terms after the prefix.

Arithmetic works on the known prefixes and always reports the tightest
``known_below`` the inputs allow; results never carry a tail.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from src.errors import (
    InsufficientPrecision,
    InvalidPair,
    ZeroDivision,
    ZeroOrUndetermined,
)
from src.fields.cyclotomic import FieldElem, Scalar, as_field_elem
from src.fields.rational import RatLike, as_rat, format_rat
from src.fields.text import format_power, format_term, join_terms

logger = logging.getLogger(__name__)

Term = Tuple[Fraction, FieldElem]
Bound = Optional[Fraction]  # None stands for +infinity


def _min_bound(*bounds: Bound) -> Bound:
    finite = [b for b in bounds if b is not None]
    return min(finite) if finite else None


def _settings():
    from src.utils.config import get_settings

    return get_settings()


def next_precision(current: Fraction, cap: Fraction) -> Fraction:
    """Iterative-deepening step: double, but always move forward by at least one."""
    return min(cap, max(current * 2, current + 1))


class TermStream:
    """Re-instantiable, single-consumer source of series terms.

    ``rule`` is a zero-argument callable returning a fresh iterator of
    ``(exponent, coefficient)`` pairs with strictly increasing exponents.
    Iterating the stream always restarts the rule, so copies never share
    state.
    """

    def __init__(
        self,
        rule: Callable[[], Iterator[Tuple[RatLike, Scalar]]],
        name: str = "custom",
        params: Optional[Mapping[str, Any]] = None,
        transcendental: bool = False,
    ) -> None:
        self.rule = rule
        self.name = name
        self.params = dict(params or {})
        self.transcendental = transcendental

    def clone(self) -> "TermStream":
        return TermStream(self.rule, self.name, self.params, self.transcendental)

    def __iter__(self) -> Iterator[Term]:
        last: Bound = None
        for exponent, coeff in self.rule():
            e = as_rat(exponent)
            if last is not None and e <= last:
                raise ValueError(
                    f"stream {self.name!r} yielded exponent {format_rat(e)} after {format_rat(last)}"
                )
            last = e
            c = as_field_elem(coeff)
            if c:
                yield e, c

    def filtered(self, lower: Fraction) -> "TermStream":
        """Stream of the terms with exponent >= lower."""
        source = self

        def rule() -> Iterator[Term]:
            return ((e, c) for e, c in iter(source) if e >= lower)

        return TermStream(rule, f"{self.name}|>={format_rat(lower)}", self.params, self.transcendental)

    def shifted_constant(self, constant: FieldElem) -> "TermStream":
        """Stream of this series plus a constant; the total is kept in params["shift"]."""
        source = self

        def rule() -> Iterator[Term]:
            pending = constant
            for e, c in iter(source):
                if pending is not None and e >= 0:
                    if e == 0:
                        c = c + pending
                    else:
                        if pending:
                            yield Fraction(0), pending
                    pending = None
                yield e, c
            if pending is not None and pending:
                yield Fraction(0), pending

        params = dict(self.params)
        params["shift"] = as_field_elem(params.get("shift", 0)) + constant
        return TermStream(rule, self.name, params, self.transcendental)

    def __repr__(self) -> str:
        return f"TermStream({self.name!r}, {self.params!r})"


class HahnSeries:
    """Finite prefix of a Hahn series with precision tracking."""

    __slots__ = ("terms", "known_below", "tail")

    def __init__(
        self,
        terms: Iterable[Tuple[RatLike, Scalar]] = (),
        known_below: Optional[RatLike] = None,
        tail: Optional[TermStream] = None,
    ) -> None:
        kb = None if known_below is None else as_rat(known_below)
        cleaned: List[Term] = []
        last: Bound = None
        for exponent, coeff in terms:
            e = as_rat(exponent)
            c = as_field_elem(coeff)
            if last is not None and e <= last:
                raise ValueError("series exponents must be strictly increasing")
            last = e
            if not c:
                raise ValueError(f"zero coefficient stored at exponent {format_rat(e)}")
            if kb is not None and e >= kb:
                raise ValueError(
                    f"term at {format_rat(e)} is not below known_below {format_rat(kb)}"
                )
            cleaned.append((e, c))
        if tail is not None and kb is None:
            raise ValueError("a series with a tail needs a finite known_below")
        self.terms: Tuple[Term, ...] = tuple(cleaned)
        self.known_below: Bound = kb
        self.tail = tail

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "HahnSeries":
        return cls()

    @classmethod
    def one(cls) -> "HahnSeries":
        return cls([(0, 1)])

    @classmethod
    def constant(cls, value: Scalar) -> "HahnSeries":
        c = as_field_elem(value)
        return cls([(0, c)]) if c else cls()

    @classmethod
    def monomial(cls, exponent: RatLike, coeff: Scalar = 1) -> "HahnSeries":
        c = as_field_elem(coeff)
        return cls([(exponent, c)]) if c else cls()

    @classmethod
    def from_dict(cls, coeffs: Mapping[Fraction, Scalar], known_below: Bound = None) -> "HahnSeries":
        """Build from an unsorted exponent map, dropping zeros and terms at or above the bound."""
        items = []
        for e in sorted(coeffs):
            c = as_field_elem(coeffs[e])
            if c and (known_below is None or e < known_below):
                items.append((e, c))
        return cls(items, known_below)

    @classmethod
    def from_stream(
        cls,
        stream: TermStream,
        precision: RatLike,
        pull_limit: Optional[int] = None,
    ) -> "HahnSeries":
        """Pull terms of ``stream`` until an exponent reaches ``precision``.

        An exhausted stream gives an exact series.  Hitting the pull limit
        leaves the prefix certified only below the last exponent seen.
        """
        prec = as_rat(precision)
        limit = pull_limit or _settings().stream_pull_limit
        pulled: List[Term] = []
        for count, (e, c) in enumerate(stream, start=1):
            if e >= prec:
                return cls(pulled, prec, stream)
            if count > limit:
                logger.debug("stream %r hit the pull limit below %s", stream.name, e)
                return cls(pulled, e, stream)
            pulled.append((e, c))
        return cls(pulled)

    # -- inspection -------------------------------------------------------

    def is_exact(self) -> bool:
        return self.known_below is None and self.tail is None

    def is_zero(self) -> bool:
        """Exactly zero (not merely zero on the known prefix)."""
        return not self.terms and self.is_exact()

    def support(self) -> Tuple[Fraction, ...]:
        return tuple(e for e, _ in self.terms)

    def coefficient(self, exponent: RatLike) -> FieldElem:
        e = as_rat(exponent)
        if self.known_below is not None and e >= self.known_below:
            raise InsufficientPrecision(f"coefficient at {format_rat(e)} is beyond the known prefix")
        for exp, c in self.terms:
            if exp == e:
                return c
        return as_field_elem(0)

    def lower_valuation(self) -> Bound:
        """First exponent if any term is known, else the precision mark."""
        return self.terms[0][0] if self.terms else self.known_below

    def leading_term(self) -> Term:
        if not self.terms:
            raise ZeroOrUndetermined(
                "series has no known nonzero term",
                reason="zero" if self.is_exact() else "undetermined",
            )
        return self.terms[0]

    def is_finite_support(self) -> bool:
        return self.is_exact()

    def expand(self, precision: RatLike, pull_limit: Optional[int] = None) -> "HahnSeries":
        """Series whose prefix reaches ``precision`` (pulling from the tail if needed)."""
        prec = as_rat(precision)
        if self.known_below is None or self.known_below >= prec:
            return self
        if self.tail is not None:
            return HahnSeries.from_stream(self.tail, prec, pull_limit)
        raise InsufficientPrecision(
            f"known only below {format_rat(self.known_below)}, {format_rat(prec)} requested"
        )

    def truncate(self, bound: RatLike) -> "HahnSeries":
        """Drop every term at or above ``bound``; the result is known below it."""
        u = as_rat(bound)
        kb = _min_bound(self.known_below, u)
        return HahnSeries([(e, c) for e, c in self.terms if e < u], kb)

    def without_tail(self) -> "HahnSeries":
        if self.tail is None:
            return self
        return HahnSeries(self.terms, self.known_below)

    def map_terms(self, fn: Callable[[Fraction, FieldElem], FieldElem]) -> "HahnSeries":
        """Apply ``fn`` to each coefficient (exponents kept)."""
        mapped = {e: fn(e, c) for e, c in self.terms}
        return HahnSeries.from_dict(mapped, self.known_below)

    def agrees_with(self, other: "HahnSeries", bound: RatLike) -> bool:
        """Equal on all exponents < bound (both must be known that far)."""
        u = as_rat(bound)
        for s in (self, other):
            if s.known_below is not None and s.known_below < u:
                raise InsufficientPrecision(f"cannot compare below {format_rat(u)}")
        return [t for t in self.terms if t[0] < u] == [t for t in other.terms if t[0] < u]

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "HahnSeries":
        return HahnSeries([(e, -c) for e, c in self.terms], self.known_below)

    def __add__(self, other: Union["HahnSeries", Scalar]) -> "HahnSeries":
        other = _as_series(other)
        if other is NotImplemented:
            return NotImplemented
        kb = _min_bound(self.known_below, other.known_below)
        acc: Dict[Fraction, FieldElem] = {}
        for e, c in self.terms + other.terms:
            acc[e] = acc[e] + c if e in acc else c
        return HahnSeries.from_dict(acc, kb)

    __radd__ = __add__

    def __sub__(self, other: Union["HahnSeries", Scalar]) -> "HahnSeries":
        other = _as_series(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "HahnSeries":
        return (-self) + other

    def __mul__(self, other: Union["HahnSeries", Scalar]) -> "HahnSeries":
        other = _as_series(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return HahnSeries()
        bounds = []
        if self.known_below is not None:
            bounds.append(self.known_below + other.lower_valuation())
        if other.known_below is not None:
            bounds.append(other.known_below + self.lower_valuation())
        kb = min(bounds) if bounds else None
        acc: Dict[Fraction, FieldElem] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if kb is not None and e >= kb:
                    continue
                prod = c1 * c2
                acc[e] = acc[e] + prod if e in acc else prod
        return HahnSeries.from_dict(acc, kb)

    __rmul__ = __mul__

    def scale(self, coeff: Scalar) -> "HahnSeries":
        c = as_field_elem(coeff)
        if not c:
            return HahnSeries() if self.known_below is None else HahnSeries((), self.known_below)
        return HahnSeries([(e, v * c) for e, v in self.terms], self.known_below)

    def shift(self, exponent: RatLike) -> "HahnSeries":
        """Multiply by the monomial t^exponent (exact)."""
        s = as_rat(exponent)
        kb = None if self.known_below is None else self.known_below + s
        return HahnSeries([(e + s, c) for e, c in self.terms], kb)

    def __pow__(self, n: int) -> "HahnSeries":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = HahnSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison and text ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, FieldElem)) and not isinstance(other, bool):
            other = HahnSeries.constant(other)
        if not isinstance(other, HahnSeries):
            return NotImplemented
        return self.terms == other.terms and self.known_below == other.known_below

    def __hash__(self) -> int:
        return hash((self.terms, self.known_below))

    def to_string(self, var: str = "t") -> str:
        parts = [format_term(c, format_power(var, e) if e else "") for e, c in self.terms]
        text = join_terms(parts)
        if self.known_below is not None:
            marker = f"O({format_power(var, self.known_below) if self.known_below else '1'})"
            text = marker if not self.terms else f"{text} + {marker}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"HahnSeries({self.to_string()!r})"


def _as_series(value: Any) -> Any:
    if isinstance(value, HahnSeries):
        return value
    if isinstance(value, (int, Fraction, FieldElem)) and not isinstance(value, bool):
        return HahnSeries.constant(value)
    return NotImplemented


# -- module-level operations ---------------------------------------------


def add(a: HahnSeries, b: HahnSeries) -> HahnSeries:
    return a + b


def neg(a: HahnSeries) -> HahnSeries:
    return -a


def sub(a: HahnSeries, b: HahnSeries) -> HahnSeries:
    return a - b


def mul(a: HahnSeries, b: HahnSeries) -> HahnSeries:
    return a * b


def valuation(a: HahnSeries, precision_cap: Optional[RatLike] = None) -> Fraction:
    """min supp(a), pulling from the tail up to the precision cap.

    Raises:
        ZeroOrUndetermined: with ``reason="zero"`` for an exact zero series,
            ``reason="undetermined"`` when nothing nonzero shows up in time.
    """
    if a.terms:
        return a.terms[0][0]
    if a.is_exact():
        raise ZeroOrUndetermined("valuation of the zero series", reason="zero")
    if a.tail is None:
        raise ZeroOrUndetermined(
            f"no nonzero term below {format_rat(a.known_below)}", reason="undetermined"
        )
    settings = _settings()
    cap = as_rat(precision_cap) if precision_cap is not None else settings.precision_cap
    prec = max(a.known_below, settings.initial_precision)
    while True:
        expanded = a.expand(prec)
        if expanded.terms:
            return expanded.terms[0][0]
        if expanded.is_exact():
            raise ZeroOrUndetermined("stream ended without a nonzero term", reason="zero")
        if prec >= cap:
            raise ZeroOrUndetermined(
                f"no nonzero term below the cap {format_rat(cap)}", reason="undetermined"
            )
        prec = next_precision(prec, cap)


def reciprocal(a: HahnSeries, precision: RatLike) -> HahnSeries:
    """1/a known below ``precision`` (exact when a is a monomial)."""
    prec = as_rat(precision)
    if a.is_zero():
        raise ZeroDivision("reciprocal of the zero series")
    try:
        v = valuation(a)
    except ZeroOrUndetermined as exc:
        if exc.reason == "zero":
            raise ZeroDivision("reciprocal of the zero series") from exc
        raise
    if a.tail is not None:
        a = a.expand(prec + 2 * v)
    lead = a.coefficient(v)
    inv_lead = lead.inverse()
    # a = lead * t^v * (1 + r) with nu(r) > 0
    r = a.shift(-v).scale(inv_lead) - 1
    if r.is_zero():
        return HahnSeries.monomial(-v, inv_lead)
    rel = prec + v
    total = HahnSeries.one()
    power = HahnSeries.one()
    while True:
        power = (power * (-r)).truncate(rel)
        if not power.terms:
            if power.known_below is not None:
                total = total + HahnSeries((), power.known_below)
            break
        total = total + power
    result = total.shift(-v).scale(inv_lead)
    if result.is_exact():
        return result
    return result.truncate(prec)


def power(a: HahnSeries, n: int) -> HahnSeries:
    return a**n


def cutoff(a: HahnSeries, u: RatLike) -> Tuple[HahnSeries, HahnSeries]:
    """Split a into (sum over s >= u, sum over s < u).

    The lower part is finite and exact; the upper part keeps a's precision
    and, for streamed series, a filtered tail.
    """
    bound = as_rat(u)
    if a.known_below is not None and a.known_below < bound:
        if a.tail is None:
            raise InsufficientPrecision(
                f"cutoff at {format_rat(bound)} needs terms known below it, "
                f"have {format_rat(a.known_below)}"
            )
        a = a.expand(bound)
    lower = HahnSeries([(e, c) for e, c in a.terms if e < bound])
    upper_tail = a.tail.filtered(bound) if a.tail is not None else None
    upper = HahnSeries([(e, c) for e, c in a.terms if e >= bound], a.known_below, upper_tail)
    return upper, lower


def has_cutoff_property(series_list: Sequence[HahnSeries], u: RatLike) -> bool:
    """Whether the span of ``series_list`` is closed under cutting off below u.

    Cutoff is linear, so checking the members is enough.  Truncated members
    are compared on their common known prefix.
    """
    from src.utils.linalg import in_span

    bound = as_rat(u)
    common = _min_bound(*(s.known_below for s in series_list))
    if common is not None and common <= bound:
        raise InsufficientPrecision(
            f"family known only below {format_rat(common)}, cutoff at {format_rat(bound)}"
        )
    family = [s.truncate(common) if common is not None else s.without_tail() for s in series_list]
    exponents = sorted({e for s in family for e in s.support()})

    def coordinates(s: HahnSeries) -> List[FieldElem]:
        coeffs = dict(s.terms)
        return [coeffs.get(e, as_field_elem(0)) for e in exponents]

    vectors = [coordinates(s) for s in family]
    return all(in_span(vectors, coordinates(cutoff(s, bound)[0])) for s in family)


class AdmissiblePair:
    """Increasing exponents s_1 < s_2 < ... with nested prefixes alpha_i.

    Either finite lists (optionally extended constantly past the last entry)
    or a ``rule`` producing an unbounded sequence of ``(s_i, alpha_i)``.
    """

    def __init__(
        self,
        steps: Sequence[RatLike] = (),
        prefixes: Sequence[HahnSeries] = (),
        extend_constantly: bool = False,
        rule: Optional[Callable[[], Iterator[Tuple[RatLike, HahnSeries]]]] = None,
    ) -> None:
        if rule is None and len(steps) != len(prefixes):
            raise InvalidPair("steps and prefixes must have the same length")
        if rule is None and not steps:
            raise InvalidPair("an admissible pair needs at least one step")
        self.steps = tuple(as_rat(s) for s in steps)
        self.prefixes = tuple(prefixes)
        self.extend_constantly = extend_constantly
        self.rule = rule

    def is_finite(self) -> bool:
        return self.rule is None

    def pairs(self) -> Iterator[Tuple[Fraction, HahnSeries]]:
        if self.rule is None:
            return iter(zip(self.steps, self.prefixes))
        return ((as_rat(s), p) for s, p in self.rule())

    def validate(self, limit: Optional[int] = None) -> None:
        for _ in _checked_increments(self.pairs(), limit):
            pass


def _checked_increments(
    pairs: Iterator[Tuple[Fraction, HahnSeries]],
    limit: Optional[int] = None,
) -> Iterator[Tuple[Fraction, HahnSeries]]:
    """Yield (s_i, alpha_i - alpha_{i-1}) after checking the nesting conditions."""
    prev_s: Bound = None
    prev_alpha = HahnSeries()
    for index, (s, alpha) in enumerate(pairs):
        if limit is not None and index >= limit:
            return
        if not alpha.is_exact():
            raise InvalidPair(f"prefix {index + 1} is not a finite series")
        if prev_s is not None and s <= prev_s:
            raise InvalidPair(f"steps not increasing at index {index + 1}")
        if any(e < 0 or e >= s for e in alpha.support()):
            raise InvalidPair(f"supp(alpha_{index + 1}) is not inside [0, {format_rat(s)})")
        increment = alpha - prev_alpha
        low = prev_s if prev_s is not None else Fraction(0)
        if any(e < low or e >= s for e in increment.support()):
            raise InvalidPair(
                f"alpha_{index + 1} - alpha_{index} is not supported in [{format_rat(low)}, {format_rat(s)})"
            )
        yield s, increment
        prev_s, prev_alpha = s, alpha


def limit_of_pair(pair: AdmissiblePair, precision: Optional[RatLike] = None) -> HahnSeries:
    """The series whose truncations below each s_i are the alpha_i."""
    if pair.is_finite():
        last_s = pair.steps[-1]
        alpha = HahnSeries()
        for _, increment in _checked_increments(pair.pairs()):
            alpha = alpha + increment
        if pair.extend_constantly:
            return alpha
        return HahnSeries(alpha.terms, last_s)

    def rule() -> Iterator[Term]:
        for _, increment in _checked_increments(pair.pairs()):
            yield from increment.terms

    stream = TermStream(rule, name="limit_of_pair")
    prec = as_rat(precision) if precision is not None else _settings().initial_precision
    return HahnSeries.from_stream(stream, prec)


def admissible_pair_of(alpha: HahnSeries) -> AdmissiblePair:
    """Canonical pair of alpha: s_i the i-th support element, alpha_i the prefix before it."""
    if alpha.is_exact():
        if not alpha.terms:
            return AdmissiblePair([1], [HahnSeries()], extend_constantly=True)
        steps, prefixes = [], []
        for i, (e, _) in enumerate(alpha.terms):
            steps.append(e)
            prefixes.append(HahnSeries(alpha.terms[:i]))
        steps.append(alpha.terms[-1][0] + 1)
        prefixes.append(HahnSeries(alpha.terms))
        return AdmissiblePair(steps, prefixes, extend_constantly=True)
    if alpha.tail is None:
        raise InsufficientPrecision("a truncated series does not determine its admissible pair")
    stream = alpha.tail

    def rule() -> Iterator[Tuple[Fraction, HahnSeries]]:
        seen: List[Term] = []
        for e, c in iter(stream):
            yield e, HahnSeries(seen)
            seen.append((e, c))

    return AdmissiblePair(rule=rule)
