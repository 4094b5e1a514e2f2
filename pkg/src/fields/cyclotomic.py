"""
Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as its residue modulo the N-th cyclotomic polynomial,
a tuple of ``phi(N)`` Fractions (constant term first).  Elements that happen
to be rational are always stored over Q itself (conductor 1), which makes
equality across fields a matter of lifting to a common conductor.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import sympy
from sympy import Poly, QQ, Rational, cyclotomic_poly, factorint

from src.errors import ConductorMismatch, ZeroDivision
from src.fields.rational import format_rat

_X = sympy.Symbol("x")

Scalar = Union[int, Fraction, "FieldElem"]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _normalized_trace(conductor: int, k: int) -> Fraction:
    # Tr(zeta_N^k) / phi(N) = mu(m) / phi(m) with m = N / gcd(N, k)
    m = conductor // gcd(conductor, k)
    factors = factorint(m)
    if any(e > 1 for e in factors.values()):
        return Fraction(0)
    mu = -1 if len(factors) % 2 else 1
    totient = 1
    for p in factors:
        totient *= int(p) - 1
    return Fraction(mu, totient)


def to_sympy_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def from_sympy_rational(value) -> Fraction:
    return Fraction(str(value))


class CycloField:
    """The field Q(zeta_N) with zeta_N = exp(2 pi i / N)."""

    def __init__(self, conductor: int) -> None:
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        self.conductor = conductor
        phi = Poly(cyclotomic_poly(conductor, _X), _X, domain=QQ)
        self.modulus_poly = phi
        self.modulus: Tuple[Fraction, ...] = tuple(
            from_sympy_rational(c) for c in reversed(phi.all_coeffs())
        )
        self.degree = len(self.modulus) - 1
        self._trace_weights = tuple(_normalized_trace(conductor, k) for k in range(self.degree))
        self._zeta_powers: Dict[int, Tuple[Fraction, ...]] = {}

    @classmethod
    def of(cls, conductor: int) -> "CycloField":
        return _field_cache(conductor)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycloField) and other.conductor == self.conductor

    def __hash__(self) -> int:
        return hash(("CycloField", self.conductor))

    def __repr__(self) -> str:
        return f"CycloField({self.conductor})"

    def __str__(self) -> str:
        return "Q" if self.conductor == 1 else f"Q(zeta_{self.conductor})"

    # -- construction -----------------------------------------------------

    def reduce(self, coords: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        c = [Fraction(v) for v in coords]
        d = self.degree
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead:
                c[k] = Fraction(0)
                for i in range(d):
                    if self.modulus[i]:
                        c[k - d + i] -= lead * self.modulus[i]
        c = c[:d]
        c.extend([Fraction(0)] * (d - len(c)))
        return tuple(c)

    def element(self, coords: Sequence[Fraction]) -> "FieldElem":
        """Canonical element from a (possibly unreduced) coordinate list."""
        reduced = self.reduce(coords)
        if self.conductor != 1 and not any(reduced[1:]):
            return FieldElem(RATIONALS, (reduced[0],))
        return FieldElem(self, reduced)

    def rational(self, value: Union[int, Fraction]) -> "FieldElem":
        return FieldElem(RATIONALS, (Fraction(value),))

    def zero(self) -> "FieldElem":
        return FieldElem(RATIONALS, (Fraction(0),))

    def one(self) -> "FieldElem":
        return FieldElem(RATIONALS, (Fraction(1),))

    def zeta(self) -> "FieldElem":
        return self.element([Fraction(0), Fraction(1)])

    def zeta_power(self, exponent: int) -> Tuple[Fraction, ...]:
        exponent %= self.conductor
        cached = self._zeta_powers.get(exponent)
        if cached is None:
            cached = self.reduce([Fraction(0)] * exponent + [Fraction(1)])
            self._zeta_powers[exponent] = cached
        return cached

    def contains(self, other: "CycloField") -> bool:
        return self.conductor % other.conductor == 0

    def lift(self, value: Scalar) -> "FieldElem":
        """Embed ``value`` (a rational or an element of a subfield) into this field."""
        if not isinstance(value, FieldElem):
            return self.rational(Fraction(value))
        source = value.field
        if source.conductor == 1 or source == self:
            return value
        if self.conductor % source.conductor:
            raise ConductorMismatch(f"{value} from {source} does not embed into {self}")
        step = self.conductor // source.conductor
        acc = [Fraction(0)] * self.degree
        for k, coeff in enumerate(value.coords):
            if coeff:
                power = self.zeta_power(k * step)
                for i, p in enumerate(power):
                    if p:
                        acc[i] += coeff * p
        return FieldElem(self, tuple(acc))

    def join(self, other: "CycloField") -> "CycloField":
        """Smallest cyclotomic field of this family containing both."""
        if self.contains(other):
            return self
        if other.contains(self):
            return other
        return CycloField.of(_lcm(self.conductor, other.conductor))


@lru_cache(maxsize=None)
def _field_cache(conductor: int) -> CycloField:
    return CycloField(conductor)


class FieldElem:
    """Immutable element of some Q(zeta_N)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CycloField, coords: Tuple[Fraction, ...]) -> None:
        self.field = field
        self.coords = coords

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def coerce(value: Scalar) -> "FieldElem":
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return FieldElem(RATIONALS, (Fraction(value),))
        raise TypeError(f"cannot use {value!r} as a field element")

    def _common(self, other: Scalar) -> Tuple["FieldElem", "FieldElem"]:
        # Rationals are left alone; the operators treat them as scalars.
        other = FieldElem.coerce(other)
        if self.field == other.field or self.field.conductor == 1 or other.field.conductor == 1:
            return self, other
        target = self.field.join(other.field)
        return target.lift(self), target.lift(other)

    def is_rational(self) -> bool:
        return self.field.conductor == 1

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Scalar) -> "FieldElem":
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if a.field.conductor == 1:
            a, b = b, a
        if b.field.conductor == 1:
            if a.field.conductor == 1:
                return FieldElem(RATIONALS, (a.coords[0] + b.coords[0],))
            coords = list(a.coords)
            coords[0] += b.coords[0]
            return FieldElem(a.field, tuple(coords))
        return a.field.element([x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, tuple(-c for c in self.coords))

    def __sub__(self, other: Scalar) -> "FieldElem":
        try:
            other = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "FieldElem":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "FieldElem":
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if a.field.conductor == 1:
            a, b = b, a
        if b.field.conductor == 1:
            r = b.coords[0]
            if a.field.conductor == 1:
                return FieldElem(RATIONALS, (a.coords[0] * r,))
            if not r:
                return FieldElem(RATIONALS, (Fraction(0),))
            return FieldElem(a.field, tuple(c * r for c in a.coords))
        prod = [Fraction(0)] * (2 * a.field.degree - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return a.field.element(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self:
            raise ZeroDivision("inverse of zero field element")
        if self.field.conductor == 1:
            return FieldElem(RATIONALS, (1 / self.coords[0],))
        poly = Poly([to_sympy_rational(c) for c in reversed(self.coords)], _X, domain=QQ)
        inv = poly.invert(self.field.modulus_poly)
        coeffs = [from_sympy_rational(c) for c in reversed(inv.all_coeffs())]
        return self.field.element(coeffs)

    def __truediv__(self, other: Scalar) -> "FieldElem":
        try:
            other = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "FieldElem":
        return FieldElem.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElem":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        n = abs(exponent)
        result = FieldElem(RATIONALS, (Fraction(1),))
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (FieldElem, int, Fraction)) or isinstance(other, bool):
            return NotImplemented
        a, b = self._common(other)  # type: ignore[arg-type]
        return a.field == b.field and a.coords == b.coords

    def __hash__(self) -> int:
        if self.field.conductor == 1:
            return hash(self.coords[0])
        trace = sum((c * w for c, w in zip(self.coords, self.field._trace_weights)), Fraction(0))
        return hash(("cyclo", trace))

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if self.field.conductor == 1:
            return format_rat(self.coords[0])
        parts: List[str] = []
        for k in range(len(self.coords) - 1, -1, -1):
            c = self.coords[k]
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rat(mag)}*{mono}"
            else:
                body = format_rat(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"FieldElem({self}, N={self.field.conductor})"

    def needs_parentheses(self) -> bool:
        """True when printing as a product factor needs brackets."""
        return sum(1 for c in self.coords if c) > 1


RATIONALS = CycloField.of(1)


def as_field_elem(value: Scalar) -> FieldElem:
    return FieldElem.coerce(value)


def root_of_unity(n: int, field: CycloField) -> FieldElem:
    """Primitive n-th root of unity inside ``field``."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return field.one()
    if n == 2:
        return field.rational(-1)
    N = field.conductor
    if N % n == 0:
        return field.element(list(field.zeta_power(N // n)))
    if N % 2 == 1 and (2 * N) % n == 0:
        # -zeta_N is a primitive 2N-th root of unity
        return (-field.zeta()) ** ((2 * N) // n)
    raise ConductorMismatch(f"no primitive {n}-th root of unity in {field}")


def multiplicative_order(value: FieldElem, bound: int) -> int:
    """Order of ``value`` if it is a root of unity of order at most ``bound``, else 0."""
    power = value
    for k in range(1, bound + 1):
        if power == 1:
            return k
        power = power * value
    return 0


def field_of(values: Iterable[Scalar], base: CycloField = None) -> CycloField:
    """Smallest field of the family containing ``base`` and all values."""
    field = base or RATIONALS
    for v in values:
        if isinstance(v, FieldElem):
            field = field.join(v.field)
    return field
