"""
Sparse Laurent polynomials over cyclotomic fields.

``LaurentPoly`` keeps a map from exponent tuples to nonzero coefficients and
the names of its generators.  The classification works in k[t, t^-1, y]
(generators ``("t", "y")``); curves use ``("x", "y")`` and the non-extending
constructions any list of names.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from src.errors import ZeroDivision, ZeroInput, ZeroOrUndetermined
from src.fields import upoly as up
from src.fields.cyclotomic import CycloField, FieldElem, Scalar, as_field_elem, field_of
from src.fields.rational import RatLike, as_rat
from src.fields.text import format_power, format_term, join_terms
from src.series.hahn import HahnSeries, reciprocal, valuation

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
DEFAULT_GENS: Tuple[str, ...] = ("t", "y")

_ZERO = as_field_elem(0)
_ONE = as_field_elem(1)


class LaurentPoly:
    """Immutable element of k[x_1^(+-1), ..., x_n^(+-1)]."""

    __slots__ = ("gens", "terms")

    def __init__(
        self,
        terms: Optional[Mapping[Sequence[int], Scalar]] = None,
        gens: Sequence[str] = DEFAULT_GENS,
    ) -> None:
        self.gens: Tuple[str, ...] = tuple(gens)
        if len(set(self.gens)) != len(self.gens):
            raise ValueError(f"duplicate generator names in {self.gens}")
        cleaned: Dict[Monomial, FieldElem] = {}
        for mono, coeff in (terms or {}).items():
            key = tuple(int(e) for e in mono)
            if len(key) != len(self.gens):
                raise ValueError(f"monomial {key} does not match generators {self.gens}")
            c = as_field_elem(coeff)
            if c:
                cleaned[key] = c
        self.terms: Dict[Monomial, FieldElem] = dict(sorted(cleaned.items()))

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, gens: Sequence[str] = DEFAULT_GENS) -> "LaurentPoly":
        return cls({}, gens)

    @classmethod
    def constant(cls, value: Scalar, gens: Sequence[str] = DEFAULT_GENS) -> "LaurentPoly":
        return cls({(0,) * len(gens): value}, gens)

    @classmethod
    def monomial(
        cls,
        exponents: Sequence[int],
        coeff: Scalar = 1,
        gens: Sequence[str] = DEFAULT_GENS,
    ) -> "LaurentPoly":
        return cls({tuple(exponents): coeff}, gens)

    @classmethod
    def gen(cls, name: str, gens: Sequence[str] = DEFAULT_GENS, power: int = 1) -> "LaurentPoly":
        gens = tuple(gens)
        if name not in gens:
            raise ValueError(f"{name!r} is not one of {gens}")
        return cls.monomial(tuple(power if g == name else 0 for g in gens), 1, gens)

    # -- inspection -------------------------------------------------------

    def index(self, var: str) -> int:
        try:
            return self.gens.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not one of {self.gens}") from None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> FieldElem:
        return self.terms.get((0,) * len(self.gens), _ZERO)

    def degree(self, var: str) -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial."""
        i = self.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def min_degree(self, var: str) -> int:
        """Smallest exponent of ``var``; 0 for the zero polynomial."""
        i = self.index(var)
        return min((m[i] for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_polynomial(self, variables: Optional[Iterable[str]] = None) -> bool:
        """No negative exponents in ``variables`` (all generators by default)."""
        idx = [self.index(v) for v in (variables or self.gens)]
        return all(m[i] >= 0 for m in self.terms for i in idx)

    def field(self) -> CycloField:
        return field_of(self.terms.values())

    def coefficients(self, var: str) -> Dict[int, "LaurentPoly"]:
        """Split into ``{k: c_k}`` with f = sum c_k var^k and var absent from c_k."""
        i = self.index(var)
        parts: Dict[int, Dict[Monomial, FieldElem]] = {}
        for mono, c in self.terms.items():
            rest = mono[:i] + (0,) + mono[i + 1 :]
            parts.setdefault(mono[i], {})[rest] = c
        return {k: LaurentPoly(v, self.gens) for k, v in sorted(parts.items())}

    def leading_coefficient(self, var: str) -> "LaurentPoly":
        if not self.terms:
            return LaurentPoly.zero(self.gens)
        return self.coefficients(var)[self.degree(var)]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: object) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.gens != self.gens:
                raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Fraction, FieldElem)) and not isinstance(other, bool):
            return LaurentPoly.constant(other, self.gens)
        return NotImplemented

    def __add__(self, other: object) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            acc[mono] = acc[mono] + c if mono in acc else c
        return LaurentPoly(acc, self.gens)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()}, self.gens)

    def __sub__(self, other: object) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: Dict[Monomial, FieldElem] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                acc[mono] = acc[mono] + prod if mono in acc else prod
        return LaurentPoly(acc, self.gens)

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse_monomial(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ZeroDivision(f"{self} is not an invertible monomial")
        (mono, c), = self.terms.items()
        return LaurentPoly({tuple(-e for e in mono): c.inverse()}, self.gens)

    def __truediv__(self, other: object) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse_monomial()

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse_monomial()
        n = abs(n)
        result = LaurentPoly.constant(1, self.gens)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, coeff: Scalar) -> "LaurentPoly":
        c = as_field_elem(coeff)
        return LaurentPoly({m: v * c for m, v in self.terms.items()}, self.gens)

    def shift(self, var: str, k: int) -> "LaurentPoly":
        """Multiply by var^k."""
        i = self.index(var)
        return LaurentPoly(
            {m[:i] + (m[i] + k,) + m[i + 1 :]: c for m, c in self.terms.items()}, self.gens
        )

    def diff(self, var: str) -> "LaurentPoly":
        """Partial derivative with respect to ``var``."""
        i = self.index(var)
        acc: Dict[Monomial, FieldElem] = {}
        for m, c in self.terms.items():
            if m[i]:
                acc[m[:i] + (m[i] - 1,) + m[i + 1 :]] = c * m[i]
        return LaurentPoly(acc, self.gens)

    # -- evaluation and substitution -------------------------------------

    def evaluate(self, point: Mapping[str, Scalar]) -> FieldElem:
        """Value at a point of k^n (generators with negative exponents must be nonzero)."""
        values = [as_field_elem(point[g]) for g in self.gens]
        acc = _ZERO
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(values, mono):
                if e:
                    term = term * v**e
            acc = acc + term
        return acc

    def substitute(
        self,
        images: Mapping[str, Union["LaurentPoly", Scalar]],
        gens: Optional[Sequence[str]] = None,
    ) -> "LaurentPoly":
        """Replace generators by polynomials in ``gens`` (defaults to ours).

        Generators without an image must also be generators of the target.
        Negative powers need monomial images.
        """
        target = tuple(gens) if gens is not None else self.gens
        lifted: List[LaurentPoly] = []
        for g in self.gens:
            if g in images:
                image = images[g]
                if isinstance(image, LaurentPoly):
                    if image.gens != target:
                        image = image.with_gens(target)
                    lifted.append(image)
                else:
                    lifted.append(LaurentPoly.constant(image, target))
            else:
                lifted.append(LaurentPoly.gen(g, target))
        result = LaurentPoly.zero(target)
        powers: Dict[Tuple[int, int], LaurentPoly] = {}
        for mono, c in self.terms.items():
            term = LaurentPoly.constant(c, target)
            for i, e in enumerate(mono):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = lifted[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def with_gens(self, gens: Sequence[str]) -> "LaurentPoly":
        """Same polynomial over a larger (or reordered) generator list."""
        gens = tuple(gens)
        missing = [g for m in self.terms for g, e in zip(self.gens, m) if e and g not in gens]
        if missing:
            raise ValueError(f"generators {sorted(set(missing))} are not in {gens}")
        idx = {g: i for i, g in enumerate(self.gens)}
        return LaurentPoly(
            {tuple(m[idx[g]] if g in idx else 0 for g in gens): c for m, c in self.terms.items()},
            gens,
        )

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        return LaurentPoly(self.terms, tuple(mapping.get(g, g) for g in self.gens))

    # -- comparison and text ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, FieldElem)) and not isinstance(other, bool):
            other = LaurentPoly.constant(other, self.gens)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.gens, tuple(self.terms.items())))

    def __iter__(self) -> Iterator[Tuple[Monomial, FieldElem]]:
        return iter(self.terms.items())

    def _monomial_text(self, mono: Monomial) -> str:
        return "*".join(format_power(g, Fraction(e)) for g, e in zip(self.gens, mono) if e)

    def __str__(self) -> str:
        order = sorted(self.terms, key=lambda m: tuple(reversed(m)), reverse=True)
        return join_terms(format_term(self.terms[m], self._monomial_text(m)) for m in order)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, gens={self.gens})"


# -- the automorphisms of the classification ------------------------------


@dataclass(frozen=True)
class Automorphism:
    """t -> t^-1 (when ``swap``) followed by y -> t^-twist * y.

    Concretely sigma(f)(t, y) = f(t^-1, t^-twist y) with swap and
    f(t, t^-twist y) without.  With swap it is an involution.
    """

    swap: bool = False
    twist: int = 0

    def is_identity(self) -> bool:
        return not self.swap and self.twist == 0

    def inverse(self) -> "Automorphism":
        if self.swap:
            return self
        return Automorphism(False, -self.twist)

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        if self.is_identity():
            return f
        t = LaurentPoly.gen("t", f.gens)
        y = LaurentPoly.gen("y", f.gens)
        return f.substitute({"t": t ** (-1) if self.swap else t, "y": t ** (-self.twist) * y})

    def __str__(self) -> str:
        parts = (["swap"] if self.swap else []) + ([f"twist {self.twist}"] if self.twist else [])
        return ", ".join(parts) or "id"


def apply_automorphism(sigma: Automorphism, f: LaurentPoly) -> LaurentPoly:
    return sigma.apply(f)


# -- evaluation into Hahn series -----------------------------------------


def _t_series(c: LaurentPoly, var: str = "t") -> HahnSeries:
    """Exact series of a polynomial in ``var`` alone."""
    i = c.index(var)
    return HahnSeries.from_dict({Fraction(m[i]): v for m, v in c.terms.items()})


def y_coefficient_series(f: LaurentPoly, t: str = "t", y: str = "y") -> List[HahnSeries]:
    """Coefficients f_0, ..., f_n of f as a polynomial in y, as exact series in t."""
    coeffs = f.coefficients(y)
    if any(k < 0 for k in coeffs):
        raise ValueError(f"{f} has negative powers of {y}")
    n = max(coeffs, default=-1)
    return [_t_series(coeffs[k], t) if k in coeffs else HahnSeries() for k in range(n + 1)]


def evaluate_y(f: LaurentPoly, alpha: HahnSeries) -> HahnSeries:
    """f(t, alpha) by Horner's rule in y."""
    coeffs = y_coefficient_series(f)
    acc = HahnSeries()
    for c in reversed(coeffs):
        acc = acc * alpha + c
    return acc


def evaluate_t(f: LaurentPoly, alpha: HahnSeries, precision: Optional[RatLike] = None) -> HahnSeries:
    """f(alpha(u), u^-1), a series in u.

    Negative powers of t go through ``reciprocal``; ``precision`` is the
    exponent up to which the result should be known (settings default).

    Raises:
        ZeroDivision: f has negative t-exponents and alpha is not a unit.
    """
    from src.utils.config import get_settings

    prec = as_rat(precision) if precision is not None else get_settings().initial_precision
    by_t = f.coefficients("t")
    deg_y = max(0, f.degree("y"))
    inverse: Optional[HahnSeries] = None
    if any(k < 0 for k in by_t):
        try:
            v = valuation(alpha)
        except ZeroOrUndetermined as exc:
            raise ZeroDivision(f"t := {alpha} is not invertible") from exc
        if v != 0:
            raise ZeroDivision(f"t := {alpha} is not a unit (valuation {v})")
        inverse = reciprocal(alpha, prec + deg_y)
    yi = f.index("y")
    acc = HahnSeries()
    for k, coeff in by_t.items():
        # coeff is a polynomial in y; y := u^-1
        y_part = HahnSeries.from_dict({Fraction(-m[yi]): c for m, c in coeff.terms.items()})
        power = alpha**k if k >= 0 else inverse ** (-k)
        acc = acc + power * y_part
    return acc


def gauss_valuation(f: Union[LaurentPoly, Sequence[HahnSeries]]) -> Fraction:
    """min over i of nu(f_i) for f = sum f_i y^i.

    Raises:
        ZeroInput: f is zero.
    """
    coeffs = y_coefficient_series(f) if isinstance(f, LaurentPoly) else list(f)
    values = []
    for c in coeffs:
        try:
            values.append(valuation(c))
        except ZeroOrUndetermined as exc:
            if exc.reason != "zero":
                raise
    if not values:
        raise ZeroInput("Gauss valuation of the zero polynomial")
    return min(values)


# -- polynomials in y over k[t] ------------------------------------------


def clear_t_denominator(f: LaurentPoly, t: str = "t") -> LaurentPoly:
    """t^m f with the smallest m making every t-exponent nonnegative."""
    low = f.min_degree(t)
    return f.shift(t, -low) if low < 0 else f


def _to_upoly(c: LaurentPoly, t: str) -> up.UPoly:
    i = c.index(t)
    coeffs: Dict[int, FieldElem] = {m[i]: v for m, v in c.terms.items()}
    if any(k < 0 for k in coeffs):
        raise ValueError(f"{c} has negative powers of {t}")
    return up.upoly(coeffs.get(k, _ZERO) for k in range(max(coeffs, default=-1) + 1))


def _from_upoly(p: up.UPoly, t: str, gens: Sequence[str]) -> LaurentPoly:
    i = tuple(gens).index(t)
    n = len(gens)
    return LaurentPoly(
        {tuple(k if j == i else 0 for j in range(n)): c for k, c in enumerate(p)}, gens
    )


def content(f: LaurentPoly, t: str = "t", y: str = "y") -> up.UPoly:
    """Monic gcd in k[t] of the y-coefficients of a polynomial f."""
    g: up.UPoly = ()
    for c in f.coefficients(y).values():
        g = up.gcd(g, _to_upoly(c, t)) if g else up.monic(_to_upoly(c, t))
        if len(g) == 1:
            break
    return g


def primitive_part(f: LaurentPoly, t: str = "t", y: str = "y") -> LaurentPoly:
    """f divided by its t-content, after clearing t-denominators."""
    if f.is_zero():
        return f
    f = clear_t_denominator(f, t)
    g = content(f, t, y)
    if len(g) == 1:
        return f.scale(g[0].inverse())
    acc = LaurentPoly.zero(f.gens)
    for k, c in f.coefficients(y).items():
        q, r = up.divmod_(_to_upoly(c, t), g)
        if r:
            raise ArithmeticError("content does not divide a coefficient")
        acc = acc + _from_upoly(q, t, f.gens).shift(y, k)
    return acc


def pseudo_divmod(
    f: LaurentPoly, m: LaurentPoly, y: str = "y"
) -> Tuple[LaurentPoly, LaurentPoly, int]:
    """lc(m)^e f = q m + r with deg_y r < deg_y m; returns (q, r, e)."""
    if m.is_zero():
        raise ZeroInput("pseudo-division by zero")
    dm = m.degree(y)
    lc = m.leading_coefficient(y)
    q = LaurentPoly.zero(f.gens)
    r = f
    e = 0
    while not r.is_zero() and r.degree(y) >= dm:
        d = r.degree(y)
        lr = r.leading_coefficient(y).shift(y, d - dm)
        q = q * lc + lr
        r = r * lc - lr * m
        e += 1
    return q, r, e


def prem(f: LaurentPoly, m: LaurentPoly, y: str = "y") -> LaurentPoly:
    """Pseudo-remainder of f by m with respect to y."""
    return pseudo_divmod(f, m, y)[1]


def divides_over_fraction_field(m: LaurentPoly, f: LaurentPoly, y: str = "y") -> bool:
    """m | f in k(t)[y]."""
    return prem(f, m, y).is_zero()


def reduces_to_zero_modulo(f: LaurentPoly, g: LaurentPoly, y: str = "y", x: str = "x") -> bool:
    """f lies in the principal ideal (g) of k[x, y].

    Assumes g is primitive as a polynomial in y over k[x], which holds for the
    irreducible curve equations this is used with.
    """
    if f.is_zero():
        return True
    if len(content(g, x, y)) != 1:
        raise ValueError(f"{g} is not primitive in {y}")
    return prem(f, g, y).is_zero()


def gcd_over_fraction_field(f: LaurentPoly, g: LaurentPoly, t: str = "t", y: str = "y") -> LaurentPoly:
    """Primitive gcd in k(t)[y] (defined up to units of k(t))."""
    a, b = primitive_part(f, t, y), primitive_part(g, t, y)
    if a.degree(y) < b.degree(y):
        a, b = b, a
    while not b.is_zero():
        if b.degree(y) == 0:
            return LaurentPoly.constant(1, f.gens)
        r = prem(a, b, y)
        a, b = b, primitive_part(r, t, y)
    return a


def quotient_over_fraction_field(f: LaurentPoly, g: LaurentPoly, t: str = "t", y: str = "y") -> LaurentPoly:
    """Primitive representative of f / g in k(t)[y]; g must divide f there."""
    q, r, _ = pseudo_divmod(f, g, y)
    if not r.is_zero():
        raise ArithmeticError(f"{g} does not divide {f}")
    return primitive_part(q, t, y)


def squarefree_decomposition(
    f: LaurentPoly, t: str = "t", y: str = "y"
) -> List[Tuple[LaurentPoly, int]]:
    """Factors a_i (primitive, squarefree, pairwise coprime) with f ~ prod a_i^i over k(t).

    Uses repeated gcds with the y-derivative, which only needs the
    quantities up to units of k(t).
    """
    if f.is_zero():
        raise ZeroInput("squarefree decomposition of zero")
    a = primitive_part(f, t, y)
    if a.degree(y) <= 0:
        return []
    g = gcd_over_fraction_field(a, a.diff(y), t, y)
    w = quotient_over_fraction_field(a, g, t, y)
    factors: List[Tuple[LaurentPoly, int]] = []
    i = 1
    while w.degree(y) > 0:
        common = gcd_over_fraction_field(w, g, t, y)
        z = quotient_over_fraction_field(w, common, t, y)
        if z.degree(y) > 0:
            factors.append((z, i))
        i += 1
        w = common
        if g.degree(y) > 0:
            g = quotient_over_fraction_field(g, common, t, y)
    logger.debug("squarefree decomposition of %s: multiplicities %s", f, [k for _, k in factors])
    return factors
