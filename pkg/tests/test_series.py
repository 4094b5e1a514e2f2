"""
Unit tests for Hahn series, term streams and admissible pairs
"""

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import InsufficientPrecision, InvalidPair, ZeroDivision, ZeroOrUndetermined
from src.series import (
    AdmissiblePair,
    HahnSeries,
    TermStream,
    admissible_pair_of,
    cutoff,
    has_cutoff_property,
    limit_of_pair,
    make_stream,
    reciprocal,
    valuation,
)


def t(exponent, coeff=1):
    return HahnSeries.monomial(Fraction(exponent), coeff)


half = Fraction(1, 2)


class TestHahnArithmetic:
    """Test exact series arithmetic"""

    def test_valuation(self):
        assert valuation(HahnSeries.one()) == 0
        assert valuation(t(half) + t(1)) == half
        assert valuation((1 + t(half)) * (1 - t(half))) == 0

    def test_valuation_of_zero(self):
        with pytest.raises(ZeroOrUndetermined) as info:
            valuation(HahnSeries())
        assert info.value.reason == "zero"

    def test_valuation_of_truncated_zero_prefix(self):
        with pytest.raises(ZeroOrUndetermined) as info:
            valuation(HahnSeries((), known_below=3))
        assert info.value.reason == "undetermined"

    def test_products(self):
        assert t(half) * t(half) == t(1)
        assert (1 + t(half)) * (1 - t(half)) == 1 - t(1)
        assert t(half) * HahnSeries() == HahnSeries()

    def test_terms_must_increase(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            HahnSeries([(1, 1), (half, 1)])

    def test_truncated_product_precision(self):
        a = HahnSeries([(0, 1)], known_below=2)
        product = a * t(1)
        assert product.known_below == 3
        assert product.terms == ((Fraction(1), as_one()),)

    def test_to_string(self):
        assert t(half).to_string() == "t^(1/2)"
        assert (1 - t(1, Fraction(1, 8))).to_string("u") == "1 - 1/8*u"
        assert HahnSeries([(0, 1)], known_below=4).to_string() == "1 + O(t^4)"


def as_one():
    return HahnSeries.one().terms[0][1]


class TestReciprocal:
    """Test 1/a to a precision"""

    def test_geometric_series(self):
        inverse = reciprocal(1 - t(1), 3)
        assert inverse == HahnSeries([(0, 1), (1, 1), (2, 1)], known_below=3)

    def test_monomial_is_exact(self):
        assert reciprocal(t(half), 5) == t(-half)

    def test_one_plus_u(self):
        inverse = reciprocal(1 + t(1), 3)
        assert inverse == HahnSeries([(0, 1), (1, -1), (2, 1)], known_below=3)
        assert ((1 + t(1)) * inverse).truncate(3) == HahnSeries([(0, 1)], known_below=3)

    def test_reciprocal_of_zero(self):
        with pytest.raises(ZeroDivision):
            reciprocal(HahnSeries(), 2)


class TestCutoff:
    """Test the cutoff split and the cutoff property"""

    def test_cutoff_examples(self):
        upper, lower = cutoff(t(half) + t(1) + t(2), 1)
        assert upper == t(1) + t(2)
        assert lower == t(half)
        a = 1 + t(Fraction(1, 3)) + t(Fraction(2, 3))
        assert cutoff(a, half)[0] == t(Fraction(2, 3))

    def test_cutoff_at_zero_keeps_series(self):
        a = 1 + t(half)
        assert cutoff(a, 0)[0] == a

    def test_cutoff_beyond_precision(self):
        with pytest.raises(InsufficientPrecision):
            cutoff(HahnSeries([(0, 1)], known_below=1), 2)

    def test_cutoff_property(self):
        family = [1 + t(1), t(1), t(2)]
        assert has_cutoff_property(family, 1)
        assert not has_cutoff_property([1 + t(1)], 1)


class TestStreams:
    """Test named term streams"""

    def test_integers_stream(self):
        series = HahnSeries.from_stream(make_stream("integers"), 4)
        assert series.support() == (1, 2, 3)
        assert series.known_below == 4

    def test_geometric_gap_exponents(self):
        stream = make_stream("geometric_gap")
        series = HahnSeries.from_stream(stream, 3)
        assert series.support() == (Fraction(3, 2), Fraction(9, 4))
        assert stream.transcendental

    def test_streams_restart(self):
        stream = make_stream("integers", {"start": 2})
        first = HahnSeries.from_stream(stream, 5)
        second = HahnSeries.from_stream(stream.clone(), 5)
        assert first == second
        assert first.support() == (2, 3, 4)

    def test_shift_parameter(self):
        stream = make_stream("integers", {"shift": 1})
        assert stream.name == "integers"
        assert stream.params["shift"] == 1
        series = HahnSeries.from_stream(stream, 3)
        assert series.terms[0] == (0, as_one())
        assert series.support() == (0, 1, 2)

    def test_shift_accumulates(self):
        stream = make_stream("integers", {"shift": 1}).shifted_constant(as_one() * 2)
        assert stream.params["shift"] == 3
        series = HahnSeries.from_stream(stream, 1)
        assert series.coefficient(0) == 3

    def test_unknown_rule(self):
        with pytest.raises(ValueError, match="unknown stream rule"):
            make_stream("fibonacci")

    def test_negative_start(self):
        with pytest.raises(ValueError, match="start >= 0"):
            make_stream("integers", {"start": -1})

    def test_lazy_valuation(self):
        stream = make_stream("integers", {"start": 6})
        series = HahnSeries.from_stream(stream, 2)
        assert not series.terms
        assert valuation(series) == 6

    def test_non_increasing_rule(self):
        stream = TermStream(lambda: iter([(1, 1), (1, 2)]), name="bad")
        with pytest.raises(ValueError, match="yielded exponent"):
            HahnSeries.from_stream(stream, 5)


class TestAdmissiblePairs:
    """Test admissible pairs and their limits"""

    def test_constant_extension(self):
        pair = AdmissiblePair([1, 2], [HahnSeries(), HahnSeries()], extend_constantly=True)
        assert limit_of_pair(pair) == HahnSeries()

    def test_finite_pair_is_truncated_without_extension(self):
        pair = AdmissiblePair([1, 2], [HahnSeries(), t(1)])
        assert limit_of_pair(pair) == HahnSeries([(1, 1)], known_below=2)

    def test_streamed_limit(self):
        def rule():
            i = 1
            prefix = HahnSeries()
            while True:
                yield i, prefix
                prefix = prefix + t(i)
                i += 1

        limit = limit_of_pair(AdmissiblePair(rule=rule), 5)
        assert limit.truncate(4) == HahnSeries([(1, 1), (2, 1), (3, 1)], known_below=4)

    def test_half_integer_steps(self):
        def rule():
            s = half
            prefix = HahnSeries()
            while True:
                yield s, prefix
                prefix = prefix + t(s)
                s += 1

        limit = limit_of_pair(AdmissiblePair(rule=rule), 3)
        assert limit.truncate(3) == HahnSeries([(half, 1), (Fraction(3, 2), 1), (Fraction(5, 2), 1)], known_below=3)

    def test_nesting_violation(self):
        pair = AdmissiblePair([1, 2], [HahnSeries(), t(half)])
        with pytest.raises(InvalidPair, match="not supported"):
            limit_of_pair(pair)

    def test_steps_must_increase(self):
        pair = AdmissiblePair([2, 1], [HahnSeries(), HahnSeries()])
        with pytest.raises(InvalidPair, match="not increasing"):
            pair.validate()

    def test_canonical_pair_round_trip(self):
        alpha = t(half) + t(1, 3) + t(Fraction(7, 3))
        pair = admissible_pair_of(alpha)
        assert limit_of_pair(pair) == alpha


exponents = st.fractions(min_value=0, max_value=4, max_denominator=6)
coefficients = st.integers(-3, 3).filter(bool)
series_strategy = st.dictionaries(exponents, coefficients, min_size=1, max_size=4).map(
    lambda d: HahnSeries.from_dict({Fraction(e): c for e, c in d.items()})
)


class TestSeriesProperties:
    """Property checks of the valuation and the cutoff split"""

    @settings(max_examples=500, deadline=None)
    @given(series_strategy, series_strategy)
    def test_valuation_is_additive(self, a, b):
        assert valuation(a * b) == valuation(a) + valuation(b)

    @settings(max_examples=200, deadline=None)
    @given(series_strategy, exponents)
    def test_cutoff_complement(self, a, u):
        upper, lower = cutoff(a, u)
        assert upper + lower == a
        assert all(e >= u for e in upper.support())
        assert all(e < u for e in lower.support())

    @settings(max_examples=200, deadline=None)
    @given(series_strategy)
    def test_limit_reproduces_prefixes(self, a):
        pair = admissible_pair_of(a)
        limit = limit_of_pair(pair)
        assert limit == a
        for s, prefix in pair.pairs():
            assert cutoff(limit, s)[1] == prefix


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
